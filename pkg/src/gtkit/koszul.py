"""Koszul complexes of homogeneous sequences and their graded homology.

Homology is computed one internal degree at a time: each graded piece of
the exterior powers is a finite-dimensional vector space with a monomial
basis, the differentials become scalar matrices, and ranks are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

from .errors import GtkitError, NotHomogeneousError
from .linalg import rank
from .poly import Polynomial, Ring

DEFAULT_MAX_DEGREE = 8
DEFAULT_MAX_PIECE = 20000
BOUND_NOTE = "vanishing up to a finite degree bound is evidence, not a proof of regularity"


class PieceTooLarge(GtkitError):
    pass


@dataclass
class KoszulComplex:
    ring: Ring
    sequence: List[Polynomial]
    degrees: List[int]
    bases: Dict[int, List[Tuple[int, ...]]]
    differentials: Dict[int, List[List[Polynomial]]]  # d_p: rows = bases[p-1], cols = bases[p]

    @property
    def length(self) -> int:
        return len(self.sequence)

    def check_dd(self) -> bool:
        """d_{p-1} o d_p = 0 as polynomial matrices, for every p."""
        for p in range(2, self.length + 1):
            A, B = self.differentials[p - 1], self.differentials[p]
            zero = self.ring.zero()
            for i in range(len(A)):
                for j in range(len(B[0])):
                    acc = zero
                    for k in range(len(B)):
                        if A[i][k] and B[k][j]:
                            acc = acc + A[i][k] * B[k][j]
                    if acc:
                        return False
        return True


def build_complex(xs: Sequence[Polynomial]) -> KoszulComplex:
    xs = list(xs)
    if not xs:
        raise ValueError("Koszul complex needs at least one element")
    ring = xs[0].ring
    degrees = []
    for k, x in enumerate(xs, start=1):
        hom, deg = x.is_homogeneous()
        if not hom:
            raise NotHomogeneousError(f"element {k} is not homogeneous")
        degrees.append(deg)
    t = len(xs)
    bases = {p: list(combinations(range(t), p)) for p in range(t + 1)}
    diffs = {}
    zero = ring.zero()
    for p in range(1, t + 1):
        rows = {S: r for r, S in enumerate(bases[p - 1])}
        M = [[zero] * len(bases[p]) for _ in bases[p - 1]]
        for c, S in enumerate(bases[p]):
            for k, idx in enumerate(S):
                face = S[:k] + S[k + 1:]
                M[rows[face]][c] = xs[idx] if k % 2 == 0 else -xs[idx]
        diffs[p] = M
    return KoszulComplex(ring, xs, degrees, bases, diffs)


@lru_cache(maxsize=4096)
def monomials_of_degree(nvars: int, d: int) -> Tuple[Tuple[int, ...], ...]:
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return tuple(out)


@dataclass
class GradedPieceReport:
    p: int
    d: int
    rank_d_p: int
    rank_d_p1: int
    dim_piece: int
    homology_dim: int

    def to_json(self):
        return dict(self.__dict__)


def _piece_basis(K: KoszulComplex, p: int, d: int):
    if p < 0 or p > K.length:
        return [], {}
    n = K.ring.nvars
    basis = []
    for S in K.bases[p]:
        for m in monomials_of_degree(n, d - sum(K.degrees[i] for i in S)):
            basis.append((S, m))
    return basis, {b: k for k, b in enumerate(basis)}


def _differential_rank(K: KoszulComplex, p: int, d: int, max_piece: int) -> int:
    """Rank of d_p restricted to internal degree d."""
    if p < 1 or p > K.length:
        return 0
    src, _ = _piece_basis(K, p, d)
    _, tgt_index = _piece_basis(K, p - 1, d)
    if len(src) > max_piece or len(tgt_index) > max_piece:
        raise PieceTooLarge(f"graded piece too large at p={p}, d={d}")
    F = K.ring.field
    rows = []
    for S, m in src:
        row: Dict[int, object] = {}
        for k, idx in enumerate(S):
            face = S[:k] + S[k + 1:]
            x = K.sequence[idx]
            for e, c in x.terms.items():
                mono = tuple(a + b for a, b in zip(e, m))
                col = tgt_index[(face, mono)]
                v = c if k % 2 == 0 else -c
                row[col] = F.norm(row.get(col, 0) + v)
        rows.append(row)
    return rank(rows, F)


def homology_dims(K: KoszulComplex, p: int, up_to_degree: int = DEFAULT_MAX_DEGREE,
                  max_piece: int = DEFAULT_MAX_PIECE) -> List[GradedPieceReport]:
    if up_to_degree < 0:
        raise ValueError("degree bound must be >= 0")
    out = []
    for d in range(up_to_degree + 1):
        basis, _ = _piece_basis(K, p, d)
        if len(basis) > max_piece:
            raise PieceTooLarge(f"graded piece too large at p={p}, d={d}")
        r_p = _differential_rank(K, p, d, max_piece)
        r_p1 = _differential_rank(K, p + 1, d, max_piece)
        h = len(basis) - r_p - r_p1
        if h < 0:
            raise AssertionError("negative homology dimension")
        out.append(GradedPieceReport(p, d, r_p, r_p1, len(basis), h))
    return out


@dataclass
class OracleVerdict:
    homology_found: bool
    p: int | None
    d: int | None
    max_degree: int
    note: str = BOUND_NOTE

    @property
    def verdict(self) -> str:
        if self.homology_found:
            return f"homology_found_at(p={self.p},d={self.d})"
        return f"no_homology_up_to_{self.max_degree}"

    def to_json(self):
        return {"verdict": self.verdict, "homology_found": self.homology_found, "p": self.p, "d": self.d,
                "max_degree": self.max_degree, "note": self.note}


def ci_oracle(xs: Sequence[Polynomial], max_degree: int = DEFAULT_MAX_DEGREE,
              max_piece: int = DEFAULT_MAX_PIECE) -> OracleVerdict:
    """Screen for higher Koszul homology up to an internal degree bound.

    Homology found means the sequence is certainly not regular; none found
    is only consistent with regularity.
    """
    K = build_complex(xs)
    for p in range(1, K.length + 1):
        for rep in homology_dims(K, p, max_degree, max_piece):
            if rep.homology_dim:
                return OracleVerdict(True, p, rep.d, max_degree)
    return OracleVerdict(False, None, None, max_degree)
