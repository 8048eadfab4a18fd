"""The Kostant-Wallach map on concrete matrices.

Phi(X) lists the characteristic-polynomial coefficients of the upper-left
principal submatrices X_1, ..., X_n (convention det(t I - X_i)); Phi_k keeps
the last k levels.  Eigenvalues are never computed: equal multisets of
eigenvalues is the same thing as equal characteristic polynomials.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .field import QQ, Field
from .linalg import dense_rank
from .poly import var_name
from .regularity import ImplementationError
from .systems import charpoly_coefficients, chi, d, partial_count


class ConcreteMatrix:
    """Square matrix with exact entries in a coefficient field."""

    __slots__ = ("n", "rows", "field")

    def __init__(self, rows: Sequence[Sequence], field: Field = QQ):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        self.n = n
        self.field = field
        self.rows = tuple(tuple(field.convert(x) for x in r) for r in rows)

    @classmethod
    def zeros(cls, n: int, field: Field = QQ):
        return cls([[0] * n for _ in range(n)], field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def elementary(cls, n: int, pairs: Sequence[Tuple[int, int]], field: Field = QQ):
        """Sum of E_ij over the given one-based (i, j) pairs."""
        M = [[0] * n for _ in range(n)]
        for i, j in pairs:
            M[i - 1][j - 1] += 1
        return cls(M, field)

    @classmethod
    def from_json(cls, obj, field: Field = QQ):
        return cls([[x if isinstance(x, int) else Fraction(str(x)) for x in row] for row in obj], field)

    def to_json(self):
        return [[self.field.format(x) if self.field.characteristic else _fmt(x) for x in r] for r in self.rows]

    def principal(self, i: int):
        return [list(r[:i]) for r in self.rows[:i]]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def replace(self, i: int, j: int, value) -> "ConcreteMatrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return ConcreteMatrix(rows, self.field)

    def point(self) -> Dict[str, object]:
        """Variable assignment x_ij -> entry for evaluating matrix polynomials."""
        n = self.n
        return {var_name(i + 1, j + 1, n): self.rows[i][j] for i in range(n) for j in range(n)}

    def __eq__(self, other):
        return isinstance(other, ConcreteMatrix) and self.rows == other.rows and self.field == other.field

    def __repr__(self):
        return f"ConcreteMatrix({self.to_json()})"


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class FiberSignature:
    n: int
    k: int
    vectors: Tuple[Tuple, ...]  # chi_i(X) for i = n-k+1 .. n

    def level(self, i: int) -> Tuple:
        return self.vectors[i - (self.n - self.k + 1)]

    def is_zero(self) -> bool:
        return all(not c for v in self.vectors for c in v)

    def to_json(self):
        return {"n": self.n, "k": self.k,
                "levels": {str(self.n - self.k + 1 + t): [_fmt(c) for c in v] for t, v in enumerate(self.vectors)}}


def phi_k(X: ConcreteMatrix, k: int) -> FiberSignature:
    n = X.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    vecs = []
    for i in range(n - k + 1, n + 1):
        vecs.append(tuple(charpoly_coefficients(X.principal(i), X.field)))
    return FiberSignature(n, k, tuple(vecs))


def phi(X: ConcreteMatrix) -> FiberSignature:
    return phi_k(X, X.n)


def same_fiber(X: ConcreteMatrix, Y: ConcreteMatrix, k: int) -> bool:
    if X.n != Y.n:
        raise ValueError("matrices of different sizes")
    return phi_k(X, k) == phi_k(Y, k)


def trace_powers(X: ConcreteMatrix) -> List[List]:
    """gamma_bar_ij(X) = tr(X_i^j) for 1 <= j <= i <= n."""
    F = X.field
    out = []
    for i in range(1, X.n + 1):
        A = X.principal(i)
        P = A
        row = []
        for j in range(1, i + 1):
            if j > 1:
                P = [[F.norm(sum(P[a][c] * A[c][b] for c in range(i))) for b in range(i)] for a in range(i)]
            row.append(F.norm(sum(P[a][a] for a in range(i))))
        out.append(row)
    return out


def strongly_nilpotent(X: ConcreteMatrix) -> bool:
    """Every principal submatrix X_i nilpotent, i.e. Phi(X) = 0.

    Cross-checked against the vanishing of all tr(X_i^j); the two tests are
    equivalent in characteristic 0 (and for p > n) by Newton's identities.
    """
    by_charpoly = phi(X).is_zero()
    by_traces = all(not v for row in trace_powers(X) for v in row)
    if by_charpoly != by_traces:
        raise ImplementationError(f"char-poly and trace tests disagree on {X!r}")
    return by_charpoly


def random_matrix(n: int, rng: random.Random, lo: int = -10, hi: int = 10, field: Field = QQ) -> ConcreteMatrix:
    return ConcreteMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], field)


def expected_fiber_dim(n: int, k: int) -> int:
    return n * n - n * k + d(k - 1)


@lru_cache(maxsize=32)
def _jacobian_polys(n: int, k: int, field: Field):
    sys = chi(n, field)
    polys = []
    for g, lab in zip(sys.generators, sys.labels):
        i = int(lab.split("[")[1].split(",")[0])
        if i >= n - k + 1:
            polys.append(g)
    names = sys.ring.variables
    grads = [[g.diff(v) for v in names] for g in polys]
    return polys, grads, names


def jacobian_at(n: int, k: int, X: ConcreteMatrix):
    _, grads, _ = _jacobian_polys(n, k, X.field)
    pt = X.point()
    return [[df.evaluate(pt) if df else X.field.zero for df in row] for row in grads]


def finite_difference_jacobian(n: int, k: int, X: ConcreteMatrix):
    """Columns phi_k(X + E_ab) - phi_k(X).

    Each chi_ij has degree at most one in every single entry (sums of
    principal minors), so the forward difference with step 1 is exact.
    """
    base = [c for v in phi_k(X, k).vectors for c in v]
    cols = []
    for a in range(n):
        for b in range(n):
            Y = X.replace(a, b, X[a, b] + 1)
            shifted = [c for v in phi_k(Y, k).vectors for c in v]
            cols.append([X.field.norm(s - t) for s, t in zip(shifted, base)])
    return [[cols[c][r] for c in range(n * n)] for r in range(len(base))]


def jacobian_rank_probe(n: int, k: int, trials: int = 100, seed: int = 0, field: Field = QQ) -> dict:
    """Exact Jacobian ranks of the chi_ij - chi_ij(X) system at random X.

    Full rank nk - k(k-1)/2 at X means the fiber through X has local
    dimension n^2 - nk + d(k-1) there.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    rng = random.Random(seed)
    m = partial_count(n, k)
    ranks = []
    deficient = []
    fd_ok = None
    for t in range(trials):
        X = random_matrix(n, rng, field=field)
        J = jacobian_at(n, k, X)
        if t == 0:
            fd_ok = J == finite_difference_jacobian(n, k, X)
            if not fd_ok:
                raise ImplementationError("symbolic Jacobian disagrees with the finite-difference check")
        r = dense_rank(J, field)
        ranks.append(r)
        if r < m:
            deficient.append({"trial": t, "rank": r, "matrix": X.to_json()})
    full = sum(1 for r in ranks if r == m)
    return {
        "n": n, "k": k, "trials": trials, "seed": seed,
        "expected_rank": m,
        "expected_fiber_dim": expected_fiber_dim(n, k),
        "full_rank": full,
        "full_rank_fraction": full / trials,
        "observed_codims": sorted(set(ranks)),
        "finite_difference_check": fd_ok,
        "rank_deficient": deficient,
    }
