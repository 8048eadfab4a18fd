"""Factories for the Gelfand-Tsetlin polynomial families and index sets.

All matrix variables are named ``x{i}{j}`` (``x{i}_{j}`` past 9).  The
full matrix ring uses row-major variable priority; the weak-variety rings
k[I_n] list the strict lower triangle row by row, then the last column.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .field import QQ, Field
from .poly import (DEGREVLEX, MonomialOrder, Polynomial, Ring, RingHom, matrix_ring,
                   parse_var_name, var_name)

MAX_N = {"gamma_bar": 6, "chi": 6, "sigma": 8, "partial": 6}


def d(t: int) -> int:
    if t < 0:
        raise ValueError("d(t) needs t >= 0")
    return t * (t + 1) // 2


def e(t: int) -> int:
    if t < 1:
        raise ValueError("e(t) needs t >= 1")
    return (t + 2) * (t - 1) // 2


def partial_count(n: int, k: int) -> int:
    """Number of generators of a k-partial system: sum of i for n-k < i <= n."""
    return n * k - k * (k - 1) // 2


@dataclass
class GTSystem:
    n: int
    family: str
    generators: List[Polynomial]
    ring: Ring
    labels: List[str]
    params: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, label):
        if isinstance(label, int):
            return self.generators[label]
        return self.generators[self.labels.index(label)]

    def ideal(self):
        from .groebner import Ideal
        return Ideal(self.generators, self.ring)

    def to_json(self, order: MonomialOrder = DEGREVLEX) -> dict:
        out = {
            "ring": self.ring.to_json(),
            "order": order.to_json(),
            "family": self.family,
            "n": self.n,
            "labels": list(self.labels),
            "generators": [g.to_text(order) for g in self.generators],
        }
        if self.params:
            out["params"] = {k: ([str(b) for b in v] if k == "beta" else v) for k, v in self.params.items()}
        return out


def _check_n(n: int, family: str, lo: int = 1):
    hi = MAX_N[family]
    if not isinstance(n, int) or not lo <= n <= hi:
        raise ValueError(f"{family}: n must be in [{lo}, {hi}], got {n}")


# -- symbolic matrices


def symbolic_matrix(ring: Ring, n: int) -> List[List[Polynomial]]:
    return [[ring.gen(var_name(i, j, n)) for j in range(1, n + 1)] for i in range(1, n + 1)]


def mat_mul(A, B):
    ring = A[0][0].ring
    n, m, l = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(l):
            acc = ring.zero()
            for k in range(m):
                if A[i][k] and B[k][j]:
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def trace(A):
    acc = A[0][0].ring.zero()
    for i in range(len(A)):
        acc = acc + A[i][i]
    return acc


def principal(A, i):
    return [row[:i] for row in A[:i]]


# -- families


def gamma_bar(n: int, field: Field = QQ) -> GTSystem:
    """gamma_bar_ij = tr(X_i^j) for 1 <= j <= i <= n, ordered by i then j."""
    _check_n(n, "gamma_bar")
    R = matrix_ring(n, field)
    X = symbolic_matrix(R, n)
    gens, labels = [], []
    for i in range(1, n + 1):
        Xi = principal(X, i)
        P = Xi
        for j in range(1, i + 1):
            if j > 1:
                P = mat_mul(P, Xi)
            gens.append(trace(P))
            labels.append(f"gamma[{i},{j}]")
    return GTSystem(n, "gamma_bar", gens, R, labels)


def charpoly_coefficients(A, field: Field = QQ):
    """Coefficients c_1..c_m of det(t I - A) = t^m + c_1 t^(m-1) + ... + c_m.

    Faddeev-LeVerrier: M_1 = I, c_k = -tr(A M_k)/k, M_{k+1} = A M_k + c_k I.
    Works for matrices of Polynomials or of field elements.
    """
    m = len(A)
    symbolic = isinstance(A[0][0], Polynomial)
    if symbolic:
        ring = A[0][0].ring
        zero, one = ring.zero(), ring.one()
        mul = mat_mul
        tr = trace
    else:
        zero, one = field.zero, field.one
        norm = field.norm

        def mul(P, Q):
            return [[norm(sum(P[i][k] * Q[k][j] for k in range(m))) for j in range(m)] for i in range(m)]

        def tr(P):
            return norm(sum(P[i][i] for i in range(m)))

    M = [[one if i == j else zero for j in range(m)] for i in range(m)]
    coeffs = []
    for k in range(1, m + 1):
        AM = mul(A, M)
        if symbolic:
            c = tr(AM).scale(Fraction(-1, k))
        else:
            c = field.div(norm(-tr(AM)), field.convert(k))
        coeffs.append(c)
        if k < m:
            M = [[AM[i][j] + c if i == j else AM[i][j] for j in range(m)] for i in range(m)]
    return coeffs


def chi(n: int, field: Field = QQ) -> GTSystem:
    """chi_ij: coefficient of t^(i-j) in det(t I - X_i)."""
    _check_n(n, "chi")
    R = matrix_ring(n, field)
    X = symbolic_matrix(R, n)
    gens, labels = [], []
    for i in range(1, n + 1):
        cs = charpoly_coefficients(principal(X, i), field)
        for j, c in enumerate(cs, start=1):
            gens.append(c)
            labels.append(f"chi[{i},{j}]")
    return GTSystem(n, "chi", gens, R, labels)


def partial_system(n: int, k: int, beta: Sequence, family: str = "gamma_bar", field: Field = QQ) -> GTSystem:
    """g_ij - beta_ij for n-k+1 <= i <= n, 1 <= j <= i (g = gamma_bar or chi)."""
    _check_n(n, "partial")
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    need = partial_count(n, k)
    if len(beta) != need:
        raise ValueError(f"beta has length {len(beta)}, expected {need}")
    if family in ("gamma", "gamma_bar"):
        full = gamma_bar(n, field)
        family = "gamma_bar"
    elif family == "chi":
        full = chi(n, field)
    else:
        raise ValueError(f"unknown family {family!r}")
    beta = [field.convert(b) for b in beta]
    gens, labels = [], []
    pos = 0
    for g, lab in zip(full.generators, full.labels):
        i = int(lab.split("[")[1].split(",")[0])
        if i >= n - k + 1:
            gens.append(g - full.ring.constant(beta[pos]))
            labels.append(lab)
            pos += 1
    return GTSystem(n, f"partial_{family}", gens, full.ring, labels, {"k": k, "beta": beta})


# -- weak variety


def index_set(n: int) -> List[str]:
    """I_n: strict lower triangle (row-major) plus the last column without x_nn."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lower = [var_name(i, j, n) for i in range(2, n + 1) for j in range(1, i)]
    last = [var_name(i, n, n) for i in range(1, n)]
    return lower + last


def punctured_index_set(n: int, t: int) -> List[str]:
    """I_n^(t): I_n without row t and column t."""
    if not 1 <= t <= n:
        raise ValueError(f"t must be in [1, {n}]")
    return [v for v in index_set(n) if t not in parse_var_name(v)]


def weak_ring(n: int, field: Field = QQ) -> Ring:
    return Ring(index_set(n), field)


def sigma_polynomial(R: Ring, n: int, j: int, names_n: int | None = None) -> Polynomial:
    """sigma_nj: sum over n > t_1 > ... > t_{j-1} >= 1 of X_{n t1} X_{t1 t2} ... X_{t_{j-1} n}."""
    nn = names_n if names_n is not None else n
    acc = R.zero()
    for path in combinations(range(n - 1, 0, -1), j - 1):
        # combinations of a decreasing range are decreasing tuples
        nodes = (n,) + path + (n,)
        term = R.one()
        for a, b in zip(nodes, nodes[1:]):
            term = term * R.gen(var_name(a, b, nn))
        acc = acc + term
    return acc


def sigma(n: int, field: Field = QQ) -> GTSystem:
    if not isinstance(n, int) or not 2 <= n <= MAX_N["sigma"]:
        raise ValueError(f"sigma: n must be in [2, {MAX_N['sigma']}], got {n}")
    R = weak_ring(n, field)
    gens = [sigma_polynomial(R, n, j) for j in range(2, n + 1)]
    labels = [f"sigma[{n},{j}]" for j in range(2, n + 1)]
    return GTSystem(n, "sigma", gens, R, labels)


# -- named homomorphisms


def _shift_images(n: int):
    return {v: var_name(i + 1, j + 1, n) for v in index_set(n - 1) for i, j in [parse_var_name(v)]}


def _puncture_images(n: int, t: int):
    out = {}
    for v in index_set(n - 1):
        i, j = parse_var_name(v)
        if i < t and j < t:
            out[v] = var_name(i, j, n)
        elif j < t <= i:
            out[v] = var_name(i + 1, j, n)
        elif i < t <= j:
            out[v] = var_name(i, j + 1, n)
        else:
            out[v] = var_name(i + 1, j + 1, n)
    return out


def _last_row_swap_images(n: int):
    out = {}
    for v in index_set(n - 1):
        i, j = parse_var_name(v)
        if i == n - 1:
            out[v] = var_name(n, j, n)
        elif j == n - 1:
            out[v] = var_name(i, n, n)
        else:
            out[v] = var_name(i, j, n)
    return out


def named_hom(name: str, n: int, t: int | None = None, perm: Sequence[int] | None = None,
              transpose: bool = False, field: Field = QQ) -> RingHom:
    """Catalog of the substitution homomorphisms used in the proofs.

    shift(n), puncture(n, t), last_row_swap(n): k[I_{n-1}] -> k[I_n], the
    isomorphisms onto k[I_n^(1)], k[I_n^(t)], k[I_n^(n-1)] respectively.
    transpose(n): X -> X^T on k[x_ij].  conj_perm(n, perm): X -> P X P^T
    for the permutation matrix P of ``perm`` (one-based images of 1..n),
    i.e. x_ij -> x_{perm(i) perm(j)}; with ``transpose=True`` the
    transpose is applied first.
    """
    if name in ("shift", "puncture", "last_row_swap"):
        if n < 3:
            raise ValueError(f"{name} needs n >= 3")
        src, tgt = weak_ring(n - 1, field), weak_ring(n, field)
        if name == "shift":
            imgs = _shift_images(n)
            label = f"shift({n})"
        elif name == "puncture":
            if t is None or not 2 <= t <= n - 1:
                raise ValueError("puncture needs 2 <= t <= n-1")
            imgs = _puncture_images(n, t)
            label = f"puncture({n},{t})"
        else:
            imgs = _last_row_swap_images(n)
            label = f"last_row_swap({n})"
        return RingHom(src, tgt, {v: tgt.gen(w) for v, w in imgs.items()}, name=label)
    if name in ("transpose", "conj_perm"):
        R = matrix_ring(n, field)
        if name == "transpose":
            perm, transpose = list(range(1, n + 1)), True
        if perm is None or sorted(perm) != list(range(1, n + 1)):
            raise ValueError("conj_perm needs a permutation of 1..n")
        imgs = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                a, b = (j, i) if transpose else (i, j)
                imgs[var_name(i, j, n)] = R.gen(var_name(perm[a - 1], perm[b - 1], n))
        label = "transpose" if name == "transpose" else f"conj_perm({''.join(map(str, perm))}{',T' if transpose else ''})"
        return RingHom(R, R, imgs, name=label)
    raise ValueError(f"unknown homomorphism {name!r}")


def recursion_branches(n: int) -> List[Tuple[str, int, List[str]]]:
    """The three kinds of branch in the induction for V_n.

    Each entry is (hom name, t, substitution set X): X is the set of
    variables set to zero so that sigma_nj^X equals the image of
    sigma_{n-1,j} under the named hom.
    """
    out = []
    x1 = [var_name(1, n, n)] + [var_name(i, 1, n) for i in range(2, n + 1)]
    out.append(("shift", 1, x1))
    for t in range(2, n):
        X = [var_name(t, t - 1, n)] + [var_name(t, j, n) for j in range(1, t - 1)]
        X += [var_name(t, n, n)] + [var_name(i, t, n) for i in range(t + 1, n + 1)]
        out.append(("puncture", t, X))
    X = [var_name(n, n - 1, n)] + [var_name(n - 1, j, n) for j in range(1, n - 1)] + [var_name(n - 1, n, n)]
    out.append(("last_row_swap", n, X))
    return out


def system_from_json(obj: dict) -> Tuple[Ring, List[Polynomial], MonomialOrder]:
    from .field import field_from_json
    R = Ring(obj["ring"]["variables"], field_from_json(obj["ring"].get("field", {"kind": "QQ"})))
    gens = [R.parse(s) for s in obj["generators"]]
    o = obj.get("order") or {}
    order = MonomialOrder(o.get("kind", "degrevlex"), tuple(o["priority"]) if o.get("priority") else None)
    return R, gens, order
