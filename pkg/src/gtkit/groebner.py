"""Groebner bases and the ideal operations built on them.

The engine is a plain Buchberger loop with Gebauer-Moeller pair
elimination and sugar-degree pair selection.  Over QQ it runs fraction-free
on integer coefficients (primitive parts after every reduction); over GF(p)
it keeps basis elements monic.  Monomials are packed ints (see
:class:`gtkit.poly.Encoding`).
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, RingMismatchError
from .field import QQ
from .monomial import max_independent_set
from .poly import DEGREVLEX, MonomialOrder, Polynomial, Ring, exact_divide

ELIM_VAR = "_t"
RABINOWITSCH_VAR = "_z"


@dataclass(frozen=True)
class Budget:
    """Resource caps for one Groebner computation.  ``None`` means unlimited."""

    max_pairs: Optional[int] = None
    max_degree: Optional[int] = None
    max_seconds: Optional[float] = None

    def effective(self) -> "Budget":
        env = os.environ.get("GTKIT_BUDGET_SECONDS")
        if env:
            return Budget(self.max_pairs, self.max_degree, float(env))
        return self

    def to_json(self):
        return {"max_pairs": self.max_pairs, "max_degree": self.max_degree, "max_seconds": self.max_seconds}


UNLIMITED = Budget()


def _content(vals) -> int:
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


class _Engine:
    """Kernel state for one Buchberger run (or one normal-form session)."""

    def __init__(self, ring: Ring, order: MonomialOrder, budget: Budget = UNLIMITED):
        self.ring = ring
        self.order = order
        self.E = order.encoding(ring)
        self.Z = self.E.zero_code
        self.p = ring.field.characteristic or 0
        self.budget = budget.effective()
        self.t0 = time.monotonic()
        self.polys: List[List[Tuple[int, int]]] = []  # sorted term lists, lead first
        self.leads: List[int] = []
        self.lexps: List[tuple] = []
        self.lmask: List[int] = []
        self.lcoef: List[int] = []
        self.sugar: List[int] = []
        self.pairs_done = 0
        self.reductions = 0

    # -- conversion
    def import_poly(self, f: Polynomial) -> Dict[int, int]:
        if f.ring != self.ring:
            f = f.change_ring(self.ring)
        enc = self.E.enc
        if self.p:
            return {enc(e): int(c) % self.p for e, c in f.terms.items()}
        den = 1
        for c in f.terms.values():
            d = Fraction(c).denominator
            den = den * d // gcd(den, d)
        return {enc(e): int(Fraction(c) * den) for e, c in f.terms.items()}

    def export_poly(self, f: Dict[int, int]) -> Polynomial:
        F = self.ring.field
        dec = self.E.dec
        if not f:
            return self.ring.zero()
        lc = f[max(f)]
        if self.p:
            inv = pow(lc, -1, self.p)
            return Polynomial(self.ring, {dec(m): c * inv % self.p for m, c in f.items()})
        return Polynomial(self.ring, {dec(m): Fraction(c, lc) for m, c in f.items()})

    def normalize(self, f: Dict[int, int]) -> Dict[int, int]:
        if not f:
            return f
        lc = f[max(f)]
        if self.p:
            if lc != 1:
                inv = pow(lc, -1, self.p)
                p = self.p
                return {m: c * inv % p for m, c in f.items()}
            return f
        g = _content(f.values())
        if lc < 0:
            g = -g
        if g != 1:
            return {m: c // g for m, c in f.items()}
        return f

    def mask(self, e) -> int:
        m = 0
        for k, a in enumerate(e):
            if a:
                m |= 1 << k
        return m

    def add(self, f: Dict[int, int], sugar: int) -> int:
        f = self.normalize(f)
        terms = sorted(f.items(), reverse=True)
        lead = terms[0][0]
        e = self.E.dec(lead)
        self.polys.append(terms)
        self.leads.append(lead)
        self.lexps.append(e)
        self.lmask.append(self.mask(e))
        self.lcoef.append(terms[0][1])
        self.sugar.append(sugar)
        return len(self.polys) - 1

    # -- budget
    def check_time(self):
        lim = self.budget.max_seconds
        if lim is not None and time.monotonic() - self.t0 > lim:
            raise BudgetExceeded("seconds", lim, f"after {self.pairs_done} pairs")

    # -- reduction
    def find_reducer(self, e, mask, reducers):
        lexps = self.lexps
        lmask = self.lmask
        for i in reducers:
            if lmask[i] & ~mask:
                continue
            le = lexps[i]
            for a, b in zip(le, e):
                if a > b:
                    break
            else:
                return i
        return -1

    def reduce(self, f: Dict[int, int], reducers: Sequence[int], full: bool = True):
        """Reduce f modulo the listed basis elements.

        Returns (remainder, scale) with remainder = scale * (true remainder)
        over QQ; scale is always 1 over GF(p).
        """
        f = dict(f)
        r: Dict[int, int] = {}
        scale = Fraction(1)
        dec = self.E.dec
        p = self.p
        steps = 0
        while f:
            m = max(f)
            c = f[m]
            e = dec(m)
            i = self.find_reducer(e, self.mask(e), reducers)
            if i < 0:
                if not full:
                    f.update(r)
                    return f, scale
                r[m] = c
                del f[m]
                continue
            steps += 1
            shift = m - self.leads[i]
            terms = self.polys[i]
            if p:
                # basis elements are monic
                for t, gc in terms:
                    k = t + shift
                    v = (f.get(k, 0) - c * gc) % p
                    if v:
                        f[k] = v
                    else:
                        f.pop(k, None)
            else:
                gl = terms[0][1]
                d = gcd(gl, c)
                a = gl // d
                b = c // d
                if a != 1:
                    for k in f:
                        f[k] *= a
                    for k in r:
                        r[k] *= a
                    scale *= a
                for t, gc in terms:
                    k = t + shift
                    v = f.get(k, 0) - b * gc
                    if v:
                        f[k] = v
                    else:
                        f.pop(k, None)
                if steps % 16 == 0 and f:
                    g = _content(list(f.values()) + list(r.values()))
                    if g > 1:
                        f = {k: v // g for k, v in f.items()}
                        r = {k: v // g for k, v in r.items()}
                        scale /= g
        self.reductions += steps
        if not p and r:
            g = _content(r.values())
            if g > 1:
                r = {k: v // g for k, v in r.items()}
                scale /= g
        return r, scale

    # -- Buchberger
    def lcm_exps(self, i: int, j: int) -> tuple:
        return tuple(a if a > b else b for a, b in zip(self.lexps[i], self.lexps[j]))

    def spoly(self, i: int, j: int, l_code: int) -> Dict[int, int]:
        si = l_code - self.leads[i]
        sj = l_code - self.leads[j]
        f: Dict[int, int] = {}
        p = self.p
        if p:
            for t, c in self.polys[i][1:]:
                f[t + si] = c
            for t, c in self.polys[j][1:]:
                k = t + sj
                v = (f.get(k, 0) - c) % p
                if v:
                    f[k] = v
                else:
                    f.pop(k, None)
            return f
        ci = self.lcoef[i]
        cj = self.lcoef[j]
        d = gcd(ci, cj)
        ci //= d
        cj //= d
        for t, c in self.polys[i][1:]:
            f[t + si] = c * cj
        for t, c in self.polys[j][1:]:
            k = t + sj
            v = f.get(k, 0) - c * ci
            if v:
                f[k] = v
            else:
                f.pop(k, None)
        return f

    def update(self, G: List[int], B: list, h: int):
        lh = self.lexps[h]
        E = self.E

        def lcm(a, b):
            return tuple(x if x > y else y for x, y in zip(a, b))

        def divides(a, b):
            return all(x <= y for x, y in zip(a, b))

        C = [(g, lcm(lh, self.lexps[g])) for g in G]
        D = []
        for idx, (g, l) in enumerate(C):
            disjoint = not (self.lmask[g] & self.lmask[h])
            if disjoint or not (
                any(divides(l2, l) for _, l2 in C[idx + 1:]) or any(divides(l2, l) for _, l2, _ in D)
            ):
                D.append((g, l, disjoint))
        newB = []
        for pair in B:
            sug, lcode, i, j, l = pair
            if divides(lh, l) and lcm(self.lexps[i], lh) != l and lcm(self.lexps[j], lh) != l:
                continue
            newB.append(pair)
        for g, l, disjoint in D:
            if disjoint:
                continue
            deg = sum(l)
            sug = max(self.sugar[g] + deg - sum(self.lexps[g]), self.sugar[h] + deg - sum(lh))
            newB.append((sug, E.enc(l), g, h, l))
        newG = [g for g in G if not divides(lh, self.lexps[g])]
        newG.append(h)
        return newG, newB

    def is_constant(self, f: Dict[int, int]) -> bool:
        return len(f) == 1 and self.Z in f

    def run(self, gens: Iterable[Polynomial], start: Sequence[Polynomial] = ()) -> List[int]:
        """Buchberger's algorithm; returns indices of the reduced basis."""
        G: List[int] = []
        B: list = []
        for g in start:
            # already a Groebner basis: no pairs among these
            f = self.import_poly(g)
            if f:
                h = self.add(f, g.total_degree())
                G = [x for x in G if not all(a <= b for a, b in zip(self.lexps[h], self.lexps[x]))]
                G.append(h)
        for g in gens:
            f = self.import_poly(g)
            if not f:
                continue
            f, _ = self.reduce(f, G, full=True)
            if not f:
                continue
            if self.is_constant(f):
                return [self.add(f, 0)]
            h = self.add(f, g.total_degree())
            G, B = self.update(G, B, h)
        maxp = self.budget.max_pairs
        maxd = self.budget.max_degree
        while B:
            self.check_time()
            k = min(range(len(B)), key=lambda t: (B[t][0], B[t][1]))
            sug, lcode, i, j, l = B.pop(k)
            self.pairs_done += 1
            if maxp is not None and self.pairs_done > maxp:
                raise BudgetExceeded("pairs", maxp)
            if maxd is not None and sum(l) > maxd:
                raise BudgetExceeded("degree", maxd)
            s = self.spoly(i, j, lcode)
            if not s:
                continue
            s, _ = self.reduce(s, G, full=False)
            if not s:
                continue
            if self.is_constant(s):
                return [self.add(s, 0)]
            h = self.add(s, sug)
            G, B = self.update(G, B, h)
        return self.interreduce(G)

    def interreduce(self, G: List[int]) -> List[int]:
        out = []
        for g in G:
            others = [x for x in G if x != g]
            lead_term = self.polys[g][0]
            tail = dict(self.polys[g][1:])
            tail_red, scale = self.reduce(tail, others, full=True)
            if self.p:
                f = dict(tail_red)
                f[lead_term[0]] = lead_term[1]
            else:
                # tail_red = scale * tail_nf with scale = num/den
                num, den = scale.numerator, scale.denominator
                f = {m: v * den for m, v in tail_red.items()}
                f[lead_term[0]] = lead_term[1] * num
            out.append(self.add(f, self.sugar[g]))
        out.sort(key=lambda i: self.leads[i])
        return out


# ---------------------------------------------------------------- results


class GroebnerBasis:
    """A reduced Groebner basis together with its leading monomials."""

    def __init__(self, ring: Ring, order: MonomialOrder, polys: List[Polynomial], leads: List[tuple],
                 stats: dict):
        self.ring = ring
        self.order = order
        self.polys = polys
        self.leads = leads
        self.stats = stats

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    @property
    def is_unit(self) -> bool:
        return any(p.is_constant() and p for p in self.polys)

    def lead_monomials(self) -> List[Polynomial]:
        return [self.ring.monomial(e) for e in self.leads]

    def _engine(self) -> _Engine:
        eng = _Engine(self.ring, self.order)
        idx = [eng.add(eng.import_poly(p), p.total_degree()) for p in self.polys]
        return eng, idx

    def reduce(self, p: Polynomial) -> Polynomial:
        """Normal form of p: the unique remainder modulo this basis."""
        if p.ring != self.ring:
            raise RingMismatchError(f"{p.ring!r} vs {self.ring!r}")
        if not p:
            return p
        eng, idx = self._engine()
        f = eng.import_poly(p)
        r, scale = eng.reduce(f, idx, full=True)
        if not r:
            return self.ring.zero()
        F = self.ring.field
        dec = eng.E.dec
        if eng.p:
            return Polynomial(self.ring, {dec(m): c for m, c in r.items()})
        # undo the integer clearing of p's denominators as well
        den = 1
        for c in p.terms.values():
            d = Fraction(c).denominator
            den = den * d // gcd(den, d)
        return Polynomial(self.ring, {dec(m): F.convert(Fraction(c) / scale / den) for m, c in r.items()})

    def contains(self, p: Polynomial) -> bool:
        return not self.reduce(p)

    def dimension(self) -> "DimensionResult":
        dim, wit = max_independent_set(self.leads, self.ring.nvars)
        return DimensionResult(dim, tuple(self.ring.variables[k] for k in wit),
                               modular=bool(self.ring.field.characteristic))

    def hilbert_numerator(self):
        from .monomial import hilbert_numerator
        return hilbert_numerator(self.leads)

    def to_text(self) -> List[str]:
        return [p.to_text(self.order) for p in self.polys]


def _compute(ring: Ring, gens: Sequence[Polynomial], order: MonomialOrder, budget: Budget,
             start: Sequence[Polynomial] = ()) -> GroebnerBasis:
    eng = _Engine(ring, order, budget)
    idx = eng.run(gens, start)
    polys = [eng.export_poly(dict(eng.polys[i])) for i in idx]
    leads = [eng.lexps[i] for i in idx]
    stats = {"pairs": eng.pairs_done, "reductions": eng.reductions,
             "seconds": round(time.monotonic() - eng.t0, 6)}
    return GroebnerBasis(ring, order, polys, leads, stats)


# ---------------------------------------------------------------- ideals


@dataclass(frozen=True)
class DimensionResult:
    krull_dim: int
    witness: Tuple[str, ...]
    modular: bool = False

    def to_json(self):
        return {"krull_dim": self.krull_dim, "witness": list(self.witness), "modular": self.modular}


class Ideal:
    """Ideal of a polynomial ring given by generators, with cached bases."""

    def __init__(self, generators: Iterable[Polynomial], ring: Ring | None = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator in {g.ring!r}, ideal in {ring!r}")
        self.ring = ring
        self.generators = tuple(gens)
        self._cache: Dict[MonomialOrder, GroebnerBasis] = {}

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = Ideal([other], self.ring)
        return Ideal(self.generators + other.generators, self.ring)

    def groebner(self, order: MonomialOrder = DEGREVLEX, budget: Budget = UNLIMITED,
                 start: "GroebnerBasis | None" = None) -> GroebnerBasis:
        gb = self._cache.get(order)
        if gb is None:
            if start is not None and start.order == order:
                gb = _compute(self.ring, self.generators, order, budget, start=start.polys)
            else:
                gb = _compute(self.ring, self.generators, order, budget)
            self._cache[order] = gb
        return gb

    def seed(self, gb: GroebnerBasis):
        """Install a basis computed elsewhere (e.g. incrementally)."""
        self._cache[gb.order] = gb

    def is_unit(self, budget: Budget = UNLIMITED) -> bool:
        return self.groebner(budget=budget).is_unit

    def contains(self, p: Polynomial, budget: Budget = UNLIMITED) -> bool:
        return membership(p, self, budget=budget)

    def is_zero(self) -> bool:
        return all(not g for g in self.generators)


def _as_ideal(I) -> Ideal:
    if isinstance(I, Ideal):
        return I
    return Ideal(I)


def groebner_basis(I, order: MonomialOrder = DEGREVLEX, budget: Budget = UNLIMITED) -> GroebnerBasis:
    return _as_ideal(I).groebner(order, budget)


def normal_form(p: Polynomial, I, order: MonomialOrder = DEGREVLEX, budget: Budget = UNLIMITED) -> Polynomial:
    return _as_ideal(I).groebner(order, budget).reduce(p)


def membership(p: Polynomial, I, budget: Budget = UNLIMITED) -> bool:
    I = _as_ideal(I)
    if not p:
        return True
    if I.is_zero():
        return False
    return not normal_form(p, I, budget=budget)


def intersect(I, J, budget: Budget = UNLIMITED) -> Ideal:
    """I cap J by eliminating t from t*I + (1-t)*J."""
    I, J = _as_ideal(I), _as_ideal(J)
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring!r} vs {J.ring!r}")
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal([], R)
    S = R.extend([ELIM_VAR], front=True)
    t = S.gen(ELIM_VAR)
    gens = [t * g.change_ring(S) for g in I.generators if g]
    gens += [(1 - t) * g.change_ring(S) for g in J.generators if g]
    order = MonomialOrder("degrevlex", eliminate=(ELIM_VAR,))
    gb = _compute(S, gens, order, budget)
    k = S.index(ELIM_VAR)
    kept = [p.change_ring(R) for p, e in zip(gb.polys, gb.leads) if e[k] == 0]
    return Ideal(kept, R)


def ideal_quotient(I, f: Polynomial, budget: Budget = UNLIMITED) -> Ideal:
    """(I : f) = {h : h f in I}, from I cap (f) divided by f."""
    I = _as_ideal(I)
    if not f:
        raise ValueError("quotient by the zero polynomial")
    R = I.ring
    if I.is_zero():
        return Ideal([], R)
    if membership(f, I, budget=budget):
        return Ideal([R.one()], R)
    cap = intersect(I, Ideal([f], R), budget=budget)
    return Ideal([exact_divide(g, f) for g in cap.generators], R)


def radical_membership(p: Polynomial, I, budget: Budget = UNLIMITED) -> bool:
    """p in rad(I)  iff  1 in I + (1 - z p) in R[z]."""
    I = _as_ideal(I)
    if not p:
        return True
    R = I.ring
    S = R.extend([RABINOWITSCH_VAR])
    z = S.gen(RABINOWITSCH_VAR)
    gens = [g.change_ring(S) for g in I.generators if g] + [1 - z * p.change_ring(S)]
    return _compute(S, gens, DEGREVLEX, budget).is_unit


def krull_dimension(I, budget: Budget = UNLIMITED) -> DimensionResult:
    I = _as_ideal(I)
    if I.is_zero():
        return DimensionResult(I.ring.nvars, I.ring.variables, bool(I.ring.field.characteristic))
    return I.groebner(budget=budget).dimension()


def ideals_equal(I, J, budget: Budget = UNLIMITED) -> bool:
    I, J = _as_ideal(I), _as_ideal(J)
    return all(membership(g, J, budget) for g in I.generators) and \
        all(membership(g, I, budget) for g in J.generators)
