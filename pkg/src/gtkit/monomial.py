"""Monomial-ideal combinatorics: minimal generators, Hilbert series
numerators and maximal independent variable sets.

Monomials are exponent tuples.  Everything here is exact integer work on
leading-term ideals produced by the Groebner engine.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

Exps = Tuple[int, ...]


def divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Exps]) -> List[Exps]:
    """Minimal generating set of the monomial ideal, sorted by degree."""
    uniq = sorted(set(gens), key=lambda e: (sum(e), e))
    out: List[Exps] = []
    for e in uniq:
        if not any(divides(m, e) for m in out):
            out.append(e)
    return out


# -- Hilbert series numerators, as dicts degree -> coefficient


def _pmul(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _padd(a, b, shift=0, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k + shift] = out.get(k + shift, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def hilbert_numerator(gens: Sequence[Exps]) -> Dict[int, int]:
    """K(t) with HS(R/M) = K(t) / (1-t)^n for the monomial ideal M.

    Pivot recursion K(M) = K(M + p) + t^deg(p) K(M : p) with a pure-power
    pivot taken from a non-pure generator; both branches strictly enlarge
    the ideal, so it terminates.
    """
    return _hn(minimalize(gens))


def _hn(gens: List[Exps]) -> Dict[int, int]:
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    supports = [frozenset(k for k, a in enumerate(g) if a) for g in gens]
    # pairwise coprime generators form a regular sequence
    seen: set = set()
    coprime = True
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = {0: 1}
        for g in gens:
            out = _pmul(out, {0: 1, sum(g): -1})
        return out
    # pivot variable: most frequent among non-pure generators
    counts: Dict[int, int] = {}
    for g, s in zip(gens, supports):
        if len(s) > 1:
            for k in s:
                counts[k] = counts.get(k, 0) + 1
    k = max(sorted(counts), key=lambda v: counts[v])
    exps = sorted(g[k] for g, s in zip(gens, supports) if len(s) > 1 and g[k])
    a = exps[len(exps) // 2]
    n = len(gens[0])
    p = tuple(a if i == k else 0 for i in range(n))
    bigger = minimalize(gens + [p])
    colon = minimalize(tuple(max(x - y, 0) for x, y in zip(g, p)) for g in gens)
    return _padd(_hn(bigger), _hn(colon), shift=a)


def series_times_one_minus_tpow(num: Dict[int, int], d: int) -> Dict[int, int]:
    return _padd(num, num, shift=d, sign=-1)


# -- dimension


def max_independent_set(leads: Sequence[Exps], nvars: int) -> Tuple[int, List[int]]:
    """Krull dimension of k[x]/M and a witness set of variable indices.

    A set S is independent modulo M when no generator of M is supported in
    S.  The maximum |S| equals dim k[x]/M; we find it as the complement of a
    minimum hitting set of the generator supports.  Returns (-1, []) for the
    unit ideal.
    """
    gens = minimalize(leads)
    if any(sum(g) == 0 for g in gens):
        return -1, []
    supports = sorted({frozenset(k for k, a in enumerate(g) if a) for g in gens}, key=len)
    # drop supersets: hitting the smaller set suffices
    mins: List[frozenset] = []
    for s in supports:
        if not any(m <= s for m in mins):
            mins.append(s)
    best = [frozenset(range(nvars))]

    def lower_bound(sets):
        # greedy packing of pairwise disjoint sets
        used: set = set()
        count = 0
        for s in sets:
            if not (s & used):
                used |= s
                count += 1
        return count

    def search(chosen: frozenset, sets: List[frozenset]):
        unhit = [s for s in sets if not (s & chosen)]
        if not unhit:
            if len(chosen) < len(best[0]):
                best[0] = chosen
            return
        if len(chosen) + lower_bound(unhit) >= len(best[0]):
            return
        pivot = min(unhit, key=lambda s: (len(s), sorted(s)))
        for v in sorted(pivot):
            search(chosen | {v}, unhit)

    search(frozenset(), mins)
    witness = [k for k in range(nvars) if k not in best[0]]
    return len(witness), witness
