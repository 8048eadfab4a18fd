"""Exact rank computations over QQ and GF(p) on sparse rows."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List

from .field import Field


def rank(rows: Iterable[Dict[int, object]], field: Field) -> int:
    """Rank of the matrix whose rows are sparse dicts column -> value."""
    p = field.characteristic
    pivots: Dict[int, Dict[int, object]] = {}
    r = 0
    for row in rows:
        if p:
            v = {c: x % p for c, x in row.items() if x % p}
        else:
            v = {c: Fraction(x) for c, x in row.items() if x}
        while v:
            c = min(v)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(v[c], -1, p) if p else 1 / v[c]
                if p:
                    pivots[c] = {k: x * inv % p for k, x in v.items()}
                else:
                    pivots[c] = {k: x * inv for k, x in v.items()}
                r += 1
                break
            f = v[c]
            for k, x in piv.items():
                y = v.get(k, 0) - f * x
                if p:
                    y %= p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return r


def dense_rank(M: List[List[object]], field: Field) -> int:
    return rank(({j: x for j, x in enumerate(row) if x} for row in M), field)
