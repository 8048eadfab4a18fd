"""Sparse multivariate polynomials over QQ or GF(p).

A polynomial is an immutable map from exponent tuples to nonzero field
elements, tagged with its :class:`Ring`.  Exponent tuples are indexed by
the ring's variable list, so the ring's variable order is also the default
variable priority of every monomial order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import RingMismatchError
from .field import QQ, Field

Exps = Tuple[int, ...]


def var_name(i: int, j: int, n: int | None = None) -> str:
    """Canonical name of the matrix entry variable X_ij."""
    if (n is not None and n > 9) or i > 9 or j > 9:
        return f"x{i}_{j}"
    return f"x{i}{j}"


_VAR_RE = re.compile(r"^x(\d+)_(\d+)$|^x(\d)(\d)$")


def parse_var_name(name: str) -> Tuple[int, int]:
    m = _VAR_RE.match(name)
    if not m:
        raise ValueError(f"not a matrix variable: {name!r}")
    a, b, c, d = m.groups()
    return (int(a), int(b)) if a is not None else (int(c), int(d))


class Ring:
    """Polynomial ring k[v_1, ..., v_m] with named variables."""

    __slots__ = ("variables", "field", "_index", "_hash")

    def __init__(self, variables: Iterable[str], field: Field = QQ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        self.variables = variables
        self.field = field
        self._index = {v: k for k, v in enumerate(variables)}
        self._hash = hash((variables, field))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.variables == other.variables and self.field == other.field

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({self.field!r}, [{', '.join(self.variables)}])"

    def __reduce__(self):
        return (Ring, (self.variables, self.field))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in {self!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def zero_exps(self) -> Exps:
        return (0,) * len(self.variables)

    def gen(self, name: str) -> "Polynomial":
        e = [0] * len(self.variables)
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {self.zero_exps(): c} if c else {})

    def monomial(self, exps: Exps, c=1) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: Mapping[Exps, object]) -> "Polynomial":
        conv = self.field.convert
        out = {}
        for e, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.variables, field)

    def extend(self, names: Sequence[str], front: bool = False) -> "Ring":
        names = tuple(names)
        return Ring(names + self.variables if front else self.variables + names, self.field)

    def sub_ring(self, names: Iterable[str]) -> "Ring":
        keep = set(names)
        return Ring([v for v in self.variables if v in keep], self.field)

    def to_json(self):
        return {"variables": list(self.variables), "field": self.field.to_json()}


def matrix_ring(n: int, field: Field = QQ) -> Ring:
    """k[x_ij : 1 <= i, j <= n] with row-major variable priority."""
    return Ring([var_name(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1)], field)


# ---------------------------------------------------------------- orders


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex or lex, with an optional variable priority (highest first).

    ``eliminate`` turns the order into a block order in which the listed
    variables dominate everything else; each block is compared by ``kind``.
    Variables missing from ``priority`` follow in ring order.
    """

    kind: str = "degrevlex"
    priority: Tuple[str, ...] | None = None
    eliminate: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def encoding(self, ring: Ring) -> "Encoding":
        return _encoding(self, ring)

    def key(self, ring: Ring):
        return _encoding(self, ring).enc

    def to_json(self):
        d = {"kind": self.kind}
        if self.priority:
            d["priority"] = list(self.priority)
        if self.eliminate:
            d["eliminate"] = list(self.eliminate)
        return d


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class Encoding:
    """Order-preserving packing of exponent tuples into Python ints.

    Each variable (and each block degree, for degrevlex) gets a fixed-width
    bit field, most significant first, so integer comparison of codes is the
    monomial order.  The packing is affine: ``enc(a+b) = enc(a) + enc(b) - Z``
    with ``Z = enc(0)``, so shifting a polynomial by a monomial quotient is a
    single integer addition per term.
    """

    WIDTH = 12
    BIAS = 1 << (WIDTH - 1)

    def __init__(self, order: MonomialOrder, ring: Ring):
        pri = [ring.index(v) for v in (order.priority or ()) if v in ring]
        seen = set(pri)
        perm = pri + [k for k in range(ring.nvars) if k not in seen]
        elim = {ring.index(v) for v in order.eliminate if v in ring}
        blocks = [[k for k in perm if k in elim], [k for k in perm if k not in elim]]
        self.blocks = [b for b in blocks if b]
        self.kind = order.kind
        self.nvars = ring.nvars
        # fields from most to least significant: (block index | None, variable index | None)
        fields = []
        for bi, b in enumerate(self.blocks):
            if self.kind == "degrevlex":
                fields.append(("deg", b))
                fields.extend(("neg", k) for k in reversed(b))
            else:
                fields.extend(("pos", k) for k in b)
        self.fields = fields
        w = self.WIDTH
        nf = len(fields)
        self.shifts = [w * (nf - 1 - i) for i in range(nf)]
        self._var_fields = [(sh, kind, arg) for (kind, arg), sh in zip(fields, self.shifts)]
        self.zero_code = self.enc((0,) * ring.nvars)
        self._cache_dec: Dict[int, Exps] = {}

    def enc(self, e: Exps) -> int:
        code = 0
        bias = self.BIAS
        for sh, kind, arg in self._var_fields:
            if kind == "pos":
                v = e[arg]
            elif kind == "neg":
                v = bias - e[arg]
            else:
                v = sum(e[k] for k in arg)
            code |= v << sh
        if any(a >= bias for a in e) or sum(e) >= 2 * bias:
            raise OverflowError("exponent too large for the monomial packing")
        return code

    def dec(self, code: int) -> Exps:
        got = self._cache_dec.get(code)
        if got is None:
            e = [0] * self.nvars
            mask = (1 << self.WIDTH) - 1
            bias = self.BIAS
            for sh, kind, arg in self._var_fields:
                v = (code >> sh) & mask
                if kind == "pos":
                    e[arg] = v
                elif kind == "neg":
                    e[arg] = bias - v
            got = tuple(e)
            if len(self._cache_dec) < 1_000_000:
                self._cache_dec[code] = got
        return got

    def degree(self, code: int) -> int:
        return sum(self.dec(code))


@lru_cache(maxsize=256)
def _encoding(order: MonomialOrder, ring: Ring) -> Encoding:
    return Encoding(order, ring)


# ---------------------------------------------------------------- polynomials


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Dict[Exps, object]):
        # trusted constructor: terms already normalized, no zero coefficients
        self.ring = ring
        self.terms = terms
        self._hash = None

    def __reduce__(self):
        return (Polynomial, (self.ring, self.terms))

    # -- basic protocol
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction, str)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # -- arithmetic
    def __add__(self, other):
        other = self._check(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = norm(s + c)
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Polynomial(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        norm = self.ring.field.norm
        out: Dict[Exps, object] = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        res = {}
        for e, c in out.items():
            c = norm(c)
            if c:
                res[e] = c
        return Polynomial(self.ring, res)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F.convert(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.norm(v * c) for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- degrees and forms
    def total_degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self):
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> Tuple[bool, int]:
        """(True, d) if every term has total degree d. Zero reports (True, 0)."""
        degs = self.degrees()
        if not degs:
            return True, 0
        if len(degs) == 1:
            return True, degs.pop()
        return False, max(degs)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def leading_form(self) -> "Polynomial":
        if not self.terms:
            raise ValueError("leading form of the zero polynomial")
        return self.homogeneous_part(self.total_degree())

    def constant_term(self):
        return self.terms.get(self.ring.zero_exps(), self.ring.field.zero)

    def is_constant(self) -> bool:
        z = self.ring.zero_exps()
        return all(e == z for e in self.terms)

    def support(self) -> set:
        """Names of the variables that occur."""
        used = set()
        for e in self.terms:
            for k, a in enumerate(e):
                if a:
                    used.add(k)
        return {self.ring.variables[k] for k in used}

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        """(exponents, coefficient) of the largest term under ``order``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key(self.ring)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    # -- substitution
    def substitute_zero(self, names: Iterable[str]) -> "Polynomial":
        """P^X: set every variable in ``names`` to zero."""
        idx = [self.ring.index(v) for v in names]
        if not idx:
            return self
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if not any(e[k] for k in idx)})

    def evaluate(self, point):
        """Evaluate at a point given as a dict name -> value or a sequence in ring order."""
        F = self.ring.field
        if isinstance(point, Mapping):
            vals = [F.convert(point[v]) if v in point else None for v in self.ring.variables]
        else:
            vals = [F.convert(v) for v in point]
            if len(vals) != self.ring.nvars:
                raise ValueError("point has wrong length")
        total = F.zero
        for e, c in self.terms.items():
            t = c
            for k, a in enumerate(e):
                if a:
                    v = vals[k]
                    if v is None:
                        raise KeyError(f"no value for {self.ring.variables[k]}")
                    t = t * v ** a
            total = total + t
        return F.norm(total)

    def diff(self, name: str) -> "Polynomial":
        k = self.ring.index(name)
        norm = self.ring.field.norm
        out = {}
        for e, c in self.terms.items():
            a = e[k]
            if a:
                c2 = norm(c * a)
                if c2:
                    out[e[:k] + (a - 1,) + e[k + 1:]] = c2
        return Polynomial(self.ring, out)

    def change_ring(self, ring: Ring) -> "Polynomial":
        """Re-express in a ring that contains every variable actually used.

        The coefficient field may differ; coefficients are converted (e.g.
        reduction QQ -> GF(p)).
        """
        if ring == self.ring:
            return self
        pos = []
        for k, v in enumerate(self.ring.variables):
            pos.append(ring._index.get(v))
        conv = ring.field.convert
        out: Dict[Exps, object] = {}
        m = ring.nvars
        for e, c in self.terms.items():
            new = [0] * m
            for k, a in enumerate(e):
                if a:
                    j = pos[k]
                    if j is None:
                        raise RingMismatchError(f"variable {self.ring.variables[k]} not in target ring")
                    new[j] = a
            c = conv(c)
            if c:
                t = tuple(new)
                out[t] = ring.field.norm(out.get(t, 0) + c)
                if not out[t]:
                    del out[t]
        return Polynomial(ring, out)

    def reduce_mod(self, field: Field) -> "Polynomial":
        return self.change_ring(self.ring.with_field(field))

    # -- printing
    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        key = order.key(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def to_text(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        fmt = self.ring.field.format
        names = self.ring.variables
        parts = []
        for e, c in self.sorted_terms(order):
            s = fmt(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "*".join(names[k] if a == 1 else f"{names[k]}^{a}" for k, a in enumerate(e) if a)
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


def exact_divide(p: Polynomial, f: Polynomial) -> Polynomial:
    """p / f, raising ValueError if f does not divide p."""
    if f.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = p.ring
    F = ring.field
    fe, fc = f.leading_term()
    finv = F.inv(fc)
    rem = p
    q_terms: Dict[Exps, object] = {}
    while rem.terms:
        e, c = rem.leading_term()
        if any(a < b for a, b in zip(e, fe)):
            raise ValueError("not divisible")
        qe = tuple(a - b for a, b in zip(e, fe))
        qc = F.norm(c * finv)
        q_terms[qe] = qc
        rem = rem - Polynomial(ring, {qe: qc}) * f
    return Polynomial(ring, q_terms)


# ---------------------------------------------------------------- homomorphisms


class RingHom:
    """Ring homomorphism determined by the images of the source variables."""

    __slots__ = ("source", "target", "images", "name")

    def __init__(self, source: Ring, target: Ring, images: Mapping[str, Polynomial], name: str = ""):
        self.source = source
        self.target = target
        imgs = {}
        for v in source.variables:
            if v in images:
                img = images[v]
                if isinstance(img, str):
                    img = target.parse(img)
                elif not isinstance(img, Polynomial):
                    img = target.constant(img)
                elif img.ring != target:
                    img = img.change_ring(target)
                imgs[v] = img
        self.images = imgs
        self.name = name

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_hom(self, p)

    def compose(self, inner: "RingHom") -> "RingHom":
        """self o inner."""
        return RingHom(inner.source, self.target, {v: self(img) for v, img in inner.images.items()},
                       name=f"{self.name}.{inner.name}")

    def __repr__(self):
        body = ", ".join(f"{v}->{img}" for v, img in self.images.items())
        return f"RingHom({self.name or '?'}: {body})"


def identity_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ring, {v: ring.gen(v) for v in ring.variables}, name="id")


def apply_hom(h: RingHom, p: Polynomial) -> Polynomial:
    if p.ring != h.source:
        # polynomials from a subring with matching names are accepted
        p = p.change_ring(h.source)
    src = h.source.variables
    imgs = []
    for v in src:
        imgs.append(h.images.get(v))
    T = h.target
    F = T.field
    acc: Dict[Exps, object] = {}
    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(k, a):
        key = (k, a)
        got = powers.get(key)
        if got is None:
            got = imgs[k] ** a
            powers[key] = got
        return got

    for e, c in p.terms.items():
        term = T.constant(c)
        for k, a in enumerate(e):
            if a:
                if imgs[k] is None:
                    raise KeyError(f"variable {src[k]} outside the domain of {h.name or 'hom'}")
                term = term * power(k, a)
        for te, tc in term.terms.items():
            acc[te] = acc.get(te, 0) + tc
    out = {}
    for e, c in acc.items():
        c = F.norm(c)
        if c:
            out[e] = c
    return Polynomial(T, out)


# ---------------------------------------------------------------- parsing


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


class _Parser:
    """Recursive-descent parser: sums of products of powers, with parentheses."""

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif name is not None:
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.product()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.product()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def product(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.power()  # implicit product
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, v = self.take()
            if k != "num" or "/" in v:
                raise ValueError("exponent must be a nonnegative integer")
            return base ** int(v)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(Fraction(val))
        if kind == "var":
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            p = self.expr()
            k, v = self.take()
            if v != ")":
                raise ValueError("missing ')'")
            return p
        if kind == "op" and val == "-":
            return -self.power()
        raise ValueError(f"unexpected token {val!r}")
