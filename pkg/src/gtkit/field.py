"""Coefficient fields: the rationals and prime fields F_p."""
from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Base class. Elements are plain Python numbers (Fraction or int)."""

    name = "?"
    characteristic = 0
    exact = True

    def __call__(self, x):
        return self.convert(x)

    def __eq__(self, other):
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic))

    def __repr__(self):
        return self.name


class Rationals(Field):
    name = "QQ"
    characteristic = 0
    exact = True
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    @staticmethod
    def norm(x):
        return x

    @staticmethod
    def inv(x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def div(self, a, b):
        return Fraction(a) / b

    def format(self, c) -> str:
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

    def to_json(self):
        return {"kind": "QQ"}


class PrimeField(Field):
    """F_p with elements represented by ints in [0, p)."""

    exact = False

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p) or p <= 2:
            raise ValueError(f"prime field needs an odd prime, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def convert(self, x) -> int:
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, str):
            x = Fraction(x.strip())
        x = Fraction(x)
        den = x.denominator % p
        if den == 0:
            raise ZeroDivisionError(f"denominator {x.denominator} not invertible mod {p}")
        return x.numerator * pow(den, -1, p) % p

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def format(self, c) -> str:
        # symmetric representative keeps printed systems readable
        c %= self.p
        return str(c - self.p) if c > self.p // 2 else str(c)

    def to_json(self):
        return {"kind": "Fp", "prime": self.p}


QQ = Rationals()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_spec(kind: str, prime: int = DEFAULT_PRIME) -> Field:
    kind = kind.lower()
    if kind in ("q", "qq", "rational", "rationals"):
        return QQ
    if kind in ("fp", "gf", "modular"):
        return GF(prime)
    raise ValueError(f"unknown field {kind!r}")


def field_from_json(obj) -> Field:
    if obj.get("kind") == "QQ":
        return QQ
    return GF(int(obj["prime"]))
