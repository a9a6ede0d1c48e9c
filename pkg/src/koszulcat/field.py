"""Exact scalar arithmetic for the coefficient fields.

Two kinds of field are supported: the rationals (values are
``fractions.Fraction``) and prime fields GF(p) (values are ints reduced into
``range(p)``).  A ``Field`` instance bundles the arithmetic so matrices,
complexes and structure tables never branch on the characteristic.

Scalars are plain Python objects; a field never wraps them.  Everything that
stores coefficients keyed by basis labels uses the ``vec_*`` helpers at the
bottom (sparse dicts, zero entries always dropped).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator


class Field:
    """Common interface; use the QQ singleton or GF(p)."""

    char: int
    name: str
    size: int | None  # None = infinite

    def coerce(self, x: Any):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def elements(self) -> Iterator:
        """All field elements; only available for finite fields."""
        raise NotImplementedError(f"{self.name} is not finite")

    def random(self, rng, nonzero: bool = False):
        raise NotImplementedError

    def to_json(self, a):
        """JSON-friendly form; parse() inverts it."""
        raise NotImplementedError

    def parse(self, s):
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class _Rationals(Field):
    char = 0
    name = "q"
    size = None
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def random(self, rng, nonzero: bool = False):
        # small numerators/denominators keep downstream elimination readable
        while True:
            v = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 1, 2, 3)))
            if v != 0 or not nonzero:
                return v

    def to_json(self, a):
        return str(a) if a.denominator != 1 else a.numerator

    def parse(self, s):
        return self.coerce(s)


class _PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.char = p
        self.name = f"f{p}"
        self.size = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.char
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.char})")
            return (x.numerator * pow(x.denominator, -1, self.char)) % self.char
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into GF({self.char})")

    def add(self, a, b):
        return (a + b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return (-a) % self.char

    def inv(self, a):
        if a % self.char == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.char)

    def elements(self):
        return iter(range(self.char))

    def random(self, rng, nonzero: bool = False):
        return rng.randint(1 if nonzero else 0, self.char - 1)

    def to_json(self, a):
        return a

    def parse(self, s):
        return self.coerce(s if isinstance(s, int) else Fraction(s))


QQ = _Rationals()

_gf_cache: Dict[int, _PrimeField] = {}


def GF(p: int) -> Field:
    if p not in _gf_cache:
        _gf_cache[p] = _PrimeField(p)
    return _gf_cache[p]


def field_by_name(name: str) -> Field:
    """Resolve 'q', 'f2', 'f3', 'f5', ... to a Field instance."""
    name = name.strip().lower()
    if name in ("q", "qq", "rational", "rationals"):
        return QQ
    if name.startswith("f") and name[1:].isdigit():
        return GF(int(name[1:]))
    raise ValueError(f"unknown field {name!r} (expected q or f<prime>)")


# ---------------------------------------------------------------------------
# Sparse vectors: dict[label -> scalar], zero entries never stored.

Vec = Dict[Any, Any]


def vec(field: Field, items: Iterable[tuple] = ()) -> Vec:
    out: Vec = {}
    for k, v in items:
        v = field.coerce(v)
        if k in out:
            v = field.add(out[k], v)
        if field.is_zero(v):
            out.pop(k, None)
        else:
            out[k] = v
    return out


def vec_add(field: Field, a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, v in b.items():
        s = field.add(out.get(k, field.zero), v)
        if field.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_sub(field: Field, a: Vec, b: Vec) -> Vec:
    return vec_add(field, a, vec_neg(field, b))


def vec_neg(field: Field, a: Vec) -> Vec:
    return {k: field.neg(v) for k, v in a.items()}


def vec_scale(field: Field, s, a: Vec) -> Vec:
    if field.is_zero(s):
        return {}
    return {k: field.mul(s, v) for k, v in a.items()}


def vec_addmul(field: Field, a: Vec, s, b: Vec) -> Vec:
    """a + s*b without building the intermediate."""
    if field.is_zero(s):
        return dict(a)
    out = dict(a)
    for k, v in b.items():
        t = field.add(out.get(k, field.zero), field.mul(s, v))
        if field.is_zero(t):
            out.pop(k, None)
        else:
            out[k] = t
    return out


def vec_bump(field: Field, out: Vec, key, s) -> None:
    """In-place out[key] += s, dropping the entry if it cancels."""
    t = field.add(out.get(key, field.zero), s)
    if field.is_zero(t):
        out.pop(key, None)
    else:
        out[key] = t


def vec_eq(a: Vec, b: Vec) -> bool:
    return a == b
