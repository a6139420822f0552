"""
Exact arithmetic over Q, prime fields F_p and extensions F_p[X]/(P).

Univariate polynomials over F_p are plain tuples of ints, lowest degree
first (``(1, 1, 1)`` is X^2 + X + 1).  A FieldContext fixes the field; a
FieldElement is an immutable value tied to one context.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence, Union

from .errors import ContextMismatch, DivisionByZero, FormatError

Coeffs = tuple  # tuple[int, ...], low -> high


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# univariate polynomials over F_p (low -> high coefficient lists)
# ---------------------------------------------------------------------------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list, list]:
    b = _trim([c % p for c in b])
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = _trim([c % p for c in a])
    if len(r) < len(b):
        return [], r
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * (len(r) - len(b) + 1)
    db = len(b) - 1
    for k in range(len(r) - len(b), -1, -1):
        c = r[k + db] * inv_lead % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return _trim(q), _trim(r[:db])


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list:
    return poly_divmod(a, b, p)[1]


def poly_ext_gcd(a: Sequence[int], b: Sequence[int], p: int):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _trim([c % p for c in a]), _trim([c % p for c in b])
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, poly_mul(q, s1, p), p)
        t0, t1 = t1, _poly_sub(t0, poly_mul(q, t1, p), p)
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = [c * inv % p for c in r0]
        s0 = [c * inv % p for c in s0]
        t0 = [c * inv % p for c in t0]
    return r0, s0, t0


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list:
    result = [1]
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _monic_polys(p: int, degree: int) -> Iterator[tuple]:
    """Monic polynomials of the given degree, lower coefficients counted in base p."""
    for k in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            k, r = divmod(k, p)
            coeffs.append(r)
        yield tuple(coeffs) + (1,)


@lru_cache(maxsize=None)
def _is_irreducible_cached(f: tuple, p: int) -> bool:
    deg = len(f) - 1
    if f[0] == 0:
        return deg == 1
    for k in range(1, deg // 2 + 1):
        for g in _monic_polys(p, k):
            if not poly_mod(f, g, p):
                return False
    return True


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division of the monic ``f`` by every monic polynomial of degree <= deg(f)/2."""
    f = tuple(c % p for c in f)
    if len(f) < 2 or f[-1] != 1:
        raise ValueError("is_irreducible expects a monic polynomial of degree >= 1")
    return _is_irreducible_cached(f, p)


@lru_cache(maxsize=None)
def find_irreducible(p: int, degree: int) -> tuple:
    """First monic irreducible polynomial of the given degree in base-p counting order.

    >>> find_irreducible(2, 2)
    (1, 1, 1)
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if degree < 1:
        raise ValueError("degree must be >= 1")
    for f in _monic_polys(p, degree):
        if _is_irreducible_cached(f, p):
            return f
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def format_xpoly(coeffs: Sequence[int], var: str = "X") -> str:
    """Decreasing-degree sparse form, e.g. ``X^2+X+1`` or ``2*X^3+4``."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) if parts else "0"


_XTERM = re.compile(r"^(?:(\d+)\*?)?X(?:\^(\d+))?$|^(\d+)$")


def parse_xpoly(text: str, p: Optional[int] = None) -> tuple:
    text = text.replace(" ", "")
    if not text:
        raise FormatError("empty polynomial in X")
    coeffs: dict[int, int] = {}
    for term in text.split("+"):
        m = _XTERM.match(term)
        if not m:
            raise FormatError(f"bad term {term!r} in polynomial in X")
        if m.group(3) is not None:
            k, c = 0, int(m.group(3))
        else:
            c = int(m.group(1)) if m.group(1) else 1
            k = int(m.group(2)) if m.group(2) else 1
        coeffs[k] = coeffs.get(k, 0) + c
    deg = max(coeffs)
    out = [coeffs.get(k, 0) for k in range(deg + 1)]
    if p:
        out = [c % p for c in out]
    return tuple(_trim(out)) or (0,)


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldContext:
    """Q (characteristic 0), F_p, or F_p[X]/(modulus) with a monic irreducible modulus."""

    characteristic: int
    modulus: Optional[tuple] = None

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not is_prime(p):
            raise ValueError(f"characteristic {p} is neither 0 nor prime")
        if self.modulus is not None:
            if p == 0:
                raise ValueError("extension modulus requires a prime characteristic")
            mod = tuple(int(c) % p for c in self.modulus)
            if len(mod) < 2 or mod[-1] != 1:
                raise ValueError("extension modulus must be monic of degree >= 1")
            if not _is_irreducible_cached(mod, p):
                raise ValueError(f"{format_xpoly(mod)} is reducible over F_{p}")
            object.__setattr__(self, "modulus", mod)

    @classmethod
    def rationals(cls) -> "FieldContext":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldContext":
        return cls(p)

    @classmethod
    def extension(cls, p: int, degree: int) -> "FieldContext":
        """F_{p^degree} built on ``find_irreducible(p, degree)``; degree 1 gives F_p itself."""
        if degree == 1:
            return cls(p)
        return cls(p, find_irreducible(p, degree))

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0 and self.modulus is None

    @property
    def degree(self) -> int:
        """Degree over the prime field (1 for Q and F_p)."""
        return len(self.modulus) - 1 if self.modulus else 1

    @property
    def size(self) -> Optional[int]:
        return self.characteristic ** self.degree if self.characteristic else None

    @cached_property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def gen(self) -> "FieldElement":
        """Class of X in F_p[X]/(P)."""
        if self.modulus is None:
            raise ValueError("only extension fields have a generator X")
        if self.degree == 1:
            return self.element(-self.modulus[0])
        return FieldElement._raw(self, (0, 1) + (0,) * (self.degree - 2))

    def prime_subfield(self) -> "FieldContext":
        return FieldContext(self.characteristic)

    def contains(self, other: "FieldContext") -> bool:
        """True when elements of ``other`` embed canonically (equal, or other is the prime subfield)."""
        return other == self or (other.is_prime_field and other.characteristic == self.characteristic)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx == self:
                return value
            if self.contains(value.ctx):
                return self.element(value.value)
            raise ContextMismatch(f"cannot coerce element of {value.ctx.spec} into {self.spec}")
        p = self.characteristic
        if p == 0:
            return FieldElement._raw(self, Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes mod {p}")
            value = value.numerator * pow(value.denominator, p - 2, p)
        if self.modulus is None:
            return FieldElement._raw(self, int(value) % p)
        deg = self.degree
        if isinstance(value, (tuple, list)):
            coeffs = [int(c) % p for c in value]
            if len(coeffs) > deg:
                coeffs = poly_mod(coeffs, self.modulus, p)
            coeffs = list(coeffs) + [0] * (deg - len(coeffs))
            return FieldElement._raw(self, tuple(coeffs))
        return FieldElement._raw(self, (int(value) % p,) + (0,) * (deg - 1))

    __call__ = element

    def elements(self) -> Iterator["FieldElement"]:
        """All elements of a finite field, residues counted in base p (constant digit first)."""
        if not self.is_finite:
            raise ValueError("Q is infinite")
        p = self.characteristic
        if self.modulus is None:
            for k in range(p):
                yield FieldElement._raw(self, k)
            return
        for digits in product(range(p), repeat=self.degree):
            yield FieldElement._raw(self, tuple(reversed(digits)))

    @property
    def spec(self) -> str:
        if self.characteristic == 0:
            return "Q"
        if self.modulus is None:
            return f"F{self.characteristic}"
        return f"F{self.characteristic}/{format_xpoly(self.modulus)}"

    def __str__(self) -> str:
        return self.spec

    def __repr__(self) -> str:
        return f"FieldContext({self.spec!r})"


def parse_field_spec(text: str) -> FieldContext:
    """Inverse of ``FieldContext.spec``: ``Q``, ``F5`` or ``F2/X^2+X+1``."""
    text = text.strip()
    if text == "Q":
        return FieldContext(0)
    m = re.fullmatch(r"F(\d+)(?:/(.+))?", text)
    if not m:
        raise FormatError(f"bad field spec {text!r}")
    p = int(m.group(1))
    try:
        if m.group(2) is None:
            return FieldContext(p)
        return FieldContext(p, parse_xpoly(m.group(2), p))
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc


Scalar = Union[int, Fraction, "FieldElement"]


class FieldElement:
    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldContext, value=0):
        canon = ctx.element(value)
        self.ctx = ctx
        self.value = canon.value

    @classmethod
    def _raw(cls, ctx, value):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.value = value
        return obj

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx == self.ctx:
                return other
            if self.ctx.contains(other.ctx):
                return self.ctx.element(other.value)
            raise ContextMismatch(f"{self.ctx.spec} vs {other.ctx.spec}")
        if isinstance(other, (int, Fraction)):
            return self.ctx.element(other)
        return NotImplemented

    def is_zero(self) -> bool:
        v = self.value
        if isinstance(v, tuple):
            return not any(v)
        return v == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_constant(self) -> bool:
        v = self.value
        return not isinstance(v, tuple) or not any(v[1:])

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx, p = self.ctx, self.ctx.characteristic
        a, b = self.value, other.value
        if p == 0:
            return FieldElement._raw(ctx, a + b)
        if isinstance(a, tuple):
            return FieldElement._raw(ctx, tuple((x + y) % p for x, y in zip(a, b)))
        return FieldElement._raw(ctx, (a + b) % p)

    __radd__ = __add__

    def __neg__(self):
        ctx, p = self.ctx, self.ctx.characteristic
        a = self.value
        if p == 0:
            return FieldElement._raw(ctx, -a)
        if isinstance(a, tuple):
            return FieldElement._raw(ctx, tuple(-x % p for x in a))
        return FieldElement._raw(ctx, -a % p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx, p = self.ctx, self.ctx.characteristic
        a, b = self.value, other.value
        if p == 0:
            return FieldElement._raw(ctx, a * b)
        if not isinstance(a, tuple):
            return FieldElement._raw(ctx, a * b % p)
        # scalar fast paths keep witness evaluation cheap in large extensions
        if not any(b[1:]):
            c = b[0]
            return FieldElement._raw(ctx, tuple(x * c % p for x in a))
        if not any(a[1:]):
            c = a[0]
            return FieldElement._raw(ctx, tuple(x * c % p for x in b))
        prod_ = poly_mul(a, b, p)
        return ctx.element(tuple(prod_) if prod_ else (0,))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        ctx, p = self.ctx, self.ctx.characteristic
        a = self.value
        if p == 0:
            return FieldElement._raw(ctx, 1 / a)
        if not isinstance(a, tuple):
            return FieldElement._raw(ctx, pow(a, p - 2, p))
        g, s, _ = poly_ext_gcd(a, ctx.modulus, p)
        assert g == [1]
        return ctx.element(tuple(s) if s else (0,))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.ctx.element(other).value
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __str__(self):
        v = self.value
        if isinstance(v, tuple):
            return format_xpoly(_trim(list(v)))
        return str(v)

    def __repr__(self):
        return f"FieldElement({self.ctx.spec}, {self})"
