"""
Sparse multivariate polynomials and polynomial systems.

Monomials are exponent tuples; a MultiPoly maps them to nonzero
FieldElements.  Values are immutable: arithmetic always returns new
objects.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from .errors import ArityMismatch, ContextMismatch, NotHomogeneous, VariableCollision
from .field import FieldContext, FieldElement


class _AnyDegree:
    """Marker returned by ``is_homogeneous`` for the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()


def total_degree(exps: Sequence[int]) -> int:
    return sum(exps)


class MultiPoly:
    __slots__ = ("ctx", "num_vars", "terms")

    def __init__(self, ctx: FieldContext, num_vars: int, terms: Optional[Mapping] = None):
        if num_vars < 1:
            raise ValueError("a polynomial needs at least one variable slot")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise ArityMismatch(f"monomial {exps} has {len(exps)} exponents, expected {num_vars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = ctx.element(c)
            if exps in clean:
                c = clean[exps] + c
            if c.is_zero():
                clean.pop(exps, None)
            else:
                clean[exps] = c
        self.ctx = ctx
        self.num_vars = num_vars
        self.terms = clean

    @classmethod
    def _raw(cls, ctx, num_vars, terms):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.num_vars = num_vars
        obj.terms = terms
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, ctx, num_vars):
        return cls._raw(ctx, num_vars, {})

    @classmethod
    def constant(cls, ctx, num_vars, c=1):
        return cls(ctx, num_vars, {(0,) * num_vars: c})

    @classmethod
    def var(cls, ctx, num_vars, i, power=1):
        if not 0 <= i < num_vars:
            raise ArityMismatch(f"variable x{i} out of range for {num_vars} variables")
        exps = [0] * num_vars
        exps[i] = power
        return cls._raw(ctx, num_vars, {tuple(exps): ctx.one})

    @classmethod
    def monomial(cls, ctx, num_vars, exps, c=1):
        return cls(ctx, num_vars, {tuple(exps): c})

    # inspection -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> set:
        return {i for exps in self.terms for i, e in enumerate(exps) if e}

    def coefficient(self, exps) -> FieldElement:
        return self.terms.get(tuple(exps), self.ctx.zero)

    def __len__(self):
        return len(self.terms)

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "MultiPoly") -> FieldContext:
        if other.num_vars != self.num_vars:
            raise ArityMismatch(f"{self.num_vars} vs {other.num_vars} variables")
        if other.ctx == self.ctx:
            return self.ctx
        if self.ctx.contains(other.ctx):
            return self.ctx
        if other.ctx.contains(self.ctx):
            return other.ctx
        raise ContextMismatch(f"{self.ctx.spec} vs {other.ctx.spec}")

    def _promote(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, FieldElement)) or hasattr(other, "numerator"):
            return MultiPoly.constant(self.ctx, self.num_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        ctx = self._check(other)
        out = {e: ctx.element(c) for e, c in self.terms.items()}
        for e, c in other.terms.items():
            s = out[e] + c if e in out else ctx.element(c)
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly._raw(ctx, self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.ctx, self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        ctx = self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = ctx.element(c1 * c2) if c1.ctx != ctx else c1 * c2
                if e in out:
                    c = out[e] + c
                out[e] = c
        return MultiPoly._raw(ctx, self.num_vars, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.ctx, self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.num_vars == other.num_vars and self.terms == other.terms
        if isinstance(other, int):
            return self == MultiPoly.constant(self.ctx, self.num_vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # transformations --------------------------------------------------------

    def lift(self, ctx: FieldContext) -> "MultiPoly":
        """Same polynomial with coefficients viewed in a field containing the current one."""
        if ctx == self.ctx:
            return self
        if not ctx.contains(self.ctx):
            raise ContextMismatch(f"{self.ctx.spec} does not embed in {ctx.spec}")
        return MultiPoly._raw(ctx, self.num_vars, {e: ctx.element(c) for e, c in self.terms.items()})

    def extend_vars(self, num_vars: int, positions: Optional[Sequence[int]] = None) -> "MultiPoly":
        """Re-embed into ``num_vars`` variables; variable i moves to ``positions[i]``."""
        if positions is None:
            positions = range(self.num_vars)
        positions = list(positions)
        if len(positions) != self.num_vars or max(positions, default=-1) >= num_vars:
            raise ArityMismatch("bad variable placement")
        out = {}
        for exps, c in self.terms.items():
            new = [0] * num_vars
            for i, e in zip(positions, exps):
                new[i] += e
            out[tuple(new)] = c
        return MultiPoly._raw(self.ctx, num_vars, out)

    def specialize(self, i: int, value) -> "MultiPoly":
        """Substitute a scalar for variable i (the slot stays, with exponent 0)."""
        value = self.ctx.element(value)
        out: dict = {}
        for exps, c in self.terms.items():
            e = exps[i]
            key = exps[:i] + (0,) + exps[i + 1:]
            term = c * value ** e if e else c
            out[key] = out[key] + term if key in out else term
        return MultiPoly._raw(self.ctx, self.num_vars, {e: c for e, c in out.items() if not c.is_zero()})

    def __repr__(self):
        return f"MultiPoly({self.ctx.spec}, {self.num_vars}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _sorted_terms(f: MultiPoly):
    return sorted(f.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))


def format_poly(f: MultiPoly, coeff_fmt=None) -> str:
    """Human-oriented rendering, e.g. ``x0^2 - x1^2``."""
    if f.is_zero():
        return "0"
    parts = []
    for exps, c in _sorted_terms(f):
        mono = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e)
        cs = coeff_fmt(c) if coeff_fmt else str(c)
        if f.ctx.characteristic == 0 and cs.startswith("-"):
            sign, cs = "-", cs[1:]
        else:
            sign = "+"
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"({cs})*{mono}" if "+" in cs else f"{cs}*{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def is_homogeneous(f: MultiPoly):
    """Common total degree of all terms, ``ANY_DEGREE`` for zero, ``None`` if mixed."""
    degrees = {sum(e) for e in f.terms}
    if not degrees:
        return ANY_DEGREE
    if len(degrees) == 1:
        return degrees.pop()
    return None


def evaluate(f: MultiPoly, point: Sequence) -> FieldElement:
    """Exact value of ``f`` at ``point``; coordinates may live in an extension of f's field."""
    if len(point) != f.num_vars:
        raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has {f.num_vars} variables")
    ctx = f.ctx
    for x in point:
        if isinstance(x, FieldElement) and x.ctx != ctx:
            if x.ctx.contains(ctx):
                ctx = x.ctx
            elif not ctx.contains(x.ctx):
                raise ContextMismatch(f"coordinate in {x.ctx.spec}, polynomial over {f.ctx.spec}")
    xs = [ctx.element(x) for x in point]
    powers: list[dict] = [{} for _ in xs]
    total = ctx.zero
    for exps, c in f.terms.items():
        term = ctx.element(c) if c.ctx != ctx else c
        for i, e in enumerate(exps):
            if e:
                cache = powers[i]
                v = cache.get(e)
                if v is None:
                    v = cache[e] = xs[i] ** e
                term = term * v
        total = total + term
    return total


def homogenize(f: MultiPoly, fresh: int) -> MultiPoly:
    """Pad every term with powers of variable ``fresh`` up to the total degree of f."""
    if not 0 <= fresh < f.num_vars:
        raise ArityMismatch(f"variable x{fresh} out of range")
    if fresh in f.variables():
        raise VariableCollision(f"x{fresh} already occurs in the polynomial")
    d = f.degree()
    out = {}
    for exps, c in f.terms.items():
        e = list(exps)
        e[fresh] = d - sum(exps)
        out[tuple(e)] = c
    return MultiPoly._raw(f.ctx, f.num_vars, out)


class PolySystem:
    """An ordered list of polynomials over one field in one set of variables."""

    __slots__ = ("ctx", "num_vars", "components")

    def __init__(self, ctx: FieldContext, num_vars: int, components: Iterable[MultiPoly]):
        comps = []
        for f in components:
            if f.num_vars != num_vars:
                raise ArityMismatch(f"component has {f.num_vars} variables, system has {num_vars}")
            comps.append(f.lift(ctx))
        self.ctx = ctx
        self.num_vars = num_vars
        self.components = tuple(comps)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        return (
            isinstance(other, PolySystem)
            and self.ctx == other.ctx
            and self.num_vars == other.num_vars
            and self.components == other.components
        )

    def is_square(self) -> bool:
        return len(self.components) == self.num_vars

    def is_homogeneous(self) -> bool:
        return all(is_homogeneous(f) is not None for f in self.components)

    def degrees(self) -> list:
        """Per-component degree; the zero polynomial counts as degree 1."""
        out = []
        for k, f in enumerate(self.components):
            d = is_homogeneous(f)
            if d is None:
                raise NotHomogeneous(f"component {k} is not homogeneous")
            out.append(1 if d is ANY_DEGREE else d)
        return out

    def evaluate(self, point) -> list:
        return [evaluate(f, point) for f in self.components]

    def is_root(self, point) -> bool:
        return all(v.is_zero() for v in self.evaluate(point))

    def lift(self, ctx: FieldContext) -> "PolySystem":
        return PolySystem(ctx, self.num_vars, self.components)

    def __repr__(self):
        return f"PolySystem({self.ctx.spec}, vars={self.num_vars}, {len(self)} components)"


def system_degree(sys: PolySystem) -> int:
    """1 + sum(d_i - 1) over the components."""
    degrees = sys.degrees()
    if any(d < 1 for d in degrees):
        raise NotHomogeneous("components must have degree >= 1")
    return 1 + sum(d - 1 for d in degrees)
