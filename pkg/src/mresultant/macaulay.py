"""
Macaulay matrices of a square homogeneous system.

Rows and columns are indexed by the degree-d monomials in reverse lex
order (see ``ordering``), d being the system degree.  The row of x^alpha
holds (x^alpha / x_i^{d_i}) * f_i where i is the first variable, in the
chosen variable ordering, whose pure power x_i^{d_i} divides x^alpha.
The variable ordering only changes that choice of i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionGuardExceeded, IndexOutOfRange, NotSquare
from .field import FieldElement
from .ordering import slice_count, slice_table, unrank
from .polysys import PolySystem, system_degree
from .succinct import EntryOracleMatrix

DEFAULT_DENSE_GUARD = 5000


@dataclass(frozen=True)
class VariableOrdering:
    """Variable indices (0-based) listed from the ≺-smallest to the ≺-largest."""

    precedence: tuple

    def __post_init__(self):
        object.__setattr__(self, "precedence", tuple(self.precedence))
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise ValueError(f"{self.precedence} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.precedence)

    def __str__(self):
        return " < ".join(f"x{i}" for i in self.precedence)


def cyclic_orderings(n: int) -> list:
    """The n rotations of x_0 < x_1 < ... < x_{n-1}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = list(range(n))
    return [VariableOrdering(tuple(base[k:] + base[:k])) for k in range(n)]


@dataclass(frozen=True)
class MacaulaySpec:
    system: PolySystem
    ordering: VariableOrdering
    degrees: tuple = field(init=False)
    d: int = field(init=False)
    dim: int = field(init=False)

    def __post_init__(self):
        sys = self.system
        if not sys.is_square():
            raise NotSquare(f"{len(sys)} polynomials in {sys.num_vars} variables")
        if self.ordering.n != sys.num_vars:
            raise ValueError("ordering size does not match the number of variables")
        object.__setattr__(self, "degrees", tuple(sys.degrees()))
        d = system_degree(sys)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "dim", slice_count(sys.num_vars, d))

    @property
    def n(self) -> int:
        return self.system.num_vars

    @classmethod
    def build(cls, system: PolySystem, ordering=0) -> "MacaulaySpec":
        """Accepts an ordering object, or an int selecting one of the cyclic orderings."""
        if isinstance(ordering, int):
            ordering = cyclic_orderings(system.num_vars)[ordering]
        return cls(system, ordering)


def macaulay_dimension(system: PolySystem) -> int:
    """|Mon_d| without building anything."""
    return slice_count(system.num_vars, system_degree(system))


def row_selector(spec: MacaulaySpec, alpha: Sequence[int]) -> tuple:
    """(component index i, exponents of x^alpha / x_i^{d_i})."""
    for i in spec.ordering.precedence:
        if alpha[i] >= spec.degrees[i]:
            quotient = list(alpha)
            quotient[i] -= spec.degrees[i]
            return i, tuple(quotient)
    raise AssertionError(f"no pure power divides x^{tuple(alpha)}; system degree is inconsistent")


def macaulay_entry(spec: MacaulaySpec, row: int, col: int) -> FieldElement:
    """Single entry computed from the indices alone; nothing is materialized."""
    if not (0 <= row < spec.dim and 0 <= col < spec.dim):
        raise IndexOutOfRange(f"({row}, {col}) outside a {spec.dim}x{spec.dim} matrix")
    alpha = unrank(spec.n, spec.d, row)
    beta = unrank(spec.n, spec.d, col)
    i, quotient = row_selector(spec, alpha)
    diff = tuple(b - q for b, q in zip(beta, quotient))
    if min(diff) < 0:
        return spec.system.ctx.zero
    return spec.system[i].coefficient(diff)


def entry_oracle(spec: MacaulaySpec) -> EntryOracleMatrix:
    return EntryOracleMatrix(spec.dim, spec.dim, lambda r, c: macaulay_entry(spec, r, c))


def macaulay_rows(spec: MacaulaySpec, guard: int = DEFAULT_DENSE_GUARD) -> list:
    """Sparse rows ``{column: entry}`` built by multiplying each f_i by its monomial."""
    if spec.dim > guard:
        raise DimensionGuardExceeded(f"Macaulay dimension {spec.dim} exceeds guard {guard}")
    tuples, index = slice_table(spec.n, spec.d)
    rows = []
    for alpha in tuples:
        i, quotient = row_selector(spec, alpha)
        row = {}
        for exps, c in spec.system[i].terms.items():
            beta = tuple(q + e for q, e in zip(quotient, exps))
            row[index[beta]] = c
        rows.append(row)
    return rows


def macaulay_dense(spec: MacaulaySpec, guard: int = DEFAULT_DENSE_GUARD) -> list:
    zero = spec.system.ctx.zero
    dense = []
    for row in macaulay_rows(spec, guard):
        line = [zero] * spec.dim
        for c, v in row.items():
            line[c] = v
        dense.append(line)
    return dense
