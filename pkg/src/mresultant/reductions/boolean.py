"""
CNF formulas, Boolean equation systems, and the degree-2 homogeneous
gadgets that turn an equation system into a polynomial system.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence, Union

from ..errors import InvalidAssignment
from ..field import FieldContext
from ..polysys import MultiPoly, PolySystem


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for c in clauses:
            if not c:
                raise ValueError("empty clause")
            if len(c) > 3:
                raise ValueError(f"clause {c} has more than 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def models(self) -> list:
        return [a for a in product((False, True), repeat=self.num_vars) if self.satisfied_by(a)]

    def is_satisfiable(self) -> bool:
        return any(self.satisfied_by(a) for a in product((False, True), repeat=self.num_vars))


@dataclass(frozen=True)
class Equation:
    """``X_target = True``, ``X_target = NOT X_a`` or ``X_target = X_a OR X_b``."""

    kind: str
    target: int
    args: tuple = ()

    def __post_init__(self):
        arity = {"true": 0, "not": 1, "or": 2}
        if self.kind not in arity:
            raise ValueError(f"unknown equation kind {self.kind!r}")
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != arity[self.kind]:
            raise ValueError(f"{self.kind} takes {arity[self.kind]} arguments")

    def holds(self, value: Callable[[int], bool]) -> bool:
        if self.kind == "true":
            return value(self.target)
        if self.kind == "not":
            return value(self.target) == (not value(self.args[0]))
        return value(self.target) == (value(self.args[0]) or value(self.args[1]))

    def __str__(self):
        if self.kind == "true":
            return f"x{self.target} = true"
        if self.kind == "not":
            return f"x{self.target} = not x{self.args[0]}"
        return f"x{self.target} = or x{self.args[0]} x{self.args[1]}"


@dataclass(frozen=True)
class BoolSys:
    num_vars: int
    equations: tuple

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        for eq in self.equations:
            for i in (eq.target,) + eq.args:
                if not 1 <= i <= self.num_vars:
                    raise ValueError(f"variable {i} out of range 1..{self.num_vars}")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.num_vars:
            return False
        return all(eq.holds(lambda i: bool(assignment[i - 1])) for eq in self.equations)

    def models(self) -> list:
        return [a for a in product((False, True), repeat=self.num_vars) if self.satisfied_by(a)]

    def is_satisfiable(self) -> bool:
        return bool(self.models())


def sat_to_boolsys(phi: CnfFormula) -> tuple:
    """Equisatisfiable BoolSys and a map from models of phi to models of it.

    Variables 1..v are the CNF variables.  A fresh variable T is asserted
    true and every clause of two or three literals is written as
    ``T = L1 OR L2`` (a three-literal clause first gets ``C = L2 OR L3``).
    A negated literal inside such a clause goes through a shared variable
    ``N_j = NOT X_j``; a negative unit clause is ``T = NOT X_j`` and a
    positive one is ``X_j = True``.
    """
    v = phi.num_vars
    eqs: list = []
    nxt = v + 1
    truth = None
    negs: dict = {}
    ors: list = []  # (C, lit2, lit3)

    def need_truth():
        nonlocal truth, nxt
        if truth is None:
            truth = nxt
            nxt += 1
            eqs.append(Equation("true", truth))
        return truth

    def var_of(lit: int) -> int:
        nonlocal nxt
        if lit > 0:
            return lit
        j = -lit
        if j not in negs:
            negs[j] = nxt
            nxt += 1
            eqs.append(Equation("not", negs[j], (j,)))
        return negs[j]

    for clause in phi.clauses:
        if len(clause) == 1:
            (lit,) = clause
            if lit > 0:
                eqs.append(Equation("true", lit))
            else:
                eqs.append(Equation("not", need_truth(), (-lit,)))
            continue
        t = need_truth()
        first = var_of(clause[0])
        if len(clause) == 2:
            eqs.append(Equation("or", t, (first, var_of(clause[1]))))
        else:
            a, b = var_of(clause[1]), var_of(clause[2])
            c = nxt
            nxt += 1
            eqs.append(Equation("or", c, (a, b)))
            ors.append((c, clause[1], clause[2]))
            eqs.append(Equation("or", t, (first, c)))

    boolsys = BoolSys(nxt - 1, tuple(eqs))

    def mapper(assignment: Sequence[bool]) -> tuple:
        if len(assignment) != v:
            raise InvalidAssignment(f"expected {v} values")
        full = list(bool(a) for a in assignment) + [False] * (nxt - 1 - v)
        if truth is not None:
            full[truth - 1] = True
        for j, nj in negs.items():
            full[nj - 1] = not full[j - 1]

        def lit_value(lit):
            return full[abs(lit) - 1] == (lit > 0)

        for c, l2, l3 in ors:
            full[c - 1] = lit_value(l2) or lit_value(l3)
        return tuple(full)

    return boolsys, mapper


def _field(char_or_ctx: Union[int, FieldContext]) -> FieldContext:
    if isinstance(char_or_ctx, FieldContext):
        return char_or_ctx
    return FieldContext(char_or_ctx)


def consistency_gadget(ctx: FieldContext, n: int, i: int) -> MultiPoly:
    x0, xi = MultiPoly.var(ctx, n + 1, 0), MultiPoly.var(ctx, n + 1, i)
    if ctx.characteristic == 2:
        return x0 * xi - xi * xi
    return x0 * x0 - xi * xi


def equation_gadget(ctx: FieldContext, n: int, eq: Equation) -> MultiPoly:
    x = [MultiPoly.var(ctx, n + 1, k) for k in range(n + 1)]
    x0, xi = x[0], x[eq.target]
    if ctx.characteristic == 2:
        if eq.kind == "true":
            return x0 * (xi + x0)
        if eq.kind == "not":
            return x0 * (xi + x[eq.args[0]] + x0)
        xj, xk = x[eq.args[0]], x[eq.args[1]]
        return xi * xi + xj * xk + x0 * (xj + xk)
    if eq.kind == "true":
        return x0 * (xi + x0)
    if eq.kind == "not":
        return x0 * (xi + x[eq.args[0]])
    xj, xk = x[eq.args[0]], x[eq.args[1]]
    return (xi + x0) * (xi + x0) - (xj + x0) * (xk + x0)


def boolsys_to_h2n(B: BoolSys, char: Union[int, FieldContext] = 0) -> PolySystem:
    """n consistency gadgets, then one gadget per equation, in x0..xn."""
    ctx = _field(char)
    n = B.num_vars
    comps = [consistency_gadget(ctx, n, i) for i in range(1, n + 1)]
    comps += [equation_gadget(ctx, n, eq) for eq in B.equations]
    return PolySystem(ctx, n + 1, comps)


def encode_assignment(assignment: Sequence[bool], ctx: FieldContext) -> tuple:
    """(a0, ..., an) with a0 = 1; true is -a0 (char != 2) or a0 (char 2), false is a0 or 0."""
    if ctx.characteristic == 2:
        xs = [1] + [1 if a else 0 for a in assignment]
    else:
        xs = [1] + [-1 if a else 1 for a in assignment]
    return tuple(ctx.element(v) for v in xs)


def decode_point(point: Sequence, char: int) -> tuple:
    """Inverse of ``encode_assignment`` for a root with a0 != 0."""
    a0 = point[0]
    if a0 == 0:
        raise InvalidAssignment("x0 vanishes")
    if char == 2:
        return tuple(x == a0 for x in point[1:])
    return tuple(x == -a0 for x in point[1:])
