"""
Turning the s x (n+1) gadget system into a square one.

Three routes: a chain of fresh squared variables tied together by a
scalar lambda (``squarify_det``), the homogeneous variant in which lambda
is itself a variable pinned down by an irreducible polynomial
(``squarify_homogeneous``), and seeded random linear combinations
(``squarify_random``).
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from ..errors import FieldTooSmall, InvalidAssignment, NotPrimeField, WrongShape
from ..field import FieldContext, FieldElement, find_irreducible
from ..polysys import ANY_DEGREE, MultiPoly, PolySystem, is_homogeneous
from .artifact import ReductionArtifact, chain_roles, x_roles
from .boolean import BoolSys, encode_assignment

LAMBDA_OVER_Q = 3


def _shape(f: PolySystem) -> tuple:
    n = f.num_vars - 1
    s = len(f)
    if n < 0 or s < n + 1:
        raise WrongShape(f"need at least n+1 = {n + 1} components, got {s}")
    for k, g in enumerate(f):
        d = is_homogeneous(g)
        if d is not ANY_DEGREE and d != 2:
            raise WrongShape(f"component {k} is not a homogeneous quadric")
    return n, s


def squarify_det(f: PolySystem) -> ReductionArtifact:
    """Square system in x0..xn, y1..y_{s-n-1} with a scalar lambda.

    Row n+i becomes f_{n+i} - y_{i-1}^2 + lambda * y_i^2 (no y_0 term and
    no y_{s-n} term).  Over Q lambda is 3; over F_p the field grows to
    F_p[X]/(P) with deg P = s - n and lambda is the class of X.
    """
    n, s = _shape(f)
    r = s - n
    src = f.ctx
    if r == 1:
        return ReductionArtifact(f, tuple(x_roles(n)), "thm5", src.characteristic, None, {"n": n, "s": s})
    if src.characteristic == 0:
        ctx, lam_spec = src, LAMBDA_OVER_Q
        lam = ctx.element(LAMBDA_OVER_Q)
    else:
        if not src.is_prime_field:
            raise NotPrimeField("the chain over F_p starts from a prime-field system")
        P = find_irreducible(src.characteristic, r)
        ctx, lam_spec = FieldContext(src.characteristic, P), P
        lam = ctx.gen
    N = s
    ys = [None] + [MultiPoly.var(ctx, N, n + i) for i in range(1, r)]
    comps = [g.lift(ctx).extend_vars(N) for g in f]
    for i in range(1, r + 1):
        row = comps[n + i - 1]
        if i > 1:
            row = row - ys[i - 1] * ys[i - 1]
        if i < r:
            row = row + ys[i] * ys[i] * lam
        comps[n + i - 1] = row
    system = PolySystem(ctx, N, comps)
    return ReductionArtifact(system, chain_roles(n, s, False), "thm5", src.characteristic, lam_spec,
                             {"n": n, "s": s})


def homogenized_modulus(P: Sequence[int], ctx: FieldContext, num_vars: int, lam: int, x0: int = 0) -> MultiPoly:
    """P(lambda, x0): the degree-deg(P) homogenization of P in lambda with x0."""
    terms = {}
    d = len(P) - 1
    for k, c in enumerate(P):
        if c:
            e = [0] * num_vars
            e[lam] += k
            e[x0] += d - k
            terms[tuple(e)] = c
    return MultiPoly(ctx, num_vars, terms)


def squarify_homogeneous(f: PolySystem) -> ReductionArtifact:
    """s+1 homogeneous polynomials in x0..xn, y1..y_{s-n-1}, lambda over F_p.

    Row n+i (i < s-n) is x0^{s-n-i} f_{n+i} - y_{i-1}^{s-n-i+2} + lambda y_i^{s-n-i+1},
    the last chain row is f_s - y_{s-n-1}^2, and P(lambda, x0) closes the system.
    """
    if not f.ctx.is_prime_field:
        raise NotPrimeField(f"need coefficients in a prime field, got {f.ctx.spec}")
    n, s = _shape(f)
    r = s - n
    ctx = f.ctx
    p = ctx.characteristic
    N = s + 1
    lam_idx = N - 1
    P = find_irreducible(p, r)
    x0 = MultiPoly.var(ctx, N, 0)
    lam = MultiPoly.var(ctx, N, lam_idx)
    comps = [g.extend_vars(N) for g in f]
    for i in range(1, r + 1):
        row = comps[n + i - 1] * x0 ** (r - i)
        if i > 1:
            row = row - MultiPoly.var(ctx, N, n + i - 1, r - i + 2)
        if i < r:
            row = row + lam * MultiPoly.var(ctx, N, n + i, r - i + 1)
        comps[n + i - 1] = row
    comps.append(homogenized_modulus(P, ctx, N, lam_idx))
    system = PolySystem(ctx, N, comps)
    return ReductionArtifact(system, chain_roles(n, s, True), "thm6", p, "variable",
                             {"n": n, "s": s, "P": list(P)})


def lambda_root(p: int, r: int) -> FieldElement:
    """A root of P = find_irreducible(p, r): the class of X, or -P(0) when r = 1."""
    P = find_irreducible(p, r)
    if r == 1:
        return FieldContext(p).element(-P[0])
    return FieldContext(p, P).gen


def _draw(ctx: FieldContext, rng: random.Random, rational_range: int) -> FieldElement:
    if not ctx.is_finite:
        return ctx.element(rng.randrange(rational_range))
    if ctx.is_prime_field:
        return ctx.element(rng.randrange(ctx.characteristic))
    return ctx.element(tuple(rng.randrange(ctx.characteristic) for _ in range(ctx.degree)))


def squarify_random(f: PolySystem, ctx: Optional[FieldContext] = None, seed: int = 0,
                    alpha: Optional[Sequence[Sequence]] = None, min_field_size: Optional[int] = None,
                    rational_range: int = 1 << 16) -> PolySystem:
    """n+1 combinations g_i = sum_j alpha_ij f_j with alpha drawn from ``random.Random(seed)``.

    ``alpha`` overrides the draw.  Over Q the entries are integers in
    [0, rational_range).  ``min_field_size`` is the caller's bound on how
    many elements the field must have.
    """
    ctx = ctx or f.ctx
    if not ctx.contains(f.ctx):
        raise ValueError(f"{ctx.spec} does not contain {f.ctx.spec}")
    if min_field_size is not None and ctx.is_finite and ctx.size < min_field_size:
        raise FieldTooSmall(f"{ctx.spec} has {ctx.size} elements, need {min_field_size}")
    rows = f.num_vars
    if alpha is None:
        rng = random.Random(seed)
        alpha = [[_draw(ctx, rng, rational_range) for _ in range(len(f))] for _ in range(rows)]
    elif len(alpha) != rows or any(len(row) != len(f) for row in alpha):
        raise WrongShape(f"alpha must be {rows} x {len(f)}")
    comps = []
    for row in alpha:
        g = MultiPoly.zero(ctx, f.num_vars)
        for a, fj in zip(row, f):
            g = g + fj.lift(ctx) * ctx.element(a)
        comps.append(g)
    return PolySystem(ctx, f.num_vars, comps)


def witness_from_assignment(B: BoolSys, assignment: Sequence[bool], artifact: ReductionArtifact) -> tuple:
    """Explicit nonzero root of the artifact's system built from a model of B."""
    assignment = tuple(bool(a) for a in assignment)
    if not B.satisfied_by(assignment):
        raise InvalidAssignment("assignment does not satisfy the equation system")
    ctx = artifact.system.ctx
    n = B.num_vars
    if artifact.system.num_vars < n + 1:
        raise InvalidAssignment("artifact does not match the equation system")
    x = encode_assignment(assignment, ctx.prime_subfield() if ctx.is_finite else ctx)
    if artifact.via == "thm6":
        r = artifact.meta["s"] - n
        lam = lambda_root(ctx.characteristic, r)
        target = lam.ctx
        point = [target.element(v) for v in x] + [target.zero] * (r - 1) + [lam]
        return tuple(point)
    point = [ctx.element(v) for v in x] + [ctx.zero] * (artifact.system.num_vars - n - 1)
    return tuple(point)


def chain_epsilons(f: PolySystem, point: Sequence) -> list:
    """epsilon_i = f_{n+i}(a) for the equation rows of the gadget system."""
    n = f.num_vars - 1
    return f.evaluate(point)[n:]


def chain_matrix(eps: Sequence, lam, one=1, zero=0) -> list:
    """Matrix of the homogenized linear system in (Y0, Y1, ..., Y_{r-1}).

    Row i reads eps_i*Y0 - Y_{i-1} + lam*Y_i, truncated at both ends.
    Entries can be ints, field elements or polynomials.
    """
    r = len(eps)
    rows = []
    for i in range(1, r + 1):
        row = [zero] * r
        row[0] = eps[i - 1]
        if i > 1:
            row[i - 1] = row[i - 1] - one
        if i < r:
            row[i] = row[i] + lam
        rows.append(row)
    return rows
