"""Leaving the homogeneous world, and a fixture showing why naive degree reduction fails."""

from __future__ import annotations

from typing import Sequence

from ..errors import InvalidAssignment, NotHomogeneous
from ..field import FieldContext
from ..polysys import MultiPoly, PolySystem


def h2n_to_hn(f: PolySystem) -> PolySystem:
    """Append y1..yn and the polynomial sum x_i y_i - 1.

    Affine roots of the result correspond to nonzero roots of f.
    """
    if not f.is_homogeneous():
        raise NotHomogeneous("input system must be homogeneous")
    n = f.num_vars
    ctx = f.ctx
    N = 2 * n
    comps = [g.extend_vars(N) for g in f]
    link = MultiPoly.constant(ctx, N, -1)
    for i in range(n):
        link = link + MultiPoly.var(ctx, N, i) * MultiPoly.var(ctx, N, n + i)
    return PolySystem(ctx, N, comps + [link])


def h2n_witness(point: Sequence, ctx: FieldContext) -> tuple:
    """(a, 0, .., 0, 1/a_i, 0, .., 0) with i the first nonzero coordinate of a."""
    a = [ctx.element(x) for x in point]
    for i, ai in enumerate(a):
        if not ai.is_zero():
            ys = [ctx.zero] * len(a)
            ys[i] = ai.inverse()
            return tuple(a + ys)
    raise InvalidAssignment("the all-zero point has no affine lift")


NAIVE_VARS = ("x0", "x") + tuple(f"x{k}" for k in range(2, 10))


def naive_squaring_fixture() -> PolySystem:
    """The lacunary pair P(x), x^6 - 1 rewritten with x_k standing for x^k.

    Coordinates: 0 is x0, 1 is x, k is x_k for k = 2..9.  The first row is
    P written linearly in x3..x9, the second the x^6 - 1 row, and the rest
    the repeated-squaring links x0 x_k - x_a x_b.  With x0 = 0 the point
    x8 = x9 = 1 is a spurious root.
    """
    ctx = FieldContext(0)
    N = 10

    def v(k):
        return MultiPoly.var(ctx, N, k)

    P = {3: -1, 4: 1, 5: 2, 6: 9, 7: 2, 8: 1, 9: -1}
    first = MultiPoly.zero(ctx, N)
    for k, c in P.items():
        first = first + v(k) * c
    links = [(2, 1, 1), (3, 2, 1), (4, 2, 2), (5, 4, 1), (6, 2, 4), (7, 4, 3), (8, 4, 4), (9, 8, 1)]
    comps = [first, v(6) - v(0)]
    comps += [v(0) * v(k) - v(a) * v(b) for k, a, b in links]
    return PolySystem(ctx, N, comps)
