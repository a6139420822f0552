"""PARTITION as a square homogeneous system, optionally with coefficients bounded by 2."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..field import FieldContext
from ..polysys import MultiPoly, PolySystem


@dataclass(frozen=True)
class PartitionInstance:
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights:
            raise ValueError("need at least one weight")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.weights)

    def bit_length(self) -> int:
        """Index p of the top bit shared by all expansions (0 when every weight is 0)."""
        return max(max(self.weights).bit_length() - 1, 0)

    def bits(self, i: int) -> list:
        """Binary digits of w_i, least significant first, padded to p+1 digits."""
        w = self.weights[i]
        return [(w >> j) & 1 for j in range(self.bit_length() + 1)]


def partition_predicate(weights, modulus: int = 0) -> bool:
    """Is there a sign vector with sum(+-w_i) = 0 (mod ``modulus`` when nonzero)?"""
    for signs in product((1, -1), repeat=len(weights)):
        total = sum(s * w for s, w in zip(signs, weights))
        if (total % modulus == 0) if modulus else total == 0:
            return True
    return False


def partition_roles(inst: PartitionInstance, bounded: bool) -> tuple:
    roles = [f"x{i}" for i in range(inst.n + 1)]
    if bounded:
        p = inst.bit_length()
        roles += [f"W{i}_{j}" for i in range(1, inst.n + 1) for j in range(p + 1)]
    return tuple(roles)


def w_index(inst: PartitionInstance, i: int, j: int) -> int:
    """Coordinate of W_{i,j} (i is 1-based) in the bounded system."""
    return inst.n + 1 + (i - 1) * (inst.bit_length() + 1) + j


def partition_to_system(inst, bounded: bool = False, ctx: FieldContext = FieldContext(0)) -> PolySystem:
    """f0 = sum w_i x_i and f_i = x0^2 - x_i^2.

    The bounded variant adds W_{i,0..p} with W_{i,p} = w_{i,p} x0 and
    W_{i,j} = 2 W_{i,j+1} + w_{i,j} x0, so W_{i,0} = w_i x0, and uses
    f0 = sum W_{i,0} x_i.  Chain rows follow f1..fn, for i = 1..n and
    j = 0..p.
    """
    if not isinstance(inst, PartitionInstance):
        inst = PartitionInstance(tuple(inst))
    n = inst.n
    if not bounded:
        N = n + 1
        x = [MultiPoly.var(ctx, N, k) for k in range(N)]
        f0 = MultiPoly.zero(ctx, N)
        for w, xi in zip(inst.weights, x[1:]):
            f0 = f0 + xi * w
        return PolySystem(ctx, N, [f0] + [x[0] * x[0] - xi * xi for xi in x[1:]])
    p = inst.bit_length()
    N = n + 1 + n * (p + 1)
    x = [MultiPoly.var(ctx, N, k) for k in range(n + 1)]
    f0 = MultiPoly.zero(ctx, N)
    for i in range(1, n + 1):
        f0 = f0 + MultiPoly.var(ctx, N, w_index(inst, i, 0)) * x[i]
    comps = [f0] + [x[0] * x[0] - xi * xi for xi in x[1:]]
    for i in range(1, n + 1):
        bits = inst.bits(i - 1)
        for j in range(p + 1):
            row = MultiPoly.var(ctx, N, w_index(inst, i, j)) - x[0] * bits[j]
            if j < p:
                row = row - MultiPoly.var(ctx, N, w_index(inst, i, j + 1)) * 2
            comps.append(row)
    return PolySystem(ctx, N, comps)


def sign_point(inst: PartitionInstance, signs, bounded: bool, ctx: FieldContext = FieldContext(0)) -> tuple:
    """x0 = 1, x_i = sign_i, and in the bounded variant the W values forced by the chain."""
    point = [1] + list(signs)
    if bounded:
        p = inst.bit_length()
        for i in range(inst.n):
            bits = inst.bits(i)
            W = [0] * (p + 1)
            W[p] = bits[p]
            for j in range(p - 1, -1, -1):
                W[j] = 2 * W[j + 1] + bits[j]
            point += W
    return tuple(ctx.element(v) for v in point)
