"""
Lacunary univariate encoding of CNF satisfiability.

Variable j gets the j-th prime p_j and M = prod p_j.  An assignment is an
M-th root of unity z, with X_j true when z^{M/p_j} = 1.  Each clause
becomes a polynomial vanishing exactly on the roots that satisfy it, and
the formula becomes x^M * sum P_i(x) P_i(1/x), which vanishes at a root of
unity only when every P_i does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import ModulusGuardExceeded
from ..field import FieldContext
from ..polysys import MultiPoly, PolySystem, homogenize
from .boolean import CnfFormula

MODULUS_GUARD = 1 << 15


def first_primes(k: int) -> list:
    out, cand = [], 2
    while len(out) < k:
        if all(cand % q for q in out if q * q <= cand):
            out.append(cand)
        cand += 1
    return out


# dense univariate helpers over Q, coefficients low to high --------------------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def upoly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def upoly_divmod(a: Sequence, b: Sequence) -> tuple:
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1])


def upoly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q ([] when both vanish)."""
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return []
    return [x / a[-1] for x in a]


def upoly_lcm(a: Sequence, b: Sequence) -> list:
    g = upoly_gcd(a, b)
    q, r = upoly_divmod(upoly_mul(a, b), g)
    assert not r
    return q


def upoly_eval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _literal_poly(lit: int, primes: Sequence[int], M: int) -> list:
    p = primes[abs(lit) - 1]
    step = M // p
    out = [Fraction(0)] * (M - step + 1 if lit < 0 else step + 1)
    if lit > 0:
        out[0], out[step] = Fraction(-1), Fraction(1)
    else:
        for k in range(p):
            out[k * step] = Fraction(1)
    return out


@dataclass(frozen=True)
class PlaistedEncoding:
    P: dict
    M: int
    primes: tuple
    clause_polys: tuple

    def dense(self) -> list:
        top = max(self.P, default=-1)
        return [self.P.get(k, 0) for k in range(top + 1)]

    def companion(self) -> dict:
        return {0: -1, self.M: 1}

    def companion_dense(self) -> list:
        return [-1] + [0] * (self.M - 1) + [1]

    def gcd(self) -> list:
        return upoly_gcd(self.dense(), self.companion_dense())

    def common_root_exists(self) -> bool:
        return len(self.gcd()) > 1

    def as_system(self) -> PolySystem:
        """Both polynomials homogenized with y (coordinate 0); x is coordinate 1."""
        ctx = FieldContext(0)
        P = MultiPoly(ctx, 2, {(0, k): c for k, c in self.P.items()})
        C = MultiPoly(ctx, 2, {(0, k): c for k, c in self.companion().items()})
        return PolySystem(ctx, 2, [homogenize(C, 0), homogenize(P, 0)])


def plaisted_encode(phi: CnfFormula, guard: int = MODULUS_GUARD) -> PlaistedEncoding:
    primes = first_primes(phi.num_vars)
    M = 1
    for p in primes:
        M *= p
    if M > guard:
        raise ModulusGuardExceeded(f"M = {M} exceeds guard {guard}")
    total = [Fraction(0)] * (2 * M + 1)
    clause_polys = []
    for clause in phi.clauses:
        Pc = _literal_poly(clause[0], primes, M)
        for lit in clause[1:]:
            Pc = upoly_lcm(Pc, _literal_poly(lit, primes, M))
        clause_polys.append(tuple(Pc))
        # x^M * Pc(x) * Pc(1/x): the reversed factor is padded to degree M
        rev = [Fraction(0)] * (M + 1)
        for k, c in enumerate(Pc):
            rev[M - k] = c
        for k, c in enumerate(upoly_mul(Pc, rev)):
            total[k] += c
    P = {k: int(c) if c.denominator == 1 else c for k, c in enumerate(total) if c}
    return PlaistedEncoding(P, M, tuple(primes), tuple(clause_polys))
