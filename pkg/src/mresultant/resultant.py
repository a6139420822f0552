"""
Exact determinants, Sylvester resultants and a certified vanishing test
for the multivariate resultant of a specialized square system.

The test never guesses.  A nonzero Macaulay determinant under any cyclic
ordering certifies a nonzero resultant, since the resultant divides each
of those determinants.  A common nonzero root found by exhaustive search
certifies a vanishing resultant.  Everything else is UNDECIDED.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod
from typing import Optional, Sequence

import numpy as np

from .brute import DEFAULT_NODE_GUARD, brute_roots, rational_box_roots
from .errors import (
    DimensionGuardExceeded,
    InsufficientFieldPoints,
    NotBivariate,
    NotHomogeneous,
    NotSquare,
    SearchSpaceGuardExceeded,
)
from .field import FieldContext, FieldElement
from .macaulay import (
    DEFAULT_DENSE_GUARD,
    MacaulaySpec,
    VariableOrdering,
    cyclic_orderings,
    macaulay_rows,
)
from .polysys import ANY_DEGREE, MultiPoly, PolySystem, is_homogeneous

DEFAULT_DET_GUARD = 500


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def _check_square(M) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise NotSquare(f"{n} rows of lengths {sorted({len(r) for r in M})}")
    return n


def bareiss(M: Sequence[Sequence[int]]) -> int:
    """Fraction-free elimination over the integers."""
    n = _check_square(M)
    A = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return sign * A[n - 1][n - 1] if n else 1


def det_mod_p(M, p: int) -> int:
    """Determinant of an integer matrix modulo a prime p."""
    n = _check_square(M)
    if n == 0:
        return 1 % p
    A = np.asarray(M, dtype=np.int64) % p
    det = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            A[[c, r]] = A[[r, c]]
            det = -det
        piv = int(A[c, c])
        det = det * piv % p
        # Macaulay matrices are sparse: touch only rows and columns that change.
        rows = c + 1 + np.flatnonzero(A[c + 1:, c])
        if rows.size:
            cols = c + np.flatnonzero(A[c, c:])
            factors = A[rows, c] * pow(piv, p - 2, p) % p
            block = np.ix_(rows, cols)
            A[block] = (A[block] - np.outer(factors, A[c, cols])) % p
    return det % p


def _gauss(M, ctx: FieldContext) -> FieldElement:
    A = [[ctx.element(x) for x in row] for row in M]
    n = len(A)
    det = ctx.one
    for c in range(n):
        r = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if r is None:
            return ctx.zero
        if r != c:
            A[c], A[r] = A[r], A[c]
            det = -det
        piv = A[c][c]
        det = det * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if A[i][c].is_zero():
                continue
            f = A[i][c] * inv
            A[i] = [a - f * b if j >= c else a for j, (a, b) in enumerate(zip(A[i], A[c]))]
    return det


def determinant(M):
    """Exact determinant.

    Integer matrices give an int, Fraction matrices a Fraction, and
    FieldElement matrices an element of their field.
    """
    n = _check_square(M)
    sample = next((x for row in M for x in row), None)
    if sample is None:
        return 1
    if isinstance(sample, FieldElement):
        ctx = sample.ctx
        if ctx.characteristic == 0:
            rows = [[x.value for x in row] for row in M]
            return ctx.element(_rational_det(rows))
        if ctx.is_prime_field:
            return ctx.element(det_mod_p([[x.value for x in row] for row in M], ctx.characteristic))
        return _gauss(M, ctx)
    if any(isinstance(x, Fraction) for row in M for x in row):
        return _rational_det(M)
    return bareiss(M)


def _rational_det(rows) -> Fraction:
    scale = 1
    ints = []
    for row in rows:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        scale *= den
        ints.append([int(Fraction(x) * den) for x in row])
    return Fraction(bareiss(ints), scale)


# ---------------------------------------------------------------------------
# Sylvester resultant of two binary forms
# ---------------------------------------------------------------------------

def _form_degree(f: MultiPoly, given: Optional[int]) -> int:
    if f.num_vars != 2:
        raise NotBivariate(f"{f.num_vars} variables")
    d = is_homogeneous(f)
    if d is None:
        raise NotHomogeneous("Sylvester resultant needs binary forms")
    if given is not None:
        if d is not ANY_DEGREE and d != given:
            raise NotHomogeneous(f"form has degree {d}, declared {given}")
        return given
    if d is ANY_DEGREE:
        raise ValueError("the zero form needs an explicit degree")
    return d


def sylvester_matrix(f: MultiPoly, g: MultiPoly, degrees: Optional[tuple] = None) -> list:
    """Rows of the Sylvester matrix; coefficients listed by descending power of x0."""
    d1 = _form_degree(f, degrees[0] if degrees else None)
    d2 = _form_degree(g, degrees[1] if degrees else None)
    if d1 < 1 or d2 < 1:
        raise ValueError("forms must have degree >= 1")
    ctx = f.ctx if f.ctx.contains(g.ctx) else g.ctx
    a = [ctx.element(f.coefficient((d1 - k, k))) for k in range(d1 + 1)]
    b = [ctx.element(g.coefficient((d2 - k, k))) for k in range(d2 + 1)]
    size = d1 + d2
    rows = []
    for shift in range(d2):
        rows.append([ctx.zero] * shift + a + [ctx.zero] * (size - shift - d1 - 1))
    for shift in range(d1):
        rows.append([ctx.zero] * shift + b + [ctx.zero] * (size - shift - d2 - 1))
    return rows


def sylvester(f: MultiPoly, g: MultiPoly, degrees: Optional[tuple] = None) -> FieldElement:
    """Resultant of two binary forms; zero iff they share a projective root."""
    return determinant(sylvester_matrix(f, g, degrees))


# ---------------------------------------------------------------------------
# vanishing test
# ---------------------------------------------------------------------------

class Outcome(enum.Enum):
    ZERO = "ZERO"
    NONZERO = "NONZERO"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: Optional[tuple] = None
    ordering_index: Optional[int] = None
    determinant: Optional[FieldElement] = None
    diagnostics: dict = field(default_factory=dict, compare=False)

    def certificate(self):
        if self.outcome is Outcome.ZERO:
            return self.witness
        if self.outcome is Outcome.NONZERO:
            return self.ordering_index
        return self.diagnostics


def macaulay_determinant(spec: MacaulaySpec, guard: int = DEFAULT_DENSE_GUARD) -> FieldElement:
    ctx = spec.system.ctx
    rows = macaulay_rows(spec, guard)
    if ctx.is_prime_field:
        dense = np.zeros((spec.dim, spec.dim), dtype=np.int64)
        for r, row in enumerate(rows):
            dense[r, list(row)] = [v.value for v in row.values()]
        return ctx.element(det_mod_p(dense, ctx.characteristic))
    zero = ctx.zero
    dense = [[zero] * spec.dim for _ in range(spec.dim)]
    for r, row in enumerate(rows):
        for c, v in row.items():
            dense[r][c] = v
    return determinant(dense)


def default_max_ext(sys: PolySystem) -> int:
    return min(prod(sys.degrees()), 6)


def resultant_vanishes(
    sys: PolySystem,
    max_ext: Optional[int] = None,
    det_guard: int = DEFAULT_DET_GUARD,
    search_guard: int = DEFAULT_NODE_GUARD,
    rational_bound: int = 2,
    with_diagnostic: bool = False,
) -> Verdict:
    """Three-valued test of R(f) = 0 for a square homogeneous system.

    Stage 1 tries the Macaulay determinants of the n cyclic orderings in
    ascending order (skipped above ``det_guard`` rows).  Stage 2 searches
    for a common nonzero root: exhaustively over F_{p^m}, m <= max_ext, for
    finite fields, and over a small integer box for Q.
    """
    if not sys.is_square():
        raise NotSquare(f"{len(sys)} polynomials in {sys.num_vars} variables")
    degrees = sys.degrees()
    diag: dict = {"degrees": degrees}
    n = sys.num_vars
    dets = []
    spec0 = MacaulaySpec.build(sys, 0)
    diag["dim"] = spec0.dim
    if spec0.dim <= det_guard:
        for k, order in enumerate(cyclic_orderings(n)):
            spec = spec0 if k == 0 else MacaulaySpec(sys, order)
            det = macaulay_determinant(spec, det_guard)
            if not det.is_zero():
                return Verdict(Outcome.NONZERO, ordering_index=k, determinant=det, diagnostics=diag)
            dets.append(det)
        diag["determinants"] = [str(d) for d in dets]
    else:
        diag["stage1"] = f"skipped: dimension {spec0.dim} exceeds guard {det_guard}"

    try:
        if sys.ctx.is_finite:
            m = default_max_ext(sys) if max_ext is None else max_ext
            diag["max_ext"] = m
            root = brute_roots(sys, m, search_guard)
        else:
            diag["box_bound"] = rational_bound
            root = rational_box_roots(sys, rational_bound, search_guard)
    except SearchSpaceGuardExceeded as exc:
        diag["stage2"] = f"aborted: {exc}"
        root = None
    else:
        diag["stage2"] = "no root found" if root is None else "root found"
    if root is not None:
        return Verdict(Outcome.ZERO, witness=root, diagnostics=diag)

    if with_diagnostic and spec0.dim <= det_guard:
        try:
            diag["perturbation"] = str(perturbation_diagnostic(sys, spec0.ordering, det_guard))
        except InsufficientFieldPoints as exc:
            diag["perturbation"] = f"unavailable: {exc}"
    return Verdict(Outcome.UNDECIDED, diagnostics=diag)


def check_verdict(sys: PolySystem, verdict: Verdict) -> bool:
    """Re-verify a certificate from scratch."""
    if verdict.outcome is Outcome.ZERO:
        w = verdict.witness
        return any(not (x == 0) for x in w) and sys.is_root(w)
    if verdict.outcome is Outcome.NONZERO:
        spec = MacaulaySpec.build(sys, verdict.ordering_index)
        return not macaulay_determinant(spec, max(spec.dim, 1)).is_zero()
    return True


# ---------------------------------------------------------------------------
# perturbation diagnostic
# ---------------------------------------------------------------------------

def perturbed_system(sys: PolySystem, t) -> PolySystem:
    """f_i + t * x_i^{d_i}."""
    n = sys.num_vars
    degrees = sys.degrees()
    comps = []
    for i, (f, d) in enumerate(zip(sys, degrees)):
        comps.append(f + MultiPoly.var(sys.ctx, n, i, d) * t)
    return PolySystem(sys.ctx, n, comps)


def _interpolate(xs: list, ys: list, ctx: FieldContext) -> list:
    """Coefficients (low to high) of the polynomial through the points, Newton form."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [ctx.zero] * n
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        shifted = [ctx.zero] + out[:-1]
        out = [s - xs[i] * o for s, o in zip(shifted, out)]
        out[0] = out[0] + coef[i]
    return out


def perturbation_diagnostic(sys: PolySystem, ordering: Optional[VariableOrdering] = None,
                            guard: int = DEFAULT_DENSE_GUARD) -> MultiPoly:
    """det Mac(f + t x^d) as a polynomial in t (one-variable MultiPoly).

    The value at t = 0 is det Mac(f).  A nonzero lowest coefficient only
    suggests a nonzero resultant; it certifies nothing.
    """
    ctx = sys.ctx
    order = ordering or cyclic_orderings(sys.num_vars)[0]
    dim = MacaulaySpec(sys, order).dim
    if dim > guard:
        raise DimensionGuardExceeded(f"Macaulay dimension {dim} exceeds guard {guard}")
    if ctx.is_finite and ctx.size < dim + 1:
        raise InsufficientFieldPoints(f"need {dim + 1} points, field has {ctx.size}")
    points = [ctx.element(k) for k in range(dim + 1)] if ctx.is_prime_field or not ctx.is_finite \
        else [e for _, e in zip(range(dim + 1), ctx.elements())]
    values = [macaulay_determinant(MacaulaySpec(perturbed_system(sys, t), order), guard) for t in points]
    coeffs = _interpolate(points, values, ctx)
    return MultiPoly(ctx, 1, {(k,): c for k, c in enumerate(coeffs)})
