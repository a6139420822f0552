from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mresultant.errors import ContextMismatch, DivisionByZero
from mresultant.field import (
    FieldContext,
    find_irreducible,
    format_xpoly,
    is_irreducible,
    is_prime,
    parse_field_spec,
    parse_xpoly,
)


def test_prime_field_addition():
    F5 = FieldContext(5)
    assert F5(3) + F5(4) == 2


def test_rationals_canonicalize():
    Q = FieldContext(0)
    x = Q(Fraction(2, 4))
    assert x.value == Fraction(1, 2)
    assert str(x) == "1/2"


def test_extension_multiplication_reduces():
    F4 = FieldContext(2, (1, 1, 1))
    X = F4.gen
    assert X * X == F4((1, 1))


def test_find_irreducible_small_cases():
    assert find_irreducible(2, 1) == (0, 1)
    assert find_irreducible(2, 2) == (1, 1, 1)
    P = find_irreducible(3, 2)
    assert P == (1, 0, 1)
    assert all(sum(c * x**k for k, c in enumerate(P)) % 3 for x in range(3))


def test_is_irreducible_examples():
    assert not is_irreducible((1, 0, 1), 2)
    assert is_irreducible((1, 1, 1), 2)
    assert is_irreducible((1, 0, 1), 3)


@pytest.mark.parametrize("p,deg", [(2, 3), (2, 4), (3, 3), (5, 2), (7, 2)])
def test_find_irreducible_matches_sympy(p, deg):
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    P = find_irreducible(p, deg)
    poly = sympy.Poly(list(reversed(P)), x, modulus=p)
    assert poly.is_irreducible
    assert len(P) == deg + 1 and P[-1] == 1


def test_bad_contexts():
    with pytest.raises(ValueError):
        FieldContext(4)
    with pytest.raises(ValueError):
        FieldContext(2, (1, 0, 1))


def test_context_mismatch_and_division():
    with pytest.raises(ContextMismatch):
        FieldContext(3)(1) + FieldContext(5)(1)
    with pytest.raises(DivisionByZero):
        FieldContext(7)(3) / FieldContext(7)(0)


def test_extension_promotes_prime_subfield():
    F9 = FieldContext.extension(3, 2)
    assert (F9.gen + FieldContext(3)(1)).ctx == F9


def test_field_spec_round_trip():
    for ctx in (FieldContext(0), FieldContext(5), FieldContext.extension(3, 2), FieldContext.extension(2, 3)):
        assert parse_field_spec(ctx.spec) == ctx


def test_xpoly_round_trip():
    assert format_xpoly([1, 1, 1]) == "X^2+X+1"
    assert parse_xpoly("X^2+X+1", 2) == (1, 1, 1)


def test_element_enumeration_size():
    F8 = FieldContext.extension(2, 3)
    assert len(set(F8.elements())) == 8 == F8.size


@given(st.integers(0, 10**6))
def test_is_prime_matches_trial_division(n):
    expected = n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))
    assert is_prime(n) == expected


FIELDS = [FieldContext(0), FieldContext(7), FieldContext.extension(2, 3), FieldContext.extension(5, 2)]


def _elem(ctx, draw_int, coords):
    if ctx.degree > 1:
        return ctx(tuple(c % ctx.characteristic for c in coords[: ctx.degree]))
    if ctx.characteristic == 0:
        return ctx(Fraction(draw_int, 1 + coords[0] % 5))
    return ctx(draw_int)


elem_args = st.tuples(st.integers(-50, 50), st.lists(st.integers(0, 50), min_size=3, max_size=3))


@settings(max_examples=60)
@given(st.sampled_from(FIELDS), elem_args, elem_args, elem_args)
def test_field_axioms(ctx, a, b, c):
    x, y, z = (_elem(ctx, *t) for t in (a, b, c))
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == ctx.zero
    if not x.is_zero():
        assert x * x.inverse() == ctx.one
        assert (x ** 3) / x == x * x


@settings(max_examples=30)
@given(st.sampled_from(FIELDS[1:]), elem_args)
def test_frobenius_is_additive(ctx, a):
    x = _elem(ctx, *a)
    p = ctx.characteristic
    assert (x + ctx.one) ** p == x**p + ctx.one
    assert x ** ctx.size == x
