import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mresultant.errors import FormatError
from mresultant.field import FieldContext
from mresultant.formats import (
    parse_boolsys,
    parse_dimacs,
    parse_matrix,
    parse_partition,
    parse_poly,
    parse_system,
    write_boolsys,
    write_dimacs,
    write_matrix,
    write_system,
)
from mresultant.polysys import PolySystem
from mresultant.reductions import BoolSys, CnfFormula, Equation, boolsys_to_h2n, squarify_det

from conftest import random_system

CONTEXTS = [FieldContext(0), FieldContext(5), FieldContext.extension(3, 2)]


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from(CONTEXTS))
def test_system_round_trip(seed, ctx):
    rng = random.Random(seed)
    sys = random_system(ctx if ctx.is_prime_field or not ctx.is_finite else FieldContext(3), 3, 3, rng)
    sys = sys.lift(ctx)
    text = write_system(sys, {"via": "test", "n": 3})
    back, prov = parse_system(text)
    assert back == sys
    assert prov == {"via": "test", "n": 3}
    assert write_system(back, prov) == text


def test_extension_coefficients_round_trip():
    B = BoolSys(2, (Equation("or", 1, (1, 2)), Equation("not", 2, (1,)), Equation("true", 1)))
    sys = squarify_det(boolsys_to_h2n(B, 3)).system
    assert sys.ctx.degree == 3
    text = write_system(sys)
    assert "[X]" in text
    assert parse_system(text)[0] == sys


def test_tolerant_polynomial_syntax():
    Q = FieldContext(0)
    f = parse_poly("x0^2 + -x1 + 1/2*x0*x1", Q, 2)
    assert f.coefficient((2, 0)) == 1
    assert f.coefficient((0, 1)) == -1
    assert str(f.coefficient((1, 1))) == "1/2"


@pytest.mark.parametrize("text,line", [
    ("ring F5 vars 2\nx0 + x7\n", 2),
    ("ring F5 vars 2\n\n2*x0 + *x1\n", 3),
    ("ring F4 vars 2\n", 1),
    ("rings F5 vars 2\n", 1),
])
def test_system_parse_errors_carry_line(text, line):
    with pytest.raises(FormatError) as exc:
        parse_system(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}: ")


def test_missing_ring_line():
    with pytest.raises(FormatError):
        parse_system("# nothing here\n")


def test_matrix_round_trip():
    F9 = FieldContext.extension(3, 2)
    M = [[F9.gen, F9(1)], [F9(2), F9.zero]]
    rows, ctx = parse_matrix(write_matrix(M, F9))
    assert rows == M and ctx == F9
    rows, ctx = parse_matrix(write_matrix([[1, -2], [3, 4]], None))
    assert rows == [[1, -2], [3, 4]] and ctx is None
    with pytest.raises(FormatError):
        parse_matrix("matrix Z 2\n1 2\n3\n")


def test_dimacs():
    phi = parse_dimacs("c example\np cnf 2 3\n1 2 0\n-1\n0 -2 0\n%\nignored\n")
    assert phi == CnfFormula(2, ((1, 2), (-1,), (-2,)))
    assert parse_dimacs(write_dimacs(phi)) == phi


@pytest.mark.parametrize("text,line", [
    ("1 2 0\n", 1),
    ("p cnf 2 1\n1 3 0\n", 2),
    ("p cnf 2 1\n1 x 0\n", 2),
    ("p dnf 2 1\n", 1),
])
def test_dimacs_errors(text, line):
    with pytest.raises(FormatError) as exc:
        parse_dimacs(text)
    assert exc.value.line == line


def test_dimacs_clause_count_mismatch():
    with pytest.raises(FormatError):
        parse_dimacs("p cnf 2 2\n1 0\n")


def test_boolsys():
    B = parse_boolsys("x1 = true\nx3 = not x1  # comment\nx2 = or x1 x3\n")
    assert B.num_vars == 3
    assert parse_boolsys(write_boolsys(B)) == B
    with pytest.raises(FormatError) as exc:
        parse_boolsys("x1 = true\nx2 = xor x1 x1\n")
    assert exc.value.line == 2


def test_partition():
    assert parse_partition("1 2 3") == (1, 2, 3)
    for bad in ("", "1 -2", "1 a"):
        with pytest.raises(FormatError):
            parse_partition(bad)
