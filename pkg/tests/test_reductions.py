import random
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mresultant.brute import brute_roots
from mresultant.errors import FieldTooSmall, InvalidAssignment, ModulusGuardExceeded, NotHomogeneous, WrongShape
from mresultant.field import FieldContext, find_irreducible
from mresultant.polysys import MultiPoly, PolySystem, is_homogeneous
from mresultant.reductions import (
    BoolSys,
    CnfFormula,
    Equation,
    PartitionInstance,
    boolsys_to_h2n,
    chain_epsilons,
    chain_matrix,
    decode_point,
    encode_assignment,
    h2n_to_hn,
    h2n_witness,
    naive_squaring_fixture,
    partition_predicate,
    partition_to_system,
    plaisted_encode,
    sat_to_boolsys,
    sign_point,
    squarify_det,
    squarify_homogeneous,
    squarify_random,
    witness_from_assignment,
)
from mresultant.reductions.artifact import ReductionArtifact, x_roles
from mresultant.reductions.partition import w_index
from mresultant.reductions.plaisted import upoly_eval

Q, F2, F3, F5 = (FieldContext(p) for p in (0, 2, 3, 5))

TRUE1 = BoolSys(1, (Equation("true", 1),))
CONTRA = BoolSys(2, (Equation("not", 2, (1,)), Equation("true", 2), Equation("true", 1)))


def lemma1(B, ctx):
    return ReductionArtifact(boolsys_to_h2n(B, ctx), tuple(x_roles(B.num_vars)), "lemma1", ctx.characteristic)


# --- CNF to equation systems ------------------------------------------------

def test_positive_unit():
    B, _ = sat_to_boolsys(CnfFormula(1, ((1,),)))
    assert B.equations == (Equation("true", 1),)
    assert B.is_satisfiable()


def test_contradiction_preserved():
    B, _ = sat_to_boolsys(CnfFormula(1, ((1,), (-1,))))
    assert not B.is_satisfiable()


def test_binary_clause():
    B, mapper = sat_to_boolsys(CnfFormula(2, ((1, 2),)))
    kinds = sorted(eq.kind for eq in B.equations)
    assert kinds == ["or", "true"]
    assert B.satisfied_by(mapper((True, False)))


def test_equation_rendering():
    assert str(Equation("or", 1, (2, 3))) == "x1 = or x2 x3"


@settings(max_examples=100)
@given(st.integers(1, 4), st.lists(st.lists(st.integers(1, 4), min_size=1, max_size=3, unique=True), min_size=1,
                                   max_size=5), st.randoms())
def test_sat_to_boolsys_is_equisatisfiable(v, raw, rnd):
    clauses = tuple(tuple(x if rnd.random() < 0.5 else -x for x in c if x <= v) for c in raw)
    clauses = tuple(c for c in clauses if c)
    if not clauses:
        return
    phi = CnfFormula(v, clauses)
    B, mapper = sat_to_boolsys(phi)
    assert B.is_satisfiable() == phi.is_satisfiable()
    for model in phi.models():
        assert B.satisfied_by(mapper(model))
    for model in B.models():
        assert phi.satisfied_by(model[:v])


# --- quadratic gadgets --------------------------------------------------------

def test_gadgets_char3():
    f = boolsys_to_h2n(TRUE1, 3)
    x0, x1 = MultiPoly.var(F3, 2, 0), MultiPoly.var(F3, 2, 1)
    assert list(f) == [x0 * x0 - x1 * x1, x0 * (x1 + x0)]
    assert f.is_root((1, 2))


def test_gadgets_char2():
    f = boolsys_to_h2n(TRUE1, 2)
    x0, x1 = MultiPoly.var(F2, 2, 0), MultiPoly.var(F2, 2, 1)
    assert list(f) == [x0 * x1 - x1 * x1, x0 * (x1 + x0)]
    assert f.is_root((1, 1))


def test_contradiction_has_no_root_over_f3_and_f9():
    f = boolsys_to_h2n(CONTRA, 3)
    assert brute_roots(f, 2) is None


def _all_boolsys(n, max_eqs):
    eqs = [Equation("true", i) for i in range(1, n + 1)]
    eqs += [Equation("not", i, (j,)) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    eqs += [Equation("or", i, (j, k)) for i in range(1, n + 1) for j in range(1, n + 1) for k in range(j, n + 1)]
    rng = random.Random(n)
    for _ in range(60):
        yield BoolSys(n, tuple(rng.sample(eqs, rng.randint(1, max_eqs))))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lemma1_roots_are_models(p):
    """Every root with a0 = 1 decodes to a model and every model encodes to a root."""
    ctx = FieldContext(p)
    for B in _all_boolsys(3, 4):
        f = boolsys_to_h2n(B, ctx)
        models = set(B.models())
        for m in models:
            assert f.is_root(encode_assignment(m, ctx))
        found = set()
        for tail in product(list(ctx.elements()), repeat=B.num_vars):
            pt = (ctx.one,) + tail
            if f.is_root(pt):
                found.add(decode_point(pt, p))
        assert found == models
        if not models:
            # with a0 = 0 every consistency gadget forces x_i = 0
            assert brute_roots(f, 1) is None


def test_lemma1_degrees_at_most_two():
    for B in _all_boolsys(3, 5):
        for p in (0, 2, 3):
            assert all(g.degree() <= 2 for g in boolsys_to_h2n(B, p))


def test_decode_rejects_x0_zero():
    with pytest.raises(InvalidAssignment):
        decode_point((F3(0), F3(1)), 3)


# --- squarifying ------------------------------------------------------------

def test_thm6_single_equation_over_f3():
    art = squarify_homogeneous(boolsys_to_h2n(TRUE1, F3))
    g = art.system
    assert g.is_square() and g.is_homogeneous()
    assert len(g) == 3
    w = witness_from_assignment(TRUE1, (True,), art)
    assert tuple(w[:2]) == (1, 2)
    assert g.is_root(w)
    assert art.provenance()["via"] == "thm6"


def test_thm6_row_degrees():
    B, mapper = sat_to_boolsys(CnfFormula(3, ((1, 2, 3), (-1, 2), (-2, -3))))
    f = boolsys_to_h2n(B, F5)
    n, s = f.num_vars - 1, len(f)
    art = squarify_homogeneous(f)
    g = art.system
    assert len(g) == g.num_vars == s + 1
    for i in range(1, s - n + 1):
        assert is_homogeneous(g[n + i - 1]) == s - n - i + 2
    # P(lambda, x0): the pure powers lambda^d and x0^d both occur
    P = g[-1]
    d = s - n
    lam = g.num_vars - 1
    assert not P.coefficient(tuple(d if k == lam else 0 for k in range(g.num_vars))).is_zero()
    assert not P.coefficient(tuple(d if k == 0 else 0 for k in range(g.num_vars))).is_zero()
    model = mapper(CnfFormula(3, ((1, 2, 3), (-1, 2), (-2, -3))).models()[0])
    w = witness_from_assignment(B, model, art)
    assert g.is_root(w)
    assert w[-1].ctx.modulus == find_irreducible(5, d)


def test_thm5_over_q():
    B, mapper = sat_to_boolsys(CnfFormula(2, ((1, 2), (-1,))))
    f = boolsys_to_h2n(B, Q)
    art = squarify_det(f)
    g = art.system
    assert len(g) == g.num_vars == len(f)
    assert art.lam == 3
    w = witness_from_assignment(B, mapper((False, True)), art)
    assert g.is_root(w)
    assert all(x == 0 for x in w[f.num_vars:])
    with pytest.raises(InvalidAssignment):
        witness_from_assignment(B, mapper((True, True)), art)


def test_thm5_over_fp_extends_field():
    B, mapper = sat_to_boolsys(CnfFormula(2, ((1, 2), (-1,))))
    f = boolsys_to_h2n(B, F3)
    art = squarify_det(f)
    assert art.system.ctx.modulus == find_irreducible(3, len(f) - f.num_vars + 1)
    assert art.system.is_root(witness_from_assignment(B, mapper((False, True)), art))


def test_chain_two_rows():
    e1, e2, lam = MultiPoly.var(Q, 3, 0), MultiPoly.var(Q, 3, 1), MultiPoly.var(Q, 3, 2)
    M = chain_matrix([e1, e2], lam, one=MultiPoly.constant(Q, 3, 1), zero=MultiPoly.zero(Q, 3))
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    assert det == -(e1 + e2 * lam)


def test_epsilons_are_gadget_values():
    B = BoolSys(3, (Equation("or", 1, (2, 3)), Equation("not", 2, (3,))))
    f = boolsys_to_h2n(B, Q)
    seen = set()
    for signs in product((1, -1), repeat=3):
        seen.update(int(e.value) for e in chain_epsilons(f, (1,) + signs))
    assert seen <= {-4, -2, 0, 2, 4}


def test_shape_checks():
    with pytest.raises(WrongShape):
        squarify_det(PolySystem(Q, 3, [MultiPoly.var(Q, 3, 0, 2)]))
    with pytest.raises(WrongShape):
        squarify_det(PolySystem(Q, 1, [MultiPoly.var(Q, 1, 0, 3)] * 2))


def test_thm4_identity_alpha():
    f = boolsys_to_h2n(BoolSys(2, (Equation("or", 1, (1, 2)),)), F5)
    k = f.num_vars
    alpha = [[1 if i == j else 0 for j in range(len(f))] for i in range(k)]
    g = squarify_random(f, alpha=alpha)
    assert list(g) == list(f)[:k]
    with pytest.raises(WrongShape):
        squarify_random(f, alpha=[[1]])
    with pytest.raises(FieldTooSmall):
        squarify_random(f, min_field_size=7)


@settings(max_examples=20)
@given(st.integers(0, 2**32))
def test_thm4_keeps_planted_root(seed):
    B = BoolSys(2, (Equation("or", 1, (1, 2)), Equation("not", 2, (1,))))
    f = boolsys_to_h2n(B, F5)
    w = encode_assignment(B.models()[0], F5)
    assert squarify_random(f, seed=seed).is_root(w)


def test_thm4_unsatisfiable_over_f81_finds_no_root():
    f = boolsys_to_h2n(CONTRA, F3)
    F81 = FieldContext.extension(3, 4)
    for seed in range(20):
        g = squarify_random(f, F81, seed)
        assert brute_roots(g) is None


def test_thm4_is_deterministic():
    f = boolsys_to_h2n(CONTRA, F5)
    assert squarify_random(f, seed=7) == squarify_random(f, seed=7)


# --- PARTITION --------------------------------------------------------------

def test_partition_one_one():
    sys = partition_to_system((1, 1))
    assert sys.is_square() and sys.is_homogeneous()
    assert sys.is_root((1, 1, -1))


def test_partition_five_chain():
    inst = PartitionInstance((5,))
    sys = partition_to_system(inst, bounded=True)
    pt = sign_point(inst, (1,), True)
    W = [pt[w_index(inst, 1, j)] for j in range(3)]
    assert W == [5, 2, 1]
    assert all(r == 0 for r in sys.evaluate(pt)[2:])


@settings(max_examples=40)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=4))
def test_bounded_variant_coefficients(weights):
    inst = PartitionInstance(tuple(weights))
    sys = partition_to_system(inst, bounded=True)
    assert sys.is_square() and sys.is_homogeneous()
    assert all(-2 <= int(c.value) <= 2 for g in sys for c in g.terms.values())
    for signs in product((1, -1), repeat=len(weights)):
        pt = sign_point(inst, signs, True)
        for i, w in enumerate(weights, 1):
            assert pt[w_index(inst, i, 0)] == w
        assert sys.is_root(pt) == (sum(s * w for s, w in zip(signs, weights)) == 0)


def test_partition_predicate():
    assert partition_predicate((1, 1))
    assert not partition_predicate((1, 2))
    assert partition_predicate((5,), 5)
    assert not partition_predicate((5,))


# --- Plaisted ---------------------------------------------------------------

def test_plaisted_worked_example():
    enc = plaisted_encode(CnfFormula(2, ((1, 2), (-1,), (-2,))))
    assert enc.M == 6 and enc.primes == (2, 3)
    assert enc.P == {3: -1, 4: 1, 5: 2, 6: 9, 7: 2, 8: 1, 9: -1}
    assert enc.companion() == {0: -1, 6: 1}
    assert not enc.common_root_exists()


def test_plaisted_single_positive_literal():
    enc = plaisted_encode(CnfFormula(1, ((1,),)))
    assert enc.M == 2
    assert enc.common_root_exists()
    assert upoly_eval(enc.dense(), 1) == 0


def test_plaisted_guard():
    with pytest.raises(ModulusGuardExceeded):
        plaisted_encode(CnfFormula(7, ((1,),)))


@settings(max_examples=30)
@given(st.integers(1, 3), st.lists(st.lists(st.integers(1, 3), min_size=1, max_size=3, unique=True), min_size=1,
                                   max_size=4), st.randoms())
def test_plaisted_gcd_matches_satisfiability(v, raw, rnd):
    clauses = tuple(tuple(x if rnd.random() < 0.5 else -x for x in c if x <= v) for c in raw)
    clauses = tuple(c for c in clauses if c)
    if not clauses:
        return
    phi = CnfFormula(v, clauses)
    assert plaisted_encode(phi).common_root_exists() == phi.is_satisfiable()


def test_plaisted_system_is_homogeneous_pair():
    sys = plaisted_encode(CnfFormula(2, ((1, 2), (-1,), (-2,)))).as_system()
    assert sys.is_square() and sys.is_homogeneous()
    assert sys.degrees() == [6, 9]


# --- affine form and the naive fixture --------------------------------------

def test_h2n_to_hn_examples():
    x1, x2 = MultiPoly.var(Q, 2, 0), MultiPoly.var(Q, 2, 1)
    g = h2n_to_hn(PolySystem(Q, 2, [x1 * x1 - x2 * x2]))
    assert len(g) == 2 and g.num_vars == 4
    assert g.is_root(h2n_witness((1, 1), Q)) and g.is_root((1, 1, 1, 0))
    trivial = h2n_to_hn(PolySystem(Q, 2, [x1, x2]))
    assert not trivial.is_root((0, 0, 5, 5))
    degenerate = h2n_to_hn(PolySystem(Q, 1, [MultiPoly.zero(Q, 1)]))
    assert degenerate.is_root((1, 1))
    with pytest.raises(NotHomogeneous):
        h2n_to_hn(PolySystem(Q, 2, [x1 + 1]))
    with pytest.raises(InvalidAssignment):
        h2n_witness((0, 0), Q)


def test_naive_fixture_spurious_root():
    sys = naive_squaring_fixture()
    pt = [0] * 10
    pt[8] = pt[9] = 1
    assert sys.is_root(pt)
    assert pt[0] == 0


def test_naive_fixture_affine_points():
    sys = naive_squaring_fixture()
    for x in (1, -1, 2):
        pt = [1, x] + [x**k for k in range(2, 10)]
        vals = sys.evaluate(pt)
        assert all(v == 0 for v in vals[2:])
        assert vals[0] != 0
