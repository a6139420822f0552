from __future__ import annotations

import random
import sys
from itertools import product

import pytest
from hypothesis import settings

from mresultant import FieldContext, MultiPoly, PolySystem
from mresultant.ordering import unrank

settings.register_profile("default", deadline=None)
settings.load_profile("default")

Q = FieldContext(0)
F2, F3, F5, F7 = (FieldContext(p) for p in (2, 3, 5, 7))


def monomials(n: int, d: int):
    """All degree-d exponent tuples in n variables (any order)."""
    return [a for a in product(range(d + 1), repeat=n) if sum(a) == d]


def random_form(ctx, n: int, d: int, rng: random.Random, density: float = 0.7, span: int = 9):
    terms = {}
    for a in monomials(n, d):
        if rng.random() < density:
            c = rng.randrange(-span, span + 1) if ctx.characteristic == 0 else rng.randrange(ctx.characteristic)
            terms[a] = c
    return MultiPoly(ctx, n, terms)


def random_system(ctx, n: int, max_deg: int, rng: random.Random, density: float = 0.7) -> PolySystem:
    return PolySystem(ctx, n, [random_form(ctx, n, rng.randint(1, max_deg), rng, density) for _ in range(n)])


def all_cnf_corpus(max_vars: int = 3, max_clauses: int = 4):
    """Formulas of 1..max_clauses distinct clauses over x1..x_max_vars, up to renaming variables."""
    from itertools import combinations, permutations

    from mresultant.reductions import CnfFormula

    clauses = []
    for size in (1, 2, 3):
        for vars_ in combinations(range(1, max_vars + 1), size):
            for signs in product((1, -1), repeat=size):
                clauses.append(tuple(s * v for s, v in zip(signs, vars_)))
    seen, out = set(), []
    perms = list(permutations(range(1, max_vars + 1)))
    for k in range(1, max_clauses + 1):
        for combo in combinations(clauses, k):
            keys = []
            for perm in perms:
                renamed = tuple(sorted(tuple(sorted((perm[abs(l) - 1] * (1 if l > 0 else -1) for l in c), key=abs))
                                       for c in combo))
                keys.append(renamed)
            key = min(keys)
            if key in seen:
                continue
            seen.add(key)
            top = max(abs(l) for c in key for l in c)
            out.append(CnfFormula(top, key))
    return out


@pytest.fixture(scope="session")
def cnf_corpus():
    return all_cnf_corpus()


__all__ = ["Q", "F2", "F3", "F5", "F7", "monomials", "random_form", "random_system", "unrank"]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results.values():
            terminalreporter.write_line(line)
