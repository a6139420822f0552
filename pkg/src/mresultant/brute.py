"""
Exhaustive projective root search over small finite fields.

Points are normalized so that their first nonzero coordinate is 1 (one
chart per position of that coordinate).  Inside a chart the search is a
plain backtracking enumeration, pruned by propagation: whenever some
residual polynomial involves a single unassigned variable, only its roots
are tried for that variable.  Every point of the chart is still covered,
so a negative answer is exhaustive.

When the coefficients lie in a subfield, Frobenius maps roots to roots
and fixes every value assigned so far; a branch then only tries the
smallest (by packed value) member of each Frobenius orbit.  The subtree
of any other member is the image of the representative's subtree, so
the first root found is the same as without the reduction.

Field arithmetic during the search runs on discrete-log tables: an
element is stored as its log to a primitive element g (``ZERO`` for 0),
products are sums of logs and sums go through a Zech table.  Fields too
large for tables fall back to plain element arithmetic, with univariate
roots found as gcd(f, x^q - x) followed by equal-degree splitting.
"""

from __future__ import annotations

import random
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, isqrt, lcm
from typing import Optional

import numpy as np

from .errors import NotPrimeField, SearchSpaceGuardExceeded
from .field import FieldContext, FieldElement, find_irreducible, poly_powmod
from .polysys import PolySystem

ZERO = -1
TABLE_CAP = 1 << 20
DEFAULT_NODE_GUARD = 10**6


def _prime_factors(n: int) -> list:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class TableField:
    """F_q for q = p^m with log/antilog/Zech tables.

    Elements outside the search are "packed" ints: residue coefficients
    read as base-p digits, constant digit least significant.
    """

    def __init__(self, p: int, modulus: Optional[tuple]):
        m = 1 if modulus is None else len(modulus) - 1
        q = p**m
        if q > TABLE_CAP:
            raise SearchSpaceGuardExceeded(f"field of size {q} exceeds table cap {TABLE_CAP}")
        self.p, self.m, self.q, self.modulus = p, m, q, modulus
        self.N = N = q - 1
        self.half = N // 2 if p != 2 else 0
        self.zero_rep, self.one_rep = ZERO, 0
        self.ctx = FieldContext(p, modulus) if m > 1 else FieldContext(p)

        g = self._primitive_element()
        # multiplication by g as a matrix acting on digit vectors
        mult = np.zeros((m, m), dtype=np.int64)
        for j in range(m):
            col = self._mul_packed_by_g(p**j, g)
            for r in range(m):
                mult[r, j] = col[r]
        block = isqrt(N) + 1
        first = np.zeros((block, m), dtype=np.int64)
        first[0, 0] = 1
        for k in range(1, block):
            first[k] = mult @ first[k - 1] % p
        step = np.identity(m, dtype=np.int64)
        for _ in range(block):
            step = mult @ step % p
        blocks, cur = [first], first
        while len(blocks) * block < N:
            cur = cur @ step.T % p
            blocks.append(cur)
        digits = np.concatenate(blocks)[:N]
        weights = p ** np.arange(m, dtype=np.int64)
        exp = digits @ weights
        log = np.full(q, ZERO, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if np.count_nonzero(log[1:] >= 0) != N:
            raise AssertionError("generator is not primitive")
        low = exp % p
        zech = log[exp - low + (low + 1) % p]

        self.digits = digits
        self.exp = exp.tolist()
        self.log = log.tolist()
        self.zech = zech.tolist()
        self._roots: dict = {}

    # construction helpers ---------------------------------------------------

    def _coeffs(self, packed: int) -> list:
        out = []
        for _ in range(self.m):
            packed, d = divmod(packed, self.p)
            out.append(d)
        return out

    def _mul_packed_by_g(self, packed: int, g: int) -> list:
        p, m = self.p, self.m
        if self.modulus is None:
            return [packed * g % p]
        a, b = self._coeffs(packed), self._coeffs(g)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m + 1):
                    prod[k - m + j] = (prod[k - m + j] - c * mod[j]) % p
        return prod[:m]

    def _primitive_element(self) -> int:
        p, N = self.p, self.q - 1
        factors = _prime_factors(N)
        for cand in range(1, self.q):
            if self.modulus is None:
                if all(pow(cand, N // r, p) != 1 for r in factors):
                    return cand
            else:
                coeffs = self._coeffs(cand)
                if all(poly_powmod(coeffs, N // r, self.modulus, p) != [1] for r in factors):
                    return cand
        raise AssertionError("no primitive element")

    # conversions ------------------------------------------------------------

    def from_element(self, x: FieldElement) -> int:
        v = x.value
        packed = v if not isinstance(v, tuple) else sum(c * self.p**j for j, c in enumerate(v))
        return self.log[packed]

    def to_element(self, lv: int) -> FieldElement:
        if lv == ZERO:
            return self.ctx.zero
        packed = self.exp[lv]
        if self.m == 1:
            return self.ctx.element(packed)
        return self.ctx.element(tuple(self._coeffs(packed)))

    def packed(self, lv: int) -> int:
        return 0 if lv == ZERO else self.exp[lv]

    # log-domain arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        z = self.zech[(b - a) % self.N]
        return ZERO if z == ZERO else (a + z) % self.N

    def neg(self, a: int) -> int:
        return a if a == ZERO else (a + self.half) % self.N

    def term(self, c: int, lv: int, e: int) -> int:
        """c * x^e for x = lv (both nonzero)."""
        return (c + e * lv) % self.N

    def frobenius(self, lv: int, j: int) -> int:
        """x^(p^j)."""
        return lv if lv == ZERO else lv * pow(self.p, j, self.N) % self.N

    def values(self):
        """Every element, zero first, then by packed value."""
        return self._sorted_values

    @cached_property
    def _sorted_values(self) -> tuple:
        return tuple(sorted([ZERO] + list(range(self.N)), key=self.packed))

    # univariate roots -------------------------------------------------------

    def roots(self, key: tuple) -> tuple:
        """Roots (as logs, ascending packed value) of sum c * x^e over ``key = ((e, c), ...)``."""
        hit = self._roots.get(key)
        if hit is None:
            hit = self._roots[key] = self._solve(key)
        return hit

    def _solve(self, key: tuple) -> tuple:
        N = self.N
        shift = min(e for e, _ in key)
        out = [ZERO] if shift > 0 else []
        terms = [(e - shift, c) for e, c in key]
        if len(terms) == 1:
            return tuple(out)
        if len(terms) == 2:
            (e0, c0), (e1, c1) = sorted(terms)
            k = e1 - e0
            t = (self.neg(c0) - c1) % N
            g = gcd(k, N)
            if t % g == 0:
                base = (t // g) * pow(k // g, -1, N // g) % (N // g) if N // g > 1 else 0
                out.extend((base + j * (N // g)) % N for j in range(g))
        else:
            logs = np.arange(N, dtype=np.int64)
            acc = np.zeros((N, self.m), dtype=np.int64)
            for e, c in terms:
                acc += self.digits[(c + e * logs) % N]
            mask = np.all(acc % self.p == 0, axis=1)
            out.extend(np.nonzero(mask)[0].tolist())
        return tuple(sorted(out, key=self.packed))


# ---------------------------------------------------------------------------
# plain arithmetic for fields beyond the table cap
# ---------------------------------------------------------------------------

def _upoly_trim(a: list) -> list:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _upoly_mulmod(a: list, b: list, f: list) -> list:
    """a * b mod f; f monic, coefficients low to high."""
    if not a or not b:
        return []
    zero = f[0] - f[0]
    prod = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                prod[i + j] = prod[i + j] + x * y
    return _upoly_mod(prod, f)


def _upoly_mod(a: list, f: list) -> list:
    a = list(a)
    d = len(f) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if not c.is_zero():
            for j in range(d + 1):
                a[k - d + j] = a[k - d + j] - c * f[j]
    return _upoly_trim(a[:d])


def _upoly_monic(a: list) -> list:
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _upoly_gcd(a: list, b: list) -> list:
    a, b = _upoly_trim(list(a)), _upoly_trim(list(b))
    while b:
        a, b = b, _upoly_mod(a, _upoly_monic(b))
    return _upoly_monic(a) if a else a


def _upoly_divexact(a: list, b: list) -> list:
    """a / b for monic b dividing a."""
    a = list(a)
    d = len(b) - 1
    q = [a[0] - a[0]] * (len(a) - d)
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        q[k - d] = c
        if not c.is_zero():
            for j in range(d + 1):
                a[k - d + j] = a[k - d + j] - c * b[j]
    return q


def _upoly_powmod(base: list, e: int, f: list) -> list:
    one = f[0].ctx.one
    result = [one]
    base = _upoly_mod(base, f)
    while e:
        if e & 1:
            result = _upoly_mulmod(result, base, f)
        base = _upoly_mulmod(base, base, f)
        e >>= 1
    return result


class DirectField:
    """F_q with elements kept as ``FieldElement`` objects; same interface as ``TableField``."""

    def __init__(self, p: int, modulus: Optional[tuple]):
        self.p = p
        self.m = 1 if modulus is None else len(modulus) - 1
        self.q = p**self.m
        self.modulus = modulus
        self.ctx = FieldContext(p, modulus) if self.m > 1 else FieldContext(p)
        self.zero_rep, self.one_rep = self.ctx.zero, self.ctx.one
        self._roots: dict = {}

    def from_element(self, x: FieldElement) -> FieldElement:
        return self.ctx.element(x.value)

    def to_element(self, x: FieldElement) -> FieldElement:
        return x

    def packed(self, x: FieldElement) -> int:
        v = x.value
        if not isinstance(v, tuple):
            return v
        return sum(c * self.p**j for j, c in enumerate(v))

    def unpack(self, packed: int) -> FieldElement:
        if self.m == 1:
            return self.ctx.element(packed)
        digits = []
        for _ in range(self.m):
            packed, d = divmod(packed, self.p)
            digits.append(d)
        return self.ctx.element(tuple(digits))

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a + b

    def neg(self, a: FieldElement) -> FieldElement:
        return -a

    def term(self, c: FieldElement, x: FieldElement, e: int) -> FieldElement:
        return c * x**e

    @cached_property
    def _frobenius_images(self) -> list:
        """Digit vectors of X^(i p^j) for each j < m, i < m (Frobenius is F_p-linear)."""
        images = []
        for j in range(self.m):
            g = self.ctx.gen ** (self.p**j) if self.m > 1 else self.ctx.one
            col, acc = [], self.ctx.one
            for _ in range(self.m):
                col.append(self._digits(acc))
                acc = acc * g
            images.append(col)
        return images

    def _digits(self, x: FieldElement) -> list:
        v = x.value
        v = list(v) if isinstance(v, tuple) else [v]
        return v + [0] * (self.m - len(v))

    def frobenius(self, x: FieldElement, j: int) -> FieldElement:
        j %= self.m
        if j == 0:
            return x
        out = [0] * self.m
        for c, img in zip(self._digits(x), self._frobenius_images[j]):
            if c:
                out = [(a + c * b) % self.p for a, b in zip(out, img)]
        return self.ctx.element(tuple(out))

    def values(self):
        return (self.unpack(k) for k in range(self.q))

    def roots(self, key: tuple) -> tuple:
        hit = self._roots.get(key)
        if hit is None:
            hit = self._roots[key] = self._solve(key)
        return hit

    def _solve(self, key: tuple) -> tuple:
        shift = min(e for e, _ in key)
        out = [self.ctx.zero] if shift > 0 else []
        top = max(e for e, _ in key) - shift
        if top > 0:
            f = [self.ctx.zero] * (top + 1)
            for e, c in key:
                f[e - shift] = c
            f = _upoly_monic(f)
            x = [self.ctx.zero, self.ctx.one]
            h = _upoly_powmod(x, self.q, f)
            h = h + [self.ctx.zero] * (2 - len(h))
            h[1] = h[1] - self.ctx.one
            g = _upoly_gcd(f, _upoly_trim(h)) if _upoly_trim(list(h)) else f
            out.extend(self._split(g, random.Random(len(g))))
        return tuple(sorted(out, key=self.packed))

    def _split(self, g: list, rng: random.Random) -> list:
        """Roots of a monic squarefree g that splits into distinct linear factors."""
        d = len(g) - 1
        if d == 0:
            return []
        if d == 1:
            return [-g[0]]
        while True:
            delta = self.unpack(rng.randrange(self.q))
            if self.p == 2:
                base = _upoly_mod([self.ctx.zero, delta], g)
                w, acc = base, base
                for _ in range(self.m - 1):
                    w = _upoly_mulmod(w, w, g)
                    acc = _upoly_trim([a + b for a, b in _zip_pad(acc, w, self.ctx.zero)])
                probe = acc
            else:
                w = _upoly_powmod([delta, self.ctx.one], (self.q - 1) // 2, g)
                w = w + [self.ctx.zero] * (1 - len(w))
                w[0] = w[0] - self.ctx.one
                probe = _upoly_trim(w)
            if not probe:
                continue
            h = _upoly_gcd(g, probe)
            if 0 < len(h) - 1 < d:
                return self._split(h, rng) + self._split(_upoly_divexact(g, h), rng)


def _zip_pad(a: list, b: list, zero) -> list:
    n = max(len(a), len(b))
    return list(zip(a + [zero] * (n - len(a)), b + [zero] * (n - len(b))))


@lru_cache(maxsize=64)
def table_field(p: int, modulus: Optional[tuple]):
    """Log-table field when it fits under ``TABLE_CAP``, plain arithmetic otherwise."""
    m = 1 if modulus is None else len(modulus) - 1
    if p**m > TABLE_CAP:
        return DirectField(p, modulus)
    return TableField(p, modulus)


def _substitute(field, poly: dict, i: int, lv) -> dict:
    out: dict = {}
    zero = field.zero_rep
    for exps, c in poly.items():
        e = exps[i]
        if e:
            if lv == zero:
                continue
            c = field.term(c, lv, e)
            exps = exps[:i] + (0,) + exps[i + 1:]
        if exps in out:
            s = field.add(out[exps], c)
            if s == zero:
                del out[exps]
            else:
                out[exps] = s
        else:
            out[exps] = c
    return out


def _entry(poly: dict) -> Optional[tuple]:
    """(poly, variable set), or None for the zero polynomial; False for a nonzero constant."""
    if not poly:
        return None
    vs = frozenset(i for exps in poly for i, e in enumerate(exps) if e)
    if not vs:
        return False
    return poly, vs


def _divisors(m: int) -> list:
    return [d for d in range(1, m + 1) if m % d == 0]


class _Search:
    def __init__(self, field, num_vars: int, budget: list, base_degree: int = 1):
        self.field = field
        self.num_vars = num_vars
        self.budget = budget
        self.base_degree = base_degree if field.m % base_degree == 0 else field.m

    def _degree(self, lv) -> int:
        """Degree over F_p of the subfield generated by one value."""
        for d in _divisors(self.field.m):
            if self.field.frobenius(lv, d) == lv:
                return d
        return self.field.m

    def _representatives(self, values, k: int):
        """Orbit minima under x -> x^(p^k); ``k`` is the degree of the field fixed so far."""
        F = self.field
        if k == F.m:
            return values
        steps = range(k, F.m, k)
        return (lv for lv in values if all(F.packed(F.frobenius(lv, j)) >= F.packed(lv) for j in steps))

    def run(self, entries: list, unassigned: list, assignment: dict, k: Optional[int] = None) -> Optional[dict]:
        self.budget[0] -= 1
        if self.budget[0] < 0:
            raise SearchSpaceGuardExceeded("node budget exhausted")
        if not entries:
            done = dict(assignment)
            for v in unassigned:
                done[v] = self.field.zero_rep
            return done
        best = None
        for poly, vs in entries:
            if len(vs) == 1:
                (v,) = vs
                key = tuple(sorted(((exps[v], c) for exps, c in poly.items()), key=lambda t: t[0]))
                roots = self.field.roots(key)
                if not roots:
                    return None
                if best is None or len(roots) < len(best[1]):
                    best = (v, roots)
        if best is None:
            used = set().union(*(vs for _, vs in entries))
            v = min(u for u in unassigned if u in used)
            best = (v, self.field.values())
        v, values = best
        if k is None:
            k = self.base_degree
        rest = [u for u in unassigned if u != v]
        for lv in self._representatives(values, k):
            nxt, ok = [], True
            for poly, vs in entries:
                if v not in vs:
                    nxt.append((poly, vs))
                    continue
                ent = _entry(_substitute(self.field, poly, v, lv))
                if ent is False:
                    ok = False
                    break
                if ent is not None:
                    nxt.append(ent)
            if ok:
                assignment[v] = lv
                k2 = k if k == self.field.m else lcm(k, self._degree(lv))
                found = self.run(nxt, rest, assignment, k2)
                if found is not None:
                    return found
                del assignment[v]
        return None


def search_field(sys: PolySystem, field, budget: list) -> Optional[tuple]:
    """First projective root of ``sys`` with coordinates in ``field`` (charts in index order)."""
    k = sys.num_vars
    polys = []
    for f in sys:
        polys.append({exps: field.from_element(c) for exps, c in f.terms.items()})
    search = _Search(field, k, budget, sys.ctx.degree)
    for chart in range(k):
        trial, ok = [], True
        for poly in polys:
            ent = _entry(_substitute(field, poly, chart, field.one_rep))
            if ent is False:
                ok = False
                break
            if ent is not None:
                trial.append(ent)
        if ok:
            found = search.run(trial, list(range(chart + 1, k)), {})
            if found is not None:
                point = [field.ctx.zero] * k
                point[chart] = field.ctx.one
                for v, lv in found.items():
                    point[v] = field.to_element(lv)
                return tuple(point)
        polys = [_substitute(field, poly, chart, field.zero_rep) for poly in polys]
        if any(ent is False for ent in map(_entry, polys)):
            return None
    return None


def brute_roots(sys: PolySystem, max_ext: int = 1, guard: int = DEFAULT_NODE_GUARD) -> Optional[tuple]:
    """First nonzero common root with coordinates in F_{p^m}, m = 1..max_ext, or None.

    Over F_p the extensions come from ``find_irreducible``.  A system whose
    coefficients already live in an extension F_p[X]/(P) is searched in
    that field only.  ``guard`` bounds the total number of search nodes.
    """
    ctx = sys.ctx
    if not ctx.is_finite:
        raise NotPrimeField("brute_roots needs a finite field")
    budget = [guard]
    if not ctx.is_prime_field:
        return search_field(sys, table_field(ctx.characteristic, ctx.modulus), budget)
    p = ctx.characteristic
    for m in range(1, max_ext + 1):
        modulus = None if m == 1 else find_irreducible(p, m)
        found = search_field(sys, table_field(p, modulus), budget)
        if found is not None:
            return found
    return None


def box_values(bound: int) -> list:
    out = [0]
    for k in range(1, bound + 1):
        out += [k, -k]
    return out


def rational_box_roots(sys: PolySystem, bound: int = 2, guard: int = 10**5) -> Optional[tuple]:
    """Roots over Q among integer points with first nonzero coordinate 1 and the rest in [-bound, bound]."""
    k = sys.num_vars
    values = box_values(bound)
    total = sum(len(values) ** (k - 1 - c) for c in range(k))
    if total > guard:
        raise SearchSpaceGuardExceeded(f"{total} box points exceed guard {guard}")
    for chart in range(k):
        for tail in product(values, repeat=k - 1 - chart):
            point = (0,) * chart + (1,) + tail
            if sys.is_root(point):
                return tuple(sys.ctx.element(x) for x in point)
    return None
