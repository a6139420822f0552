"""
Plain-text formats: polynomial systems, matrices, DIMACS CNF, BOOLSYS
equations and PARTITION weights.

System files look like::

    ring F5 vars 3
    # provenance {"via": "thm1", ...}
    1*x1^1 + 4*x2^1
    1*x0^2 + 4*x1^2

Terms are ``<coeff>*x<i>^<e>*...`` joined by `` + ``; coefficients are
``a/b`` over Q, residues ``0..p-1`` over F_p and ``[X^2+1]`` over an
extension.  Comment lines start with ``#``.  The writer is canonical, so
write(parse(write(S))) == write(S).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional

from .errors import FormatError
from .field import FieldContext, FieldElement, format_xpoly, parse_field_spec, parse_xpoly
from .polysys import MultiPoly, PolySystem
from .reductions.boolean import BoolSys, CnfFormula, Equation

PROVENANCE_TAG = "# provenance "


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------

def format_coeff(c: FieldElement) -> str:
    v = c.value
    if isinstance(v, tuple):
        return "[" + format_xpoly(list(v)) + "]"
    return str(v)


def parse_coeff(text: str, ctx: FieldContext, line: Optional[int] = None) -> FieldElement:
    text = text.strip()
    try:
        if text.startswith("[") and text.endswith("]"):
            if ctx.modulus is None:
                raise FormatError(f"residue {text} needs an extension field", line)
            return ctx.element(parse_xpoly(text[1:-1], ctx.characteristic))
        if ctx.characteristic == 0:
            return ctx.element(Fraction(text))
        if "/" in text:
            return ctx.element(Fraction(text))
        return ctx.element(int(text))
    except FormatError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad coefficient {text!r}: {exc}", line) from exc


# ---------------------------------------------------------------------------
# polynomials and systems
# ---------------------------------------------------------------------------

def _split_top(text: str, sep: str) -> list:
    """Split on ``sep`` outside brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def format_term(exps, c: FieldElement) -> str:
    factors = [format_coeff(c)]
    factors += [f"x{i}^{e}" for i, e in enumerate(exps) if e]
    return "*".join(factors)


def write_poly(f: MultiPoly) -> str:
    if f.is_zero():
        return "0"
    items = sorted(f.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))
    return " + ".join(format_term(e, c) for e, c in items)


_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, ctx: FieldContext, num_vars: int, line: Optional[int] = None) -> MultiPoly:
    text = text.strip()
    if not text:
        raise FormatError("empty polynomial", line)
    terms: dict = {}
    for raw in _split_top(text.replace(" ", ""), "+"):
        if not raw:
            raise FormatError(f"empty term in {text!r}", line)
        sign = 1
        if raw.startswith("-") and raw[1:2] == "x":
            sign, raw = -1, raw[1:]
        coeff = ctx.element(sign)
        exps = [0] * num_vars
        for k, factor in enumerate(_split_top(raw, "*")):
            m = _VAR.match(factor)
            if m:
                i = int(m.group(1))
                if i >= num_vars:
                    raise FormatError(f"variable x{i} out of range for {num_vars} variables", line)
                exps[i] += int(m.group(2)) if m.group(2) else 1
            elif k == 0:
                coeff = coeff * parse_coeff(factor, ctx, line)
            else:
                raise FormatError(f"bad factor {factor!r}", line)
        key = tuple(exps)
        terms[key] = terms[key] + coeff if key in terms else coeff
    return MultiPoly(ctx, num_vars, terms)


def write_system(sys: PolySystem, provenance: Optional[dict] = None) -> str:
    lines = [f"ring {sys.ctx.spec} vars {sys.num_vars}"]
    if provenance is not None:
        lines.append(PROVENANCE_TAG + json.dumps(provenance, sort_keys=True))
    lines += [write_poly(f) for f in sys]
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> tuple:
    """(PolySystem, provenance dict or None)."""
    header = None
    provenance = None
    comps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(PROVENANCE_TAG.strip()):
                try:
                    provenance = json.loads(line[len(PROVENANCE_TAG.strip()):].strip())
                except json.JSONDecodeError as exc:
                    raise FormatError(f"bad provenance: {exc}", lineno) from exc
            continue
        if header is None:
            m = re.fullmatch(r"ring\s+(\S+)\s+vars\s+(\d+)", line)
            if not m:
                raise FormatError("expected 'ring <field> vars <k>'", lineno)
            try:
                ctx = parse_field_spec(m.group(1))
            except FormatError as exc:
                raise FormatError(str(exc), lineno) from exc
            k = int(m.group(2))
            if k < 1:
                raise FormatError("need at least one variable", lineno)
            header = (ctx, k)
            continue
        comps.append(parse_poly(line, header[0], header[1], lineno))
    if header is None:
        raise FormatError("missing 'ring' line")
    return PolySystem(header[0], header[1], comps), provenance


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def write_matrix(M, ctx: Optional[FieldContext]) -> str:
    spec = ctx.spec if ctx is not None else "Z"
    fmt = format_coeff if ctx is not None else str
    lines = [f"matrix {spec} {len(M)}"]
    lines += [" ".join(fmt(x) for x in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple:
    """(rows, ctx); ctx is None for integer matrices (``Z``)."""
    rows, ctx, size, started = [], None, None, False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not started:
            m = re.fullmatch(r"matrix\s+(\S+)\s+(\d+)", line)
            if not m:
                raise FormatError("expected 'matrix <field> <n>'", lineno)
            ctx = None if m.group(1) == "Z" else parse_field_spec(m.group(1))
            size, started = int(m.group(2)), True
            continue
        entries = line.split()
        if ctx is None:
            try:
                rows.append([int(x) for x in entries])
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from exc
        else:
            rows.append([parse_coeff(x, ctx, lineno) for x in entries])
        if len(entries) != size:
            raise FormatError(f"row has {len(entries)} entries, expected {size}", lineno)
    if not started:
        raise FormatError("missing 'matrix' line")
    if len(rows) != size:
        raise FormatError(f"{len(rows)} rows, expected {size}")
    return rows, ctx


# ---------------------------------------------------------------------------
# problem instances
# ---------------------------------------------------------------------------

def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses, cur = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("expected 'p cnf <vars> <clauses>'", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from exc
            continue
        if num_vars is None:
            raise FormatError("clause before the 'p cnf' line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise FormatError(f"bad literal {tok!r}", lineno) from exc
            if lit == 0:
                if not cur:
                    raise FormatError("empty clause", lineno)
                clauses.append(tuple(cur))
                cur = []
            else:
                if abs(lit) > num_vars:
                    raise FormatError(f"literal {lit} exceeds {num_vars} variables", lineno)
                cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    if num_vars is None:
        raise FormatError("missing 'p cnf' line")
    if num_clauses is not None and num_clauses != len(clauses):
        raise FormatError(f"header announces {num_clauses} clauses, found {len(clauses)}")
    try:
        return CnfFormula(num_vars, tuple(clauses))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


_EQ = re.compile(r"^x(\d+)\s*=\s*(?:(true)|not\s+x(\d+)|or\s+x(\d+)\s+x(\d+))$", re.IGNORECASE)


def parse_boolsys(text: str) -> BoolSys:
    """Lines ``xi = true``, ``xi = not xj``, ``xi = or xj xk``; optional ``vars N`` header."""
    eqs, declared, top = [], None, 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"vars\s+(\d+)", line)
        if m:
            declared = int(m.group(1))
            continue
        m = _EQ.match(line)
        if not m:
            raise FormatError(f"cannot parse equation {line!r}", lineno)
        i = int(m.group(1))
        if m.group(2):
            eq = Equation("true", i)
        elif m.group(3):
            eq = Equation("not", i, (int(m.group(3)),))
        else:
            eq = Equation("or", i, (int(m.group(4)), int(m.group(5))))
        if min((eq.target,) + eq.args) < 1:
            raise FormatError("variables are numbered from 1", lineno)
        top = max(top, eq.target, *eq.args)
        eqs.append(eq)
    n = declared if declared is not None else top
    try:
        return BoolSys(max(n, 1), tuple(eqs))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_boolsys(B: BoolSys) -> str:
    return "\n".join([f"vars {B.num_vars}"] + [str(eq) for eq in B.equations]) + "\n"


def parse_partition(text: str) -> tuple:
    try:
        weights = tuple(int(tok) for tok in text.split() if not tok.startswith("#"))
    except ValueError as exc:
        raise FormatError(f"bad weight: {exc}") from exc
    if not weights:
        raise FormatError("no weights given")
    if any(w < 0 for w in weights):
        raise FormatError("weights must be nonnegative")
    return weights
