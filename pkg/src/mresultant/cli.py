"""
Command-line front end.

Exit codes: 0 success (or NONZERO), 10 ZERO, 20 UNDECIDED, 64 usage
error (bad flags, empty input, a guard too small for the request),
65 malformed or inconsistent input data.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path
from typing import Optional

from . import formats
from .brute import DEFAULT_NODE_GUARD, brute_roots
from .errors import (
    DimensionGuardExceeded,
    FormatError,
    GuardExceeded,
    MissingProvenance,
    ModulusGuardExceeded,
    ResultantError,
    SearchSpaceGuardExceeded,
    SpaceGuardExceeded,
)
from .field import FieldContext
from .macaulay import DEFAULT_DENSE_GUARD, MacaulaySpec, entry_oracle, macaulay_dense
from .ordering import rank, unrank
from .polysys import PolySystem
from .reductions import (
    CnfFormula,
    PartitionInstance,
    boolsys_to_h2n,
    h2n_to_hn,
    h2n_witness,
    partition_predicate,
    partition_roles,
    partition_to_system,
    plaisted_encode,
    sat_to_boolsys,
    sign_point,
    squarify_det,
    squarify_homogeneous,
    squarify_random,
    witness_from_assignment,
)
from .reductions.artifact import ReductionArtifact, x_roles
from .resultant import DEFAULT_DET_GUARD, Outcome, determinant, resultant_vanishes, sylvester
from .succinct import (
    config_graph,
    cycle_cover_determinant,
    dense_from_oracle,
    digraph_from_arcs,
    forest_gadget,
    parse_machine,
    random_forest,
    simulate,
    st_path,
)

EXIT_OK, EXIT_ZERO, EXIT_UNDECIDED, EXIT_USAGE, EXIT_DATA = 0, 10, 20, 64, 65
OUTCOME_EXIT = {Outcome.NONZERO: EXIT_OK, Outcome.ZERO: EXIT_ZERO, Outcome.UNDECIDED: EXIT_UNDECIDED}
DEFAULT_SEED = 0

VIAS = ("lemma1", "thm1", "thm1-bounded", "thm5", "thm6", "thm4", "plaisted", "prop1")
SOURCES = {"cnf": {"lemma1", "thm5", "thm6", "thm4", "plaisted", "prop1"},
           "boolsys": {"lemma1", "thm5", "thm6", "thm4", "prop1"},
           "partition": {"thm1", "thm1-bounded"}}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    subcommand: str
    input_digest: Optional[str] = None
    seed: int = DEFAULT_SEED
    field: Optional[str] = None
    guards: dict = dc_field(default_factory=dict)
    verdicts: list = dc_field(default_factory=list)
    timing: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------------------
# compile
# ---------------------------------------------------------------------------

def _load_instance(kind: str, source: str):
    """(instance object, canonical text stored in provenance)."""
    if kind == "partition":
        text = _read(source) if Path(source).is_file() else source
        weights = formats.parse_partition(text)
        return weights, " ".join(map(str, weights))
    text = _read(source)
    if kind == "cnf":
        phi = formats.parse_dimacs(text)
        return phi, formats.write_dimacs(phi)
    B = formats.parse_boolsys(text)
    return B, formats.write_boolsys(B)


def _boolsys_of(kind: str, inst):
    if kind == "cnf":
        return sat_to_boolsys(inst)[0]
    return inst


def compile_artifact(kind: str, via: str, inst, char: int, seed: int = DEFAULT_SEED, ext: int = 1,
                     min_field_size: Optional[int] = None) -> ReductionArtifact:
    if via not in SOURCES[kind]:
        raise UsageError(f"--via {via} does not accept --from {kind}")
    if via == "plaisted":
        if char != 0:
            raise UsageError("plaisted works over Q only (--char 0)")
        enc = plaisted_encode(inst)
        return ReductionArtifact(enc.as_system(), ("y", "x"), via, 0, None,
                                 {"M": enc.M, "primes": list(enc.primes)})
    try:
        ctx = FieldContext(char)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if via in ("thm1", "thm1-bounded"):
        pinst = PartitionInstance(inst)
        bounded = via == "thm1-bounded"
        system = partition_to_system(pinst, bounded, ctx)
        return ReductionArtifact(system, partition_roles(pinst, bounded), via, char, None, {"n": pinst.n})
    B = _boolsys_of(kind, inst)
    f = boolsys_to_h2n(B, ctx)
    n = B.num_vars
    meta = {"n": n, "s": len(f)}
    if via == "lemma1":
        return ReductionArtifact(f, tuple(x_roles(n)), via, char, None, meta)
    if via == "prop1":
        roles = tuple(x_roles(n)) + tuple(f"y{i}" for i in range(n + 1))
        return ReductionArtifact(h2n_to_hn(f), roles, via, char, None, meta)
    if via == "thm5":
        return squarify_det(f)
    if via == "thm6":
        if char == 0:
            raise UsageError("thm6 needs a prime --char")
        return squarify_homogeneous(f)
    target = FieldContext.extension(char, ext) if char else ctx
    g = squarify_random(f, target, seed, min_field_size=min_field_size)
    meta.update(seed=seed, ext=ext)
    return ReductionArtifact(g, tuple(x_roles(n)), via, char, None, meta)


def cmd_compile(args, manifest: RunManifest) -> int:
    inst, canon = _load_instance(args.source_kind, args.input)
    manifest.input_digest = _digest(canon)
    art = compile_artifact(args.source_kind, args.via, inst, args.char, args.seed, args.ext,
                           args.min_field_size)
    prov = art.provenance()
    prov["source"] = {"kind": args.source_kind, "text": canon}
    prov["seed"] = args.seed
    out = formats.write_system(art.system, prov)
    manifest.field = art.system.ctx.spec
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# macaulay / det / resultant-test
# ---------------------------------------------------------------------------

def _load_system(path: str) -> tuple:
    text = _read(path)
    system, prov = formats.parse_system(text)
    if len(system) == 0:
        raise UsageError("the system has no polynomials")
    return system, prov, text


def cmd_macaulay(args, manifest: RunManifest) -> int:
    system, _, text = _load_system(args.system)
    manifest.input_digest = _digest(text)
    manifest.field = system.ctx.spec
    manifest.guards = {"guard": args.guard}
    if not 0 <= args.ordering < system.num_vars:
        raise UsageError(f"--ordering must be in 0..{system.num_vars - 1}")
    spec = MacaulaySpec.build(system, args.ordering)
    if args.entry is not None:
        r, c = args.entry
        print(formats.format_coeff(entry_oracle(spec)(r, c)))
        return EXIT_OK
    dense = macaulay_dense(spec, args.guard)
    sys.stdout.write(f"# ordering {args.ordering} degree {spec.d} guard {args.guard}\n")
    sys.stdout.write(formats.write_matrix(dense, system.ctx))
    return EXIT_OK


def cmd_det(args, manifest: RunManifest) -> int:
    text = _read(args.matrix)
    manifest.input_digest = _digest(text)
    rows, ctx = formats.parse_matrix(text)
    manifest.field = ctx.spec if ctx else "Z"
    value = determinant(rows)
    print(formats.format_coeff(value) if ctx else value)
    return EXIT_OK


def _print_verdict(verdict, show_witness: bool, system: PolySystem) -> None:
    print(f"verdict {verdict.outcome.value}")
    if verdict.outcome is Outcome.NONZERO:
        print(f"ordering {verdict.ordering_index}")
        print(f"determinant {formats.format_coeff(verdict.determinant)}")
    if verdict.outcome is Outcome.ZERO and show_witness:
        print("witness " + " ".join(formats.format_coeff(x) for x in verdict.witness))
        print("evaluates-to-zero " + str(system.is_root(verdict.witness)).lower())
    for key in sorted(verdict.diagnostics):
        print(f"# {key}: {verdict.diagnostics[key]}")


def cmd_resultant_test(args, manifest: RunManifest) -> int:
    system, _, text = _load_system(args.system)
    manifest.input_digest = _digest(text)
    manifest.field = system.ctx.spec
    manifest.guards = {"guard": args.guard, "max_ext": args.max_ext, "search_guard": args.search_guard}
    print(f"# guards: det {args.guard}, max-ext {args.max_ext if args.max_ext else 'default'}, "
          f"search {args.search_guard}")
    verdict = resultant_vanishes(system, args.max_ext, args.guard, args.search_guard,
                                 with_diagnostic=args.diagnostic)
    _print_verdict(verdict, args.witness, system)
    manifest.verdicts.append(verdict.outcome.value)
    return OUTCOME_EXIT[verdict.outcome]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _satisfying_witness(prov: dict, system: PolySystem):
    """Witness from the recorded source instance, or None when it is unsatisfiable."""
    via, char = prov["via"], prov["char"]
    source = prov.get("source")
    if not source:
        raise MissingProvenance("provenance lacks the source instance")
    kind, text = source["kind"], source["text"]
    if kind == "partition":
        weights = formats.parse_partition(text)
        inst = PartitionInstance(weights)
        for signs in _sign_vectors(len(weights)):
            if sum(s * w for s, w in zip(signs, weights)) == 0:
                return sign_point(inst, signs, via == "thm1-bounded", system.ctx)
        return None
    if kind == "cnf":
        phi = formats.parse_dimacs(text)
        B, mapper = sat_to_boolsys(phi)
        models = phi.models()
        if not models:
            return None
        model = mapper(models[0])
    else:
        B = formats.parse_boolsys(text)
        models = B.models()
        if not models:
            return None
        model = models[0]
    art = ReductionArtifact(system, tuple(prov["roles"]), via, char, None, prov.get("meta", {}))
    if via in ("lemma1", "thm5", "thm6"):
        return witness_from_assignment(B, model, art)
    base = boolsys_to_h2n(B, FieldContext(char))
    root = witness_from_assignment(B, model, ReductionArtifact(base, tuple(x_roles(B.num_vars)), "lemma1", char))
    if via == "prop1":
        return h2n_witness(root, system.ctx)
    return tuple(system.ctx.element(x) for x in root)


def _sign_vectors(n: int):
    for k in range(2**n):
        yield tuple(-1 if (k >> i) & 1 else 1 for i in range(n))


def cmd_verify(args, manifest: RunManifest) -> int:
    system, prov, text = _load_system(args.system)
    manifest.input_digest = _digest(text)
    manifest.field = system.ctx.spec
    manifest.guards = {"guard": args.guard, "max_ext": args.max_ext, "search_guard": args.search_guard}
    if not prov or "via" not in prov:
        raise MissingProvenance("no '# provenance' header; compile the system with this tool")
    via = prov["via"]
    print(f"# via {via}, field {system.ctx.spec}")
    if via == "plaisted":
        f, g = system[0], system[1]
        res = sylvester(f, g)
        outcome = Outcome.ZERO if res.is_zero() else Outcome.NONZERO
        print(f"verdict {outcome.value}")
        print(f"sylvester {formats.format_coeff(res)}")
        manifest.verdicts.append(outcome.value)
        return OUTCOME_EXIT[outcome]
    witness = _satisfying_witness(prov, system)
    if witness is not None:
        ok = system.is_root(witness)
        print("verdict ZERO" if ok else "verdict WITNESS-FAILED")
        print("witness " + " ".join(formats.format_coeff(x) for x in witness))
        print("evaluates-to-zero " + str(ok).lower())
        manifest.verdicts.append("ZERO" if ok else "WITNESS-FAILED")
        return EXIT_ZERO if ok else EXIT_DATA
    print("# source instance is unsatisfiable")
    if system.is_square() and system.is_homogeneous():
        verdict = resultant_vanishes(system, args.max_ext, args.guard, args.search_guard)
        _print_verdict(verdict, True, system)
        manifest.verdicts.append(verdict.outcome.value)
        return OUTCOME_EXIT[verdict.outcome]
    if system.ctx.is_finite and system.is_homogeneous():
        root = brute_roots(system, args.max_ext or 1, args.search_guard)
        outcome = Outcome.ZERO if root is not None else Outcome.UNDECIDED
        print(f"verdict {outcome.value}")
        if root is not None:
            print("witness " + " ".join(formats.format_coeff(x) for x in root))
        manifest.verdicts.append(outcome.value)
        return OUTCOME_EXIT[outcome]
    print("verdict UNDECIDED")
    manifest.verdicts.append("UNDECIDED")
    return EXIT_UNDECIDED


# ---------------------------------------------------------------------------
# succinct demos
# ---------------------------------------------------------------------------

def _print_int_matrix(M) -> None:
    for row in M:
        print(" ".join(str(x) for x in row))


def cmd_succinct(args, manifest: RunManifest) -> int:
    manifest.seed = args.seed
    if args.demo == "forest":
        rng = random.Random(args.seed)
        if args.size < 2:
            raise UsageError("--size must be at least 2")
        arcs, s, t = random_forest(args.size, rng)
        G = digraph_from_arcs(args.size, arcs, s, t)
        M = dense_from_oracle(forest_gadget(G), args.guard)
        print(f"# forest seed {args.seed} size {args.size} s {s} t {t} guard {args.guard}")
        print("arcs " + " ".join(f"{u}->{v}" for u, v in sorted(arcs)))
        _print_int_matrix(M)
        path = st_path(G, args.guard)
        print(f"det-elimination {determinant(M)}")
        print(f"det-cycle-covers {cycle_cover_determinant(M, max_dim=max(10, args.size))}")
        print(f"path {'none' if path is None else ' '.join(map(str, path))}")
        return EXIT_OK
    if not args.machine:
        raise UsageError("--demo machine needs a machine file")
    machine = parse_machine(_read(args.machine))
    cg = config_graph(machine, args.input, args.space, args.max_steps, args.guard)
    print(f"# machine {args.machine} input {args.input!r} space {args.space} "
          f"max-steps {cg.max_steps} vertices {cg.graph.num_vertices} guard {args.guard}")
    path = st_path(cg.graph, args.guard)
    steps = simulate(machine, args.input, args.space, cg.max_steps)
    print(f"path {'none' if path is None else len(path)}")
    print(f"simulation {'reject' if steps is None else f'accept after {steps} steps'}")
    if cg.graph.num_vertices <= 10:
        M = dense_from_oracle(forest_gadget(cg.graph, check_limit=10))
        print(f"gadget-det {determinant(M)}")
    return EXIT_OK


def cmd_unrank(args, manifest: RunManifest) -> int:
    print(" ".join(map(str, unrank(args.n, args.d, args.idx))))
    return EXIT_OK


def cmd_rank(args, manifest: RunManifest) -> int:
    print(rank(args.n, args.d, args.alpha))
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mresultant", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--manifest", help="write a JSON run manifest to this path")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="compile an instance into a polynomial system")
    p.add_argument("input", help="input file (or the weights themselves for --from partition)")
    p.add_argument("--from", dest="source_kind", choices=sorted(SOURCES), required=True)
    p.add_argument("--via", choices=VIAS, required=True)
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--ext", type=int, default=1, help="extension degree for thm4")
    p.add_argument("--min-field-size", type=int, default=None, help="thm4: required field size")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("macaulay", help="print a Macaulay matrix or one entry")
    p.add_argument("system")
    p.add_argument("--ordering", type=int, default=0)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--dense", action="store_true")
    mode.add_argument("--entry", type=int, nargs=2, metavar=("ROW", "COL"))
    p.add_argument("--guard", type=int, default=DEFAULT_DENSE_GUARD)
    p.set_defaults(func=cmd_macaulay)

    p = sub.add_parser("det", help="determinant of a matrix file")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_det)

    for name, func, help_ in (("resultant-test", cmd_resultant_test, "three-valued resultant test"),
                              ("verify", cmd_verify, "end-to-end check of a compiled system")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("system")
        p.add_argument("--witness", action="store_true")
        p.add_argument("--max-ext", type=int, default=None)
        p.add_argument("--guard", type=int, default=DEFAULT_DET_GUARD, help="largest Macaulay dimension")
        p.add_argument("--search-guard", type=int, default=DEFAULT_NODE_GUARD)
        p.add_argument("--diagnostic", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("succinct", help="entry-oracle demos")
    p.add_argument("--demo", choices=("forest", "machine"), required=True)
    p.add_argument("machine", nargs="?")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--size", type=int, default=6)
    p.add_argument("--input", default="")
    p.add_argument("--space", type=int, default=4)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--guard", type=int, default=10**5)
    p.set_defaults(func=cmd_succinct)

    p = sub.add_parser("unrank", help="degree-d exponent tuple at an index")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("idx", type=int)
    p.set_defaults(func=cmd_unrank)

    p = sub.add_parser("rank", help="index of a degree-d exponent tuple")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("alpha", type=int, nargs="+")
    p.set_defaults(func=cmd_rank)
    return parser


USAGE_ERRORS = (UsageError, DimensionGuardExceeded, SearchSpaceGuardExceeded, ModulusGuardExceeded,
                SpaceGuardExceeded, GuardExceeded)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    manifest = RunManifest(args.command, seed=getattr(args, "seed", DEFAULT_SEED))
    start = time.perf_counter()
    try:
        code = args.func(args, manifest)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_DATA
    except (ResultantError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_DATA
    manifest.timing = round(time.perf_counter() - start, 6)
    if args.manifest:
        Path(args.manifest).write_text(manifest.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
