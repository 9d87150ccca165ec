"""Command-line entry point.

Exit status is 0 on success, 1 when a verification finds a mismatch (or a
computation fails), and 2 on usage errors.  Errors go to standard error as
``error: <kind>: <message>``.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import census, oracle
from .errors import BipartiteMapsError, ContractError, NotRegularError, ScaleError
from .labelling import IsoLabelling, enumerate_labellings, labelling_from_triple, triple_from_labelling
from .map_ops import chirality_report, hole_operation, mirror, petrie_dual
from .mapreal import map_to_json, predicted_invariants, realize_map, trace_faces
from .numbergraph import DEFAULT_PRIME_BOUND, LabelledDigraph, extension_witness, pi_graph, realize_digraph

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class Config:
    budget: int = census.DEFAULT_BUDGET
    oracle_cap: int = oracle.DEFAULT_CAP
    prime_bound: int = DEFAULT_PRIME_BOUND
    fmt: str = "csv"
    output: Optional[str] = None

    def __post_init__(self):
        if min(self.budget, self.oracle_cap, self.prime_bound) < 1:
            raise ContractError("budgets must be positive")
        if self.fmt not in ("csv", "json", "dot"):
            raise ContractError(f"unknown format {self.fmt!r}")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_range(text: str) -> range:
    try:
        if ".." in text:
            a, b = (int(v) for v in text.split("..", 1))
        else:
            a = b = int(text)
    except ValueError:
        raise ContractError(f"bad range {text!r}; expected a..b") from None
    if a < 1 or b < a:
        raise ContractError(f"bad range {text!r}")
    return range(a, b + 1)


def _parse_primes(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ContractError(f"bad prime list {text!r}") from None


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_census(args, cfg: Config) -> int:
    ns = _parse_range(args.range)
    if args.check_table1:
        report = census.table1_check(ns)
        _emit(report.format(), cfg.output)
        return EXIT_OK if report.all_match else EXIT_MISMATCH
    records = census.census_range(ns, jobs=args.jobs, budget=cfg.budget)
    buf = io.StringIO()
    if cfg.fmt == "json":
        census.write_json(records, buf)
    elif cfg.fmt == "csv":
        census.write_csv(records, buf)
    else:
        raise ContractError("census output must be csv or json")
    _emit(buf.getvalue(), cfg.output)
    return EXIT_OK


def _cmd_build(args, cfg: Config) -> int:
    L = IsoLabelling.parse(args.labelling)
    if args.n is not None and args.n != L.n:
        raise ContractError(f"labelling is for n={L.n}, not {args.n}")
    M = realize_map(triple_from_labelling(L))
    traced = trace_faces(M)
    expected = predicted_invariants(L)
    text = map_to_json(M, L.descriptor)
    if args.emit:
        _emit(text, args.emit)
        print(f"n={L.n} type={{{traced.face_length},{L.n}}} genus={traced.genus} -> {args.emit}")
    else:
        sys.stdout.write(text)
    return EXIT_OK if traced == expected else EXIT_MISMATCH


def _cmd_verify(args, cfg: Config) -> int:
    n = args.n
    counts = {"formula": census.nu_formula(n).total, "labellings": len(enumerate_labellings(n))}
    if args.constructive:
        counts["constructive"] = census.nu_constructive(n, budget=cfg.budget)
    if args.oracle:
        counts["oracle"], reps = oracle.brute_force_census(n, cap=cfg.oracle_cap)
        pipeline = [realize_map(triple_from_labelling(L)) for L in enumerate_labellings(n)]
        counts["oracle-matched"] = len(reps) if oracle.match_representatives(reps, pipeline) else -1
    for name, value in counts.items():
        print(f"{name}: {value}")
    agree = len(set(counts.values())) == 1
    print(f"n={n}: {'agree' if agree else 'MISMATCH'} on {counts['formula']}")
    return EXIT_OK if agree else EXIT_MISMATCH


def _cmd_ops(args, cfg: Config) -> int:
    T = triple_from_labelling(IsoLabelling.parse(args.labelling))
    if args.op == "hole":
        out = hole_operation(T, args.j)
    elif args.op == "mirror":
        out = mirror(T)
    elif args.op == "petrie":
        try:
            out = petrie_dual(T)
        except NotRegularError as exc:
            print(f"chiral; Petrie polygons have length {2 * exc.petrie_length}")
            raise
    else:
        report = chirality_report(T)
        print(json.dumps(report.__dict__, sort_keys=True))
        return EXIT_OK
    print(labelling_from_triple(out).descriptor)
    return EXIT_OK


def _cmd_pi_graph(args, cfg: Config) -> int:
    _emit(pi_graph(args.n).to_dot(f"Pi_{args.n}"), cfg.output)
    return EXIT_OK


def _cmd_realize(args, cfg: Config) -> int:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    delta = LabelledDigraph.from_json(text)
    n, mapping = realize_digraph(delta, strategy=args.strategy, prime_bound=cfg.prime_bound)
    payload = {"n": n, "primes": {str(k): v for k, v in mapping.items()}}
    _emit(json.dumps(payload, sort_keys=True) + "\n", cfg.output)
    return EXIT_OK


def _cmd_witness(args, cfg: Config) -> int:
    p = extension_witness(_parse_primes(args.U), _parse_primes(args.V), bound=cfg.prime_bound)
    print(p)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bipartite-maps", description="Regular embeddings of K_{n,n}.")
    parser.add_argument("--budget", type=int, default=census.DEFAULT_BUDGET, help="largest n for whole-census construction")
    parser.add_argument("--oracle-cap", type=int, default=oracle.DEFAULT_CAP, help="largest n for brute force")
    parser.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND, help="prime search bound")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("census", help="per-map census records or the golden-table comparison")
    p.add_argument("--range", default="1..60", help="n range as a..b")
    p.add_argument("--check-table1", action="store_true", help="compare formula counts with the bundled golden nu(n) table")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="output file (default stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("build", help="realize one labelling as a map and export it")
    p.add_argument("--n", type=int)
    p.add_argument("--labelling", required=True, help="labelling descriptor")
    p.add_argument("--emit", help="write map JSON here instead of stdout")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="compare independent counts of nu(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--constructive", action="store_true", help="build every triple")
    p.add_argument("--oracle", action="store_true", help="brute-force rotation systems")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("ops", help="apply a map operation to a labelling")
    p.add_argument("--labelling", required=True)
    p.add_argument("--op", choices=("hole", "mirror", "petrie", "report"), required=True)
    p.add_argument("--j", type=int, default=-1, help="exponent for the hole operation")
    p.set_defaults(func=_cmd_ops)

    p = sub.add_parser("pi-graph", help="DOT export of the prime divisibility digraph of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_pi_graph)

    p = sub.add_parser("realize-digraph", help="find n whose prime digraph matches a JSON digraph")
    p.add_argument("--input", required=True, help="JSON file, or - for stdin")
    p.add_argument("--strategy", choices=("proof", "minimal"), default="proof")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("witness", help="least prime adjacent to all of U and none of V")
    p.add_argument("--U", default="", help="comma-separated odd primes")
    p.add_argument("--V", default="", help="comma-separated odd primes")
    p.set_defaults(func=_cmd_witness)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise ContractError("--jobs must be positive")
        cfg = Config(
            budget=args.budget,
            oracle_cap=args.oracle_cap,
            prime_bound=args.prime_bound,
            fmt=getattr(args, "format", "csv"),
            output=getattr(args, "output", None),
        )
        return args.func(args, cfg)
    except SystemExit as exc:
        # --help and --version
        return exc.code or EXIT_OK
    except _UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ContractError, ScaleError) as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BipartiteMapsError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
