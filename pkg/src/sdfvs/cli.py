"""Command line interface: solve, verify, oracle, gen, reduce and bench.

Exit status: 0 YES / valid, 2 NO / invalid, 3 UNKNOWN (search limit or
capacity refusal), 64 bad input, 70 internal error.
"""

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import fileformat, kernels
from .errors import (CapacityError, InternalConsistencyError, OracleBudgetError, ParseError,
                     SdfvsError, SearchLimitExceeded)
from .generate import generate
from .instances import EdgeInstance, VertexInstance
from .oracle import OracleBudget, brute_force_solve
from .sampling import SamplingConfig
from .solver import Solver, SolverConfig, edge_to_vertex, verify_solution, vertex_to_edge

EXIT_YES = 0
EXIT_NO = 2
EXIT_UNKNOWN = 3
EXIT_USAGE = 64
EXIT_INTERNAL = 70

CSV_FIELDS = ["name", "n", "m", "s", "k", "answer", "solution", "nodes", "trials",
              "wall_ms", "seed", "mode"]
EXHAUSTIVE_AUTO = 16
ORACLE_LIMIT = 10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunReport:
    name: str
    n: int
    m: int
    s: int
    k: int
    answer: str
    solution: tuple
    nodes: int
    trials: int
    wall_ms: float
    seed: int
    mode: str
    error_mode: str
    backend: str = kernels.BACKEND

    def row(self):
        out = {f: getattr(self, f) for f in CSV_FIELDS}
        out["solution"] = " ".join(map(str, self.solution))
        out["wall_ms"] = f"{self.wall_ms:.1f}"
        return out


def _edge_form(inst):
    return vertex_to_edge(inst) if isinstance(inst, VertexInstance) else inst


def _s_count(f):
    return len(f.s_arcs) if f.kind == fileformat.EDGE else len(set(f.s_vertices))


def _mode_for(args, n):
    if args.mode:
        return args.mode
    return "exhaustive-p" if n <= EXHAUSTIVE_AUTO else "mc"


def _solver_config(args, mode, seed):
    samp = SamplingConfig(mode=mode, trials=args.trials, seed=seed,
                          multiplier=args.trial_multiplier)
    return SolverConfig(sampling=samp, max_nodes=args.max_nodes, timeout=args.timeout,
                        retry=not args.no_retry)


def _derived_seed(seed, k):
    return int(np.random.SeedSequence([seed, k]).generate_state(1, np.uint64)[0])


def run_solve(f, name, args):
    """Solve a parsed file and build its report (UNKNOWN on limits or refusals)."""
    inst = _edge_form(f.to_instance(args.k))
    mode = _mode_for(args, f.n)
    budgets = range(inst.budget + 1) if args.minimize else [inst.budget]
    nodes = trials = 0
    answer, solution = "NO", ()
    start = time.perf_counter()
    try:
        for k in budgets:
            seed = _derived_seed(args.seed, k) if args.minimize else args.seed
            solver = Solver(_solver_config(args, mode, seed))
            sol = solver.solve(EdgeInstance(inst.graph, inst.s_arcs, k))
            nodes += solver.stats.nodes
            trials += solver.stats.covering_sets
            if sol is not None:
                answer, solution = "YES", tuple(sorted(sol.deleted))
                break
    except (SearchLimitExceeded, CapacityError) as exc:
        print(f"warning: {exc}", file=sys.stderr)
        answer = "UNKNOWN"
    wall = (time.perf_counter() - start) * 1000.0
    if answer == "YES" and not verify_solution(inst, solution):
        raise InternalConsistencyError(f"reported solution {solution} does not verify")
    error_mode = "one-sided-monte-carlo" if mode == "mc" else "exact"
    return RunReport(name, f.n, f.m, _s_count(f), inst.budget, answer, solution, nodes,
                     trials, wall, args.seed, mode, error_mode)


def _exit_for(answer):
    return {"YES": EXIT_YES, "NO": EXIT_NO}.get(answer, EXIT_UNKNOWN)


def cmd_solve(args):
    f = fileformat.read(args.file)
    report = run_solve(f, os.path.basename(args.file), args)
    if args.json:
        print(json.dumps(asdict(report)))
    else:
        print(f"answer: {report.answer}")
        if report.answer == "YES":
            print("solution: " + " ".join(map(str, report.solution)))
        print(f"k: {report.k}  nodes: {report.nodes}  trials: {report.trials}  "
              f"wall_ms: {report.wall_ms:.1f}  seed: {report.seed}  "
              f"mode: {report.mode} ({report.error_mode})")
    return _exit_for(report.answer)


def _read_solution(args, n):
    if args.solution is not None:
        text = args.solution
    elif args.solution_file == "-":
        text = sys.stdin.read()
    else:
        with open(args.solution_file, encoding="utf-8") as fh:
            text = fh.read()
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        if line.startswith("solution:"):
            line = line[len("solution:"):]
        elif ":" in line:
            continue  # other report lines from ``solve``
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"bad vertex {tok!r} in solution", lineno) from None
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} out of range 1..{n}", lineno)
            out.append(v)
    return frozenset(out)


def cmd_verify(args):
    if args.solution is None and args.solution_file is None:
        raise ParseError("give a solution file or --solution")
    f = fileformat.read(args.file)
    inst = _edge_form(f.to_instance(args.k))
    xs = _read_solution(args, f.n)
    ok = verify_solution(inst, xs)
    print(("valid" if ok else "invalid") + ": " + " ".join(map(str, sorted(xs))))
    return EXIT_YES if ok else EXIT_NO


def cmd_oracle(args):
    f = fileformat.read(args.file)
    inst = _edge_form(f.to_instance(args.k))
    try:
        sol = brute_force_solve(inst, OracleBudget(max_vertices=args.max_vertices))
    except OracleBudgetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    if sol is None:
        print("answer: NO")
        return EXIT_NO
    print("answer: YES")
    print("solution: " + " ".join(map(str, sorted(sol.deleted))))
    return EXIT_YES


def cmd_gen(args):
    f = generate(args.kind, args.n, args.m, args.s_fraction, args.k, args.seed)
    text = fileformat.serialize(f)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_reduce(args):
    f = fileformat.read(args.file)
    inst = f.to_instance()
    if isinstance(inst, VertexInstance):
        out = vertex_to_edge(inst)
    else:
        out = edge_to_vertex(inst, strict=args.strict)
    text = fileformat.serialize(fileformat.from_instance(out, f.comments))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def cmd_bench(args):
    names = sorted(e for e in os.listdir(args.directory)
                   if not e.startswith(".") and os.path.isfile(os.path.join(args.directory, e)))
    fields = CSV_FIELDS + (["oracle"] if args.oracle_column else [])
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    status = EXIT_YES
    try:
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for name in names:
            try:
                f = fileformat.read(os.path.join(args.directory, name))
                report = run_solve(f, name, args)
            except ParseError as exc:
                print(f"{name}: skipped: {exc}", file=sys.stderr)
                continue
            row = report.row()
            oracle = ""
            if f.n <= args.oracle_max_vertices:
                inst = _edge_form(f.to_instance(args.k))
                truth = brute_force_solve(inst, OracleBudget(max_vertices=args.oracle_max_vertices))
                oracle = "NO" if truth is None else "YES"
                if report.answer == "YES" and oracle == "NO":
                    print(f"{name}: SOUNDNESS VIOLATION: solver YES, oracle NO", file=sys.stderr)
                    status = EXIT_INTERNAL
                elif report.answer == "NO" and oracle == "YES":
                    print(f"{name}: solver NO but oracle YES ({report.error_mode})", file=sys.stderr)
            if args.oracle_column:
                row["oracle"] = oracle
            writer.writerow(row)
            out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    return status


def _add_solver_flags(p):
    p.add_argument("--k", type=int, default=None, help="override the budget in the file")
    p.add_argument("--mode", choices=["mc", "exhaustive-p", "det"], default=None,
                   help=f"sampling mode (default: exhaustive-p when n <= {EXHAUSTIVE_AUTO}, else mc)")
    p.add_argument("--trials", type=int, default=None,
                   help="covering trials per search node (default 4^(k^2)+64)")
    p.add_argument("--trial-multiplier", type=int, default=1,
                   help="scale the per-node trial count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--timeout", type=float, default=None, metavar="SECONDS")
    p.add_argument("--no-retry", action="store_true",
                   help="skip the doubled-trials retry after a monte-carlo NO")
    p.add_argument("--minimize", action="store_true",
                   help="find a minimum solution by trying k = 0, 1, ...")


def build_parser():
    parser = _Parser(prog="sdfvs", description="Subset Directed Feedback Vertex Set solver")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    _add_solver_flags(p)
    p.add_argument("--json", action="store_true", help="print one JSON record")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a proposed solution")
    p.add_argument("file")
    p.add_argument("solution_file", nargs="?", default=None, help="solution file, or - for stdin")
    p.add_argument("--solution", default=None, help="solution vertices, space separated")
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force answer for small instances")
    p.add_argument("file")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--max-vertices", type=int, default=ORACLE_LIMIT)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a random or planted instance")
    p.add_argument("kind", choices=["random", "planted"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s-fraction", type=float, default=0.5)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="convert between vertex-S and edge-S forms")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true",
                   help="edge to vertex: subdivide every arc, not only S-arcs")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", help="solve every instance in a directory, CSV out")
    p.add_argument("directory")
    _add_solver_flags(p)
    p.add_argument("--oracle-column", action="store_true", help="append the oracle answer")
    p.add_argument("--oracle-max-vertices", type=int, default=ORACLE_LIMIT)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SdfvsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # anything else is a bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
