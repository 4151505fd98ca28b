"""Command line entry point: ``partcolor solve|reduce|gen|bench``.

Structured results go to stdout as one JSON object per run, diagnostics to
stderr. ``solve`` exits 0 for yes, 1 for no and 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from partcolor.core import ORACLE_CAP, PcpInstance, Solution, oracle_solve
from partcolor.errors import NotApplicable, PcpError
from partcolor.exact import solve_exact
from partcolor.field import FieldSpec
from partcolor.generate import random_instance
from partcolor.io import (
    dumps,
    parse_dimacs_cnf,
    parse_edge_list,
    parse_instance,
    provenance_record,
    result_record,
    serialize_instance,
)
from partcolor.reductions import (
    pad_instance,
    reduce_3sat_to_pcp22,
    reduce_is_to_pcp,
    reduce_qsat_to_pcpk1,
)
from partcolor.special import DispatchConfig, dispatch, solve_q1, solve_q2k1

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def solve_special(inst: PcpInstance) -> Solution:
    k = inst.effective_k
    if inst.q == 1 and k <= 2:
        return solve_q1(inst)
    if inst.q <= 2 and k == 1:
        return solve_q2k1(inst)
    raise NotApplicable(f"no polynomial fast path for q = {inst.q}, k = {k}")


def run_solver(inst: PcpInstance, mode: str, config: DispatchConfig) -> Solution:
    if mode == "auto":
        return dispatch(inst, config)
    if mode == "oracle":
        return oracle_solve(inst, config.oracle_cap)
    if mode == "special":
        return solve_special(inst)
    if mode == "exact":
        field = FieldSpec.exact() if config.exact_arith else None
        return solve_exact(inst, field, config.repeats, config.seed, config.memory_budget)
    raise ValueError(f"unknown mode {mode!r}")


def cmd_solve(path: str, mode: str = "auto", config: DispatchConfig = DispatchConfig()) -> dict:
    inst = parse_instance(Path(path).read_text())
    start = time.perf_counter()
    solution = run_solver(inst, mode, config)
    return result_record(inst, solution, time.perf_counter() - start)


def cmd_reduce(kind: str, text: str, args: argparse.Namespace):
    if kind == "3sat":
        out = reduce_3sat_to_pcp22(parse_dimacs_cnf(text))
    elif kind == "qsat":
        out = reduce_qsat_to_pcpk1(parse_dimacs_cnf(text), args.q)
    elif kind == "is":
        n, edges = parse_edge_list(text, args.vertices)
        out = reduce_is_to_pcp(n, edges, args.k_independent, args.k)
    elif kind == "pad":
        out = pad_instance(parse_instance(text), args.q_target, args.k_target)
    else:
        raise ValueError(f"unknown reduction {kind!r}")
    return out


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partcolor", description="Partition coloring solver suite")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide an instance file")
    solve.add_argument("path")
    solve.add_argument("--mode", choices=["auto", "exact", "oracle", "special"], default="auto")
    solve.add_argument("--repeats", type=int, default=2, help="independent primes for modular mode")
    solve.add_argument("--exact-arith", action="store_true", help="exact integers instead of random primes")
    solve.add_argument("--seed", type=int, default=None, help="seed for prime sampling")
    solve.add_argument("--cap", type=int, default=ORACLE_CAP, help="oracle enumeration cap")

    reduce = sub.add_parser("reduce", help="generate an instance from a hardness reduction")
    reduce.add_argument("kind", choices=["3sat", "qsat", "is", "pad"])
    reduce.add_argument("input", help="DIMACS CNF (3sat, qsat), edge list (is) or instance file (pad); '-' for stdin")
    reduce.add_argument("--q", type=int, default=None, help="clause width bound for qsat")
    reduce.add_argument("--k", type=int, default=1, help="color budget for is")
    reduce.add_argument("--k-independent", type=int, default=1, help="independent set size for is")
    reduce.add_argument("--vertices", type=int, default=None, help="vertex count for is input")
    reduce.add_argument("--q-target", type=int, default=2)
    reduce.add_argument("--k-target", type=int, default=2)
    reduce.add_argument("--out", default=None, help="instance file (default stdout)")
    reduce.add_argument("--provenance", default=None, help="write provenance JSON here")

    gen = sub.add_parser("gen", help="random instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--q", type=int, required=True)
    gen.add_argument("--edge-prob", type=float, required=True)
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)

    bench = sub.add_parser("bench", help="time solvers over a suite of random rows")
    bench.add_argument("suite", help="JSON list or whitespace rows 'n p q k edge_prob seed'")
    bench.add_argument("--mode", choices=["auto", "exact", "oracle", "special"], default="exact")
    bench.add_argument("--runs", type=int, default=3)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--json", action="store_true", help="emit the report as JSON")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            config = DispatchConfig(
                oracle_cap=args.cap, repeats=args.repeats, exact_arith=args.exact_arith, seed=args.seed
            )
            record = cmd_solve(args.path, args.mode, config)
            print(dumps(record))
            return EXIT_YES if record["verdict"] == "yes" else EXIT_NO
        if args.command == "reduce":
            text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
            out = cmd_reduce(args.kind, text, args)
            _write(args.out, serialize_instance(out.instance, [f"reduction {args.kind}"]))
            if args.provenance:
                Path(args.provenance).write_text(json.dumps(provenance_record(out, args.kind), indent=1) + "\n")
            return 0
        if args.command == "gen":
            inst = random_instance(args.n, args.p, args.q, args.edge_prob, args.k, args.seed)
            comment = f"gen n={args.n} p={args.p} q={args.q} edge_prob={args.edge_prob} k={args.k} seed={args.seed}"
            _write(args.out, serialize_instance(inst, [comment]))
            return 0
        if args.command == "bench":
            from partcolor.bench import format_table, parse_suite, run_bench

            rows = parse_suite(Path(args.suite).read_text())
            config = DispatchConfig(seed=args.seed)
            report = run_bench(rows, lambda inst: run_solver(inst, args.mode, config), args.runs)
            print(json.dumps(report) if args.json else format_table(report))
            return 0
    except (PcpError, OSError, ValueError) as err:
        print(f"partcolor: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
