"""Command-line interface: ``cliquepick <subcommand> ...``."""

from __future__ import annotations

import argparse
import secrets
import sys
from typing import Sequence, TextIO

from .applications import STRATEGIES, ida_multiplicities, simulate_active_learning
from .background import DEFAULT_TO_CAP, count_with_background
from .counting import count_amo, count_mec
from .errors import CliquePickError
from .generators import MODELS, GeneratorSpec, generate_chordal
from .graph import format_graph, parse_graph, topological_order
from .sampling import MECSampler, RngStream
from .selfcheck import run_selfcheck

# label printed with errors raised while running each subcommand
AREA = {
    "count": "mec-counting",
    "count-amo": "mec-counting",
    "count-pdag": "background-counting",
    "sample": "mec-sampling",
    "active-learn": "causal-applications",
    "ida-mult": "causal-applications",
    "gen": "generators",
    "selfcheck": "selfcheck",
}


def _read_graph(path: str):
    if path == "-":
        return parse_graph(sys.stdin.buffer.read())
    with open(path, "rb") as fh:
        return parse_graph(fh.read())


def _csv(vs) -> str:
    return ",".join(map(str, sorted(vs))) or "-"


def _seed(args, err: TextIO) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(63)
        print(f"seed: {args.seed}", file=err)
    return args.seed


def format_count(n: int, scientific: bool = False) -> str:
    if not scientific:
        return str(n)
    digits = str(n)
    mantissa = digits[0] + ("." + digits[1:4] if len(digits) > 1 else "")
    return f"{n}\napprox {mantissa}e{len(digits) - 1}"


def _cmd_count(args, out, err):
    print(format_count(count_mec(_read_graph(args.file), threads=args.threads), args.scientific), file=out)


def _cmd_count_amo(args, out, err):
    print(format_count(count_amo(_read_graph(args.file), threads=args.threads), args.scientific), file=out)


def _cmd_count_pdag(args, out, err):
    print(format_count(count_with_background(_read_graph(args.file), args.to_cap), args.scientific), file=out)


def _cmd_sample(args, out, err):
    C = _read_graph(args.file)
    sampler = MECSampler(_seed(args, err)).fit(C)
    for i in range(args.num):
        D = sampler.sample_one()
        if args.format == "order":
            print(" ".join(map(str, topological_order(D))), file=out)
        else:
            print(f"# sample {i + 1}", file=out)
            out.write(format_graph(D))


def _cmd_active_learn(args, out, err):
    C = _read_graph(args.graph)
    D = _read_graph(args.true_dag)
    rng = RngStream(_seed(args, err))
    count, trace = simulate_active_learning(C, D, args.strategy, rng, args.max_outcomes, args.threads)
    print(count, file=out)
    for i, step in enumerate(trace, start=1):
        print(step.format(i), file=out)


def _cmd_ida_mult(args, out, err):
    C = _read_graph(args.graph)
    if not 1 <= args.vertex <= C.n:
        raise CliquePickError(f"vertex {args.vertex} is outside 1..{C.n}")
    for K, c in ida_multiplicities(C, args.vertex):
        print(f"{_csv(K)} {c}", file=out)


def _cmd_gen(args, out, err):
    spec = GeneratorSpec(args.model, args.n, args.k, _seed(args, err))
    out.write(format_graph(generate_chordal(spec)))


def _cmd_selfcheck(args, out, err):
    if not run_selfcheck(args.seed if args.seed is not None else 0, args.trials, args.max_n, out):
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliquepick", description="Count and sample DAGs of Markov equivalence classes.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        return sp

    def counting_flags(sp):
        sp.add_argument("file", help="graph file, or - for stdin")
        sp.add_argument("--scientific", action="store_true", help="also print an approximate mantissa/exponent form")

    sp = add("count", _cmd_count, "size of the class represented by a CPDAG")
    counting_flags(sp)
    sp.add_argument("--threads", type=int, default=1)
    sp = add("count-amo", _cmd_count_amo, "orientation count of an undirected connected chordal graph")
    counting_flags(sp)
    sp.add_argument("--threads", type=int, default=1)
    sp = add("count-pdag", _cmd_count_pdag, "consistent extensions of a graph with background knowledge")
    counting_flags(sp)
    sp.add_argument("--to-cap", type=int, default=DEFAULT_TO_CAP, help="largest constrained block for ordering counts")

    sp = add("sample", _cmd_sample, "uniform samples from the class of a CPDAG")
    sp.add_argument("file")
    sp.add_argument("--num", type=int, default=1)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--format", choices=("dag", "order"), default="dag")

    sp = add("active-learn", _cmd_active_learn, "simulate adaptive single-vertex interventions")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--true-dag", required=True)
    sp.add_argument("--strategy", choices=STRATEGIES, required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--max-outcomes", type=int)
    sp.add_argument("--threads", type=int, default=1)

    sp = add("ida-mult", _cmd_ida_mult, "parent sets of a vertex with their multiplicities")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--vertex", type=int, required=True)

    sp = add("gen", _cmd_gen, "random connected chordal graph")
    sp.add_argument("--model", choices=MODELS, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=float)
    sp.add_argument("--seed", type=int)

    sp = add("selfcheck", _cmd_selfcheck, "compare fast algorithms against brute force on small random graphs")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--max-n", type=int, default=7)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Run one command; returns the exit code (0 ok, 1 domain error, 2 usage error)."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        print("cliquepick: error: --threads must be at least 1", file=err)
        return 2
    try:
        return args.func(args, out, err) or 0
    except (CliquePickError, OSError) as exc:
        print(f"cliquepick: {AREA[args.command]}: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())
