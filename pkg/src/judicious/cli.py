"""Command-line interface.

Subcommands:
  verify-lemma  certify the reduced-system case analysis
  partition     run the constructive pipeline on a hypergraph file
  gen           emit generator hypergraphs (complete / paircore / random)

Exit codes: 0 success, 1 certification or guarantee failure, 2 usage error,
3 input or runtime error.  Output is deterministic: no timestamps, no
machine-specific content.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import certify
from .assign import RNG_NAME, concentration_report, run_trials
from .highlow import (
    build_multigraph,
    check_partition_inequalities,
    local_search_partition,
    place_isolated_high,
    split_high_low,
)
from .hypergraph import (
    FormatError,
    Hypergraph,
    format_hypergraph,
    gen_complete,
    gen_pair_core,
    gen_random,
    parse_hypergraph,
)
from .probabilities import (
    DegenerateProfile,
    QTriple,
    edge_profile,
    normalize,
    solve_q,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="judicious",
        description="Judicious 3-partitions of 3-uniform hypergraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser(
        "verify-lemma",
        help="certify the case analysis behind the coverage bound",
    )
    v.add_argument(
        "--epsilon",
        type=str,
        default=None,
        help="override grid size for every computed case (default: per-case)",
    )
    v.add_argument(
        "--systems",
        type=str,
        default=None,
        help="comma-separated subset of systems (default: 1a,1b,1c,1d,1e,1f)",
    )
    v.add_argument("--jobs", type=int, default=1, help="accepted; runs serially")
    v.add_argument("--out", type=str, default=None, help="directory for CSV/text reports")
    v.add_argument(
        "--include-alternates",
        action="store_true",
        help="also evaluate the informational alternate readings 1b-alt/1d-alt",
    )

    p = sub.add_parser("partition", help="partition a hypergraph from a file")
    p.add_argument("file", type=str, help="input hypergraph ('-' for stdin)")
    p.add_argument("--alpha", type=float, default=2.0 / 7.0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="accepted; runs serially")
    p.add_argument("--out", type=str, default=None, help="directory for outputs")

    g = sub.add_parser("gen", help="generate a hypergraph")
    gsub = g.add_subparsers(dest="generator", required=True)
    gc = gsub.add_parser("complete", help="complete 3-uniform hypergraph K_n^(3)")
    gc.add_argument("n", type=int)
    gp = gsub.add_parser("paircore", help="k edges through one fixed pair")
    gp.add_argument("k", type=int)
    gr = gsub.add_parser("random", help="m distinct random triples on n vertices")
    gr.add_argument("n", type=int)
    gr.add_argument("m", type=int)
    gr.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=str, default=None, help="output file (default stdout)")

    return parser


def cmd_verify(args) -> int:
    systems = None
    if args.systems is not None:
        systems = tuple(s.strip() for s in args.systems.split(",") if s.strip())
        for s in systems:
            if s not in certify.CERTIFIABLE_SYSTEMS:
                print(f"error: unknown system {s!r}", file=sys.stderr)
                return EXIT_USAGE
    epsilon = None
    if args.epsilon is not None:
        try:
            epsilon = Fraction(args.epsilon)
        except ValueError:
            print(f"error: bad epsilon {args.epsilon!r}", file=sys.stderr)
            return EXIT_USAGE
        if epsilon <= 0:
            print("error: epsilon must be positive", file=sys.stderr)
            return EXIT_USAGE

    report = certify.full_report(
        epsilon=epsilon, systems=systems, include_alternates=args.include_alternates
    )
    text = report.to_text()
    print(text, end="")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "verify-lemma.csv").write_text(report.to_csv())
        (out / "verify-lemma.txt").write_text(text)
    return EXIT_OK if report.all_certified else EXIT_FAILED


def run_pipeline(H: Hypergraph, alpha: float, trials: int, seed: int):
    """Full constructive pipeline; returns (FullPartition, summary dict)."""
    split = split_high_low(H, alpha)
    G = build_multigraph(H, split)
    P = local_search_partition(G, seed)
    P = place_isolated_high(H, split, P)
    slacks = check_partition_inequalities(P)
    bad = {k: v for k, v in slacks.items() if v < 0}
    if bad:
        raise RuntimeError(f"certificate inequalities violated: {bad}")
    profile = edge_profile(H, split, P)
    try:
        inst = normalize(profile)
        q = solve_q(inst)
    except DegenerateProfile:
        # All edges are 3-high; low placement is irrelevant, park low
        # vertices in part 1.
        q = QTriple(q=(0.0, 1.0, 1.0), qtilde=(0.0, 1.0, 1.0))
    best = run_trials(H, split, P, q, trials, seed)
    conc = concentration_report(H, split, alpha)
    summary = {
        "n": H.n,
        "m": H.m,
        "alpha": alpha,
        "t": split.t,
        "high": len(split.high),
        "e3": profile.e3,
        "trials": trials,
        "seed": seed,
        "rng": RNG_NAME,
        "q": list(q.q),
        "coverage": list(best.coverage),
        "min_coverage": min(best.coverage),
        "best_seed": best.seed,
        "z": conc.z,
        "guaranteed_target": conc.target,
        "target_vacuous": conc.vacuous,
    }
    return best, summary


def cmd_partition(args) -> int:
    if args.trials < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if not (0.0 < args.alpha < 1.0 / 3.0):
        print("error: --alpha must lie in (0, 1/3)", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.file).read_text()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        H = parse_hypergraph(text)
        best, summary = run_pipeline(H, args.alpha, args.trials, args.seed)
    except (FormatError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    for key in (
        "n", "m", "alpha", "t", "e3", "trials", "seed", "best_seed",
        "min_coverage", "coverage", "q", "z", "guaranteed_target",
        "target_vacuous", "rng",
    ):
        value = summary[key]
        if isinstance(value, list):
            value = " ".join(str(x) for x in value)
        print(f"{key}={value}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        lines = [
            f"{v} {best.assignment[v]}" for v in sorted(best.assignment)
        ]
        (out / "partition.txt").write_text("\n".join(lines) + "\n")
        (out / "summary.json").write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n"
        )
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.generator == "complete":
            H = gen_complete(args.n)
        elif args.generator == "paircore":
            H = gen_pair_core(args.k)
        else:
            H = gen_random(args.n, args.m, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = format_hypergraph(H)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code or 0)
    if args.command == "verify-lemma":
        return cmd_verify(args)
    if args.command == "partition":
        return cmd_partition(args)
    return cmd_gen(args)


if __name__ == "__main__":
    sys.exit(main())
