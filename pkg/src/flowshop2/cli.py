"""Command-line front end: gen, solve, bench, prob, and worstcase.

Exit codes: 0 success, 2 input/usage error, 3 instance exceeds the 64-bit
arithmetic guard, 4 internal invariant breach (always a bug).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import INSTANCE_FORMAT_VERSION, __version__
from .bench import emit_report, run_distribution_suite, run_uniform_suite
from .core import (
    InstanceFormatError,
    OverflowGuardError,
    format_instance,
    load_instance,
    makespan,
)
from .generators import DISTRIBUTIONS, GenSpec, gen_worstcase, write_corpus
from .johnson import johnson_full
from .linear import SolveConfig, solve
from .probability import (
    audit_table,
    default_k_a,
    monte_carlo_check,
    optimize_alpha,
    p1_star_exact,
    p2_star_exact,
    p_star,
    probability_table,
)


class UsageError(Exception):
    """Bad flag combination or value detected after argparse."""


def _parse_alpha(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1), got {text}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_gen(args) -> int:
    if args.dist == "worstcase":
        if args.n is None:
            raise UsageError("gen --dist worstcase requires --n (the family parameter)")
        spec = GenSpec(dist="worstcase", n=args.n, p_max=1, seed=args.seed, count=args.count)
    elif args.dist == "demo18":
        spec = GenSpec(dist="demo18", n=18, p_max=10, seed=args.seed, count=args.count)
    else:
        if args.n is None or args.pmax is None:
            raise UsageError(f"gen --dist {args.dist} requires --n and --pmax")
        spec = GenSpec(dist=args.dist, n=args.n, p_max=args.pmax,
                       seed=args.seed, count=args.count)
    manifest = write_corpus(spec, args.out)
    print(f"wrote {spec.count} instance(s) and {manifest}")
    return 0


def _spot_check(inst, report, shuffles: int = 3) -> None:
    """Re-evaluate a few free-block shuffles; a changed makespan is a bug."""
    rng = random.Random(0xC0FFEE)
    for _ in range(shuffles):
        seq = list(report.sequence)
        for start, length in report.free_blocks:
            chunk = seq[start : start + length]
            rng.shuffle(chunk)
            seq[start : start + length] = chunk
        if makespan(inst, seq) != report.makespan:
            raise RuntimeError(
                f"free-block shuffle changed the makespan ({report.path.value})"
            )


def cmd_solve(args) -> int:
    inst = load_instance(args.input)
    if args.mode == "full":
        seq, ms = johnson_full(inst)
        if args.json:
            print(json.dumps({"makespan": ms, "mode": "full",
                              "sequence": [j + 1 for j in seq]}))
        else:
            print(f"Cmax={ms} mode=full")
            print("sequence: " + " ".join(str(j + 1) for j in seq))
        return 0
    config = SolveConfig(selection=args.selection, seed=args.seed)
    report = solve(inst, config)
    if not args.no_check:
        _spot_check(inst, report)
    if args.json:
        record = report.to_record()
        record["sequence"] = [j + 1 for j in report.sequence]
        print(json.dumps(record))
    else:
        k_a = report.indices.k_a if report.indices.k_a is not None else "-"
        print(f"Cmax={report.makespan} path={report.path.value} kA={k_a}")
        print(report.to_text())
    return 0


def cmd_bench(args) -> int:
    config = SolveConfig(selection=args.selection)
    rows = []
    if args.sizes:
        rows.extend(run_uniform_suite(
            args.sizes, reps=args.reps, seed=args.seed,
            pmax_factors=tuple(args.pmax_factors),
            timing_reps=args.timing_reps, config=config,
        ))
    if args.dists:
        rows.extend(run_distribution_suite(
            args.dists, n=args.n, p_max=args.pmax, reps=args.reps,
            seed=args.seed, timing_reps=args.timing_reps, config=config,
        ))
    if not rows:
        raise UsageError("nothing to run: pass --sizes and/or --dists")
    print(emit_report(rows, csv_path=args.csv))
    if args.perf_gate:
        slow = [r for r in rows if r.dist == "uniform" and r.n >= 10_000 and r.tau <= 1.0]
        if slow:
            for r in slow:
                print(f"perf gate: tau={r.tau:.2f} <= 1 at n={r.n}, p_max={r.p_max}",
                      file=sys.stderr)
            return 1
    return 0


def _print_points(points) -> None:
    print(f"{'n':>6} {'kA':>4} {'alpha':>6} {'P1*':>12} {'P2*':>12} {'P*':>12} {'q*':>12}")
    for pt in points:
        print(f"{pt.n:>6} {pt.k_a:>4} {pt.alpha:>6.2f} {pt.p1_star:>12.6g} "
              f"{pt.p2_star:>12.6g} {pt.p_star:>12.6g} {pt.q_star:>12.6g}")


def cmd_prob(args) -> int:
    if args.audit:
        rows = audit_table()
        modes = ("floor", "ceil", "round", "real", "continuous")
        print(f"{'n':>4} {'kA':>3} {'alpha':>6} {'kind':>8} {'reference':>10} "
              + " ".join(f"{m:>12}" for m in modes) + "  reproduced")
        for row in rows:
            cells = []
            for m in modes:
                pt = row["points"][m]
                value = pt.p_star if row["kind"] == "decimal" else pt.q_star
                mark = "" if row["verdicts"][m] else "*"
                cells.append(f"{value:>11.6g}{mark or ' '}")
            print(f"{row['n']:>4} {row['k_a']:>3} {row['alpha']:>6.2f} {row['kind']:>8} "
                  f"{row['reference']:>10g} " + " ".join(cells)
                  + f"  {'yes' if row['reproduced'] else 'NO'}")
        print("(* = this reading does not match the reference value)")
        return 0
    if args.n is None:
        points = probability_table(args.range or range(20, 201, 20),
                                   grid_step=args.grid_step)
        _print_points(points)
        return 0
    n = args.n
    k_a = args.ka if args.ka is not None else default_k_a(n)
    if args.alpha is None:
        point = optimize_alpha(n, k_a, grid_step=args.grid_step)
    else:
        point = p_star(n, k_a, args.alpha)
    _print_points([point])
    if args.exact:
        if n > 60:
            raise UsageError("--exact supports n <= 60 only")
        alpha = Fraction(str(point.alpha))
        tail1, _ = p1_star_exact(n, k_a, alpha)
        tail2, _ = p2_star_exact(n, k_a, alpha)
        exact = tail1 * tail2
        print(f"exact P1* = {float(tail1):.12g}  (rational {tail1.numerator}/{tail1.denominator})")
        print(f"exact P2* = {float(tail2):.12g}")
        print(f"exact P*  = {float(exact):.12g}  float drift "
              f"{abs(point.p_star - exact):.3e}")
    if args.mc:
        result = monte_carlo_check(n, k_a, point.alpha, trials=args.mc, seed=args.seed)
        print(f"monte carlo ({result.trials} trials, 99% intervals):")
        print(f"  P1* hat = {result.p1_hat:.6f} in [{result.p1_interval[0]:.6f}, "
              f"{result.p1_interval[1]:.6f}]")
        print(f"  P2* hat = {result.p2_hat:.6f} in [{result.p2_interval[0]:.6f}, "
              f"{result.p2_interval[1]:.6f}]")
        print(f"  joint   = {result.joint_hat:.6f} in [{result.joint_interval[0]:.6f}, "
              f"{result.joint_interval[1]:.6f}]")
    return 0


def cmd_worstcase(args) -> int:
    text = format_instance(gen_worstcase(args.n))
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowshop2",
        description="Two-machine flow shop scheduling with critical-range sorting only.",
    )
    parser.add_argument(
        "--version", action="version",
        version=f"flowshop2 {__version__} (instance format v{INSTANCE_FORMAT_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate seeded instance corpora")
    p.add_argument("--dist", required=True, choices=DISTRIBUTIONS + ("worstcase", "demo18"))
    p.add_argument("--n", type=int, help="job count (worstcase: family parameter, 2n jobs)")
    p.add_argument("--pmax", type=int, help="scale parameter of the distribution")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1, help="number of instances")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("input", help="instance file in the text format")
    p.add_argument("--mode", choices=("auto", "linear", "full"), default="auto",
                   help="auto/linear: critical-range solver; full: full-sort baseline")
    p.add_argument("--selection", choices=("deterministic", "randomized"),
                   default="deterministic", help="pivot strategy of the selection")
    p.add_argument("--seed", type=int, default=0, help="pivot seed (randomized only)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--no-check", action="store_true",
                   help="skip the free-block shuffle spot check")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run the statistics/timing suites")
    p.add_argument("--sizes", type=_int_list, default=[],
                   help="uniform suite sizes, e.g. 100,1000")
    p.add_argument("--pmax-factors", type=_int_list, default=[1, 10])
    p.add_argument("--dists", type=lambda s: [d for d in s.split(",") if d], default=[],
                   help="distribution suite, e.g. geometric,poisson")
    p.add_argument("--n", type=int, default=1000, help="size for --dists cells")
    p.add_argument("--pmax", type=int, default=1000, help="scale for --dists cells")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing-reps", type=int, default=5)
    p.add_argument("--selection", choices=("deterministic", "randomized"),
                   default="deterministic")
    p.add_argument("--csv", help="also write the rows as CSV to this path")
    p.add_argument("--perf-gate", action="store_true",
                   help="fail (exit 1) when tau <= 1 on uniform cells with n >= 10^4")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("prob", help="probability bounds for uniform instances")
    p.add_argument("--n", type=int, help="evaluate one size instead of the table")
    p.add_argument("--ka", type=int, help="prefix size (default: grid value or size rule)")
    p.add_argument("--alpha", type=_parse_alpha, help="fixed alpha (default: optimize)")
    p.add_argument("--range", type=_int_list, help="table sizes, e.g. 20,40,60")
    p.add_argument("--grid-step", type=_parse_alpha, default=Fraction(1, 100))
    p.add_argument("--exact", action="store_true",
                   help="cross-check with exact rational arithmetic (n <= 60)")
    p.add_argument("--audit", action="store_true",
                   help="compare every p' reading against the reference table")
    p.add_argument("--mc", type=int, metavar="TRIALS",
                   help="Monte Carlo validation with this many trials")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("worstcase", help="emit one adversarial family instance")
    p.add_argument("--n", type=int, required=True, help="family parameter (2n jobs)")
    p.add_argument("--out", help="write to file instead of stdout")
    p.set_defaults(func=cmd_worstcase)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OverflowGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except RuntimeError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
