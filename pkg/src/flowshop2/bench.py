"""Experiment harness: aggregate critical-index statistics and timings.

For each (size, distribution) cell it solves the same seeded instances with
both the partial-sort solver and the full-sort baseline, checks makespan
equality on every single instance, and aggregates the critical-index maxima,
the hit count of the one-sided total conditions, and the timing ratio tau.

Timing protocol (the interesting part of tau, so it is pinned down here):
perf_counter, one warm-up call, then the median of `timing_reps` runs per
instance; generation and I/O are excluded. Per-row figures use summed times
(t_avg = total linear time / reps, tau = total full-sort time / total
linear time). tau is reported, never asserted, unless the perf gate is
explicitly requested.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from statistics import median

from .generators import DISTRIBUTIONS, GenSpec, derive_seed, gen_instance
from .johnson import johnson_full
from .linear import SolveConfig, SolvePath, solve

CSV_COLUMNS = ("n", "pmax", "dist", "kA_prime", "kA", "kBbar_prime", "kBbar",
               "prop56", "t_avg", "tau")


@dataclass(frozen=True)
class BenchRow:
    """Aggregates over one (n, p_max, dist) cell.

    k-bar values follow the trailing-side convention kBbar = n - k_B - 1.
    Maxima are over instances where the index exists; None when it never did.
    """

    n: int
    p_max: int
    dist: str
    reps: int
    max_k_a_prime: int | None
    max_k_a: int | None
    max_k_b_bar_prime: int | None
    max_k_b_bar: int | None
    prop56_hits: int
    t_avg_seconds: float
    tau: float


def _time_call(fn, timing_reps: int, warmups: int) -> float:
    for _ in range(warmups):
        fn()
    samples = []
    for _ in range(timing_reps):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return median(samples)


def bench_cell(dist: str, n: int, p_max: int, reps: int, seed: int,
               timing_reps: int = 5, warmups: int = 1,
               config: SolveConfig | None = None) -> BenchRow:
    """Solve `reps` seeded instances of one cell and aggregate."""
    row_seed = derive_seed(derive_seed(seed, n), p_max)
    spec = GenSpec(dist=dist, n=n, p_max=p_max, seed=row_seed, count=reps)
    k_a_prime, k_a, k_b_bar_prime, k_b_bar = [], [], [], []
    prop56 = 0
    linear_total = 0.0
    full_total = 0.0
    for i in range(reps):
        inst = gen_instance(spec, i)
        report = solve(inst, config)
        full_seq, full_makespan = johnson_full(inst)
        if report.makespan != full_makespan:
            raise RuntimeError(
                f"solver mismatch on {dist} n={n} p_max={p_max} instance {i}: "
                f"{report.makespan} != {full_makespan}"
            )
        idx = report.indices
        if idx.k_a is not None:
            k_a.append(idx.k_a)
            k_a_prime.append(idx.k_a_prime)
        if idx.k_b is not None:
            k_b_bar.append(n - idx.k_b - 1)
            k_b_bar_prime.append(n - idx.k_b_prime - 1)
        if report.path in (SolvePath.PROP5, SolvePath.PROP6):
            prop56 += 1
        linear_total += _time_call(lambda: solve(inst, config), timing_reps, warmups)
        full_total += _time_call(lambda: johnson_full(inst), timing_reps, warmups)
    return BenchRow(
        n=n,
        p_max=p_max,
        dist=dist,
        reps=reps,
        max_k_a_prime=max(k_a_prime) if k_a_prime else None,
        max_k_a=max(k_a) if k_a else None,
        max_k_b_bar_prime=max(k_b_bar_prime) if k_b_bar_prime else None,
        max_k_b_bar=max(k_b_bar) if k_b_bar else None,
        prop56_hits=prop56,
        t_avg_seconds=linear_total / reps,
        tau=full_total / linear_total if linear_total > 0 else float("nan"),
    )


def run_uniform_suite(sizes, reps: int = 100, seed: int = 0, pmax_factors=(1, 10),
                      timing_reps: int = 5, warmups: int = 1,
                      config: SolveConfig | None = None) -> list[BenchRow]:
    """Uniform cells over every (size, size*factor) combination."""
    rows = []
    for n in sizes:
        for factor in pmax_factors:
            rows.append(bench_cell("uniform", n, n * factor, reps, seed,
                                   timing_reps, warmups, config))
    return rows


def run_distribution_suite(dists=None, n: int = 1000, p_max: int = 1000,
                           reps: int = 100, seed: int = 0,
                           timing_reps: int = 5, warmups: int = 1,
                           config: SolveConfig | None = None) -> list[BenchRow]:
    """Fixed-size cells across the non-uniform distributions."""
    if dists is None:
        dists = [d for d in DISTRIBUTIONS if d != "uniform"]
    return [bench_cell(dist, n, p_max, reps, seed, timing_reps, warmups, config)
            for dist in dists]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([
            _cell(r.n), _cell(r.p_max), r.dist,
            _cell(r.max_k_a_prime), _cell(r.max_k_a),
            _cell(r.max_k_b_bar_prime), _cell(r.max_k_b_bar),
            _cell(r.prop56_hits), _cell(r.t_avg_seconds), _cell(r.tau),
        ])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[BenchRow]:
    """Inverse of rows_to_csv (reps is not serialized and comes back as 0)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header: {header!r}")
    rows = []
    for rec in reader:
        vals = dict(zip(CSV_COLUMNS, rec))
        opt = lambda s: None if s == "" else int(s)
        rows.append(BenchRow(
            n=int(vals["n"]), p_max=int(vals["pmax"]), dist=vals["dist"], reps=0,
            max_k_a_prime=opt(vals["kA_prime"]), max_k_a=opt(vals["kA"]),
            max_k_b_bar_prime=opt(vals["kBbar_prime"]), max_k_b_bar=opt(vals["kBbar"]),
            prop56_hits=int(vals["prop56"]),
            t_avg_seconds=float(vals["t_avg"]), tau=float(vals["tau"]),
        ))
    return rows


def rows_to_table(rows) -> str:
    """Aligned text table mirroring the CSV columns."""
    header = list(CSV_COLUMNS)
    body = []
    for r in rows:
        body.append([
            str(r.n), str(r.p_max), r.dist,
            _cell(r.max_k_a_prime) or "-", _cell(r.max_k_a) or "-",
            _cell(r.max_k_b_bar_prime) or "-", _cell(r.max_k_b_bar) or "-",
            str(r.prop56_hits), f"{r.t_avg_seconds:.6f}", f"{r.tau:.2f}",
        ])
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    fmt = "  ".join(f"{{:>{w}}}" for w in widths)
    return "\n".join(fmt.format(*row) for row in [header] + body)


def emit_report(rows, csv_path=None) -> str:
    """Render the text table; optionally write the CSV next to it."""
    if csv_path is not None:
        with open(csv_path, "w", encoding="ascii", newline="") as fh:
            fh.write(rows_to_csv(rows))
    return rows_to_table(rows)
