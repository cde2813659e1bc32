"""Linear-time partial-sort solver for the two-machine flow shop.

Instead of fully sorting both job sets, the solver locates the critical
prefix of set A and the critical suffix of set B — the only ranges whose
internal order can affect the makespan — using worst-case linear selection,
and leaves everything else as freely permutable blocks.

The underlying facts, stated over the partition A = {p1 <= p2},
B = {p1 > p2} with sums P1A, P2A, P1B, P2B, P1, P2:

* Reversibility: swapping the machines and reversing any sequence preserves
  the makespan, so every statement about A has a mirror about B.
* Critical prefix: if sum(p2 - p1) over A exceeds the largest p1 in A, there
  is a smallest tie-closed prefix of A (by nondecreasing p1) carrying that
  excess; jobs after it can appear in any order without hurting the makespan.
* Critical suffix: the mirrored statement for B on p2.
* One-sided totals: if P1 <= P2 - max(p2 over B), all of B is order-free;
  if P2 <= P1 - max(p1 over A), all of A is order-free.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field

from .core import Instance, Partition, Sequence, makespan, partition

__all__ = [
    "CriticalIndices",
    "SolveConfig",
    "SolvePath",
    "SolveReport",
    "check_prop5",
    "check_prop6",
    "count_equivalent",
    "find_k_a",
    "find_k_b",
    "select_kth",
    "solve",
]


class SolvePath(enum.Enum):
    PROP5 = "Prop5"
    PROP6 = "Prop6"
    PROP2AND3 = "Prop2and3"
    PROP2ONLY = "Prop2only"
    PROP3ONLY = "Prop3only"
    FULL_SORT = "FullSortFallback"


@dataclass(frozen=True)
class SolveConfig:
    """Solver knobs.

    selection: "deterministic" uses median-of-medians pivots (worst-case
    linear); "randomized" uses random pivots (expected linear), seeded.
    """

    selection: str = "deterministic"
    seed: int = 0

    def __post_init__(self):
        if self.selection not in ("deterministic", "randomized"):
            raise ValueError(f"unknown selection method: {self.selection!r}")


@dataclass(frozen=True)
class CriticalIndices:
    """1-based critical positions; absent halves are None.

    k_a: number of leading A jobs that must be sorted (tie-closed on p1).
    k_a_prime: position of the first job of the terminal tie block of that
        prefix (equal-p1 jobs at its end are interchangeable).
    k_b: position, in the full schedule, of the first trailing B job that
        must be sorted (tie-closed on p2).
    k_b_prime: position of the last job of the leading tie block of that
        suffix.
    """

    k_a: int | None = None
    k_a_prime: int | None = None
    k_b: int | None = None
    k_b_prime: int | None = None


@dataclass(frozen=True)
class SolveReport:
    sequence: Sequence
    makespan: int
    path: SolvePath
    indices: CriticalIndices
    free_blocks: tuple[tuple[int, int], ...]  # (start, length), 0-based positions
    equivalent_count: int
    linear_certified: bool
    # instrumentation: lengths of every job-range comparison sort performed,
    # and which sides (if any) had to be fully sorted outside their property
    sorted_ranges: tuple[int, ...] = ()
    full_sorted_sides: tuple[str, ...] = ()

    def to_text(self) -> str:
        lines = [
            f"makespan: {self.makespan}",
            f"path: {self.path.value}",
            "sequence: " + " ".join(str(j + 1) for j in self.sequence),
        ]
        idx = self.indices
        for name, val in (
            ("k_A", idx.k_a),
            ("k_A_prime", idx.k_a_prime),
            ("k_B", idx.k_b),
            ("k_B_prime", idx.k_b_prime),
        ):
            lines.append(f"{name}: {val if val is not None else '-'}")
        blocks = " ".join(f"[start={s + 1} len={l}]" for s, l in self.free_blocks) or "-"
        lines.append(f"free_blocks: {blocks}")
        lines.append(f"equivalent_count: {self.equivalent_count}")
        lines.append(f"equivalent_count_digits: {len(str(self.equivalent_count))}")
        lines.append(f"linear_certified: {'true' if self.linear_certified else 'false'}")
        return "\n".join(lines)

    def to_record(self) -> dict:
        idx = self.indices
        return {
            "path": self.path.value,
            "makespan": self.makespan,
            "k_a": idx.k_a,
            "k_a_prime": idx.k_a_prime,
            "k_b": idx.k_b,
            "k_b_prime": idx.k_b_prime,
            "free_blocks": list(self.free_blocks),
            "equivalent_count_digits": len(str(self.equivalent_count)),
            "linear_certified": self.linear_certified,
        }


# ---------------------------------------------------------------------------
# selection


def _small_sort(pairs: list) -> None:
    """In-place insertion sort by key; used only on groups of <= 5."""
    for i in range(1, len(pairs)):
        item = pairs[i]
        j = i - 1
        while j >= 0 and pairs[j][0] > item[0]:
            pairs[j + 1] = pairs[j]
            j -= 1
        pairs[j + 1] = item


def _mom_pivot(pairs: list):
    """Median of the 5-element group medians (recursive, worst-case linear)."""
    medians = []
    for i in range(0, len(pairs), 5):
        group = pairs[i : i + 5]
        _small_sort(group)
        medians.append(group[len(group) // 2])
    return _select(medians, (len(medians) + 1) // 2, None)[0]


def _select(pairs: list, k: int, rng):
    """k-th smallest (1-based) of (key, payload) pairs.

    Deterministic median-of-medians pivots when rng is None, random pivots
    otherwise. Never calls a library sort on more than 5 elements.
    """
    while True:
        if len(pairs) <= 5:
            pairs = list(pairs)
            _small_sort(pairs)
            return pairs[k - 1]
        if rng is None:
            pivot = _mom_pivot(pairs)
        else:
            pivot = pairs[rng.randrange(len(pairs))][0]
        low = [p for p in pairs if p[0] < pivot]
        if k <= len(low):
            pairs = low
            continue
        eq_count = sum(1 for p in pairs if p[0] == pivot)
        if k <= len(low) + eq_count:
            for p in pairs:
                if p[0] == pivot:
                    return p
        k -= len(low) + eq_count
        pairs = [p for p in pairs if p[0] > pivot]


def select_kth(items, k: int, key=None, config: SolveConfig | None = None):
    """Return the item whose key is the k-th smallest (1-based rank).

    Worst-case linear time with the default deterministic pivots; ties are
    resolved arbitrarily (any item with the k-th smallest key qualifies).
    """
    items = list(items)
    if not 1 <= k <= len(items):
        raise ValueError(f"rank {k} out of range 1..{len(items)}")
    config = config or SolveConfig()
    rng = random.Random(config.seed) if config.selection == "randomized" else None
    if key is None:
        pairs = [(x, x) for x in items]
    else:
        pairs = [(key(x), x) for x in items]
    return _select(pairs, k, rng)[1]


# ---------------------------------------------------------------------------
# critical prefix search


def _critical_boundary(pairs: list[tuple[int, int]], threshold: int, rng) -> int | None:
    """Smallest key value v with sum(delta over keys <= v) > threshold.

    pairs are (key, delta) with delta >= 0, so the prefix-sum function is
    nondecreasing in v and the boundary is found by shrinking a candidate
    window around its exact median — linear total work, no sorting.
    Returns None when even the full sum fails the (strict) test.
    """
    committed = 0
    candidates = pairs
    best = None
    while candidates:
        v = _select(candidates, (len(candidates) + 1) // 2, rng)[0]
        low = [p for p in candidates if p[0] < v]
        hi = [p for p in candidates if p[0] > v]
        below = committed + sum(d for _, d in candidates) - sum(d for _, d in hi)
        if below > threshold:
            best = v
            candidates = low
        else:
            committed = below
            candidates = hi
    return best


@dataclass(frozen=True)
class _PrefixResult:
    k: int  # tie-closed prefix size
    k_prime: int  # 1-based start of the terminal tie block
    boundary: int  # key value closing the prefix


def find_k_a(part: Partition, inst: Instance, config: SolveConfig | None = None) -> _PrefixResult | None:
    """Critical prefix of A by p1, or None when the guard fails.

    The prefix is the smallest tie-closed set {j in A : p1_j <= v} whose
    accumulated slack sum(p2 - p1) strictly exceeds the largest p1 in A.
    Existence is equivalent to the guard P1A < P2A - p_max_A1.
    """
    config = config or SolveConfig()
    rng = random.Random(config.seed) if config.selection == "randomized" else None
    pairs = [(inst.p1[j], inst.p2[j] - inst.p1[j]) for j in part.a_idx]
    v = _critical_boundary(pairs, part.p_max_a1, rng)
    if v is None:
        return None
    k = sum(1 for key, _ in pairs if key <= v)
    k_prime = sum(1 for key, _ in pairs if key < v) + 1
    return _PrefixResult(k=k, k_prime=k_prime, boundary=v)


@dataclass(frozen=True)
class _SuffixResult:
    k_b: int  # 1-based position in the full schedule of the first sorted trailing job
    k_b_prime: int  # 1-based position of the last job of its leading tie block
    boundary: int  # p2 value closing the suffix
    size: int  # number of trailing jobs to sort


def find_k_b(part: Partition, inst: Instance, config: SolveConfig | None = None) -> _SuffixResult | None:
    """Critical suffix of B by p2, or None when the guard fails.

    This is the machine-swapped mirror of find_k_a (reversibility): B jobs
    viewed as (p2, p1) form an A-type set, and the critical prefix found
    there maps back to the trailing block of the schedule.
    """
    config = config or SolveConfig()
    rng = random.Random(config.seed) if config.selection == "randomized" else None
    pairs = [(inst.p2[j], inst.p1[j] - inst.p2[j]) for j in part.b_idx]
    v = _critical_boundary(pairs, part.p_max_b2, rng)
    if v is None:
        return None
    n = inst.n
    size = sum(1 for key, _ in pairs if key <= v)
    strictly_below = sum(1 for key, _ in pairs if key < v)
    return _SuffixResult(k_b=n - size + 1, k_b_prime=n - strictly_below, boundary=v, size=size)


# ---------------------------------------------------------------------------
# global one-sided conditions


def check_prop5(part: Partition) -> bool:
    """P1 <= P2 - p_max_B2: set B may run last in any order."""
    return part.p1 <= part.p2 - part.p_max_b2


def check_prop6(part: Partition) -> bool:
    """P2 <= P1 - p_max_A1: set A may run first in any order."""
    return part.p2 <= part.p1 - part.p_max_a1


# ---------------------------------------------------------------------------
# solver


def _log_work(r: int) -> float:
    return r * math.log2(r) if r > 1 else 0.0


def count_equivalent(report: SolveReport) -> int:
    """Product of factorials of the free-block lengths (exact big integer)."""
    return _count_blocks(report.free_blocks)


def _count_blocks(blocks) -> int:
    total = 1
    for _, length in blocks:
        total *= math.factorial(length)
    return total


class _Builder:
    """Accumulates the output sequence, free blocks, and instrumentation."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self.seq: list[int] = []
        self.blocks: list[tuple[int, int]] = []
        self.sorted_ranges: list[int] = []
        self.full_sorted: list[str] = []

    def free(self, jobs):
        jobs = list(jobs)
        if len(jobs) >= 2:
            self.blocks.append((len(self.seq), len(jobs)))
        self.seq.extend(jobs)

    def sorted_range(self, jobs, key, tie_start=None, tie_len=0):
        """Append a sorted range; optionally mark its equal-key tie block free."""
        jobs = list(jobs)
        if jobs:
            self.sorted_ranges.append(len(jobs))
        if tie_len >= 2 and tie_start is not None:
            self.blocks.append((len(self.seq) + tie_start, tie_len))
        self.seq.extend(sorted(jobs, key=key))


def solve(inst: Instance, config: SolveConfig | None = None) -> SolveReport:
    """Schedule the instance, sorting only the critical ranges.

    Decision cascade: the one-sided total conditions first (B free, then A
    free), otherwise the critical prefix of A and suffix of B independently;
    a side whose guard fails is fully sorted, and when neither fires the
    solver degenerates to the full-sort rule.
    """
    config = config or SolveConfig()
    part = partition(inst)
    p1, p2 = inst.p1, inst.p2
    n = inst.n
    b = _Builder(inst)

    indices = CriticalIndices()
    a_sorted_size = 0  # length of the A-side sorted range, for certification
    b_sorted_size = 0

    if check_prop5(part):
        path = SolvePath.PROP5
        a_res = find_k_a(part, inst, config) if part.n_a else None
        if a_res is not None:
            indices = CriticalIndices(k_a=a_res.k, k_a_prime=a_res.k_prime)
            prefix = [j for j in part.a_idx if p1[j] <= a_res.boundary]
            rest = [j for j in part.a_idx if p1[j] > a_res.boundary]
            b.sorted_range(prefix, key=lambda j: p1[j],
                           tie_start=a_res.k_prime - 1, tie_len=a_res.k - a_res.k_prime + 1)
            b.free(rest)
            a_sorted_size = a_res.k
        elif part.n_a:
            # the total condition holds but A has no critical prefix of its
            # own; A must still be in nondecreasing-p1 order, so sort it all
            b.sorted_range(part.a_idx, key=lambda j: p1[j])
            b.full_sorted.append("A")
            a_sorted_size = part.n_a
        b.free(part.b_idx)
    elif check_prop6(part):
        path = SolvePath.PROP6
        b.free(part.a_idx)
        b_res = find_k_b(part, inst, config) if part.n_b else None
        if b_res is not None:
            indices = CriticalIndices(k_b=b_res.k_b, k_b_prime=b_res.k_b_prime)
            head = [j for j in part.b_idx if p2[j] > b_res.boundary]
            tail = [j for j in part.b_idx if p2[j] <= b_res.boundary]
            b.free(head)
            b.sorted_range(tail, key=lambda j: -p2[j],
                           tie_start=0, tie_len=b_res.k_b_prime - b_res.k_b + 1)
            b_sorted_size = b_res.size
        elif part.n_b:
            b.sorted_range(part.b_idx, key=lambda j: -p2[j])
            b.full_sorted.append("B")
            b_sorted_size = part.n_b
    else:
        a_res = find_k_a(part, inst, config) if part.n_a else None
        b_res = find_k_b(part, inst, config) if part.n_b else None
        a_ok = a_res is not None or part.n_a == 0
        b_ok = b_res is not None or part.n_b == 0
        if a_ok and b_ok:
            path = SolvePath.PROP2AND3
        elif a_ok:
            path = SolvePath.PROP2ONLY
        elif b_ok:
            path = SolvePath.PROP3ONLY
        else:
            path = SolvePath.FULL_SORT
        indices = CriticalIndices(
            k_a=a_res.k if a_res else None,
            k_a_prime=a_res.k_prime if a_res else None,
            k_b=b_res.k_b if b_res else None,
            k_b_prime=b_res.k_b_prime if b_res else None,
        )
        # A side
        if a_res is not None:
            prefix = [j for j in part.a_idx if p1[j] <= a_res.boundary]
            rest = [j for j in part.a_idx if p1[j] > a_res.boundary]
            b.sorted_range(prefix, key=lambda j: p1[j],
                           tie_start=a_res.k_prime - 1, tie_len=a_res.k - a_res.k_prime + 1)
            b.free(rest)
            a_sorted_size = a_res.k
        elif part.n_a:
            b.sorted_range(part.a_idx, key=lambda j: p1[j])
            b.full_sorted.append("A")
            a_sorted_size = part.n_a
        # B side
        if b_res is not None:
            head = [j for j in part.b_idx if p2[j] > b_res.boundary]
            tail = [j for j in part.b_idx if p2[j] <= b_res.boundary]
            b.free(head)
            b.sorted_range(tail, key=lambda j: -p2[j],
                           tie_start=0, tie_len=b_res.k_b_prime - b_res.k_b + 1)
            b_sorted_size = b_res.size
        elif part.n_b:
            b.sorted_range(part.b_idx, key=lambda j: -p2[j])
            b.full_sorted.append("B")
            b_sorted_size = part.n_b

    seq = tuple(b.seq)
    blocks = tuple(sorted(b.blocks))
    certified = _log_work(a_sorted_size) <= n and _log_work(b_sorted_size) <= n
    return SolveReport(
        sequence=seq,
        makespan=makespan(inst, seq),
        path=path,
        indices=indices,
        free_blocks=blocks,
        equivalent_count=_count_blocks(blocks),
        linear_certified=certified,
        sorted_ranges=tuple(b.sorted_ranges),
        full_sorted_sides=tuple(b.full_sorted),
    )
