"""Instance model and schedule evaluation for the two-machine flow shop.

Jobs are pairs of strictly positive integer processing times (p1 on the first
machine, p2 on the second). A schedule is a permutation of job indices; its
makespan follows the standard permutation flow shop recurrence.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# All time sums are kept inside signed 64-bit range so instances stay portable
# to fixed-width arithmetic (numpy int64 is used for the enumeration oracle).
_INT64_LIMIT = 2**63

Sequence = tuple[int, ...]

_INT_RE = re.compile(r"\d+")


class InstanceFormatError(ValueError):
    """Malformed instance text; carries the offending 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class OverflowGuardError(ValueError):
    """Instance too large for 64-bit time arithmetic."""


@dataclass(frozen=True)
class Instance:
    """An F2 instance: per-job processing times on both machines."""

    p1: tuple[int, ...]
    p2: tuple[int, ...]

    def __post_init__(self):
        if len(self.p1) != len(self.p2):
            raise ValueError("p1 and p2 must have the same length")
        for times in (self.p1, self.p2):
            for t in times:
                if not isinstance(t, int) or t < 1:
                    raise ValueError(f"processing times must be integers >= 1, got {t!r}")
        if self.p1 and 2 * len(self.p1) * self.p_max >= _INT64_LIMIT:
            raise OverflowGuardError(
                f"2 * n * p_max = {2 * len(self.p1) * self.p_max} exceeds 64-bit budget"
            )

    @property
    def n(self) -> int:
        return len(self.p1)

    @property
    def p_max(self) -> int:
        if not self.p1:
            return 0
        return max(max(self.p1), max(self.p2))

    def jobs(self) -> list[tuple[int, int]]:
        return list(zip(self.p1, self.p2))


@dataclass(frozen=True)
class Partition:
    """Split of an instance into set A (p1 <= p2) and set B (p1 > p2).

    Index lists keep input order. Aggregate sums and maxima are the
    quantities the scheduling conditions are tested against.
    """

    a_idx: tuple[int, ...]
    b_idx: tuple[int, ...]
    p1a: int
    p2a: int
    p1b: int
    p2b: int
    p_max: int
    p_max_a1: int  # largest p1 among A jobs
    p_max_b2: int  # largest p2 among B jobs

    @property
    def p1(self) -> int:
        return self.p1a + self.p1b

    @property
    def p2(self) -> int:
        return self.p2a + self.p2b

    @property
    def n_a(self) -> int:
        return len(self.a_idx)

    @property
    def n_b(self) -> int:
        return len(self.b_idx)


def parse_instance(text: str) -> Instance:
    """Parse the plain text format: first line n, then n lines "p1 p2".

    Raises InstanceFormatError (with line number) on any malformation,
    OverflowGuardError when the instance breaks the 64-bit sum budget.
    """
    if "\r" in text:
        line = text[: text.index("\r")].count("\n") + 1
        raise InstanceFormatError(line, "carriage return found; LF line endings required")
    lines = text.split("\n")
    # A single trailing newline is allowed (it produces one empty last entry).
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InstanceFormatError(1, "empty input, expected job count")
    if not _INT_RE.fullmatch(lines[0]):
        raise InstanceFormatError(1, f"expected job count, got {lines[0]!r}")
    n = int(lines[0])
    if len(lines) - 1 < n:
        raise InstanceFormatError(len(lines) + 1, f"expected {n} job lines, found {len(lines) - 1}")
    if len(lines) - 1 > n:
        raise InstanceFormatError(n + 2, "unexpected extra content after job lines")
    p1, p2 = [], []
    for i, raw in enumerate(lines[1:], start=2):
        tokens = raw.split()
        if len(tokens) != 2:
            raise InstanceFormatError(i, f"expected 'p1 p2', got {raw!r}")
        for tok in tokens:
            if not _INT_RE.fullmatch(tok):
                raise InstanceFormatError(i, f"not a nonnegative integer: {tok!r}")
        a, b = int(tokens[0]), int(tokens[1])
        if a < 1 or b < 1:
            raise InstanceFormatError(i, f"processing times must be >= 1, got {raw!r}")
        p1.append(a)
        p2.append(b)
    return Instance(tuple(p1), tuple(p2))


def format_instance(inst: Instance) -> str:
    """Render an instance in the text format (with trailing newline)."""
    out = [str(inst.n)]
    out.extend(f"{a} {b}" for a, b in zip(inst.p1, inst.p2))
    return "\n".join(out) + "\n"


def load_instance(path) -> Instance:
    with open(path, encoding="ascii", newline="") as fh:
        return parse_instance(fh.read())


def validate_sequence(inst: Instance, seq) -> Sequence:
    """Check seq is a permutation of 0..n-1; return it as a tuple."""
    seq = tuple(seq)
    if len(seq) != inst.n or set(seq) != set(range(inst.n)):
        raise ValueError(f"not a permutation of 0..{inst.n - 1}: {seq!r}")
    return seq


def completion_times(inst: Instance, seq) -> tuple[list[int], list[int]]:
    """Completion-time vectors (C1, C2) along the given sequence.

    C1[j] = C1[j-1] + p1, C2[j] = max(C1[j], C2[j-1]) + p2.
    """
    seq = validate_sequence(inst, seq)
    c1, c2 = [], []
    t1 = t2 = 0
    for j in seq:
        t1 += inst.p1[j]
        t2 = max(t1, t2) + inst.p2[j]
        c1.append(t1)
        c2.append(t2)
    return c1, c2


def makespan(inst: Instance, seq) -> int:
    """Makespan (C2 of the last job) of the instance under the sequence."""
    seq = validate_sequence(inst, seq)
    t1 = t2 = 0
    p1, p2 = inst.p1, inst.p2
    for j in seq:
        t1 += p1[j]
        if t1 > t2:
            t2 = t1
        t2 += p2[j]
    return t2


def makespan_closed_form(inst: Instance, seq) -> int:
    """Makespan via max_i (sum_{k<=i} p1 + sum_{k>=i} p2).

    Algebraically identical to the recurrence; kept as an independent route
    for cross-checking and for vectorized batch evaluation.
    """
    seq = validate_sequence(inst, seq)
    if not seq:
        return 0
    best = 0
    prefix1 = 0
    suffix2 = sum(inst.p2[j] for j in seq)
    for j in seq:
        prefix1 += inst.p1[j]
        if prefix1 + suffix2 > best:
            best = prefix1 + suffix2
        suffix2 -= inst.p2[j]
    return best


def partition(inst: Instance) -> Partition:
    """Single-pass split into A (p1 <= p2) and B (p1 > p2) with sums and maxima."""
    a_idx, b_idx = [], []
    p1a = p2a = p1b = p2b = 0
    p_max_a1 = p_max_b2 = 0
    for j, (a, b) in enumerate(zip(inst.p1, inst.p2)):
        if a <= b:
            a_idx.append(j)
            p1a += a
            p2a += b
            if a > p_max_a1:
                p_max_a1 = a
        else:
            b_idx.append(j)
            p1b += a
            p2b += b
            if b > p_max_b2:
                p_max_b2 = b
    return Partition(
        a_idx=tuple(a_idx),
        b_idx=tuple(b_idx),
        p1a=p1a,
        p2a=p2a,
        p1b=p1b,
        p2b=p2b,
        p_max=inst.p_max,
        p_max_a1=p_max_a1,
        p_max_b2=p_max_b2,
    )


def reverse_instance(inst: Instance) -> Instance:
    """Swap the machines: job (p1, p2) becomes (p2, p1). Involution."""
    return Instance(inst.p2, inst.p1)


_BRUTE_FORCE_LIMIT = 10
_CHUNK_ROWS = 100_000


@lru_cache(maxsize=None)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def _perm_chunks(n: int):
    if n <= 8:
        yield _all_perms(n)
        return
    it = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(it, _CHUNK_ROWS))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def _batch_makespans(p1: np.ndarray, p2: np.ndarray, perms: np.ndarray) -> np.ndarray:
    # closed form: max over positions of (prefix sum of p1 + suffix sum of p2)
    q1 = p1[perms]
    q2 = p2[perms]
    c1 = np.cumsum(q1, axis=1)
    s2 = np.cumsum(q2[:, ::-1], axis=1)[:, ::-1]
    return (c1 + s2).max(axis=1)


def brute_force_optimum(inst: Instance) -> tuple[int, int]:
    """Exact minimum makespan over all n! permutations, and how many attain it.

    Guarded at n <= 10; this exists as a test oracle, not a solver.
    """
    if inst.n > _BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to n <= {_BRUTE_FORCE_LIMIT}, got n = {inst.n}")
    if inst.n == 0:
        return 0, 1
    p1 = np.array(inst.p1, dtype=np.int64)
    p2 = np.array(inst.p2, dtype=np.int64)
    best = None
    count = 0
    for perms in _perm_chunks(inst.n):
        spans = _batch_makespans(p1, p2, perms)
        low = int(spans.min())
        if best is None or low < best:
            best = low
            count = int((spans == low).sum())
        elif low == best:
            count += int((spans == best).sum())
    return best, count
