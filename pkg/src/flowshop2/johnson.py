"""Baseline two-machine flow shop solver: full comparison-sort scheduling rule.

Set A (p1 <= p2) goes first in nondecreasing p1, set B (p1 > p2) follows in
nonincreasing p2. This is the correctness and timing reference for the
partial-sort solver in `linear`.
"""

from __future__ import annotations

from .core import Instance, Sequence, makespan, partition, validate_sequence


def johnson_full(inst: Instance) -> tuple[Sequence, int]:
    """Full-sort optimal sequence and its makespan.

    Sorts are stable, so equal-key jobs keep input order and the output is
    deterministic.
    """
    part = partition(inst)
    a_sorted = sorted(part.a_idx, key=lambda j: inst.p1[j])
    b_sorted = sorted(part.b_idx, key=lambda j: -inst.p2[j])
    seq = tuple(a_sorted + b_sorted)
    return seq, makespan(inst, seq)


def is_johnson_order(inst: Instance, seq) -> bool:
    """True iff seq is A-jobs (nondecreasing p1) then B-jobs (nonincreasing p2)."""
    seq = validate_sequence(inst, seq)
    seen_b = False
    prev_a_key = None
    prev_b_key = None
    for j in seq:
        if inst.p1[j] <= inst.p2[j]:
            if seen_b:
                return False
            if prev_a_key is not None and inst.p1[j] < prev_a_key:
                return False
            prev_a_key = inst.p1[j]
        else:
            seen_b = True
            if prev_b_key is not None and inst.p2[j] > prev_b_key:
                return False
            prev_b_key = inst.p2[j]
    return True
