"""Reference implementations used as test oracles.

Everything here is written from first principles — direct formulas, library
sorts, exhaustive enumeration — and deliberately does not import the package
under test. Slow is fine; independence is the point.
"""

import itertools


def simulated_makespan(p1, p2, seq):
    """Timeline simulation with explicit machine clocks."""
    free1 = free2 = 0
    for j in seq:
        done1 = free1 + p1[j]
        free1 = done1
        free2 = max(done1, free2) + p2[j]
    return free2


def quadratic_makespan(p1, p2, seq):
    """max over i of (sum of p1 through position i + sum of p2 from i on)."""
    best = 0
    for i in range(len(seq)):
        head = sum(p1[j] for j in seq[: i + 1])
        tail = sum(p2[j] for j in seq[i:])
        best = max(best, head + tail)
    return best


def sorted_rule_sequence(p1, p2):
    """Library-sort schedule: A = {p1 <= p2} ascending p1, then B descending p2."""
    n = len(p1)
    a = sorted((j for j in range(n) if p1[j] <= p2[j]), key=lambda j: p1[j])
    b = sorted((j for j in range(n) if p1[j] > p2[j]), key=lambda j: -p2[j])
    return a + b


def brute_minimum(p1, p2):
    """(minimum makespan, number of optimal permutations) by full enumeration."""
    best, count = None, 0
    for perm in itertools.permutations(range(len(p1))):
        ms = simulated_makespan(p1, p2, perm)
        if best is None or ms < best:
            best, count = ms, 1
        elif ms == best:
            count += 1
    return best, count


def boundary_by_sorting(pairs, threshold):
    """Smallest key v with sum(delta over key <= v) > threshold, or None.

    Sort-and-scan version of the tie-closed prefix search: accumulate whole
    equal-key groups before testing, exactly as the definition demands.
    """
    total = 0
    for key, group in itertools.groupby(sorted(pairs), key=lambda p: p[0]):
        total += sum(d for _, d in group)
        if total > threshold:
            return key
    return None


def random_times(rng, n, p_max):
    """Two independent tuples of n processing times from {1..p_max}."""
    p1 = tuple(rng.randint(1, p_max) for _ in range(n))
    p2 = tuple(rng.randint(1, p_max) for _ in range(n))
    return p1, p2


def shuffle_blocks(rng, seq, blocks):
    """Return a copy of seq with each (start, length) block shuffled."""
    seq = list(seq)
    for start, length in blocks:
        chunk = seq[start : start + length]
        rng.shuffle(chunk)
        seq[start : start + length] = chunk
    return seq
