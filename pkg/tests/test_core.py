"""Instance model, text format, and schedule evaluation."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowshop2 import (
    Instance,
    InstanceFormatError,
    OverflowGuardError,
    brute_force_optimum,
    completion_times,
    format_instance,
    load_instance,
    makespan,
    parse_instance,
    partition,
    reverse_instance,
)
from flowshop2.core import makespan_closed_form, validate_sequence

from helpers import brute_minimum, quadratic_makespan, random_times, simulated_makespan


@st.composite
def instances(draw, min_n=1, max_n=10, max_p=25):
    n = draw(st.integers(min_n, max_n))
    p1 = draw(st.lists(st.integers(1, max_p), min_size=n, max_size=n))
    p2 = draw(st.lists(st.integers(1, max_p), min_size=n, max_size=n))
    return Instance(tuple(p1), tuple(p2))


@st.composite
def instances_with_seq(draw, **kwargs):
    inst = draw(instances(**kwargs))
    seq = draw(st.permutations(range(inst.n)))
    return inst, tuple(seq)


# ---------------------------------------------------------------------------
# Instance validation


def test_instance_basic_properties():
    inst = Instance((3, 1), (2, 5))
    assert inst.n == 2
    assert inst.p_max == 5
    assert inst.jobs() == [(3, 2), (1, 5)]


def test_instance_rejects_mismatched_lengths():
    with pytest.raises(ValueError, match="same length"):
        Instance((1,), (1, 2))


@pytest.mark.parametrize("bad", [0, -3, 1.5, "2"])
def test_instance_rejects_nonpositive_or_nonint_times(bad):
    with pytest.raises(ValueError, match="integers >= 1"):
        Instance((bad,), (1,))


def test_instance_empty_is_allowed():
    inst = Instance((), ())
    assert inst.n == 0
    assert inst.p_max == 0
    assert makespan(inst, ()) == 0


def test_overflow_guard_boundary():
    # 2 * n * p_max must stay below 2^63; n = 1 puts the edge at p_max = 2^62
    Instance((2**62 - 1,), (1,))
    with pytest.raises(OverflowGuardError):
        Instance((2**62,), (1,))


# ---------------------------------------------------------------------------
# text format


def test_parse_round_trip_explicit():
    text = "3\n2 7\n1 1\n9 4\n"
    inst = parse_instance(text)
    assert inst == Instance((2, 1, 9), (7, 1, 4))
    assert format_instance(inst) == text


def test_parse_accepts_missing_final_newline():
    assert parse_instance("1\n5 6") == Instance((5,), (6,))


def test_parse_accepts_zero_jobs():
    inst = parse_instance("0\n")
    assert inst.n == 0


def test_parse_collapses_interior_whitespace():
    assert parse_instance("1\n  5   6 \n") == Instance((5,), (6,))


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("", 1, "empty input"),
        ("x\n", 1, "job count"),
        ("2 \n1 2\n3 4\n", 1, "job count"),
        ("2\n1 2\n", 3, "expected 2 job lines, found 1"),
        ("1\n1 2\n3 4\n", 3, "extra content"),
        ("1\n1 2\n\n", 3, "extra content"),
        ("1\n1\n", 2, "expected 'p1 p2'"),
        ("1\n1 2 3\n", 2, "expected 'p1 p2'"),
        ("2\n1 2\nbogus 4\n", 3, "not a nonnegative integer: 'bogus'"),
        ("1\n-1 2\n", 2, "not a nonnegative integer"),
        ("1\n3.5 2\n", 2, "not a nonnegative integer"),
        ("1\n0 2\n", 2, ">= 1"),
        ("1\r\n1 2\n", 1, "carriage return"),
        ("2\n1 2\r\n3 4\n", 2, "carriage return"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(InstanceFormatError) as err:
        parse_instance(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_parse_overflow_goes_through_guard():
    with pytest.raises(OverflowGuardError):
        parse_instance(f"1\n{2**62} 1\n")


def test_load_instance(tmp_path):
    path = tmp_path / "inst.txt"
    path.write_text("2\n4 4\n1 9\n", encoding="ascii")
    assert load_instance(path) == Instance((4, 1), (4, 9))


@given(instances())
def test_format_parse_round_trip(inst):
    assert parse_instance(format_instance(inst)) == inst


# ---------------------------------------------------------------------------
# sequences and makespan


def test_validate_sequence_rejects_bad_permutations():
    inst = Instance((1, 2), (3, 4))
    assert validate_sequence(inst, [1, 0]) == (1, 0)
    for bad in ([0], [0, 0], [0, 2], [0, 1, 1]):
        with pytest.raises(ValueError, match="permutation"):
            validate_sequence(inst, bad)


def test_completion_times_tiny_example_by_hand():
    # (p1, p2) = (2, 3), (4, 1): C1 = 2, 6; C2 = 5, 7
    inst = Instance((2, 4), (3, 1))
    c1, c2 = completion_times(inst, (0, 1))
    assert c1 == [2, 6]
    assert c2 == [5, 7]
    assert makespan(inst, (0, 1)) == 7
    assert makespan(inst, (1, 0)) == 9


@given(instances_with_seq())
def test_completion_times_structure(case):
    inst, seq = case
    c1, c2 = completion_times(inst, seq)
    assert c2[-1] == makespan(inst, seq)
    assert all(x < y for x, y in zip(c1, c1[1:]))  # machine 1 never idles
    assert all(a < b for a, b in zip(c1, c2))  # job leaves machine 1 before 2
    assert all(x < y for x, y in zip(c2, c2[1:]))


@given(instances_with_seq())
def test_makespan_matches_independent_oracles(case):
    inst, seq = case
    ms = makespan(inst, seq)
    assert ms == simulated_makespan(inst.p1, inst.p2, seq)
    assert ms == quadratic_makespan(inst.p1, inst.p2, seq)
    assert ms == makespan_closed_form(inst, seq)


@given(instances_with_seq())
def test_machine_swap_plus_reversal_preserves_makespan(case):
    inst, seq = case
    rev = reverse_instance(inst)
    assert rev.p1 == inst.p2 and rev.p2 == inst.p1
    assert reverse_instance(rev) == inst
    assert makespan(inst, seq) == makespan(rev, seq[::-1])


# ---------------------------------------------------------------------------
# partition


def test_partition_explicit_example():
    # ties (p1 == p2) belong to A
    inst = Instance((2, 5, 3, 7, 4), (2, 4, 6, 9, 1))
    part = partition(inst)
    assert part.a_idx == (0, 2, 3)
    assert part.b_idx == (1, 4)
    assert (part.p1a, part.p2a) == (12, 17)
    assert (part.p1b, part.p2b) == (9, 5)
    assert part.p1 == 21 and part.p2 == 22
    assert part.p_max_a1 == 7
    assert part.p_max_b2 == 4
    assert part.n_a == 3 and part.n_b == 2


def test_partition_one_sided_instances():
    all_a = partition(Instance((1, 2), (5, 2)))
    assert all_a.b_idx == () and all_a.p_max_b2 == 0
    all_b = partition(Instance((5, 3), (1, 2)))
    assert all_b.a_idx == () and all_b.p_max_a1 == 0


@given(instances())
def test_partition_invariants(inst):
    part = partition(inst)
    assert sorted(part.a_idx + part.b_idx) == list(range(inst.n))
    assert all(inst.p1[j] <= inst.p2[j] for j in part.a_idx)
    assert all(inst.p1[j] > inst.p2[j] for j in part.b_idx)
    assert part.p1 == sum(inst.p1) and part.p2 == sum(inst.p2)


# ---------------------------------------------------------------------------
# enumeration oracle


@settings(deadline=None, max_examples=30)
@given(instances(max_n=5, max_p=8))
def test_brute_force_matches_pure_python_enumeration(inst):
    assert brute_force_optimum(inst) == brute_minimum(inst.p1, inst.p2)


def test_brute_force_eight_jobs_adversarial():
    inst = Instance((1, 2, 3, 4, 5, 4, 3, 2), (2, 3, 4, 5, 4, 3, 2, 1))
    assert brute_force_optimum(inst) == (25, 1)


def test_brute_force_chunked_path_agrees_with_enumeration():
    # n = 9 exceeds the cached-permutation cutoff, so this exercises the
    # streaming chunk evaluation end to end
    rng = random.Random(7)
    p1, p2 = random_times(rng, 9, 6)
    assert brute_force_optimum(Instance(p1, p2)) == brute_minimum(p1, p2)


def test_brute_force_rejects_large_instances():
    inst = Instance((1,) * 11, (1,) * 11)
    with pytest.raises(ValueError, match="n <= 10"):
        brute_force_optimum(inst)


def test_brute_force_empty():
    assert brute_force_optimum(Instance((), ())) == (0, 1)
