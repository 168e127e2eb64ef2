import functools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpk3.errors import InvalidDegreeError, InvariantError, NoEllipticFibrationError, PatternError
from dpk3.fibers import (
    EULER_TOTAL,
    II,
    III,
    IV,
    FiberConfiguration,
    I,
    KodairaType,
    ReducibleCase,
    ReduciblePattern,
    SmoothPattern,
    admissible_types,
    classify,
    classify_reducible_fiber,
    classify_smooth_fiber,
    configuration_problems,
    enumerate_fiber_configurations,
    euler_number,
    fixed_locus_from,
    invariants_of,
    is_admissible_pattern,
    reducible_fiber_count,
)

VALID = [(d, 1) for d in range(1, 10)] + [(8, 0)]

configs_of = functools.lru_cache(maxsize=None)(enumerate_fiber_configurations)


def test_smooth_fiber_examples():
    assert classify_smooth_fiber([4]) == III
    assert classify_smooth_fiber([2, 2]) == I(2)
    assert classify_smooth_fiber([2, 1, 1]) == I(1)
    assert classify_smooth_fiber([1, 3]) == II
    assert classify_smooth_fiber([1, 1, 1, 1]) == I(0)


@pytest.mark.parametrize("bad", [[3], [2, 2, 1], [], [4, 0], [5, -1]])
def test_smooth_fiber_rejects(bad):
    with pytest.raises(PatternError):
        classify_smooth_fiber(bad)


def test_reducible_fiber_examples():
    assert classify_reducible_fiber(ReducibleCase.TRANSVERSE) == I(2)
    assert classify_reducible_fiber(ReducibleCase.ONE_TANGENT) == I(3)
    assert classify_reducible_fiber(ReducibleCase.TWO_TANGENT) == I(4)
    assert classify_reducible_fiber(ReducibleCase.NODE_ON_BRANCH_TRANSVERSE) == III
    assert classify_reducible_fiber("node_on_branch_tangent") == IV


def test_classify_dispatch():
    assert classify(SmoothPattern((3, 1))) == II
    assert classify(ReduciblePattern(ReducibleCase.TWO_TANGENT)) == I(4)


def test_euler_numbers():
    assert euler_number(I(0)) == 0
    assert euler_number(I(4)) == 4
    assert euler_number(III) == 3
    assert euler_number(II) == 2 and euler_number(IV) == 4


def test_kodaira_parse_and_order():
    assert KodairaType.parse("I_3") == I(3)
    assert KodairaType.parse("IV") == IV
    assert str(I(0)) == "I0"
    assert sorted([IV, II, I(2), III, I(0)]) == [I(0), I(2), II, III, IV]
    with pytest.raises(ValueError):
        KodairaType.parse("V")
    with pytest.raises(ValueError):
        KodairaType("I", -1)


def test_invariants_examples():
    rec = invariants_of(2, 1)
    assert (rec.ns_rank, rec.length, rec.genus, rec.rational_count) == (8, 8, 3, 0)
    rec = invariants_of(8, 0)
    assert str(rec.base) == "P1xP1" and rec.genus == 9
    rec = invariants_of(9, 1)
    assert rec.ns_rank == 1 and rec.genus == 10
    assert rec.to_json()["note"] == "no elliptic fibrations"
    assert str(invariants_of(3, 1).base) == "BlowUp(p=6)"


@pytest.mark.parametrize("d, delta", VALID)
def test_invariant_formulas(d, delta):
    rec = invariants_of(d, delta)
    assert rec.genus == d + 1 == (22 - rec.ns_rank - rec.length) // 2
    assert rec.rational_count == 0


@pytest.mark.parametrize("d, delta, exc", [(5, 0, InvariantError), (8, 2, InvariantError),
                                           (0, 1, InvalidDegreeError), (10, 1, InvalidDegreeError)])
def test_invariants_rejects(d, delta, exc):
    with pytest.raises(exc):
        invariants_of(d, delta)


def test_fixed_locus_examples():
    assert fixed_locus_from(9, 9) == (2, 0)
    assert fixed_locus_from(10, 8) == (2, 1)
    assert fixed_locus_from(10, 10) == (1, 0)
    with pytest.raises(InvariantError):
        fixed_locus_from(9, 8)


def test_admissible_examples():
    assert admissible_types(8, 1) == {I(0), I(1), I(2), II, III}
    assert admissible_types(6, 1) == admissible_types(8, 1) | {I(3)}
    assert admissible_types(4, 1) == {I(0), I(1), I(2), I(3), I(4), II, III, IV}
    with pytest.raises(NoEllipticFibrationError):
        admissible_types(9, 1)
    with pytest.raises(NoEllipticFibrationError):
        enumerate_fiber_configurations(9, 1)


def test_pattern_admissibility():
    assert is_admissible_pattern(SmoothPattern((4,)), 8, 1)
    assert not is_admissible_pattern(ReduciblePattern(ReducibleCase.TRANSVERSE), 8, 1)
    assert not is_admissible_pattern(ReduciblePattern(ReducibleCase.TWO_TANGENT), 6, 1)
    assert is_admissible_pattern(ReduciblePattern(ReducibleCase.NODE_ON_BRANCH_TANGENT), 5, 1)


def test_configuration_examples():
    cfgs = enumerate_fiber_configurations(8, 1)
    assert FiberConfiguration.build(8, 1, [], [I(1)] * 24) in cfgs
    assert all(I(4) not in c.smooth_counter() and IV not in c.smooth_counter() for c in cfgs)
    assert FiberConfiguration.build(7, 1, [I(3)], [I(1)] * 21) in enumerate_fiber_configurations(7, 1)


def test_configuration_problems_detects_errors():
    bad = FiberConfiguration.build(8, 1, [I(4)], [I(1)] * 20)
    assert len(configuration_problems(bad)) >= 2
    short = FiberConfiguration.build(7, 1, [I(2)], [I(1)] * 3)
    assert any("Euler" in s for s in configuration_problems(short))


@pytest.mark.parametrize("d, delta", [(8, 0), (8, 1), (7, 1), (6, 1), (5, 1)])
def test_configurations_valid_and_unique(d, delta):
    cfgs = enumerate_fiber_configurations(d, delta)
    assert len(set(cfgs)) == len(cfgs)
    for c in cfgs:
        assert c.euler_total == EULER_TOTAL
        assert not configuration_problems(c)
        assert sum(n for _, n in c.reducible) == reducible_fiber_count(d, delta)
    assert [c.count_vector() for c in cfgs] == sorted(c.count_vector() for c in cfgs)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.data())
def test_random_configuration_is_admissible(d, data):
    cfgs = configs_of(d, 1)
    c = data.draw(st.sampled_from(cfgs))
    allowed = admissible_types(d, 1)
    assert all(t in allowed for t, _ in (*c.reducible, *c.smooth))
    assert c.euler_total == 24


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4).filter(lambda xs: sum(xs) == 4))
def test_smooth_classification_depends_only_on_multiset(parts):
    assert classify_smooth_fiber(parts) == classify_smooth_fiber(sorted(parts))
    # the Euler number of the fiber equals the ramification sum(m - 1)
    assert euler_number(classify_smooth_fiber(parts)) == sum(m - 1 for m in parts)
