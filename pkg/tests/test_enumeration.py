import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dpk3 import enumeration as en
from dpk3.errors import DimensionError, DomainError, InvalidDegreeError
from dpk3.picard import DivisorClass, canonical_class, intersect, parse_class
from dpk3.weyl import weyl_orbit

L = DivisorClass.line
E = DivisorClass.exceptional


def cls(text, degree):
    return parse_class(text, 9 - degree)


def test_minus_one_degree_eight():
    inv = en.enumerate_minus_one_classes(8)
    assert inv.classes == (E(1, 1),)


def test_minus_one_counts_small_degrees():
    assert en.enumerate_minus_one_classes(3).count == 27
    inv = en.enumerate_minus_one_classes(1)
    assert inv.count == 240
    assert cls("(6;3,2,2,2,2,2,2,2)", 1) in inv


@pytest.mark.parametrize("degree", [0, 9, 10, -1])
def test_minus_one_rejects_degree(degree):
    with pytest.raises(InvalidDegreeError):
        en.enumerate_minus_one_classes(degree)


def test_conic_examples():
    assert en.enumerate_conic_classes(8).classes == (cls("(1;1)", 8),)
    want = {L(4) - E(i, 4) for i in range(1, 5)} | {cls("2L-E1-E2-E3-E4", 5)}
    assert en.enumerate_conic_classes(5).as_set() == want
    assert en.enumerate_conic_classes(9).count == 0


@pytest.mark.parametrize("degree", range(1, 10))
def test_numerical_conics_are_all_nef(degree):
    # on a del Pezzo surface D^2 = 0, D.K = -2 already forces nefness
    raw = en._solve(en.Kind.CONIC, 9 - degree)
    assert tuple(raw) == en.enumerate_conic_classes(degree).classes


def test_roots_examples():
    assert en.enumerate_roots(7).as_set() == {cls("(0;-1,1)", 7), cls("(0;1,-1)", 7)}
    assert en.enumerate_roots(3).count == 72
    assert en.enumerate_roots(1).count == 240
    assert en.enumerate_roots(8).count == 0


@pytest.mark.parametrize("degree", [5, 4, 3, 2, 1])
def test_roots_match_weyl_orbit(degree):
    # irreducible root systems A4, D5, E6, E7, E8: one orbit of roots
    p = 9 - degree
    alpha = E(1, p) - E(2, p)
    assert weyl_orbit(alpha, p) == en.enumerate_roots(degree).as_set()


def test_is_nef_examples():
    assert en.is_nef(L(2) - E(1, 2), 7)
    assert not en.is_nef(E(1, 2), 7)
    assert en.is_nef(cls("2L-E1-E2-E3-E4", 5), 5)
    with pytest.raises(DimensionError):
        en.is_nef(L(3), 7)


def test_reducible_pairs_examples():
    pairs = en.reducible_fiber_pairs(L(2) - E(1, 2), 7)
    assert pairs == [tuple(sorted((E(2, 2), L(2) - E(1, 2) - E(2, 2))))]
    assert en.reducible_fiber_pairs(L(1) - E(1, 1), 8) == []
    conic = cls("2L-E1-E2-E3-E4", 5)
    got = {frozenset(p) for p in en.reducible_fiber_pairs(conic, 5)}
    lines = {(i, j): L(4) - E(i, 4) - E(j, 4) for i, j in itertools.combinations(range(1, 5), 2)}
    want = {frozenset({lines[1, 2], lines[3, 4]}), frozenset({lines[1, 3], lines[2, 4]}),
            frozenset({lines[1, 4], lines[2, 3]})}
    assert got == want


def test_reducible_pairs_reject_non_conic():
    with pytest.raises(DomainError):
        en.reducible_fiber_pairs(E(1, 2), 7)
    with pytest.raises(DimensionError):
        en.reducible_fiber_pairs(L(1) - E(1, 1), 7)


def test_bisection_examples():
    inv = en.bisection_classes(L(5) - E(1, 5), 4)
    assert cls("2L-E1-E2-E3-E4-E5", 4) in inv
    inv = en.bisection_classes(cls("2L-E1-E2-E3-E4", 4), 4)
    assert cls("2L-E1-E2-E3-E4-E5", 4) not in inv
    assert en.bisection_classes(L(1) - E(1, 1), 8).classes == (E(1, 1),)
    with pytest.raises(DomainError):
        en.bisection_classes(L(5), 4)


def test_symmetry_representatives_examples():
    reps = en.symmetry_representatives(en.enumerate_conic_classes(5))
    assert sorted(size for _, size in reps) == [1, 4]
    reps = en.symmetry_representatives(en.enumerate_conic_classes(6))
    assert [size for _, size in reps] == [3]
    reps = en.symmetry_representatives(en.enumerate_conic_classes(2))
    assert [size for _, size in reps] == [7, 35, 42, 35, 7]
    assert sum(size for _, size in reps) == 126


def test_inventory_json_schema():
    doc = en.enumerate_minus_one_classes(7).to_json()
    assert doc == {"degree": 7, "kind": "minus_one", "count": 3,
                   "classes": ["(0;-1,0)", "(0;0,-1)", "(1;1,1)"]}
    json.dumps(doc)


def test_threads_do_not_change_output():
    en.clear_caches()
    serial = en.enumerate_conic_classes(2, workers=1)
    en.clear_caches()
    threaded = en.enumerate_conic_classes(2, workers=8)
    assert serial == threaded


def test_distinct_permutations_counts():
    perms = list(en.distinct_permutations((2, 1, 1, 0)))
    assert len(perms) == len(set(perms)) == en.orbit_size_under_permutations((2, 1, 1, 0)) == 12
    assert perms == sorted(perms)


@settings(max_examples=50)
@given(st.lists(st.integers(-2, 3), max_size=6))
def test_distinct_permutations_match_itertools(values):
    assert list(en.distinct_permutations(values)) == sorted(set(itertools.permutations(values)))


@pytest.mark.parametrize("degree", range(1, 9))
def test_inventories_satisfy_equations(degree):
    k = canonical_class(9 - degree)
    for kind, builder in [("minus_one", en.enumerate_minus_one_classes),
                          ("conic", en.enumerate_conic_classes), ("root", en.enumerate_roots)]:
        inv = builder(degree)
        assert not en.verify_inventory(inv)
        assert list(inv.classes) == sorted(set(inv.classes))
        for c in inv:
            assert intersect(c, c) == en._SQUARE[en.Kind(kind)]
            assert intersect(c, k) == en._K_DEGREE[en.Kind(kind)]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.data())
def test_inventories_are_permutation_invariant(degree, data):
    p = 9 - degree
    perm = data.draw(st.permutations(range(p)))
    for inv in (en.enumerate_minus_one_classes(degree), en.enumerate_conic_classes(degree)):
        moved = {DivisorClass(c.ell, tuple(c.coeffs[i] for i in perm)) for c in inv}
        assert moved == inv.as_set()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.data())
def test_minus_one_classes_meet_conics_nonnegatively(degree, data):
    conic = data.draw(st.sampled_from(en.enumerate_conic_classes(degree).classes))
    for e in en.enumerate_minus_one_classes(degree):
        assert intersect(conic, e) >= 0
    assert en.bisection_classes(conic, degree).count >= 1
