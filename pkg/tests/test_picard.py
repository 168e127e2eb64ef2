import pytest
from hypothesis import given
from hypothesis import strategies as st

from dpk3.errors import ClassParseError, DimensionError, InvalidDegreeError
from dpk3.picard import (
    DivisorClass,
    canonical_class,
    format_class,
    format_symbolic,
    gram_matrix,
    intersect,
    parse_class,
    self_intersection,
)

L = DivisorClass.line
E = DivisorClass.exceptional

small = st.integers(-50, 50)


@st.composite
def classes(draw, num_points=None):
    p = draw(st.integers(0, 8)) if num_points is None else num_points
    return DivisorClass(draw(small), tuple(draw(st.lists(small, min_size=p, max_size=p))))


@st.composite
def class_triples(draw):
    p = draw(st.integers(0, 8))
    return tuple(draw(classes(p)) for _ in range(3))


def test_conic_self_intersection_zero():
    c = L(1) - E(1, 1)
    assert intersect(c, c) == 0


def test_canonical_square_degree_three():
    k = canonical_class(6)
    assert self_intersection(k) == 3


def test_conic_has_anticanonical_degree_two():
    d = parse_class("2L-E1-E2-E3-E4", 4)
    assert intersect(d, canonical_class(4)) == -2


def test_canonical_class_values():
    assert canonical_class(0) == DivisorClass(-3, ())
    assert self_intersection(canonical_class(0)) == 9
    assert self_intersection(canonical_class(8)) == 1
    for p in range(9):
        assert self_intersection(canonical_class(p)) == 9 - p


def test_canonical_class_rejects_nine_points():
    with pytest.raises(InvalidDegreeError):
        canonical_class(9)


def test_intersect_dimension_mismatch():
    with pytest.raises(DimensionError):
        intersect(L(2), L(3))


def test_exceptional_sign_convention():
    e1 = E(1, 2)
    assert e1 == DivisorClass(0, (-1, 0))
    assert self_intersection(e1) == -1
    assert intersect(e1, L(2)) == 0


def test_gram_matrix_is_diagonal_lorentzian():
    assert gram_matrix(2) == [[1, 0, 0], [0, -1, 0], [0, 0, -1]]


def test_parse_compact_examples():
    assert parse_class("(2;1,1,1,1)", 4) == 2 * L(4) - E(1, 4) - E(2, 4) - E(3, 4) - E(4, 4)
    assert parse_class("(0;-1,0)", 2) == E(1, 2)
    assert format_class(parse_class("(1;1)", 1)) == "(1;1)"
    assert parse_class(" ( 3 ; 2 , 1 ) ", 2) == DivisorClass(3, (2, 1))
    assert parse_class("(−3;)", 0) == canonical_class(0)


def test_parse_symbolic_forms():
    assert parse_class("2L-E1-E2-E3-E4", 4) == DivisorClass(2, (1, 1, 1, 1))
    assert parse_class("L - E_1", 2) == DivisorClass(1, (1, 0))
    assert parse_class("E2", 2) == DivisorClass(0, (0, -1))
    assert parse_class("3L−2E1", 1) == DivisorClass(3, (2,))


@pytest.mark.parametrize(
    "text, p, pos",
    [
        ("(1;1,1", 2, 6),
        ("(1;1)", 2, 5),
        ("(x;1)", 1, 1),
        ("(1,1)", 1, 2),
        ("(1;1) z", 1, 6),
        ("L-E3", 2, 2),
        ("L-Q", 2, 1),
        ("", 2, 0),
    ],
)
def test_parse_errors_report_position(text, p, pos):
    with pytest.raises(ClassParseError) as info:
        parse_class(text, p)
    assert info.value.position == pos


def test_overflow_is_rejected():
    with pytest.raises(OverflowError):
        DivisorClass(2**63, ())
    big = DivisorClass(2**62, ())
    with pytest.raises(OverflowError):
        big + big


@given(class_triples(), small, small)
def test_intersection_bilinear_symmetric(xyz, s, t):
    x, y, z = xyz
    assert intersect(x, y) == intersect(y, x)
    assert intersect(s * x + t * y, z) == s * intersect(x, z) + t * intersect(y, z)


@given(classes())
def test_compact_round_trip(x):
    assert parse_class(format_class(x), x.num_points) == x


@given(classes())
def test_symbolic_round_trip(x):
    assert parse_class(format_symbolic(x), x.num_points) == x


@given(classes())
def test_sorted_form_is_permutation_invariant(x):
    rev = DivisorClass(x.ell, tuple(reversed(x.coeffs)))
    assert rev.sorted_form() == x.sorted_form()
    assert self_intersection(rev) == self_intersection(x)
