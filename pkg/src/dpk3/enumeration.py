"""Enumeration of (-1)-classes, conic classes and roots on Z_d.

Each kind is a pair of Diophantine equations on ``D = ell*L - sum(a_i E_i)``:

=========  ==========================  ======================
kind       sum(a_i)                    sum(a_i^2)
=========  ==========================  ======================
minus_one  3*ell - 1   (D.K = -1)      ell^2 + 1  (D^2 = -1)
conic      3*ell - 2   (D.K = -2)      ell^2      (D^2 = 0)
root       3*ell       (D.K = 0)       ell^2 + 2  (D^2 = -2)
=========  ==========================  ======================

Conic classes must in addition be nef.  By Cauchy-Schwarz,
``sum(a)^2 <= p * sum(a^2)`` which bounds ``ell``; inside each ``ell`` the
multiplicities are searched in non-increasing order with the same inequality
applied to the unassigned tail, then expanded to all distinct labellings.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DimensionError, DomainError, InvalidDegreeError
from .picard import DivisorClass, canonical_class, intersect


class Kind(str, enum.Enum):
    MINUS_ONE = "minus_one"
    CONIC = "conic"
    ROOT = "root"
    ORBIT = "orbit"
    BISECTION = "bisection"


# kind -> (c, m) with sum(a) = 3*ell - c and sum(a^2) = ell^2 + m
_EQUATIONS = {
    Kind.MINUS_ONE: (1, 1),
    Kind.CONIC: (2, 0),
    Kind.ROOT: (0, 2),
}


@dataclass(frozen=True)
class ClassInventory:
    degree: int
    kind: Kind
    classes: tuple[DivisorClass, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def num_points(self) -> int:
        return 9 - self.degree

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[DivisorClass]:
        return iter(self.classes)

    def __contains__(self, x: object) -> bool:
        return x in self.as_set()

    def as_set(self) -> frozenset[DivisorClass]:
        return frozenset(self.classes)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "kind": self.kind.value,
            "count": self.count,
            "classes": [str(c) for c in self.classes],
        }


def num_points_of(degree: int) -> int:
    return 9 - degree


def _check_degree(degree: int, lo: int, hi: int) -> None:
    if isinstance(degree, bool) or not isinstance(degree, int) or not lo <= degree <= hi:
        raise InvalidDegreeError(f"degree must be an integer in {lo}..{hi}, got {degree!r}")


def ell_bounds(kind: Kind, num_points: int) -> range:
    """All ``ell`` compatible with the Cauchy-Schwarz bound for ``kind``.

    Solves ``(3*ell - c)^2 <= p * (ell^2 + m)``, a quadratic with positive
    leading coefficient ``9 - p``; the integer solutions form an interval.
    """
    c, m = _EQUATIONS[Kind(kind)]
    p = num_points
    a, b, k = 9 - p, -6 * c, c * c - p * m
    disc = b * b - 4 * a * k
    if disc < 0:
        return range(0)
    root = math.sqrt(disc)
    lo = math.floor((-b - root) / (2 * a)) - 1
    hi = math.ceil((-b + root) / (2 * a)) + 1
    ok = [ell for ell in range(lo, hi + 1) if (3 * ell - c) ** 2 <= p * (ell * ell + m)]
    if not ok:
        return range(0)
    return range(ok[0], ok[-1] + 1)


def descending_solutions(length: int, total: int, norm: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing integer tuples with given sum and sum of squares."""

    def rec(k: int, s: int, q: int, upper: int | None, prefix: list[int]):
        if k == 0:
            if s == 0 and q == 0:
                yield tuple(prefix)
            return
        if q < 0 or s * s > k * q:
            return
        r = math.isqrt(q)
        hi = r if upper is None else min(upper, r)
        # the largest remaining entry is at least the mean
        lo = max(-r, -((-s) // k))
        for x in range(hi, lo - 1, -1):
            prefix.append(x)
            yield from rec(k - 1, s - x, q - x * x, x, prefix)
            prefix.pop()

    yield from rec(length, total, norm, None, [])


def distinct_permutations(values: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All distinct orderings of ``values`` in lexicographic order."""
    seq = sorted(values)
    n = len(seq)
    while True:
        yield tuple(seq)
        i = n - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1:] = reversed(seq[i + 1:])


def _solve_for_ell(kind: Kind, num_points: int, ell: int) -> list[DivisorClass]:
    c, m = _EQUATIONS[kind]
    out = []
    for rep in descending_solutions(num_points, 3 * ell - c, ell * ell + m):
        out.extend(DivisorClass(ell, perm) for perm in distinct_permutations(rep))
    return out


def _solve(kind: Kind, num_points: int, workers: int = 1) -> list[DivisorClass]:
    ells = list(ell_bounds(kind, num_points))
    if workers > 1 and len(ells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda e: _solve_for_ell(kind, num_points, e), ells))
    else:
        chunks = [_solve_for_ell(kind, num_points, e) for e in ells]
    return sorted(c for chunk in chunks for c in chunk)


_CACHE: dict[tuple[Kind, int], ClassInventory] = {}


def clear_caches() -> None:
    _CACHE.clear()


def _cached(kind: Kind, degree: int, build) -> ClassInventory:
    key = (kind, degree)
    inv = _CACHE.get(key)
    if inv is None:
        inv = build()
        _CACHE[key] = inv
    return inv


def enumerate_minus_one_classes(degree: int, *, workers: int = 1) -> ClassInventory:
    """All D with D^2 = -1 and D.K = -1 on Z_degree."""
    _check_degree(degree, 1, 8)
    return _cached(
        Kind.MINUS_ONE,
        degree,
        lambda: ClassInventory(degree, Kind.MINUS_ONE, tuple(_solve(Kind.MINUS_ONE, 9 - degree, workers))),
    )


def enumerate_roots(degree: int, *, workers: int = 1) -> ClassInventory:
    """All roots: alpha^2 = -2, alpha.K = 0."""
    _check_degree(degree, 1, 8)
    return _cached(
        Kind.ROOT,
        degree,
        lambda: ClassInventory(degree, Kind.ROOT, tuple(_solve(Kind.ROOT, 9 - degree, workers))),
    )


def enumerate_conic_classes(degree: int, *, workers: int = 1) -> ClassInventory:
    """All nef D with D^2 = 0 and D.K = -2.  Empty for degree 9."""
    _check_degree(degree, 1, 9)

    def build():
        candidates = _solve(Kind.CONIC, 9 - degree, workers)
        gens = cone_generators(degree)
        nef = tuple(c for c in candidates if all(intersect(c, g) >= 0 for g in gens))
        return ClassInventory(degree, Kind.CONIC, nef)

    return _cached(Kind.CONIC, degree, build)


def cone_generators(degree: int) -> tuple[DivisorClass, ...]:
    """Generators of the effective cone of Z_degree."""
    _check_degree(degree, 1, 9)
    if degree == 9:
        return (DivisorClass.line(0),)
    if degree == 8:
        e1 = DivisorClass.exceptional(1, 1)
        return (e1, DivisorClass.line(1) - e1)
    return enumerate_minus_one_classes(degree).classes


def is_nef(x: DivisorClass, degree: int) -> bool:
    _check_degree(degree, 1, 9)
    if x.num_points != 9 - degree:
        raise DimensionError(f"class has {x.num_points} points, degree {degree} needs {9 - degree}")
    return all(intersect(x, g) >= 0 for g in cone_generators(degree))


_SQUARE = {Kind.MINUS_ONE: -1, Kind.CONIC: 0, Kind.ROOT: -2}
_K_DEGREE = {Kind.MINUS_ONE: -1, Kind.CONIC: -2, Kind.ROOT: 0}


def satisfies_equations(x: DivisorClass, kind: Kind) -> bool:
    kind = Kind(kind)
    k = canonical_class(x.num_points)
    return intersect(x, x) == _SQUARE[kind] and intersect(x, k) == _K_DEGREE[kind]


def _require_conic(conic: DivisorClass, degree: int) -> ClassInventory:
    inv = enumerate_conic_classes(degree)
    if conic.num_points != 9 - degree:
        raise DimensionError(f"class has {conic.num_points} points, degree {degree} needs {9 - degree}")
    if conic not in inv.as_set():
        raise DomainError(f"{conic} is not a conic class on Z_{degree}")
    return inv


def reducible_fiber_pairs(conic: DivisorClass, degree: int) -> list[tuple[DivisorClass, DivisorClass]]:
    """Unordered pairs {A, B} of (-1)-classes with A + B = conic, as sorted tuples."""
    _require_conic(conic, degree)
    if degree == 9:
        return []
    minus_one = enumerate_minus_one_classes(degree).as_set()
    pairs = []
    for a in sorted(minus_one):
        b = conic - a
        if a < b and b in minus_one:
            pairs.append((a, b))
    return pairs


def bisection_classes(conic: DivisorClass, degree: int) -> ClassInventory:
    """(-1)-classes meeting the conic fiber once."""
    _require_conic(conic, degree)
    if degree == 9:
        return ClassInventory(degree, Kind.BISECTION, ())
    found = tuple(e for e in enumerate_minus_one_classes(degree) if intersect(e, conic) == 1)
    return ClassInventory(degree, Kind.BISECTION, found)


def orbit_size_under_permutations(coeffs: Sequence[int]) -> int:
    n = math.factorial(len(coeffs))
    for mult in Counter(coeffs).values():
        n //= math.factorial(mult)
    return n


def symmetry_representatives(inv: ClassInventory) -> list[tuple[DivisorClass, int]]:
    """One representative (coefficients sorted descending) per S_p-orbit, with orbit size."""
    counts: Counter[DivisorClass] = Counter(c.sorted_form() for c in inv.classes)
    return sorted(counts.items())


def verify_inventory(inv: ClassInventory) -> list[DivisorClass]:
    """Members of ``inv`` violating its defining equations (empty when sound)."""
    kind = inv.kind
    bad = [c for c in inv.classes if not satisfies_equations(c, kind)]
    if kind is Kind.CONIC:
        bad.extend(c for c in inv.classes if not is_nef(c, inv.degree))
    return bad
