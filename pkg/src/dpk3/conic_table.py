"""Published list of conic-class orbits, transcribed row by row.

Rows are stored exactly as printed: each is ``ell`` together with groups
``(multiplicity, number of indices)``; unlisted indices have multiplicity 0.
Rows whose printed constraints disagree with each other carry a ``note``.
The enumeration is the source of truth; :func:`compare_with_table` reports
how the printed rows line up with the enumerated orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .enumeration import Kind, enumerate_conic_classes, satisfies_equations, symmetry_representatives
from .picard import DivisorClass


@dataclass(frozen=True)
class TableRow:
    degree: int
    text: str
    ell: int
    groups: tuple[tuple[int, int], ...]
    note: str | None = None

    @property
    def num_points(self) -> int:
        return 9 - self.degree

    @property
    def fits(self) -> bool:
        return sum(size for _, size in self.groups) <= self.num_points

    def representative(self) -> DivisorClass | None:
        """Class with descending multiplicities, or None if the index sets do not fit."""
        if not self.fits:
            return None
        coeffs = [m for m, size in self.groups for _ in range(size)]
        coeffs += [0] * (self.num_points - len(coeffs))
        return DivisorClass(self.ell, tuple(sorted(coeffs, reverse=True)))

    def index_choices(self) -> int:
        """Number of ways to choose the index sets (the orbit size the row claims)."""
        if not self.fits:
            return 0
        sizes = [size for _, size in self.groups]
        n = math.factorial(self.num_points) // math.factorial(self.num_points - sum(sizes))
        for size in sizes:
            n //= math.factorial(size)
        return n


_COMPLEMENT_NOTE = (
    "J is given both as the complement of {{i}} ({n} indices) and as a set with |J|=5; "
    "the explicit cardinality |J|=5 is used"
)


def _rows() -> tuple[TableRow, ...]:
    rows: list[TableRow] = []

    def add(d, text, ell, groups, note=None):
        rows.append(TableRow(d, text, ell, tuple(groups), note))

    add(8, "L-E_1", 1, [(1, 1)])
    add(7, "L-E_i, i=1,2", 1, [(1, 1)])
    add(6, "L-E_i, i=1,2,3", 1, [(1, 1)])
    add(5, "L-E_i, i=1,...,4", 1, [(1, 1)])
    add(5, "2L-sum_{k=1}^4 E_k", 2, [(1, 4)])
    add(4, "L-E_i, i=1,...,5", 1, [(1, 1)])
    add(4, "2L-sum_J E_j, |J|=4", 2, [(1, 4)])
    add(3, "L-E_i, i=1,...,6", 1, [(1, 1)])
    add(3, "2L-sum_J E_j, |J|=4", 2, [(1, 4)])
    add(3, "3L-2E_i-sum_J E_j, J={1..6}\\{i}", 3, [(2, 1), (1, 5)])
    add(2, "L-E_i, i=1,...,7", 1, [(1, 1)])
    add(2, "2L-sum_J E_j, |J|=4", 2, [(1, 4)])
    add(2, "3L-2E_i-sum_J E_j, J={1..7}\\{i}, |J|=5", 3, [(2, 1), (1, 5)],
        _COMPLEMENT_NOTE.format(n=6))
    add(2, "4L-2sum_J E_j-sum_K E_k, |J|=4, K={1..7}\\J", 4, [(2, 4), (1, 3)])
    add(2, "5L-E_i-2sum_J E_j, J={1..7}\\{i}", 5, [(1, 1), (2, 6)])
    add(1, "L-E_i, i=1,...,8", 1, [(1, 1)])
    add(1, "2L-sum_J E_j, |J|=4", 2, [(1, 4)])
    add(1, "3L-2E_i-sum_J E_j, J={1..8}\\{i}, |J|=5", 3, [(2, 1), (1, 5)],
        _COMPLEMENT_NOTE.format(n=7))
    add(1, "4L-2sum_J E_j-sum_K E_k, |J|=4, |K|=3", 4, [(2, 4), (1, 3)])
    add(1, "4L-3E_i-sum_J E_j, J={1..8}\\{i}", 4, [(3, 1), (1, 7)])
    add(1, "5L-3E_i-2sum_J E_j-sum_K E_k, |J|=3, |K|=4", 5, [(3, 1), (2, 3), (1, 4)])
    add(1, "5L-E_i-2sum_J E_j, |J|=6", 5, [(1, 1), (2, 6)])
    add(1, "6L-3sum_J E_j-2sum_K E_k-sum_R E_r, |J|=2, |K|=4, |R|=2", 6,
        [(3, 2), (2, 4), (1, 2)])
    add(1, "7L-4E_i-3E_j-2sum_K E_k, K={1..8}\\{i,j}", 7, [(4, 1), (3, 1), (2, 6)])
    add(1, "7L-E_i-2sum_J E_j-3sum_K E_k, |J|=3, |K|=4", 7, [(1, 1), (2, 3), (3, 4)])
    add(1, "8L-4E_i-2sum_J E_j-3sum_K E_k, |J|=3, |K|=4", 8, [(4, 1), (2, 3), (3, 4)])
    add(1, "8L-E_i-3sum_J E_j, J={1..8}\\{i}", 8, [(1, 1), (3, 7)])
    add(1, "9L-2E_i-4sum_J E_j-3sum_K E_k, |J|=2, |K|=5", 9, [(2, 1), (4, 2), (3, 5)])
    add(1, "10L-3sum_I E_i-4sum_J, |J|=|K|=4", 10, [(3, 4), (4, 4)],
        "index sets are named I, J in the formula but J, K in the constraints; "
        "read as two disjoint 4-element sets")
    add(1, "11L-3E_i-4sum_J E_j, J={1..8}\\{i}", 11, [(3, 1), (4, 7)])
    return tuple(rows)


TABLE_ROWS: tuple[TableRow, ...] = _rows()


def rows_for(degree: int) -> tuple[TableRow, ...]:
    return tuple(r for r in TABLE_ROWS if r.degree == degree)


@dataclass
class RowMatch:
    row: TableRow
    representative: DivisorClass | None
    satisfies_equations: bool
    matched: bool
    orbit_size: int | None

    @property
    def status(self) -> str:
        if not self.matched:
            return "unmatched"
        if self.orbit_size != self.row.index_choices():
            return "size-mismatch"
        return "matched"


@dataclass
class TableComparison:
    degree: int
    rows: list[RowMatch]
    orbits: list[tuple[DivisorClass, int]]
    unmatched_orbits: list[tuple[DivisorClass, int]] = field(default_factory=list)
    orbit_to_row: dict[DivisorClass, TableRow | None] = field(default_factory=dict)

    @property
    def one_for_one(self) -> bool:
        matched = [m.representative for m in self.rows if m.status == "matched"]
        return (
            len(matched) == len(self.rows) == len(self.orbits)
            and len(set(matched)) == len(matched)
            and not self.unmatched_orbits
        )

    @property
    def notes(self) -> list[str]:
        return [f"{m.row.text}: {m.row.note}" for m in self.rows if m.row.note]


def compare_with_table(degree: int) -> TableComparison:
    orbits = symmetry_representatives(enumerate_conic_classes(degree))
    sizes = dict(orbits)
    comp = TableComparison(degree, [], orbits)
    for row in rows_for(degree):
        rep = row.representative()
        ok = rep is not None and satisfies_equations(rep, Kind.CONIC)
        comp.rows.append(RowMatch(row, rep, ok, rep in sizes, sizes.get(rep)))
    by_rep = {m.representative: m.row for m in comp.rows if m.matched}
    for rep, size in orbits:
        comp.orbit_to_row[rep] = by_rep.get(rep)
        if rep not in by_rep:
            comp.unmatched_orbits.append((rep, size))
    return comp
