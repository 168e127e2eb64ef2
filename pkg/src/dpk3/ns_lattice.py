"""Integral lattices given by Gram matrices.

Determinants use fraction-free (Bareiss) elimination, the discriminant group is
read off the Smith normal form, and the signature comes from an exact
congruence diagonalisation over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvariantError


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "GramMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def is_even(self) -> bool:
        return all(self.entries[i][i] % 2 == 0 for i in range(self.rank))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __add__(self, other: "GramMatrix") -> "GramMatrix":
        """Orthogonal direct sum."""
        return direct_sum(self, other)


def direct_sum(*blocks: GramMatrix) -> GramMatrix:
    n = sum(b.rank for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b.entries):
            out[off + i][off:off + b.rank] = row
        off += b.rank
    return GramMatrix.of(out)


U2 = GramMatrix.of([[0, 2], [2, 0]])
A1 = GramMatrix.of([[-2]])
TWO = GramMatrix.of([[2]])
EMPTY = GramMatrix.of([])


def gram_determinant(g: GramMatrix | Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss elimination."""
    m = [list(r) for r in (g.entries if isinstance(g, GramMatrix) else g)]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class DiscriminantData:
    invariant_factors: tuple[int, ...]
    abs_determinant: int
    degenerate: bool

    @property
    def group(self) -> tuple[int, ...]:
        """Orders of the nontrivial cyclic factors of the discriminant group."""
        return tuple(d for d in self.invariant_factors if d > 1)

    @property
    def length(self) -> int:
        return len(self.group)

    def is_two_elementary(self) -> bool:
        return all(d == 2 for d in self.group)

    def to_json(self) -> dict:
        return {
            "factors": list(self.invariant_factors),
            "length": self.length,
            "abs_det": self.abs_determinant,
        }


def smith_normal_form(g: GramMatrix | Sequence[Sequence[int]]) -> DiscriminantData:
    """Invariant factors d_1 | d_2 | ... via unimodular row and column operations.

    Pivot: smallest nonzero absolute value in the active block, first in
    row-major order.
    """
    m = [list(r) for r in (g.entries if isinstance(g, GramMatrix) else g)]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("Smith normal form is implemented for square matrices")
    for t in range(n):
        while True:
            pivot = None
            for i in range(t, n):
                for j in range(t, n):
                    v = abs(m[i][j])
                    if v and (pivot is None or v < pivot[0]):
                        pivot = (v, i, j)
            if pivot is None:
                break
            _, pi, pj = pivot
            m[t], m[pi] = m[pi], m[t]
            for row in m:
                row[t], row[pj] = row[pj], row[t]
            p = m[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                dirty |= m[i][t] != 0
            for j in range(t + 1, n):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                dirty |= m[t][j] != 0
            if dirty:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if m[i][j] % p),
                None,
            )
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
        if m[t][t] < 0:
            m[t] = [-a for a in m[t]]
    factors = tuple(m[i][i] for i in range(n))
    degenerate = any(d == 0 for d in factors)
    abs_det = 0
    if not degenerate:
        abs_det = 1
        for d in factors:
            abs_det *= d
    return DiscriminantData(factors, abs_det, degenerate)


def discriminant_group(g: GramMatrix) -> DiscriminantData:
    return smith_normal_form(g)


def signature(g: GramMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts via exact congruence diagonalisation."""
    m = [[Fraction(v) for v in row] for row in g.entries]
    n = len(m)
    diag: list[Fraction] = []
    for t in range(n):
        if m[t][t] == 0:
            j = next((j for j in range(t + 1, n) if m[j][j] != 0), None)
            if j is not None:
                _swap_basis(m, t, j)
            else:
                j = next((j for j in range(t + 1, n) if m[t][j] != 0), None)
                if j is not None:
                    # e_t <- e_t + e_j gives square 2*m[t][j] != 0
                    for k in range(n):
                        m[t][k] += m[j][k]
                    for k in range(n):
                        m[k][t] += m[k][j]
        p = m[t][t]
        diag.append(p)
        if p == 0:
            continue
        for i in range(t + 1, n):
            f = m[i][t] / p
            if f:
                for k in range(n):
                    m[i][k] -= f * m[t][k]
                for k in range(n):
                    m[k][i] -= f * m[k][t]
    return (sum(d > 0 for d in diag), sum(d < 0 for d in diag), sum(d == 0 for d in diag))


def _swap_basis(m: list[list[Fraction]], a: int, b: int) -> None:
    m[a], m[b] = m[b], m[a]
    for row in m:
        row[a], row[b] = row[b], row[a]


def is_valid_strictly_elliptic(ns_rank: int, delta: int) -> bool:
    return 1 <= ns_rank <= 9 and (delta == 1 or (delta == 0 and ns_rank == 2))


def ns_lattice_of(ns_rank: int, delta: int) -> GramMatrix:
    """Neron-Severi lattice of a generic K3 with a strictly elliptic involution.

    <2> for r = 1, U(2) for (2, 0), <2> + A1 for (2, 1), U(2) + A1^(r-2) for r >= 3.
    """
    if delta not in (0, 1) or not is_valid_strictly_elliptic(ns_rank, delta):
        raise InvariantError(
            f"(r, delta) = ({ns_rank}, {delta}) is not on the strictly elliptic line: "
            "need 1 <= r <= 9 with delta = 1, or (r, delta) = (2, 0)"
        )
    if ns_rank == 1:
        return TWO
    if ns_rank == 2:
        return U2 if delta == 0 else direct_sum(TWO, A1)
    return direct_sum(U2, *([A1] * (ns_rank - 2)))
