"""Reflections in roots of K^perp and orbits of the generated Weyl group."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, InvalidDegreeError, OrbitOverflowError
from .picard import MAX_POINTS, DivisorClass, intersect

DEFAULT_ORBIT_CAP = 10**6


@dataclass(frozen=True)
class RootBasis:
    num_points: int
    roots: tuple[DivisorClass, ...]

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def simple_roots(num_points: int) -> RootBasis:
    """L-E1-E2-E3 (when p >= 3) followed by E_i - E_{i+1}."""
    p = num_points
    if not 1 <= p <= MAX_POINTS:
        raise InvalidDegreeError(f"num_points must lie in 1..{MAX_POINTS}, got {p}")
    roots = []
    if p >= 3:
        roots.append(DivisorClass(1, (1, 1, 1) + (0,) * (p - 3)))
    for i in range(p - 1):
        coeffs = [0] * p
        coeffs[i], coeffs[i + 1] = -1, 1
        roots.append(DivisorClass(0, tuple(coeffs)))
    return RootBasis(p, tuple(roots))


def reflect(x: DivisorClass, root: DivisorClass) -> DivisorClass:
    """s_root(x) = x + (x.root) root, valid for root^2 = -2."""
    if intersect(root, root) != -2:
        raise DomainError(f"{root} is not a root (square {intersect(root, root)})")
    k = intersect(x, root)
    return x + k * root if k else x


def weyl_orbit(x: DivisorClass, num_points: int, cap: int = DEFAULT_ORBIT_CAP) -> frozenset[DivisorClass]:
    """Breadth-first closure of {x} under the simple reflections."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if x.num_points != num_points:
        raise DomainError(f"class has {x.num_points} points, expected {num_points}")
    basis = simple_roots(num_points).roots if num_points >= 1 else ()
    seen = {x}
    queue = deque([x])
    while queue:
        cur = queue.popleft()
        for alpha in basis:
            y = reflect(cur, alpha)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise OrbitOverflowError(f"orbit of {x} exceeds cap {cap}")
                queue.append(y)
    return frozenset(seen)


def orbit_decomposition(classes: Iterable[DivisorClass], num_points: int) -> list[tuple[DivisorClass, int]]:
    """Split a finite set of classes into Weyl orbits.

    Returns ``(least member, orbit size)`` per orbit in canonical order.  Orbits
    are taken in the whole lattice, so an orbit may leave ``classes``.
    """
    remaining = set(classes)
    out = []
    for c in sorted(remaining):
        if c not in remaining:
            continue
        orb = weyl_orbit(c, num_points)
        remaining -= orb
        out.append((min(orb), len(orb)))
    return out


def is_closed(classes: Iterable[DivisorClass], num_points: int) -> bool:
    """Whether the set is stable under every simple reflection."""
    members = frozenset(classes)
    basis = simple_roots(num_points).roots
    return all(reflect(c, a) in members for c in members for a in basis)
