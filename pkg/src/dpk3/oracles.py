"""Unpruned reference enumeration used to cross-check the pruned search.

Scans every ``ell`` in ``[-window, window]`` and every multiplicity vector in
the box ``|a_i| <= |ell| + 1`` (any solution has ``sum(a^2) <= ell^2 + 2``),
evaluating the intersection numbers directly.  Nefness of conic candidates is
tested against the (-1)-classes found by the same scan.  Practical for up to
four blown-up points.
"""

from __future__ import annotations

import numpy as np

from .picard import DivisorClass

# (D^2, D.K) per kind
_TARGETS = {"minus_one": (-1, -1), "conic": (0, -2), "root": (-2, 0)}


def box_scan(kind: str, num_points: int, window: int = 12) -> list[DivisorClass]:
    square, k_degree = _TARGETS[kind]
    p = num_points
    found: list[DivisorClass] = []
    for ell in range(-window, window + 1):
        side = np.arange(-(abs(ell) + 1), abs(ell) + 2, dtype=np.int64)
        if p:
            grid = np.stack(np.meshgrid(*([side] * p), indexing="ij"), axis=-1).reshape(-1, p)
        else:
            grid = np.zeros((1, 0), dtype=np.int64)
        d_sq = ell * ell - (grid * grid).sum(axis=1)
        # K = -3L + sum E_i, i.e. stored multiplicities all -1
        d_k = -3 * ell + grid.sum(axis=1)
        hits = grid[(d_sq == square) & (d_k == k_degree)]
        found.extend(DivisorClass(ell, tuple(int(v) for v in row)) for row in hits)
    if kind == "conic":
        gens = _effective_generators(num_points, window)
        found = [c for c in found if all(_dot(c, g) >= 0 for g in gens)]
    return sorted(found)


def _dot(x: DivisorClass, y: DivisorClass) -> int:
    return x.ell * y.ell - sum(a * b for a, b in zip(x.coeffs, y.coeffs))


def _effective_generators(num_points: int, window: int) -> list[DivisorClass]:
    if num_points == 0:
        return [DivisorClass(1, ())]
    if num_points == 1:
        return [DivisorClass(0, (-1,)), DivisorClass(1, (1,))]
    return box_scan("minus_one", num_points, window)
