"""Strictly elliptic K3 invariants and singular fibers of the induced fibrations.

A K3 surface X with a strictly elliptic involution is a double cover of a del
Pezzo surface Z of degree d branched along a smooth C in |-2K_Z|.  Each conic
bundle on Z pulls back to an elliptic fibration on X, and the Kodaira type of
a fiber is decided by how C meets the corresponding conic.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator

from .errors import InvalidDegreeError, InvariantError, NoEllipticFibrationError, PatternError

EULER_TOTAL = 24


@total_ordering
@dataclass(frozen=True)
class KodairaType:
    """Fiber type I_n (n >= 0), II, III or IV."""

    symbol: str
    n: int = 0

    def __post_init__(self):
        if self.symbol not in ("I", "II", "III", "IV"):
            raise ValueError(f"unknown Kodaira symbol {self.symbol!r}")
        if self.symbol == "I" and self.n < 0:
            raise ValueError("I_n needs n >= 0")
        if self.symbol != "I" and self.n != 0:
            raise ValueError(f"{self.symbol} takes no index")

    @property
    def _key(self) -> tuple[int, int]:
        return (0, self.n) if self.symbol == "I" else ({"II": 1, "III": 2, "IV": 3}[self.symbol], 0)

    def __lt__(self, other: "KodairaType") -> bool:
        return self._key < other._key

    def __str__(self) -> str:
        return f"I{self.n}" if self.symbol == "I" else self.symbol

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        t = text.strip().replace("_", "")
        if t in ("II", "III", "IV"):
            return cls(t)
        if t.startswith("I") and t[1:].isdigit():
            return cls("I", int(t[1:]))
        raise ValueError(f"not a Kodaira type: {text!r}")


def I(n: int) -> KodairaType:  # noqa: E743
    return KodairaType("I", n)


II = KodairaType("II")
III = KodairaType("III")
IV = KodairaType("IV")


def euler_number(t: KodairaType) -> int:
    if t.symbol == "I":
        return t.n
    return {"II": 2, "III": 3, "IV": 4}[t.symbol]


class ReducibleCase(str, enum.Enum):
    """How C meets a reducible conic F1 + F2 with node P."""

    TRANSVERSE = "transverse"  # [1,1],[1,1], P not on C
    ONE_TANGENT = "one_tangent"  # [2],[1,1], P not on C
    TWO_TANGENT = "two_tangent"  # [2],[2], P not on C
    NODE_ON_BRANCH_TRANSVERSE = "node_on_branch_transverse"  # P on C, simple on both components
    NODE_ON_BRANCH_TANGENT = "node_on_branch_tangent"  # F2 meets C at P with multiplicity 2


@dataclass(frozen=True)
class SmoothPattern:
    partition: tuple[int, ...]

    def to_json(self) -> dict:
        return {"smooth": list(self.partition)}


@dataclass(frozen=True)
class ReduciblePattern:
    case: ReducibleCase

    def to_json(self) -> dict:
        return {"reducible": self.case.value}


FiberPattern = SmoothPattern | ReduciblePattern

_SMOOTH_TYPES = {
    (1, 1, 1, 1): I(0),
    (2, 1, 1): I(1),
    (2, 2): I(2),
    (3, 1): II,
    (4,): III,
}

_REDUCIBLE_TYPES = {
    ReducibleCase.TRANSVERSE: I(2),
    ReducibleCase.ONE_TANGENT: I(3),
    ReducibleCase.TWO_TANGENT: I(4),
    ReducibleCase.NODE_ON_BRANCH_TRANSVERSE: III,
    ReducibleCase.NODE_ON_BRANCH_TANGENT: IV,
}


def classify_smooth_fiber(partition: Iterable[int]) -> KodairaType:
    """Fiber over a smooth conic meeting C with the given multiplicities."""
    parts = tuple(sorted((int(m) for m in partition), reverse=True))
    if any(m <= 0 for m in parts) or sum(parts) != 4:
        raise PatternError(
            f"a smooth conic meets C in 4 points counted with multiplicity; got {list(parts)}"
        )
    return _SMOOTH_TYPES[parts]


def classify_reducible_fiber(case: ReducibleCase | str) -> KodairaType:
    return _REDUCIBLE_TYPES[ReducibleCase(case)]


def classify(pattern: FiberPattern) -> KodairaType:
    if isinstance(pattern, SmoothPattern):
        return classify_smooth_fiber(pattern.partition)
    return classify_reducible_fiber(pattern.case)


@dataclass(frozen=True)
class Base:
    """Quotient surface: P2, P1xP1, or P2 blown up in ``num_points`` points."""

    kind: str
    num_points: int = 0

    def __str__(self) -> str:
        if self.kind == "blowup":
            return f"BlowUp(p={self.num_points})"
        return self.kind


@dataclass(frozen=True)
class InvariantRecord:
    degree: int
    delta: int
    ns_rank: int
    length: int
    genus: int
    rational_count: int
    base: Base

    @property
    def has_elliptic_fibrations(self) -> bool:
        return self.degree != 9

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "delta": self.delta,
            "ns_rank": self.ns_rank,
            "length": self.length,
            "genus": self.genus,
            "rational_count": self.rational_count,
            "base": str(self.base),
            "elliptic_fibrations": self.has_elliptic_fibrations,
        }
        if not self.has_elliptic_fibrations:
            out["note"] = "no elliptic fibrations"
        return out


def _check_pair(degree: int, delta: int, max_degree: int = 9) -> None:
    if isinstance(degree, bool) or not isinstance(degree, int) or not 1 <= degree <= max_degree:
        raise InvalidDegreeError(f"degree must be an integer in 1..{max_degree}, got {degree!r}")
    if delta not in (0, 1):
        raise InvariantError(f"delta must be 0 or 1, got {delta!r}")
    if delta == 0 and degree != 8:
        raise InvariantError("delta = 0 occurs only for degree 8 (double covers of P1xP1)")


def fixed_locus_from(ns_rank: int, length: int) -> tuple[int, int]:
    """(genus of the fixed curve, number of fixed rational curves) from (r, a)."""
    r, a = ns_rank, length
    if (r - a) % 2 or (22 - r - a) % 2 or 22 - r - a < 0 or r < a:
        raise InvariantError(f"(r, a) = ({r}, {a}) violates the parity/range constraints")
    return (22 - r - a) // 2, (r - a) // 2


def invariants_of(degree: int, delta: int) -> InvariantRecord:
    _check_pair(degree, delta)
    r = 10 - degree
    g, k = fixed_locus_from(r, r)
    if degree == 9:
        base = Base("P2")
    elif delta == 0:
        base = Base("P1xP1")
    else:
        base = Base("blowup", 9 - degree)
    return InvariantRecord(degree, delta, r, r, g, k, base)


def admissible_types(degree: int, delta: int) -> frozenset[KodairaType]:
    _check_pair(degree, delta)
    if degree == 9:
        raise NoEllipticFibrationError("the K3 double cover of P2 has no elliptic fibrations")
    types = {I(0), I(1), I(2), II, III}
    if degree <= 7:
        types.add(I(3))
    if degree <= 5:
        types |= {I(4), IV}
    return frozenset(types)


def is_admissible_pattern(pattern: FiberPattern, degree: int, delta: int) -> bool:
    """Whether the pattern's fiber type is admissible over Z_degree."""
    if isinstance(pattern, ReduciblePattern) and (degree == 8 or delta == 0):
        # conic bundles on these bases have no reducible fibers
        return False
    return classify(pattern) in admissible_types(degree, delta)


REDUCIBLE_LOCUS_TYPES = (I(2), I(3), I(4), III, IV)
SMOOTH_LOCUS_TYPES = (I(1), I(2), II, III)


def reducible_fiber_count(degree: int, delta: int) -> int:
    _check_pair(degree, delta)
    return 0 if delta == 0 or degree == 9 else 8 - degree


@dataclass(frozen=True)
class FiberConfiguration:
    """Candidate multiset of singular fibers (necessary numeric conditions only)."""

    degree: int
    delta: int
    reducible: tuple[tuple[KodairaType, int], ...]
    smooth: tuple[tuple[KodairaType, int], ...]

    STATUS = "candidate (necessary conditions)"

    @classmethod
    def build(cls, degree: int, delta: int, reducible: Iterable[KodairaType], smooth: Iterable[KodairaType]):
        return cls(degree, delta, _count_pairs(reducible), _count_pairs(smooth))

    def reducible_counter(self) -> Counter:
        return Counter(dict(self.reducible))

    def smooth_counter(self) -> Counter:
        return Counter(dict(self.smooth))

    @property
    def euler_total(self) -> int:
        return sum(euler_number(t) * c for t, c in (*self.reducible, *self.smooth))

    def count_vector(self) -> tuple[int, ...]:
        r, s = self.reducible_counter(), self.smooth_counter()
        return tuple(r[t] for t in REDUCIBLE_LOCUS_TYPES) + tuple(s[t] for t in SMOOTH_LOCUS_TYPES)

    def to_json(self) -> dict:
        return {
            "reducible": {str(t): c for t, c in self.reducible},
            "smooth": {str(t): c for t, c in self.smooth},
        }

    def __str__(self) -> str:
        def fmt(pairs):
            return " + ".join(f"{c}x{t}" for t, c in pairs) or "-"

        return f"reducible: {fmt(self.reducible)} | smooth: {fmt(self.smooth)}"


def _count_pairs(types: Iterable[KodairaType]) -> tuple[tuple[KodairaType, int], ...]:
    return tuple(sorted(Counter(types).items()))


def configuration_problems(cfg: FiberConfiguration) -> list[str]:
    """Reasons the configuration violates the numeric constraints (empty if valid)."""
    problems = []
    allowed = admissible_types(cfg.degree, cfg.delta)
    n_red = sum(c for _, c in cfg.reducible)
    expected = reducible_fiber_count(cfg.degree, cfg.delta)
    if n_red != expected:
        problems.append(f"{n_red} reducible-locus fibers, expected {expected}")
    for t, c in cfg.reducible:
        if c <= 0:
            problems.append(f"non-positive count for {t}")
        if t not in REDUCIBLE_LOCUS_TYPES or t not in allowed:
            problems.append(f"{t} cannot occur over a reducible conic on Z_{cfg.degree}")
    for t, c in cfg.smooth:
        if c <= 0:
            problems.append(f"non-positive count for {t}")
        if t not in SMOOTH_LOCUS_TYPES or t not in allowed:
            problems.append(f"{t} cannot occur over a smooth conic on Z_{cfg.degree}")
    if cfg.euler_total != EULER_TOTAL:
        problems.append(f"Euler numbers sum to {cfg.euler_total}, not {EULER_TOTAL}")
    return problems


def _smooth_completions(types: tuple[KodairaType, ...], budget: int) -> Iterator[tuple[int, ...]]:
    """Count vectors over ``types`` whose Euler numbers sum to ``budget``."""
    if not types:
        if budget == 0:
            yield ()
        return
    e = euler_number(types[0])
    for c in range(budget // e + 1):
        for rest in _smooth_completions(types[1:], budget - c * e):
            yield (c,) + rest


def enumerate_fiber_configurations(degree: int, delta: int) -> list[FiberConfiguration]:
    """All candidate configurations, ordered by their type-count vectors."""
    allowed = admissible_types(degree, delta)
    red_types = tuple(t for t in REDUCIBLE_LOCUS_TYPES if t in allowed)
    smooth_types = tuple(t for t in SMOOTH_LOCUS_TYPES if t in allowed)
    n_red = reducible_fiber_count(degree, delta)
    out = []
    for red in itertools.combinations_with_replacement(red_types, n_red):
        budget = EULER_TOTAL - sum(euler_number(t) for t in red)
        if budget < 0:
            continue
        for counts in _smooth_completions(smooth_types, budget):
            smooth = [t for t, c in zip(smooth_types, counts) for _ in range(c)]
            out.append(FiberConfiguration.build(degree, delta, red, smooth))
    out.sort(key=FiberConfiguration.count_vector)
    return out
