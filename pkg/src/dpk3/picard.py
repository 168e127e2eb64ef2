"""Divisor classes on the blow-up of P^2 in up to eight points.

A class is written ``ell*L - sum(a_i * E_i)``: the stored coefficients are the
multiplicities ``a_i``, so ``L - E_1`` is ``(1; 1, 0, ...)`` and the exceptional
curve ``E_1`` itself is ``(0; -1, 0, ...)``.  When reading formulas that write
``D = ell*L + b_1 E_1 + ...`` translate with ``a_i = -b_i``.

The intersection form is ``L^2 = 1``, ``E_i^2 = -1``, ``L.E_i = 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ClassParseError, DimensionError, InvalidDegreeError

MAX_POINTS = 8

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


def _checked(value: int) -> int:
    if not _INT64_MIN <= value <= _INT64_MAX:
        raise OverflowError(f"coefficient {value} leaves the signed 64-bit range")
    return value


@dataclass(frozen=True, order=True)
class DivisorClass:
    """Element of Pic(Z) = Z L + Z E_1 + ... + Z E_p.

    Ordering is lexicographic on ``(ell, coeffs)``; it is the canonical
    order used for every emitted list.
    """

    ell: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for v in (self.ell, *coeffs):
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"coefficients must be integers, got {v!r}")
            _checked(v)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_sequence(cls, ell: int, coeffs: Iterable[int]) -> "DivisorClass":
        return cls(int(ell), tuple(int(a) for a in coeffs))

    @classmethod
    def line(cls, num_points: int) -> "DivisorClass":
        return cls(1, (0,) * num_points)

    @classmethod
    def exceptional(cls, i: int, num_points: int) -> "DivisorClass":
        """The class E_i (1-based index)."""
        if not 1 <= i <= num_points:
            raise IndexError(f"E_{i} does not exist with {num_points} points")
        coeffs = [0] * num_points
        coeffs[i - 1] = -1
        return cls(0, tuple(coeffs))

    @property
    def num_points(self) -> int:
        return len(self.coeffs)

    @property
    def key(self) -> tuple[int, ...]:
        return (self.ell, *self.coeffs)

    def _same_rank(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.num_points != self.num_points:
            raise DimensionError(
                f"classes with {self.num_points} and {other.num_points} points cannot be combined"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_rank(other)
        return DivisorClass(
            _checked(self.ell + other.ell),
            tuple(_checked(a + b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_rank(other)
        return DivisorClass(
            _checked(self.ell - other.ell),
            tuple(_checked(a - b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.ell, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> "DivisorClass":
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return DivisorClass(_checked(k * self.ell), tuple(_checked(k * a) for a in self.coeffs))

    def __matmul__(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def padded(self, extra: int = 1) -> "DivisorClass":
        """Same class viewed on a surface with ``extra`` more blown-up points."""
        return DivisorClass(self.ell, self.coeffs + (0,) * extra)

    def sorted_form(self) -> "DivisorClass":
        """Coefficients sorted in descending order (orbit representative)."""
        return DivisorClass(self.ell, tuple(sorted(self.coeffs, reverse=True)))

    def __str__(self) -> str:
        return format_class(self)


def intersect(x: DivisorClass, y: DivisorClass) -> int:
    """Intersection number ``x . y``."""
    x._same_rank(y)
    return _checked(x.ell * y.ell - sum(a * b for a, b in zip(x.coeffs, y.coeffs)))


def self_intersection(x: DivisorClass) -> int:
    return intersect(x, x)


def canonical_class(num_points: int) -> DivisorClass:
    """K = -3L + E_1 + ... + E_p, i.e. ``(-3; -1, ..., -1)``."""
    if not 0 <= num_points <= MAX_POINTS:
        raise InvalidDegreeError(
            f"no del Pezzo surface is a blow-up of P^2 in {num_points} points"
        )
    return DivisorClass(-3, (-1,) * num_points)


def gram_matrix(num_points: int) -> list[list[int]]:
    """Gram matrix of the basis (L, E_1, ..., E_p)."""
    n = num_points + 1
    return [[(1 if i == 0 else -1) if i == j else 0 for j in range(n)] for i in range(n)]


def format_class(x: DivisorClass) -> str:
    """Compact form ``(ell;a1,...,ap)``."""
    return f"({x.ell};{','.join(str(a) for a in x.coeffs)})"


def format_symbolic(x: DivisorClass) -> str:
    """Human-readable form such as ``2L-E1-E2+E3``."""
    terms = []
    if x.ell:
        terms.append(("-" if x.ell < 0 else "+", abs(x.ell), "L"))
    for i, a in enumerate(x.coeffs, start=1):
        if a:
            # stored a_i enters the class with a minus sign
            terms.append(("+" if a < 0 else "-", abs(a), f"E{i}"))
    if not terms:
        return "0"
    out = []
    for k, (sign, mag, name) in enumerate(terms):
        coef = "" if mag == 1 else str(mag)
        if k == 0:
            out.append(("-" if sign == "-" else "") + coef + name)
        else:
            out.append(sign + coef + name)
    return "".join(out)


_INT_RE = re.compile(r"\s*([+-]?\d+)\s*")
_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*(L|E_?(\d+))\s*")


def parse_class(text: str, num_points: int) -> DivisorClass:
    """Parse the compact ``(ell; a1,...,ap)`` form or a symbolic ``2L-E1-E2`` form."""
    if not 0 <= num_points <= MAX_POINTS:
        raise InvalidDegreeError(f"num_points must lie in 0..{MAX_POINTS}, got {num_points}")
    norm = text.replace("−", "-")
    if norm.strip().startswith("("):
        return _parse_compact(norm, text, num_points)
    return _parse_symbolic(norm, text, num_points)


def _parse_compact(norm: str, text: str, num_points: int) -> DivisorClass:
    pos = norm.index("(") + 1
    m = _INT_RE.match(norm, pos)
    if not m:
        raise ClassParseError("expected integer coefficient of L", text, pos)
    ell = int(m.group(1))
    pos = m.end()
    if pos >= len(norm) or norm[pos] != ";":
        raise ClassParseError("expected ';'", text, pos)
    pos += 1
    coeffs: list[int] = []
    while True:
        close = re.compile(r"\s*\)").match(norm, pos)
        if close and not coeffs:
            pos = close.end()
            break
        m = _INT_RE.match(norm, pos)
        if not m:
            raise ClassParseError("expected integer multiplicity", text, pos)
        coeffs.append(int(m.group(1)))
        pos = m.end()
        if pos < len(norm) and norm[pos] == ",":
            pos += 1
            continue
        if pos < len(norm) and norm[pos] == ")":
            pos += 1
            break
        raise ClassParseError("expected ',' or ')'", text, pos)
    if norm[pos:].strip():
        raise ClassParseError("trailing characters", text, pos + (len(norm[pos:]) - len(norm[pos:].lstrip())))
    if len(coeffs) != num_points:
        raise ClassParseError(
            f"expected {num_points} multiplicities, got {len(coeffs)}", text, len(norm)
        )
    return DivisorClass(ell, tuple(coeffs))


def _parse_symbolic(norm: str, text: str, num_points: int) -> DivisorClass:
    ell = 0
    coeffs = [0] * num_points
    pos = 0
    first = True
    if not norm.strip():
        raise ClassParseError("empty class", text, 0)
    if norm.strip() == "0":
        return DivisorClass(0, (0,) * num_points)
    while pos < len(norm):
        m = _TERM_RE.match(norm, pos)
        if not m or (not first and m.group(1) is None):
            raise ClassParseError("expected a term like '2L' or '-E3'", text, pos)
        sign = -1 if m.group(1) == "-" else 1
        mag = int(m.group(2)) if m.group(2) else 1
        if m.group(3) == "L":
            ell += sign * mag
        else:
            idx = int(m.group(4))
            if not 1 <= idx <= num_points:
                raise ClassParseError(
                    f"index E{idx} outside 1..{num_points}", text, m.start(3)
                )
            coeffs[idx - 1] -= sign * mag
        pos = m.end()
        first = False
    return DivisorClass(ell, tuple(coeffs))


def classes_from_keys(keys: Sequence[Sequence[int]]) -> list[DivisorClass]:
    return [DivisorClass(int(k[0]), tuple(int(v) for v in k[1:])) for k in keys]
