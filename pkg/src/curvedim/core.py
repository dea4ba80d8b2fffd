"""Numerical invariants of quasi-homogeneous plane linear systems.

A system ``L(d, m0; n, m)`` is the linear system of plane curves of degree
``d`` with one assigned point of multiplicity ``m0`` and ``n`` general points
of multiplicity ``m``.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


def _tri(k: int) -> int:
    """k(k+1)/2, the number of conditions imposed by a point of multiplicity k."""
    return k * (k + 1) // 2


@dataclass(frozen=True, order=True)
class LinearSystem:
    d: int
    m0: int = 0
    n: int = 0
    m: int = 0

    @classmethod
    def homogeneous(cls, d: int, n: int, m: int) -> "LinearSystem":
        return cls(d, 0, n, m)

    @property
    def is_homogeneous(self) -> bool:
        return self.m0 == 0

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.d, self.m0, self.n, self.m)

    def normalized(self) -> "LinearSystem":
        """Clamp negative multiplicities to 0; a point with m <= 0 imposes nothing."""
        m0, m = max(self.m0, 0), max(self.m, 0)
        n = self.n if m > 0 else 0
        return LinearSystem(self.d, m0, n, m)

    def __str__(self) -> str:
        if self.m0 == 0:
            return f"L({self.d};{self.n},{self.m})"
        return f"L({self.d},{self.m0};{self.n},{self.m})"


def virtual_dim(L: LinearSystem) -> int:
    return _tri(L.d + 1) - 1 - _tri(L.m0) - L.n * _tri(L.m)


def expected_dim(L: LinearSystem) -> int:
    return max(-1, virtual_dim(L))


def self_intersection(L: LinearSystem) -> int:
    return L.d * L.d - L.m0 * L.m0 - L.n * L.m * L.m


def genus(L: LinearSystem) -> int:
    two_g_minus_2 = L.d * (L.d - 3) - L.m0 * (L.m0 - 1) - L.n * L.m * (L.m - 1)
    return two_g_minus_2 // 2 + 1


def intersect(L: LinearSystem, other: LinearSystem) -> int:
    """Intersection number ``L . other``; ``other`` must not have more points than ``L``."""
    if other.n > L.n:
        raise ValueError(f"intersect needs n' <= n, got {other} against {L}")
    return L.d * other.d - L.m0 * other.m0 - other.n * L.m * other.m


def riemann_roch_identity(L: LinearSystem) -> bool:
    return virtual_dim(L) == self_intersection(L) - genus(L) + 1


class Source(str, Enum):
    SMALL_N = "small_n"
    CREMONA_ANCHOR = "cremona_anchor"
    CREMONA_ABOVE = "cremona_above"
    CREMONA_BELOW = "cremona_below"
    NONSPECIAL_WINDOW = "nonspecial_window"
    DEGENERATION = "degeneration"
    ORACLE = "oracle"
    AXIOM = "axiom"
    MONOTONE = "monotone"
    EMPTY_BY_CONVENTION = "empty_by_convention"


@dataclass(frozen=True)
class Provenance:
    """Which rule produced a dimension.

    ``detail`` is a short token without spaces (anchor case letter, witness
    pair, citation key, ...).  ``payload`` carries the structured evidence
    (a degeneration witness or a rank certificate) when one exists.
    """

    source: Source
    detail: str = ""
    payload: Any = field(default=None, compare=False, repr=False)

    @property
    def tag(self) -> str:
        return f"{self.source.value}:{self.detail}" if self.detail else self.source.value

    @classmethod
    def from_tag(cls, tag: str) -> "Provenance":
        kind, _, detail = tag.partition(":")
        return cls(Source(kind), detail)

    @property
    def certified(self) -> bool:
        if self.source is Source.ORACLE and self.payload is not None:
            return self.payload.certified
        if self.source is Source.ORACLE:
            return self.detail != "probable"
        return True


@dataclass(frozen=True)
class DimensionResult:
    """A dimension ``value`` of a system together with how it was obtained."""

    system: LinearSystem
    value: int
    provenance: Provenance
    virtual: int = field(init=False)
    expected: int = field(init=False)

    def __post_init__(self) -> None:
        v = virtual_dim(self.system)
        object.__setattr__(self, "virtual", v)
        object.__setattr__(self, "expected", max(-1, v))
        if self.value < self.expected:
            raise ValueError(
                f"dimension {self.value} of {self.system} is below the expected {self.expected}"
            )

    @property
    def special(self) -> bool:
        return self.value > self.expected

    @property
    def empty(self) -> bool:
        return self.value == -1

    @property
    def certified(self) -> bool:
        return self.provenance.certified


def empty_by_convention(L: LinearSystem) -> DimensionResult:
    return DimensionResult(L, -1, Provenance(Source.EMPTY_BY_CONVENTION))


def elementary_dim(L: LinearSystem) -> DimensionResult | None:
    """Dimensions that need no theory beyond linear algebra.

    Covers negative degree, a multiplicity exceeding the degree, a single
    assigned point, and simple general points (which always impose
    independent conditions).  Returns None otherwise.
    """
    L = L.normalized()
    if L.d < 0:
        return empty_by_convention(L)
    if L.m0 > L.d or (L.n > 0 and L.m > L.d):
        return DimensionResult(L, -1, Provenance(Source.AXIOM, "mult_exceeds_degree"))
    if L.n == 0:
        return DimensionResult(L, expected_dim(L), Provenance(Source.AXIOM, "single_point"))
    if L.m == 1:
        base = expected_dim(LinearSystem(L.d, L.m0))
        value = max(-1, base - L.n)
        return DimensionResult(L, value, Provenance(Source.AXIOM, "simple_points"))
    return None
