"""(a,b)-degenerations: the four restricted systems and the limit dimension.

Degenerating the plane to ``P u F`` (a plane glued to a Hirzebruch surface
along a line ``R``) and sending ``b`` of the ``n`` points to ``F`` turns
``L(d, m0; n, m)`` into four quasi-homogeneous systems.  The dimension
``l0`` of the limit system bounds the dimension of ``L`` from above, so a
pair ``(a, b)`` with ``l0 == e(L)`` proves ``L`` non-special.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction

from .core import DimensionResult, LinearSystem, expected_dim

DimensionProvider = Callable[[LinearSystem], DimensionResult]


class ProviderUnavailable(Exception):
    """A provider could not produce a usable dimension for a subsystem."""


@dataclass(frozen=True)
class DegenerationWitness:
    system: LinearSystem
    a: int
    b: int
    P: DimensionResult
    P_hat: DimensionResult
    F: DimensionResult
    F_hat: DimensionResult
    l0: int
    rule: str

    @property
    def lP(self) -> int:
        return self.P.value

    @property
    def lPhat(self) -> int:
        return self.P_hat.value

    @property
    def lF(self) -> int:
        return self.F.value

    @property
    def lFhat(self) -> int:
        return self.F_hat.value

    @property
    def succeeds(self) -> bool:
        return self.l0 == expected_dim(self.system)

    @property
    def pair(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class IntervalParams:
    gamma: int
    h: int

    def pair(self, d: int, m: int) -> tuple[int, int]:
        """The degeneration (a, b) = (d - m + gamma, 2h + 1)."""
        return d - m + self.gamma, 2 * self.h + 1


def subsystems(
    L: LinearSystem, a: int, b: int
) -> tuple[LinearSystem, LinearSystem, LinearSystem, LinearSystem]:
    """Return (L_P, L_P_hat, L_F, L_F_hat) for an (a, b)-degeneration of L."""
    if b > L.n or b < 0:
        raise ValueError(f"b={b} must lie in [0, n={L.n}]")
    if a < 0:
        raise ValueError(f"a={a} must be non-negative")
    rest = L.n - b
    return (
        LinearSystem(a, L.m0, rest, L.m),
        LinearSystem(a - 1, L.m0, rest, L.m),
        LinearSystem(L.d, a, b, L.m),
        LinearSystem(L.d, a + 1, b, L.m),
    )


def limit_rule(lP: int, lPhat: int, lF: int, lFhat: int, a: int) -> str:
    rP = lP - lPhat - 1
    rF = lF - lFhat - 1
    if rP > a or rF > a:
        raise ValueError(f"restricted dimensions rP={rP}, rF={rF} exceed a={a}")
    return "a" if rP + rF <= a - 1 else "b"


def limit_dim(lP: int, lPhat: int, lF: int, lFhat: int, a: int) -> int:
    if limit_rule(lP, lPhat, lF, lFhat, a) == "a":
        return lPhat + lFhat + 1
    return lP + lF - a


def dlow(gamma: int, h: int, m: int) -> Fraction:
    num = m * (m - 1) // 2 + gamma * (gamma + 1) // 2 + (2 * h + 1) * m * (m + 1) // 2 - m * gamma - 1
    return Fraction(num, m + 1 - gamma)


def dhigh(gamma: int, h: int, m: int) -> int:
    return m + h * m - 1 + h + h * gamma


def min_h(m: int) -> int:
    """Smallest h with h >= (m^2 - 1)/(3m + 4)."""
    return -((1 - m * m) // (3 * m + 4))


def capital_D(m: int) -> int:
    if m < 2:
        raise ValueError("capital_D needs m >= 2")
    return max((23 * m + 16) // 6, math.ceil(dlow(-1, min_h(m), m)))


def interval_witness(d: int, m: int) -> IntervalParams | None:
    h = min_h(m)
    while dlow(-1, h, m) <= d:
        for gamma in (-1, 0, 1):
            if dlow(gamma, h, m) <= d <= dhigh(gamma, h, m):
                return IntervalParams(gamma, h)
        h += 1
    return None


DEFAULT_OFFSETS = (-2, -1, 0, 1)


def candidate_pairs(
    d: int, n: int, m: int, offsets: tuple[int, ...] = DEFAULT_OFFSETS
) -> Iterator[tuple[int, int]]:
    """Candidate (a, b) ordered by |a - (d-m)|, then b descending, then a ascending."""
    pairs = [
        (d - m + g, b)
        for g in offsets
        if 1 <= d - m + g <= d
        for b in range(1, min(n, d) + 1)
    ]
    pairs.sort(key=lambda ab: (abs(ab[0] - (d - m)), -ab[1], ab[0]))
    yield from pairs


def evaluate_pair(L: LinearSystem, a: int, b: int, provider: DimensionProvider) -> DegenerationWitness:
    """Compute all four dimensions and the limit dimension for one pair.

    Dimensions from ``provider`` may be upper bounds rather than exact
    values: the limit dimension is monotone in all four inputs, so a bound
    that yields ``l0 == e`` still proves non-speciality.
    """
    P, P_hat, F, F_hat = (provider(S) for S in subsystems(L, a, b))
    rule = limit_rule(P.value, P_hat.value, F.value, F_hat.value, a)
    l0 = limit_dim(P.value, P_hat.value, F.value, F_hat.value, a)
    return DegenerationWitness(L, a, b, P, P_hat, F, F_hat, l0, rule)


def _try_pair(L: LinearSystem, a: int, b: int, provider: DimensionProvider) -> DegenerationWitness | None:
    # l0 = max(lPhat + lFhat + 1, lP + lF - a), so the hatted systems can
    # rule a pair out before the (possibly expensive) unhatted ones.
    e = expected_dim(L)
    SP, SP_hat, SF, SF_hat = subsystems(L, a, b)
    F_hat = provider(SF_hat)
    P_hat = provider(SP_hat)
    if P_hat.value + F_hat.value + 1 > e:
        return None
    P = provider(SP)
    if P.value + expected_dim(SF) - a > e:
        return None
    F = provider(SF)
    try:
        rule = limit_rule(P.value, P_hat.value, F.value, F_hat.value, a)
    except ValueError:
        return None
    l0 = limit_dim(P.value, P_hat.value, F.value, F_hat.value, a)
    if l0 != e:
        return None
    return DegenerationWitness(L, a, b, P, P_hat, F, F_hat, l0, rule)


def search_witness(
    d: int,
    n: int,
    m: int,
    provider: DimensionProvider,
    offsets: tuple[int, ...] = DEFAULT_OFFSETS,
) -> DegenerationWitness | None:
    """First pair (a, b) in candidate order whose limit dimension equals e."""
    L = LinearSystem.homogeneous(d, n, m)
    for a, b in candidate_pairs(d, n, m, offsets):
        try:
            found = _try_pair(L, a, b, provider)
        except ProviderUnavailable:
            continue
        if found is not None:
            return found
    return None
