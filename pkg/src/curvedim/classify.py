"""Homogeneous (-1)-configurations and the conjectured dimension of L(d; n, m).

The only homogeneous systems expected to be special are those containing a
multiple of one of six (-1)-configurations in their base locus.  For each
configuration ``A`` the special systems are exactly ``L = M + N*A`` with
``N >= 2``, ``M . A = 0`` and ``v(M) >= 0``; both the defining ranges and the
inverted parametrization are implemented, so one can be checked against the
other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DimensionResult,
    LinearSystem,
    Provenance,
    Source,
    elementary_dim,
    expected_dim,
    virtual_dim,
)


@dataclass(frozen=True)
class MinusOneConfiguration:
    system: LinearSystem
    component: LinearSystem
    count: int


@dataclass(frozen=True)
class MinusOneDecomposition:
    """``L = residual + multiple * configuration``; ``family_param`` is mu or k."""

    system: LinearSystem
    configuration: MinusOneConfiguration
    multiple: int
    residual: LinearSystem
    predicted_dim: int
    family_param: int


_H = LinearSystem.homogeneous

_CONFIGURATIONS = (
    MinusOneConfiguration(_H(1, 2, 1), LinearSystem(1, 0, 2, 1), 1),
    MinusOneConfiguration(_H(2, 5, 1), LinearSystem(2, 0, 5, 1), 1),
    MinusOneConfiguration(_H(3, 3, 2), LinearSystem(1, 0, 2, 1), 3),
    MinusOneConfiguration(_H(12, 6, 5), LinearSystem(2, 0, 5, 1), 6),
    MinusOneConfiguration(_H(21, 7, 8), LinearSystem(3, 2, 6, 1), 7),
    MinusOneConfiguration(_H(48, 8, 17), LinearSystem(6, 3, 7, 2), 8),
)

_BY_N = {c.system.n: c for c in _CONFIGURATIONS}

# n -> ((lo_num, lo_den), (hi_num, hi_off, hi_den)) meaning
# lo_num*m/lo_den <= d <= (hi_num*m - hi_off)/hi_den.
_RANGES = {
    2: ((1, 1), (2, 2, 1)),
    3: ((3, 2), (2, 2, 1)),
    5: ((2, 1), (5, 2, 2)),
    6: ((12, 5), (5, 2, 2)),
    7: ((21, 8), (8, 2, 3)),
    8: ((48, 17), (17, 2, 6)),
}


def homogeneous_configurations() -> list[MinusOneConfiguration]:
    return list(_CONFIGURATIONS)


def in_special_range(d: int, n: int, m: int) -> bool:
    """Range test by integer cross-multiplication."""
    if n not in _RANGES:
        return False
    (lo_num, lo_den), (hi_num, hi_off, hi_den) = _RANGES[n]
    return lo_den * d >= lo_num * m and hi_den * d <= hi_num * m - hi_off


def special_range(n: int, m: int) -> tuple[Fraction, Fraction] | None:
    """The closed interval of degrees d making L(d; n, m) (-1)-special."""
    if n not in _RANGES:
        return None
    (lo_num, lo_den), (hi_num, hi_off, hi_den) = _RANGES[n]
    return Fraction(lo_num * m, lo_den), Fraction(hi_num * m - hi_off, hi_den)


def _solve(d: int, n: int, m: int) -> tuple[int, int] | None:
    """Return (N, family parameter) solving L(d; n, m) = M + N*A, or None."""
    if n == 2:
        N, p = 2 * m - d, d - m
    elif n == 3:
        N, p = 2 * m - d, 2 * d - 3 * m
    elif n == 5:
        N, p = 5 * m - 2 * d, d - 2 * m
    elif n == 6:
        N, p = 5 * m - 2 * d, 5 * d - 12 * m
    elif n == 7:
        N, p = 8 * m - 3 * d, 8 * d - 21 * m
    elif n == 8:
        N, p = 17 * m - 6 * d, 17 * d - 48 * m
    else:
        return None
    if N < 2 or p < 0:
        return None
    return N, p


def _residual(n: int, p: int) -> LinearSystem:
    if n in (2, 3):
        return _H(2 * p, n, p)
    if n in (5, 6):
        return _H(5 * p, n, 2 * p)
    if n == 7:
        return _H(8 * p, n, 3 * p)
    return _H(17 * p, n, 6 * p)


def minus_one_special(d: int, n: int, m: int) -> MinusOneDecomposition | None:
    solved = _solve(d, n, m)
    if solved is None:
        return None
    N, p = solved
    config = _BY_N[n]
    residual = _residual(n, p)
    A = config.system
    if (residual.d + N * A.d, residual.m + N * A.m) != (d, m):
        raise AssertionError(f"decomposition bookkeeping failed for L({d};{n},{m})")
    return MinusOneDecomposition(
        system=_H(d, n, m),
        configuration=config,
        multiple=N,
        residual=residual,
        predicted_dim=virtual_dim(residual),
        family_param=p,
    )


def conjectured_dim(d: int, n: int, m: int) -> int:
    e = expected_dim(_H(d, n, m))
    dec = minus_one_special(d, n, m)
    return e if dec is None else max(e, dec.predicted_dim)


def dim_small_n(d: int, n: int, m: int) -> DimensionResult:
    """Dimension of L(d; n, m) for n <= 9, where the conjecture is a theorem."""
    if n > 9:
        raise ValueError(f"dim_small_n needs n <= 9, got n={n}")
    L = _H(d, n, m)
    if d < 0:
        elem = elementary_dim(L)
        assert elem is not None
        return elem
    return DimensionResult(L, conjectured_dim(d, n, m), Provenance(Source.SMALL_N, "n<=9"))
