"""Closed-form dimensions of L(d, m0; b, m) when m0 is within one of d - m.

With ``k = m0 - (d - m)`` the three regimes are ``k = 0`` (anchor),
``k >= 1`` (the ``b`` lines through the central point split off ``k``
times, reducing to an anchor system) and ``k = -1`` (below).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .classify import dim_small_n
from .core import (
    DimensionResult,
    LinearSystem,
    Provenance,
    Source,
    elementary_dim,
    empty_by_convention,
    expected_dim,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnchorCaseParams:
    q: int
    mu: int
    h: int
    eps: int


def _result(L: LinearSystem, value: int, source: Source, case: str) -> DimensionResult:
    if value < -1:
        log.warning("closed form gave %d for %s (case %s); clamped to -1", value, L, case)
        value = -1
    return DimensionResult(L, value, Provenance(source, case))


def anchor_params(d: int, b: int, m: int) -> AnchorCaseParams:
    return AnchorCaseParams(d // m, d % m, b // 2, b % 2)


def below_params(d: int, b: int, m: int) -> AnchorCaseParams:
    return AnchorCaseParams(d // (m - 1), d % (m - 1), b // 2, b % 2)


def dim_anchor(d: int, b: int, m: int) -> DimensionResult:
    """Dimension of L(d, d-m; b, m) for 2 <= m <= d."""
    if not 2 <= m <= d or b < 0:
        raise ValueError(f"dim_anchor needs 2 <= m <= d and b >= 0, got d={d} b={b} m={m}")
    L = LinearSystem(d, d - m, b, m)
    p = anchor_params(d, b, m)
    if p.q >= p.h + 1:
        value = d * (m + 1) - m * (m - 1) // 2 - b * m * (m + 1) // 2
        return _result(L, value, Source.CREMONA_ANCHOR, "a")
    if p.q <= p.h - 1:
        return _result(L, -1, Source.CREMONA_ANCHOR, "e")
    if p.eps == 1:
        return _result(L, -1, Source.CREMONA_ANCHOR, "b")
    if p.mu == m - 1:
        return _result(L, (m - 1) * (m + 2) // 2, Source.CREMONA_ANCHOR, "c")
    return _result(L, p.mu * (p.mu + 3) // 2, Source.CREMONA_ANCHOR, "d")


def reduce_above(d: int, k: int, b: int, m: int) -> LinearSystem:
    """The system L' = L(d-kb, d-kb-m+k; b, m-k) that L(d, d-m+k; b, m) reduces to."""
    d2 = d - k * b
    return LinearSystem(d2, d2 - m + k, b, m - k)


def dim_above(d: int, k: int, b: int, m: int) -> DimensionResult:
    """Dimension of L(d, d-m+k; b, m) with k >= 1."""
    if k < 1:
        raise ValueError(f"dim_above needs k >= 1, got k={k}")
    L = LinearSystem(d, d - m + k, b, m)
    reduced = reduce_above(d, k, b, m)
    if reduced.d < 0:
        return DimensionResult(L, -1, Provenance(Source.EMPTY_BY_CONVENTION, "reduced_degree"))
    inner = _dim_reduced(reduced)
    detail = f"{inner.provenance.source.value}.{inner.provenance.detail}".rstrip(".")
    return DimensionResult(L, inner.value, Provenance(Source.CREMONA_ABOVE, detail))


def _dim_reduced(L: LinearSystem) -> DimensionResult:
    # After the splitting, m' = m-k may leave the anchor hypotheses.
    elem = elementary_dim(L)
    if elem is not None:
        return elem
    return dim_anchor(L.d, L.n, L.m)


def above_is_special(d: int, k: int, b: int, m: int) -> bool:
    """Speciality predicted by the reduction rule (independent of the value check)."""
    reduced = reduce_above(d, k, b, m)
    if reduced.d < 0:
        return False
    inner = _dim_reduced(reduced)
    return (k >= 2 and not inner.empty and not inner.special) or inner.special


def dim_below(d: int, b: int, m: int) -> DimensionResult:
    """Dimension of L(d, d-m-1; b, m) for 2 <= m <= d-1."""
    if not 2 <= m <= d - 1 or b < 0:
        raise ValueError(f"dim_below needs 2 <= m <= d-1 and b >= 0, got d={d} b={b} m={m}")
    L = LinearSystem(d, d - m - 1, b, m)
    p = below_params(d, b, m)
    if p.q == p.h + 1 and p.mu == 0 and p.eps == 0 and (m - 1) * (m + 2) >= 4 * p.h:
        return _result(L, (m - 1) * (m + 2) // 2 - 2 * p.h, Source.CREMONA_BELOW, "a")
    if p.q == p.h and p.eps == 0 and 4 * p.q <= p.mu * (p.mu + 3):
        return _result(L, p.mu * (p.mu + 3) // 2 - 2 * p.q, Source.CREMONA_BELOW, "b")
    value = max(-1, d * (m + 2) - (b + 1) * m * (m + 1) // 2)
    return _result(L, value, Source.CREMONA_BELOW, "nonspecial")


def in_nonspecial_window(d: int, m0: int, b: int, m: int) -> bool:
    return 2 <= m <= d and b % 2 == 1 and -1 <= m0 - (d - m) <= 1


def dim_quasi(L: LinearSystem) -> DimensionResult | None:
    """Dimension of L from closed forms, or None when none applies."""
    elem = elementary_dim(L)
    if elem is not None:
        return elem
    L = L.normalized()
    d, m0, b, m = L.key
    if in_nonspecial_window(d, m0, b, m):
        return DimensionResult(L, expected_dim(L), Provenance(Source.NONSPECIAL_WINDOW))
    k = m0 - (d - m)
    if k >= 1:
        return dim_above(d, k, b, m)
    if k == 0:
        return dim_anchor(d, b, m)
    if k == -1:
        return dim_below(d, b, m)
    if m0 == 0 and b <= 9:
        return dim_small_n(d, b, m)
    return None


__all__ = [
    "AnchorCaseParams",
    "above_is_special",
    "anchor_params",
    "below_params",
    "dim_above",
    "dim_anchor",
    "dim_below",
    "dim_quasi",
    "empty_by_convention",
    "in_nonspecial_window",
    "reduce_above",
]
