"""Certified dimensions from the rank of the fat-point interpolation matrix.

For a point of multiplicity ``mu`` a plane curve must have all partial
derivatives of order ``< mu`` vanishing there, which is ``mu(mu+1)/2``
linear conditions on the ``C(d+2, 2)`` coefficients.  Over GF(p) with
random points the rank can only drop (special points, finite
characteristic), so ``cols - 1 - rank`` is an upper bound for the dimension
at general complex points.  It becomes an exact value when it meets an
independent lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._modrank import MERSENNE_31, rank_mod_p
from .classify import conjectured_dim
from .core import DimensionResult, LinearSystem, Provenance, Source, expected_dim

CERTIFIED = "certified"
PROBABLE = "probable"


class OracleBudgetError(ValueError):
    """The interpolation matrix would exceed the configured size budget."""


@dataclass(frozen=True)
class OracleConfig:
    prime: int = MERSENNE_31
    trials: int = 3
    seed: int = 42
    max_size: int = 5000

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.prime != MERSENNE_31 and not _is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")


def _is_prime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class RankCertificate:
    system: LinearSystem
    rows: int
    cols: int
    best_rank: int
    prime: int
    seed: int
    trials: int
    lower_bound: int

    @property
    def implied_dim_upper_bound(self) -> int:
        return self.cols - 1 - self.best_rank

    @property
    def certified(self) -> bool:
        return self.implied_dim_upper_bound == self.lower_bound

    @property
    def status(self) -> str:
        return CERTIFIED if self.certified else PROBABLE

    def render(self) -> str:
        L = self.system
        return (
            f"ORACLE {L.d} {L.m0} {L.n} {L.m} {self.prime} {self.seed} {self.trials} "
            f"{self.rows} {self.cols} {self.best_rank} {self.implied_dim_upper_bound} {self.status}"
        )


def _tri(k: int) -> int:
    return k * (k + 1) // 2


def monomials(d: int, min_degree: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Exponents (i, j) of x^i y^j with min_degree <= i+j <= d, by degree."""
    xs, ys = [], []
    for t in range(max(min_degree, 0), d + 1):
        for i in range(t, -1, -1):
            xs.append(i)
            ys.append(t - i)
    return np.array(xs, dtype=np.int64), np.array(ys, dtype=np.int64)


@lru_cache(maxsize=64)
def _binomials(d: int, p: int) -> np.ndarray:
    B = np.zeros((d + 1, d + 1), dtype=np.int64)
    row = [1]
    for a in range(d + 1):
        for i, c in enumerate(row):
            B[i, a] = c % p
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return B


def _taylor_table(coord: int, order: int, d: int, p: int) -> np.ndarray:
    # T[k, a] = C(a, k) * coord^(a-k): the k-th Hasse derivative of t^a at coord.
    powers = np.ones(d + 1, dtype=np.int64)
    for a in range(1, d + 1):
        powers[a] = powers[a - 1] * coord % p
    B = _binomials(d, p)
    T = np.zeros((order, d + 1), dtype=np.int64)
    for k in range(min(order, d + 1)):
        T[k, k:] = B[k, k:] * powers[: d + 1 - k] % p
    return T


def _point_rows(point: tuple[int, int], mult: int, xs: np.ndarray, ys: np.ndarray, d: int, p: int) -> np.ndarray:
    if mult <= 0:
        return np.zeros((0, xs.size), dtype=np.int64)
    Tx = _taylor_table(point[0] % p, mult, d, p)
    Ty = _taylor_table(point[1] % p, mult, d, p)
    alphas = [al for t in range(mult) for al in range(t, -1, -1)]
    betas = [t - al for t in range(mult) for al in range(t, -1, -1)]
    return Tx[alphas][:, xs] * Ty[betas][:, ys] % p


def interpolation_matrix(L: LinearSystem, points, prime: int) -> np.ndarray:
    """Matrix of multiplicity conditions; ``points[0]`` carries m0, the rest carry m."""
    if len(points) != L.n + 1:
        raise ValueError(f"need {L.n + 1} points (p0 first), got {len(points)}")
    if prime <= max(L.d, 0):
        raise ValueError(f"prime {prime} must exceed the degree {L.d}")
    reduced = [(x % prime, y % prime) for x, y in points]
    if len(set(reduced)) != len(reduced):
        raise ValueError("points must be distinct")
    xs, ys = monomials(L.d)
    blocks = [_point_rows(reduced[0], L.m0, xs, ys, L.d, prime)]
    blocks += [_point_rows(pt, L.m, xs, ys, L.d, prime) for pt in reduced[1:]]
    return np.vstack(blocks) if blocks else np.zeros((0, xs.size), dtype=np.int64)


def standard_form(d: int, mults) -> tuple[int, list[int]] | None:
    """Apply quadratic Cremona transformations until d >= m1 + m2 + m3.

    The dimension is invariant, and negative multiplicities (fixed
    exceptional curves) are dropped.  Returns None if the system is empty.
    """
    ms = sorted((x for x in mults if x > 0), reverse=True)
    while True:
        if d < 0 or (ms and ms[0] > d):
            return None
        top = (ms + [0, 0, 0])[:3]
        k = d - sum(top)
        if k >= 0:
            return d, ms
        d += k
        ms = sorted((x for x in [t + k for t in top] + ms[3:] if x > 0), reverse=True)


def lower_bound(L: LinearSystem) -> int:
    """A proven lower bound for the dimension of L at general points."""
    L = L.normalized()
    best = expected_dim(L)
    if L.d < 0:
        return -1
    if L.m0 == 0:
        best = max(best, conjectured_dim(L.d, L.n, L.m))
    sf = standard_form(L.d, [L.m0] + [L.m] * L.n)
    if sf is not None:
        d, ms = sf
        best = max(best, d * (d + 3) // 2 - sum(_tri(x) for x in ms))
    return best


def _random_points(rng: np.random.Generator, count: int, p: int) -> list[tuple[int, int]]:
    seen = {(0, 0)}
    pts: list[tuple[int, int]] = []
    while len(pts) < count:
        x, y = (int(v) for v in rng.integers(0, p, size=2))
        if (x, y) not in seen:
            seen.add((x, y))
            pts.append((x, y))
    return pts


def _rank_with_origin(L: LinearSystem, rng: np.random.Generator, p: int) -> int:
    # The heaviest point sits at the origin, where its conditions just kill
    # the monomials of degree < mu; the rest is eliminated on what remains.
    d = L.d
    if L.m0 >= L.m or L.n == 0:
        mu, others = L.m0, [L.m] * L.n
    else:
        mu, others = L.m, [L.m0] + [L.m] * (L.n - 1)
    low = _tri(min(mu, d + 1))
    xs, ys = monomials(d, mu)
    if xs.size == 0:
        return low
    pts = _random_points(rng, len(others), p)
    blocks = [_point_rows(pt, mult, xs, ys, d, p) for pt, mult in zip(pts, others) if mult > 0]
    if not blocks:
        return low
    return low + rank_mod_p(np.vstack(blocks), p)


@lru_cache(maxsize=4096)
def _certificate(L: LinearSystem, cfg: OracleConfig) -> RankCertificate:
    L = L.normalized()
    rows = _tri(L.m0) + L.n * _tri(L.m)
    cols = _tri(L.d + 1) if L.d >= 0 else 0
    if rows > cfg.max_size or cols > cfg.max_size:
        raise OracleBudgetError(f"{L}: {rows}x{cols} exceeds budget {cfg.max_size}")
    if cfg.prime <= max(L.d, 0):
        raise ValueError(f"prime {cfg.prime} must exceed the degree {L.d}")
    lb = lower_bound(L)
    if cols == 0:
        return RankCertificate(L, rows, 0, 0, cfg.prime, cfg.seed, 0, lb)
    ceiling = min(rows, cols, cols - 1 - lb)
    best, used = -1, 0
    for t in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, t])
        best = max(best, _rank_with_origin(L, rng, cfg.prime))
        used = t + 1
        if best >= ceiling:
            break
    if best > ceiling:
        raise AssertionError(f"rank {best} of {L} contradicts lower bound {lb}")
    return RankCertificate(L, rows, cols, best, cfg.prime, cfg.seed, used, lb)


def generic_dim(L: LinearSystem, cfg: OracleConfig | None = None) -> DimensionResult:
    cert = _certificate(L.normalized(), cfg or OracleConfig())
    return DimensionResult(
        cert.system, cert.implied_dim_upper_bound, Provenance(Source.ORACLE, cert.status, cert)
    )


def certify_empty(L: LinearSystem, cfg: OracleConfig | None = None) -> tuple[bool, RankCertificate]:
    cert = _certificate(L.normalized(), cfg or OracleConfig())
    return cert.best_rank == cert.cols, cert


def certify_dim(L: LinearSystem, target: int, cfg: OracleConfig | None = None) -> RankCertificate | None:
    cert = _certificate(L.normalized(), cfg or OracleConfig())
    if cert.implied_dim_upper_bound == target == cert.lower_bound:
        return cert
    return None
