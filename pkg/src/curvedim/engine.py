"""Memoized dimension computation for homogeneous systems L(d; n, m).

For fixed ``(d, m)`` everything is decided by at most two critical systems:
the largest ``n`` with ``v >= -1`` (non-special here means independent
conditions, hence for all fewer points) and the next one (empty there means
empty for all more points).  Critical systems are settled by an
(a,b)-degeneration whose plane side recurses on lower degree, and failing
that by an oracle certificate.
"""

from __future__ import annotations

import logging
import os
import tempfile
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import reference_tables
from .classify import conjectured_dim, dim_small_n
from .core import (
    DimensionResult,
    LinearSystem,
    Provenance,
    Source,
    elementary_dim,
    expected_dim,
    virtual_dim,
)
from .cremona import dim_quasi
from .degen import (
    DEFAULT_OFFSETS,
    DegenerationWitness,
    IntervalParams,
    ProviderUnavailable,
    capital_D,
    evaluate_pair,
    interval_witness,
    search_witness,
)
from .oracle import (
    OracleBudgetError,
    OracleConfig,
    RankCertificate,
    certify_dim,
    certify_empty,
    generic_dim,
)

log = logging.getLogger(__name__)


class Undecided(RuntimeError):
    def __init__(self, system: LinearSystem, reason: str = ""):
        super().__init__(f"{system} undecided{': ' + reason if reason else ''}")
        self.system = system


def _v(d: int, n: int, m: int) -> int:
    return virtual_dim(LinearSystem.homogeneous(d, n, m))


def critical_n(d: int, m: int) -> int:
    """Largest n with v(L(d; n, m)) >= 0."""
    return d * (d + 3) // (m * (m + 1))


def default_cache_path() -> Path:
    env = os.environ.get("CURVEDIM_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_DATA_HOME") or os.path.join(os.path.expanduser("~"), ".local", "share")
    return Path(base) / "curvedim" / "memo.txt"


class MemoStore:
    """Certified results keyed by (d, m0, n, m), optionally persisted as text.

    One record per line: ``d m0 n m dim provenance-tag``.
    """

    HEADER = "# curvedim memo: d m0 n m dim provenance"

    def __init__(self, path: Path | str | None = None, load: bool = True):
        self.path = Path(path) if path is not None else None
        self._data: dict[tuple[int, int, int, int], DimensionResult] = {}
        self._lock = threading.Lock()
        if load and self.path is not None and self.path.exists():
            self.load()

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key) -> bool:
        return key in self._data

    def get(self, key: tuple[int, int, int, int]) -> DimensionResult | None:
        return self._data.get(key)

    def put(self, result: DimensionResult) -> None:
        if not result.certified:
            raise ValueError(f"refusing to store uncertified result for {result.system}")
        key = result.system.key
        with self._lock:
            old = self._data.get(key)
            if old is not None and old.value != result.value:
                raise ValueError(f"conflicting values {old.value} and {result.value} for {result.system}")
            if old is None:
                self._data[key] = result

    def items(self):
        return sorted(self._data.items())

    def load(self) -> int:
        assert self.path is not None
        count = 0
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split()
            try:
                d, m0, n, m, dim = (int(x) for x in parts[:5])
                if len(parts) != 6:
                    raise ValueError("wrong field count")
                result = DimensionResult(LinearSystem(d, m0, n, m), dim, Provenance.from_tag(parts[5]))
            except ValueError as exc:
                log.warning("%s:%d: ignoring line %r (%s)", self.path, lineno, line, exc)
                continue
            self._data[result.system.key] = result
            count += 1
        return count

    def save(self) -> None:
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        lines = [self.HEADER]
        for key, res in self.items():
            lines.append(" ".join(str(x) for x in (*key, res.value, res.provenance.tag)))
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".memo-", suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, self.path)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
        if self.path is not None and self.path.exists():
            self.path.unlink()


@dataclass
class CriticalCheck:
    n: int
    virtual: int
    result: DimensionResult | None
    witness: DegenerationWitness | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        if self.witness is not None:
            return self.witness.succeeds
        return self.result is not None and self.result.certified and not self.result.special

    @property
    def method(self) -> str:
        if self.witness is not None:
            return f"interval{self.witness.pair}"
        if self.result is None:
            return "undecided"
        prov = self.result.provenance
        if prov.source is Source.DEGENERATION:
            return prov.payload.pair if prov.payload is not None else f"({prov.detail})"
        return prov.source.value


@dataclass
class DegreeReport:
    d: int
    m: int
    rule: str
    n0: int
    checks: list[CriticalCheck] = field(default_factory=list)
    interval: IntervalParams | None = None
    note: str = ""

    @property
    def resolved(self) -> bool:
        if self.rule == "high" and self.interval is None:
            return False
        return all(c.ok for c in self.checks)

    @property
    def refuted(self) -> bool:
        return any(
            c.result is not None and c.result.certified and c.result.special for c in self.checks
        )


@dataclass
class ConjectureCertificate:
    m: int
    d_max: int
    middle_range: tuple[int, int]
    degree_reports: list[DegreeReport]
    fail_cases: list[LinearSystem]

    @property
    def unresolved(self) -> list[int]:
        """Degrees whose critical systems were not all settled."""
        return [r.d for r in self.degree_reports if not r.resolved]

    @property
    def status(self) -> str:
        if any(r.refuted for r in self.degree_reports):
            return "refuted"
        return "verified" if not self.unresolved else "incomplete"

    def summary(self) -> str:
        lo, hi = self.middle_range
        fails = ", ".join(str(L) for L in self.fail_cases) or "none"
        return (
            f"m={self.m} status={self.status} degrees=1..{self.d_max} middle={lo}..{hi} "
            f"oracle_fallbacks={len(self.fail_cases)} [{fails}]"
        )


@dataclass
class RowCheck:
    row: tuple
    virtual_ok: bool
    passed: bool
    detail: str
    evidence: DegenerationWitness | RankCertificate | None = None


class Engine:
    """Dimension computer for homogeneous systems with a shared memo store."""

    def __init__(
        self,
        oracle: OracleConfig | None = None,
        memo: MemoStore | None = None,
        offsets: tuple[int, ...] = DEFAULT_OFFSETS,
        use_degeneration: bool = True,
    ):
        self.oracle = oracle or OracleConfig()
        self.memo = memo if memo is not None else MemoStore()
        self.offsets = offsets
        self.use_degeneration = use_degeneration
        self.oracle_fallbacks: list[LinearSystem] = []
        self._active: set[tuple[int, int, int]] = set()

    # -- subsystem dimensions -------------------------------------------------

    def subsystem_dim(self, L: LinearSystem) -> DimensionResult:
        """Provider for degenerations: exact on the plane side, possibly an upper bound on F."""
        if L.m0 == 0:
            try:
                return self.dim_homogeneous(L.d, L.n, L.m)
            except Undecided as exc:
                raise ProviderUnavailable(str(exc)) from exc
        res = dim_quasi(L)
        if res is not None:
            return res
        try:
            return generic_dim(L, self.oracle)
        except OracleBudgetError as exc:
            raise ProviderUnavailable(str(exc)) from exc

    def dim(self, L: LinearSystem) -> DimensionResult:
        """Dimension of any quasi-homogeneous system; uncertified results raise Undecided."""
        res = self.subsystem_dim(L) if L.m0 else self.dim_homogeneous(L.d, L.n, L.m)
        if not res.certified:
            raise Undecided(L, "oracle bound not matched by a lower bound")
        return res

    # -- homogeneous recursion --------------------------------------------------

    def dim_homogeneous(self, d: int, n: int, m: int) -> DimensionResult:
        key = (d, 0, n, m)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if (d, n, m) in self._active:
            raise Undecided(LinearSystem.homogeneous(d, n, m), "recursion cycle")
        self._active.add((d, n, m))
        try:
            res = self._resolve(d, n, m)
        finally:
            self._active.discard((d, n, m))
        if res.certified:
            self.memo.put(res)
        return res

    def _resolve(self, d: int, n: int, m: int) -> DimensionResult:
        L = LinearSystem.homogeneous(d, n, m)
        elem = elementary_dim(L)
        if elem is not None:
            return elem
        if n <= 9:
            return dim_small_n(d, n, m)
        # n1: last n with v >= -1.  Non-speciality there covers every n <= n1.
        n1 = critical_n(d, m)
        if _v(d, n1 + 1, m) == -1:
            n1 += 1
        if n < n1:
            return self._derive(L, self.dim_homogeneous(d, n1, m), empty=False)
        if n == n1:
            return self._resolve_direct(d, n, m)
        source = n1 if _v(d, n1, m) == -1 else n1 + 1
        if source <= 9:
            source = 9
        if n == source:
            return self._resolve_direct(d, n, m)
        return self._derive(L, self.dim_homogeneous(d, source, m), empty=True)

    def _derive(self, L: LinearSystem, base: DimensionResult, empty: bool) -> DimensionResult:
        if base.certified and not base.special and (base.empty or not empty):
            via = f"{base.system.d},{base.system.n},{base.system.m}"
            return DimensionResult(L, expected_dim(L), Provenance(Source.MONOTONE, via))
        return self._resolve_direct(L.d, L.n, L.m)

    def _resolve_direct(self, d: int, n: int, m: int) -> DimensionResult:
        L = LinearSystem.homogeneous(d, n, m)
        if self.use_degeneration:
            w = search_witness(d, n, m, self.subsystem_dim, self.offsets)
            if w is not None:
                return DimensionResult(L, w.l0, Provenance(Source.DEGENERATION, f"{w.a},{w.b}", w))
        try:
            res = generic_dim(L, self.oracle)
        except OracleBudgetError as exc:
            raise Undecided(L, str(exc)) from exc
        if not res.certified:
            raise Undecided(L, f"oracle bound {res.value} above lower bound {res.provenance.payload.lower_bound}")
        self.oracle_fallbacks.append(L)
        return res

    # -- per-degree checks ----------------------------------------------------------

    def critical_systems(self, d: int, m: int) -> list[int]:
        n0 = critical_n(d, m)
        return [n0 + 1] if _v(d, n0 + 1, m) == -1 else [n0, n0 + 1]

    def check_degree(self, d: int, m: int, spot_check: bool = True) -> DegreeReport:
        if m < 2:
            raise ValueError("check_degree needs m >= 2")
        n0 = critical_n(d, m)
        if n0 <= 8:
            return DegreeReport(d, m, "low", n0, note="n0 <= 8: covered by the n <= 9 theorem")
        if d == 3 * m:
            L = LinearSystem.homogeneous(d, 10, m)
            note = "L(3m;9,m) is the m-fold cubic; L(3m;10,m) empty"
            try:
                empty, cert = certify_empty(L, self.oracle)
            except OracleBudgetError as exc:
                empty, cert, note = False, None, str(exc)
            res = DimensionResult(L, -1, Provenance(Source.ORACLE, cert.status, cert)) if empty else None
            return DegreeReport(d, m, "low", n0, [CriticalCheck(10, virtual_dim(L), res)], note=note)
        if d < capital_D(m):
            report = DegreeReport(d, m, "critical", n0)
            for n in self.critical_systems(d, m):
                report.checks.append(self._check_critical(d, n, m))
            return report
        report = DegreeReport(d, m, "high", n0, interval=interval_witness(d, m))
        if report.interval is None:
            report.note = "no interval witness"
            return report
        a, b = report.interval.pair(d, m)
        for n in self.critical_systems(d, m):
            if b > n:
                report.checks.append(CriticalCheck(n, _v(d, n, m), None, note=f"b={b} > n"))
            elif spot_check:
                report.checks.append(self._spot_check(d, n, m, a, b))
        return report

    def _check_critical(self, d: int, n: int, m: int) -> CriticalCheck:
        try:
            res = self.dim_homogeneous(d, n, m)
        except Undecided as exc:
            return CriticalCheck(n, _v(d, n, m), None, note=str(exc))
        return CriticalCheck(n, _v(d, n, m), res)

    def _spot_check(self, d: int, n: int, m: int, a: int, b: int) -> CriticalCheck:
        L = LinearSystem.homogeneous(d, n, m)
        try:
            w = evaluate_pair(L, a, b, self.subsystem_dim)
        except (ProviderUnavailable, ValueError) as exc:
            return CriticalCheck(n, _v(d, n, m), None, note=str(exc))
        res = None
        if w.succeeds:
            res = DimensionResult(L, w.l0, Provenance(Source.DEGENERATION, f"{a},{b}", w))
            self.memo.put(res)
        return CriticalCheck(n, _v(d, n, m), res, witness=w)

    def check_conjecture(self, m: int, d_max: int | None = None, jobs: int = 1) -> ConjectureCertificate:
        if m < 2:
            raise ValueError("check_conjecture needs m >= 2")
        D = capital_D(m)
        d_max = D + 50 if d_max is None else d_max
        degrees = list(range(1, d_max + 1))
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                reports = list(pool.map(_check_degree_worker, [(self.oracle, self.offsets, d, m) for d in degrees]))
        else:
            reports = [self.check_degree(d, m) for d in degrees]
        fails = [
            c.result.system
            for r in reports
            if r.rule == "critical"
            for c in r.checks
            if c.result is not None and c.result.provenance.source is Source.ORACLE
        ]
        return ConjectureCertificate(m, d_max, (3 * m + 1, D - 1), reports, fails)

    # -- published table replay --------------------------------------------------------

    def verify_row(self, row: tuple) -> RowCheck:
        d, n, m, v, pair = row
        L = LinearSystem.homogeneous(d, n, m)
        v_ok = virtual_dim(L) == v
        e = expected_dim(L)
        if pair is None:
            try:
                cert = certify_dim(L, e, self.oracle)
            except OracleBudgetError as exc:
                return RowCheck(row, v_ok, False, str(exc))
            ok = cert is not None and v_ok
            return RowCheck(row, v_ok, ok, f"oracle dim={e}" if cert else "oracle not certified", cert)
        a, b = pair
        try:
            w = evaluate_pair(L, a, b, self.subsystem_dim)
        except (ProviderUnavailable, ValueError) as exc:
            return RowCheck(row, v_ok, False, str(exc))
        return RowCheck(row, v_ok, v_ok and w.succeeds, f"l0={w.l0} e={e}", w)

    def verify_paper_tables(self, m: int) -> list[RowCheck]:
        return [self.verify_row(row) for row in reference_tables.rows_for(m)]


def _check_degree_worker(args) -> DegreeReport:
    oracle, offsets, d, m = args
    return Engine(oracle=oracle, offsets=offsets).check_degree(d, m)


_default_engine: Engine | None = None


def default_engine() -> Engine:
    global _default_engine
    if _default_engine is None:
        _default_engine = Engine()
    return _default_engine


def dim_homogeneous(d: int, n: int, m: int) -> DimensionResult:
    return default_engine().dim_homogeneous(d, n, m)


def check_degree(d: int, m: int) -> DegreeReport:
    return default_engine().check_degree(d, m)


def check_conjecture(m: int, d_max: int | None = None, jobs: int = 1) -> ConjectureCertificate:
    return default_engine().check_conjecture(m, d_max, jobs)


def verify_paper_tables(m: int) -> list[RowCheck]:
    return default_engine().verify_paper_tables(m)


__all__ = [
    "ConjectureCertificate",
    "CriticalCheck",
    "DegreeReport",
    "Engine",
    "MemoStore",
    "RowCheck",
    "Undecided",
    "check_conjecture",
    "check_degree",
    "conjectured_dim",
    "critical_n",
    "default_cache_path",
    "dim_homogeneous",
    "verify_paper_tables",
]
