import pytest

from curvedim import reference_tables
from curvedim.core import DimensionResult, LinearSystem, Provenance, Source
from curvedim.degen import capital_D
from curvedim.engine import Engine, MemoStore, Undecided, critical_n, default_cache_path
from curvedim.oracle import OracleConfig


@pytest.mark.parametrize("d, m, n0", [(9, 2, 18), (7, 2, 11), (12, 4, 9), (30, 10, 9), (3, 1, 9)])
def test_critical_n(d, m, n0):
    assert critical_n(d, m) == n0


@pytest.mark.parametrize(
    "d, n, m, value, source",
    [
        (12, 15, 3, 0, Source.DEGENERATION),
        (38, 10, 12, -1, Source.ORACLE),
        (3, 9, 1, 0, Source.AXIOM),
        (4, 2, 3, 3, Source.SMALL_N),
        (7, 10, 2, 5, Source.MONOTONE),
    ],
)
def test_dim_homogeneous_examples(engine, d, n, m, value, source):
    res = engine.dim_homogeneous(d, n, m)
    assert res.value == value and res.provenance.source is source and res.certified


def test_monotone_in_n(engine):
    for m in (2, 3, 4):
        for d in range(1, 16):
            prev = None
            for n in range(0, critical_n(d, m) + 4):
                value = engine.dim_homogeneous(d, n, m).value
                if prev is not None:
                    assert value <= prev
                    if prev == -1:
                        assert value == -1
                prev = value


def _premises(res: DimensionResult):
    w = res.provenance.payload if res.provenance.source is Source.DEGENERATION else None
    return [] if w is None else [w.P, w.P_hat, w.F, w.F_hat]


def test_certificate_tree_has_no_undecided_leaves(engine):
    engine.check_conjecture(6)
    stack = [r for _, r in engine.memo.items()]
    while stack:
        res = stack.pop()
        assert res.certified, res
        stack.extend(_premises(res))


def test_check_degree_rules(engine):
    low = engine.check_degree(5, 2)
    assert low.rule == "low" and low.resolved
    cubic = engine.check_degree(12, 4)
    assert cubic.rule == "low" and cubic.checks[0].result.empty
    crit = engine.check_degree(9, 2)
    assert crit.rule == "critical" and [c.n for c in crit.checks] == [18, 19]
    assert all(c.result.provenance.source is Source.DEGENERATION for c in crit.checks)
    single = engine.check_degree(7, 2)
    assert [c.n for c in single.checks] == [12]
    fail = engine.check_degree(19, 6)
    assert fail.resolved and fail.checks[0].result.provenance.source is Source.ORACLE
    high = engine.check_degree(100, 3)
    assert high.rule == "high" and high.interval is not None and high.resolved


def test_check_conjecture_small(engine):
    cert = engine.check_conjecture(2)
    assert cert.status == "verified" and cert.middle_range == (7, 9)
    assert cert.fail_cases == [] and cert.d_max == capital_D(2) + 50


def test_parallel_matches_serial():
    a = Engine().check_conjecture(3, 20)
    b = Engine().check_conjecture(3, 20, jobs=2)
    assert a.status == b.status == "verified"
    assert [(r.d, r.rule, [c.method for c in r.checks]) for r in a.degree_reports] == [
        (r.d, r.rule, [c.method for c in r.checks]) for r in b.degree_reports
    ]


def test_undecided_without_fallbacks():
    eng = Engine(oracle=OracleConfig(max_size=100))
    with pytest.raises(Undecided):
        eng.dim_homogeneous(19, 10, 6)
    cert = eng.check_conjecture(6, 20)
    assert cert.status == "incomplete" and 19 in cert.unresolved


@pytest.mark.parametrize(
    "row",
    [(13, 10, 4, 4, (7, 7)), (50, 20, 11, 5, (35, 10)), (29, 10, 9, 14, None)],
)
def test_verify_rows(engine, row):
    assert row in reference_tables.MIDDLE_RANGE_ROWS
    assert engine.verify_row(row).passed


def test_verify_row_detects_wrong_v(engine):
    check = engine.verify_row((13, 10, 4, 5, (7, 7)))
    assert not check.virtual_ok and not check.passed


def test_memo_store_round_trip(tmp_path, caplog):
    path = tmp_path / "m.txt"
    store = MemoStore(path)
    L = LinearSystem.homogeneous(12, 15, 3)
    store.put(DimensionResult(L, 0, Provenance(Source.DEGENERATION, "8,8")))
    store.put(DimensionResult(L, 0, Provenance(Source.DEGENERATION, "8,8")))
    with pytest.raises(ValueError):
        store.put(DimensionResult(L, 3, Provenance(Source.AXIOM)))
    with pytest.raises(ValueError):
        store.put(DimensionResult(LinearSystem(5, 0, 10, 2), 4, Provenance(Source.ORACLE, "probable")))
    store.save()
    with path.open("a") as fh:
        fh.write("garbage line\n")
    again = MemoStore(path)
    assert len(again) == 1 and again.get(L.key).value == 0
    assert again.get(L.key).provenance.tag == "degeneration:8,8"
    assert "ignoring" in caplog.text
    again.clear()
    assert not path.exists() and len(again) == 0


def test_engine_uses_persisted_memo(tmp_path):
    path = tmp_path / "m.txt"
    eng = Engine(memo=MemoStore(path))
    eng.dim_homogeneous(13, 10, 4)
    eng.memo.save()
    warm = Engine(memo=MemoStore(path))
    assert warm.memo.get((13, 0, 10, 4)).value == 4


def test_default_cache_path(monkeypatch, tmp_path):
    monkeypatch.setenv("CURVEDIM_CACHE", str(tmp_path / "x.txt"))
    assert default_cache_path() == tmp_path / "x.txt"
    monkeypatch.delenv("CURVEDIM_CACHE")
    monkeypatch.setenv("XDG_DATA_HOME", str(tmp_path))
    assert default_cache_path() == tmp_path / "curvedim" / "memo.txt"


def test_quasi_homogeneous_dim(engine):
    assert engine.dim(LinearSystem(7, 4, 4, 3)).value == 2
    assert engine.dim(LinearSystem(17, 11, 10, 4)).certified
