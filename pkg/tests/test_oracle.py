import numpy as np
import pytest

from curvedim._modrank import MERSENNE_31, rank_mod_p
from curvedim.core import LinearSystem, expected_dim
from curvedim.oracle import (
    OracleBudgetError,
    OracleConfig,
    certify_dim,
    certify_empty,
    generic_dim,
    interpolation_matrix,
    lower_bound,
    standard_form,
)


def _points(k, p=MERSENNE_31, seed=3):
    rng = np.random.default_rng(seed)
    return [tuple(int(x) for x in rng.integers(0, p, 2)) for _ in range(k)]


def test_matrix_shapes():
    A = interpolation_matrix(LinearSystem(1, 0, 2, 1), _points(3), MERSENNE_31)
    assert A.shape == (2, 3) and rank_mod_p(A, MERSENNE_31) == 2
    assert interpolation_matrix(LinearSystem(4, 0, 2, 3), _points(3), MERSENNE_31).shape == (12, 15)
    assert interpolation_matrix(LinearSystem(38, 0, 10, 12), _points(11), MERSENNE_31).shape == (780, 780)


def test_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        interpolation_matrix(LinearSystem(2, 0, 2, 1), _points(2), MERSENNE_31)
    with pytest.raises(ValueError):
        interpolation_matrix(LinearSystem(2, 0, 2, 1), [(1, 1), (2, 2), (2, 2)], MERSENNE_31)
    with pytest.raises(ValueError):
        interpolation_matrix(LinearSystem(8, 0, 2, 1), _points(3, 7), 7)


def test_full_matrix_matches_origin_reduction():
    # generic_dim places one point at the origin; the plain matrix must agree.
    for L in (LinearSystem(7, 4, 4, 3), LinearSystem(9, 0, 10, 3), LinearSystem(12, 5, 6, 4)):
        A = interpolation_matrix(L, _points(L.n + 1), MERSENNE_31)
        assert A.shape[1] - 1 - rank_mod_p(A, MERSENNE_31) == generic_dim(L).value


def test_rank_small_prime():
    A = np.array([[1, 2], [2, 4]])
    assert rank_mod_p(A, 7) == 1
    assert rank_mod_p(np.array([[1, 2], [2, 5]]), 7) == 2
    assert rank_mod_p(np.zeros((3, 0), dtype=np.int64), 7) == 0


def test_rank_never_drops_when_points_added():
    pts = _points(12, seed=9)
    prev = -1
    for k in range(1, 12):
        A = interpolation_matrix(LinearSystem(10, 0, k, 3), pts[: k + 1], MERSENNE_31)
        r = rank_mod_p(A, MERSENNE_31)
        assert r >= prev
        prev = r


@pytest.mark.parametrize(
    "L, value, rows, cols",
    [
        (LinearSystem(38, 0, 10, 12), -1, 780, 780),
        (LinearSystem(4, 0, 2, 3), 3, 12, 15),
        (LinearSystem(3, 0, 9, 1), 0, 9, 10),
    ],
)
def test_generic_dim_examples(L, value, rows, cols):
    res = generic_dim(L)
    cert = res.provenance.payload
    assert res.value == value and res.certified
    assert (cert.rows, cert.cols) == (rows, cols)


def test_certify_empty_examples():
    assert certify_empty(LinearSystem(19, 0, 10, 6))[0]
    assert certify_empty(LinearSystem(22, 0, 10, 7))[0]
    assert not certify_empty(LinearSystem(1, 0, 2, 1))[0]


def test_certify_dim_examples():
    cert = certify_dim(LinearSystem(39, 0, 10, 12), 39)
    assert cert is not None and (cert.best_rank, cert.cols) == (780, 820)
    assert certify_dim(LinearSystem(29, 0, 10, 9), 14) is not None
    assert certify_dim(LinearSystem(38, 0, 10, 12), 0) is None


def test_determinism_and_render():
    L = LinearSystem(16, 0, 10, 5)
    a, b = generic_dim(L, OracleConfig(seed=5)), generic_dim(L, OracleConfig(seed=5))
    assert a.provenance.payload == b.provenance.payload
    line = a.provenance.payload.render().split()
    assert line[0] == "ORACLE" and line[-1] == "certified" and int(line[-2]) == 2


def test_upper_bound_at_least_expected():
    for L in (LinearSystem(10, 3, 7, 3), LinearSystem(13, 0, 12, 4), LinearSystem(9, 6, 5, 3)):
        cert = generic_dim(L).provenance.payload
        assert cert.implied_dim_upper_bound >= expected_dim(L)
        assert cert.implied_dim_upper_bound >= cert.lower_bound


def test_small_prime_gives_at_least_the_truth():
    # Characteristic 101 may only lose rank, never gain it.
    L = LinearSystem(12, 0, 11, 3)
    res = generic_dim(L, OracleConfig(prime=101, trials=2))
    assert res.value >= generic_dim(L).value


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(prime=100)
    with pytest.raises(ValueError):
        OracleConfig(trials=0)
    with pytest.raises(OracleBudgetError):
        generic_dim(LinearSystem(120, 0, 10, 12))


def test_standard_form_and_lower_bound():
    # L(4;2,3) contains the double line: Cremona leaves the residual conic.
    assert lower_bound(LinearSystem(4, 0, 2, 3)) == 3
    assert standard_form(2, [2, 2]) is not None
    assert standard_form(3, [4]) is None
    assert lower_bound(LinearSystem(10, 8, 3, 4)) == 2
