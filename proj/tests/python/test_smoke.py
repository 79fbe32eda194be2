import math

import numpy as np
import pytest

import szego_lab

TWO_PLUS_COS = {"k": 1, "coeffs": [{"kappa": [], "re": 2.0, "im": 0.0}, {"kappa": [1], "re": 0.5, "im": 0.0}]}


def test_factorize_and_smooth_numbers():
    assert szego_lab.factorize(12) == [2, 1]
    assert szego_lab.factorize(1) == []
    assert szego_lab.smooth_numbers(2, 10) == [1, 2, 3, 4, 6, 8, 9]
    assert szego_lab.coprime_residuals(1, 10) == [1, 3, 5, 7, 9]


def test_multiplicative_matrix():
    m = np.array(szego_lab.multiplicative_matrix(TWO_PLUS_COS, [1, 2, 3]))
    assert np.array_equal(m, np.array([[2, 0.5, 0], [0.5, 2, 0], [0, 0, 2]]))


def test_determinant_roots_match_numpy():
    m = np.array(szego_lab.multiplicative_matrix(TWO_PLUS_COS, [1, 2, 3, 4]))
    assert np.linalg.det(m).real == pytest.approx(14.0)
    assert szego_lab.geo_mean_natural(TWO_PLUS_COS, 4) == pytest.approx(14.0 ** 0.25)
    assert szego_lab.geo_mean_additive(TWO_PLUS_COS, [[0], [1], [2]]) == pytest.approx(7.0 ** (1 / 3))


def test_block_spectrum_matches_numpy():
    m = np.array(szego_lab.multiplicative_matrix(TWO_PLUS_COS, range(1, 65)))
    direct = np.linalg.eigvalsh(m)
    assert np.allclose(szego_lab.block_spectrum(TWO_PLUS_COS, 64, 1), direct, atol=1e-10)


def test_log_mean_closed_form():
    assert szego_lab.log_mean(TWO_PLUS_COS) == pytest.approx(math.log((2 + math.sqrt(3)) / 2), abs=1e-10)


def test_mass_series():
    value, tail = szego_lab.limit_measure_moment(TWO_PLUS_COS, "one", 1, 10000)
    assert abs(value - 1.0) <= tail * (1 + 1e-9)
    assert szego_lab.log2_floor_series(10**6) == pytest.approx(1.0, abs=5e-5)


def test_gram_matrix():
    g = np.array(szego_lab.gram_matrix({"basis": "power", "coeffs": [{"n": 1, "re": 1, "im": 0},
                                                                      {"n": 2, "re": 0.5, "im": 0}]}, [1, 2, 4]))
    assert np.allclose(g, [[1.25, 0.5, 0], [0.5, 1.25, 0.5], [0, 0.5, 1.25]])


def test_run_experiment_summary():
    summary = szego_lab.run_experiment({"experiment": "identity", "k": 1, "schedule": [1000, 100000],
                                        "tolerance": 1e-3})
    assert summary["schema"] == 1
    assert all(a["passed"] for a in summary["assertions"])


def test_errors_map_to_exceptions():
    with pytest.raises(szego_lab.ConfigError):
        szego_lab.run_experiment({"experiment": "identity", "schedule": [3, 2]})
    with pytest.raises(szego_lab.CapacityError):
        szego_lab.run_experiment({"experiment": "szego-folner", "symbol": TWO_PLUS_COS, "schedule": [64]},
                                 max_dim=8)


def test_criterion():
    passed, line = szego_lab.run_criterion(9, 0)
    assert passed
    assert line.startswith("PASS c9")
