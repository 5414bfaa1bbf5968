"""Smoke tests for the python module: closed forms on reference inputs."""

import math

import numpy as np
import pytest

import symsector as ss

REF = np.array([[1.0, 1.0], [1.0, 2.0]])


def test_omega_and_q():
    assert ss.omega([1.0], [0.0], [0.0], [1.0]) == 1.0
    assert ss.omega([1, 2], [0, 0], [0, 0], [3, 4]) == 11.0
    assert ss.q_standard([1, 2], [3, -1]) == 1.0


def test_symplectic_and_class():
    assert ss.is_symplectic(REF)
    assert not ss.is_symplectic(np.diag([2.0, 1.0]))
    assert ss.monotonicity_class(REF) == "StrictlyMonotone"
    assert ss.monotonicity_class(np.eye(2)) == "Monotone"


def test_sigma_closed_form():
    res = ss.sigma(REF)
    assert res["t1"] == pytest.approx(1.0, abs=1e-12)
    assert res["sigma"] == pytest.approx(1.0 + math.sqrt(2.0), abs=1e-13)
    xi, eta = res["witness"]
    assert ss.beta(xi, eta, REF) == pytest.approx(res["sigma"], abs=1e-8)
    assert ss.sigma_complementary(REF) == pytest.approx(res["sigma"], abs=1e-9)


def test_factorization_and_canon():
    f = ss.factor_qpr(REF)
    assert f["P"][0][0] == pytest.approx(1.0)
    assert f["R"][0][0] == pytest.approx(1.0)
    assert f["p_class"] == "PositiveDefinite"

    cf = ss.canonical_form(REF)
    assert cf["t"][0] == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(cf["core"], REF, atol=1e-12)


def test_mobius_and_distance():
    assert ss.mobius(REF, np.array([[1.0]]))[0][0] == pytest.approx(1.5)
    za = ss.z_subspace(0.0, 2)
    zb = ss.z_subspace(2.0, 2)
    assert ss.distance(za, zb) == pytest.approx(1.0, abs=1e-12)
    assert ss.order_compare(za, zb) == "Less"


def test_image_distance():
    assert ss.image_distance(REF) == pytest.approx(0.5 * math.log(2.0), abs=1e-12)


def test_general_sector_q():
    # sector between E0 (graph I) and the graph of 2I, evaluated at a point
    # of E0: the value is 0 (boundary)
    q = ss.general_sector_q(np.eye(2), 2.0 * np.eye(2), [1.0, 0.0], [1.0, 0.0])
    assert q == pytest.approx(0.0, abs=1e-12)


def test_oracle_band():
    s = ss.sigma(REF)["sigma"]
    band = ss.mc_inf_beta(REF, samples=20000, seed=0)
    assert s - 1e-9 <= band <= 1.01 * s
    assert band == ss.mc_inf_beta(REF, samples=20000, seed=0)


def test_sequence_analysis():
    rep = ss.analyze_sequence([REF] * 6, 6, probes=[([1.0], [1.0])])
    steps = rep["steps"]
    assert len(steps) == 6
    base = 1.0 + math.sqrt(2.0)
    for i, step in enumerate(steps, start=1):
        assert step["sigma_n"] >= base**i * (1 - 1e-12)
    assert rep["flags"]["strict_at_step"] == 1

    est, bound = ss.limit_subspace([REF] * 10, 10)
    assert bound < 1e-6
    assert np.all(np.linalg.eigvalsh(est) < 0)


def test_example_family():
    maps = ss.build_example69(
        [np.eye(2)] * 3, [np.eye(2)] * 3, [(1.0, 1.0)] * 3, 1.0
    )
    assert ss.monotonicity_class(maps[0]) == "StrictlyMonotone"

    res = ss.check_criterion69(
        [np.eye(1)] * 200,
        [np.zeros((1, 1))] * 200,
        [(1.0 / n, 1.0 / n) for n in range(1, 201)],
        1.0,
        200,
        [1.0],
        [1.0],
    )
    assert res["q_nondecreasing"]
    assert res["ratio_bounds_hold"]


def test_errors_translate():
    with pytest.raises(ValueError):
        ss.sigma(np.diag([2.0, 1.0]))  # not symplectic
    with pytest.raises(ValueError):
        ss.beta([1.0], [-1.0], REF)  # outside the sector interior
