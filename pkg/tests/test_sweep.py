import numpy as np
import pytest

from blochsep.criteria import CRITERIA
from blochsep.matrix import DensityMatrix
from blochsep.states import max_entangled, random_separable
from blochsep.sweep import noise_threshold, sweep_noise


def test_bell_cm_threshold_is_one_third():
    bell = max_entangled(2).density_matrix()
    res = noise_threshold(bell, "CM_TRACE", bisect_tol=1e-12)
    assert res.threshold_p == pytest.approx(1 / 3, abs=1e-8)
    assert res.monotone


def test_bell_ppt_threshold():
    # Werner state: negative partial transpose eigenvalue (1 - 3p)/4 for p > 1/3
    res = noise_threshold(max_entangled(2).density_matrix(), "PPT", bisect_tol=1e-12)
    assert res.threshold_p == pytest.approx(1 / 3, abs=1e-8)


def test_separable_never_detected():
    rho = random_separable(3, 3, terms=8, seed=3)
    for r in sweep_noise(rho):
        assert r.threshold_p is None


def test_results_keep_input_order(gt2_fnf):
    order = ("CM_HS", "PPT", "CM_TRACE")
    res = sweep_noise(gt2_fnf.rho_tilde, order, workers=3)
    assert tuple(r.criterion_id for r in res) == order
    assert [r.threshold_p for r in res] == [r.threshold_p for r in sweep_noise(gt2_fnf.rho_tilde, order, workers=1)]


def test_gt2_fnf_thresholds(gt2_fnf):
    res = {r.criterion_id: r for r in sweep_noise(gt2_fnf.rho_tilde)}
    assert tuple(res) == CRITERIA
    assert res["CM_TRACE"].threshold_p == pytest.approx(0.9274, abs=5e-4)
    assert res["CCNR"].threshold_p == pytest.approx(0.9330, abs=5e-4)
    assert res["PPT"].threshold_p is None


def test_criteria_monotone_in_noise(gt2):
    # every criterion value is convex in p and minimal at p = 0
    for r in sweep_noise(gt2, resolution=40):
        assert r.monotone


def test_non_monotone_warns(monkeypatch):
    from blochsep import sweep
    from blochsep.criteria import CriterionReport

    def fake(cid, rho, tol=None):
        p = 1 - 4 * rho.matrix[1, 1].real  # recover p from the I/4 weight of |00><00| mixtures
        v = 1 + 0.5 * (p - 0.3) ** 2 - 0.05
        return CriterionReport(cid, v, 1.0, v - 1.0, v - 1.0 > 1e-9)

    monkeypatch.setattr(sweep, "evaluate", fake)
    v = np.zeros(4)
    v[0] = 1
    prod = DensityMatrix(np.outer(v, v), 2, 2)
    with pytest.warns(RuntimeWarning, match="not monotone"):
        res = noise_threshold(prod, "CCNR", resolution=50)
    assert not res.monotone
    assert res.threshold_p == pytest.approx(0.3 + np.sqrt(0.1), abs=1e-6)
