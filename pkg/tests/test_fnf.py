import numpy as np
import pytest

from blochsep.bloch import decompose
from blochsep.criteria import ccnr_report, cm_report, full_report
from blochsep.errors import SingularFilterError, SingularReductionError
from blochsep.fnf import apply_filter, filter_normal_form, fnf_invariant_check, local_residual
from blochsep.matrix import DensityMatrix, hs_norm, partial_trace_a, partial_trace_b, trace_norm
from blochsep.states import random_mixed, random_separable, random_unitary

# Filters printed to four decimals alongside the GenTiles2 (3x4) normal form.
PRINTED_FA = np.array([
    [-0.2586 - 0.4251j, -0.2586 - 0.4251j, -0.2586 - 0.4251j],
    [0.3421 - 0.3842j, 0.4402 + 0.2817j, -0.7824 + 0.1025j],
    [0.2784 - 0.6568j, -0.5774 + 0.4086j, 0.2990 + 0.2482j],
])
PRINTED_FB = np.array([
    [-0.3118 - 0.3092j, -0.3118 - 0.3092j, -0.3118 - 0.3092j, -0.3118 - 0.3092j],
    [0.5499 - 0.2805j, 0.6414 - 0.0813j, -0.3307 + 0.0334j, -0.4303 + 0.1642j],
    [-0.3932 - 0.1066j, 0.3198 - 0.3909j, -0.0427 - 0.7619j, 0.0580 + 0.6297j],
    [0.5358 + 0.3605j, 0.1113 - 0.5279j, 0.5169 - 0.0640j, -0.5820 + 0.1157j],
])


def test_apply_identity_filter(gt2):
    out = apply_filter(gt2, np.eye(3), np.eye(4))
    np.testing.assert_allclose(out.matrix, gt2.matrix, atol=1e-15)


def test_apply_unitary_filter():
    rho = random_mixed(3, 4, rank=4, seed=8)
    out = apply_filter(rho, random_unitary(3, 1), random_unitary(4, 2))
    np.testing.assert_allclose(np.linalg.eigvalsh(out.matrix), np.linalg.eigvalsh(rho.matrix), atol=1e-12)
    assert trace_norm(decompose(out).t) == pytest.approx(trace_norm(decompose(rho).t), abs=1e-9)


def test_printed_filters_reach_normal_form(gt2):
    out = apply_filter(gt2, PRINTED_FA, PRINTED_FB)
    assert local_residual(out) <= 1e-3
    assert cm_report(out).value == pytest.approx(4.5751, abs=1e-3)
    assert ccnr_report(out).value == pytest.approx(1.0512, abs=1e-3)


def test_apply_singular_filter(gt2):
    with pytest.raises(SingularFilterError):
        apply_filter(gt2, np.diag([1, 1, 0]), np.eye(4))


def test_local_residual_matches_bloch_norms():
    rho = random_mixed(3, 4, seed=1)
    b = decompose(rho)
    assert local_residual(rho) == pytest.approx(max(np.linalg.norm(b.r), np.linalg.norm(b.s)), abs=1e-12)


def test_maximally_mixed_is_fixed_point():
    res = filter_normal_form(DensityMatrix.maximally_mixed(3, 4))
    assert res.converged and res.iterations <= 1
    np.testing.assert_allclose(res.f_a, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(res.f_b, np.eye(4), atol=1e-12)


def test_gt2_normal_form(gt2, gt2_fnf):
    assert gt2_fnf.converged
    assert gt2_fnf.residual <= 1e-9
    rt = gt2_fnf.rho_tilde
    assert trace_norm(decompose(rt).t) == pytest.approx(4.5751, abs=5e-4)
    assert ccnr_report(rt).value == pytest.approx(1.0512, abs=5e-4)


def test_gt2_normal_form_without_regularization(gt2, gt2_fnf):
    res = filter_normal_form(gt2)
    assert res.converged
    assert cm_report(res.rho_tilde).value == pytest.approx(cm_report(gt2_fnf.rho_tilde).value, abs=1e-6)


@pytest.mark.parametrize("seed", range(12))
def test_full_rank_random_converges(seed):
    m, n = 2 + seed % 3, 2 + (seed // 3) % 3
    rho = random_mixed(m, n, seed=seed)
    res = filter_normal_form(rho)
    assert res.converged and res.residual <= 1e-9
    rt = res.rho_tilde
    assert hs_norm(partial_trace_b(rt) - np.eye(m) / m) <= 1e-9
    assert hs_norm(partial_trace_a(rt) - np.eye(n) / n) <= 1e-9
    for f in (res.f_a, res.f_b):
        assert abs(np.linalg.det(f) - 1) <= 1e-8
    np.testing.assert_allclose(apply_filter(rho, res.f_a, res.f_b).matrix, rt.matrix, atol=1e-9)


def test_determinants_on_gt2(gt2_fnf):
    assert abs(np.linalg.det(gt2_fnf.f_a) - 1) <= 1e-8
    assert abs(np.linalg.det(gt2_fnf.f_b) - 1) <= 1e-8


def test_idempotent(gt2_fnf):
    again = filter_normal_form(gt2_fnf.rho_tilde)
    assert again.converged and again.iterations <= 2
    for f in (again.f_a, again.f_b):
        np.testing.assert_allclose(f @ f.conj().T, np.eye(len(f)), atol=1e-6)


def test_invariants_reproducible_across_paths(gt2, gt2_fnf):
    # a different starting point in the same local-unitary orbit
    u = np.kron(random_unitary(3, 5), random_unitary(4, 6))
    rot = DensityMatrix(u @ gt2.matrix @ u.conj().T, 3, 4)
    other = filter_normal_form(rot, eps=1e-10).rho_tilde
    ref = gt2_fnf.rho_tilde
    assert trace_norm(decompose(other).t) == pytest.approx(trace_norm(decompose(ref).t), abs=1e-6)
    assert ccnr_report(other).value == pytest.approx(ccnr_report(ref).value, abs=1e-6)


def test_max_iter_exhaustion_is_not_an_error():
    rho = random_mixed(3, 3, seed=2)
    res = filter_normal_form(rho, tol=1e-300, max_iter=3)
    assert not res.converged and res.iterations == 3
    assert res.residual > 0


def test_singular_reduction_needs_eps():
    v = np.zeros(4)
    v[0] = 1
    prod = DensityMatrix(np.outer(v, v), 2, 2)
    with pytest.raises(SingularReductionError, match="eps"):
        filter_normal_form(prod)


def test_invariant_check_gt2(gt2, gt2_fnf):
    rep = fnf_invariant_check(gt2, gt2_fnf)
    assert rep.ppt_before == pytest.approx(1, abs=1e-8)
    assert rep.ppt_after == pytest.approx(1, abs=1e-8)
    assert rep.ppt_preserved
    assert rep.reconstruction_residual <= 1e-9
    assert rep.reduction_residual_a <= 1e-9 and rep.reduction_residual_b <= 1e-9


def test_separable_stays_undetected():
    for seed in range(10):
        rho = random_separable(3, 3, terms=12, seed=seed)
        res = filter_normal_form(rho)
        assert not any(r.entangled for r in full_report(res.rho_tilde))


def test_normal_form_input_keeps_cm_norm(gt2_fnf):
    rt = gt2_fnf.rho_tilde
    res = filter_normal_form(rt)
    assert trace_norm(decompose(res.rho_tilde).t) == pytest.approx(trace_norm(decompose(rt).t), abs=1e-8)
