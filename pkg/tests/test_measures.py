import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blochsep.errors import DomainError
from blochsep.matrix import DensityMatrix, PureState
from blochsep.measures import (
    Kind,
    MeasureEstimate,
    Source,
    concurrence_lower_caf,
    concurrence_lower_cm,
    estimate_all,
    mnb_from_cm,
    mnb_measure,
    pure_concurrence,
    pure_tangle_bloch,
    pure_tangle_cm,
    tangle_lower_hs,
    tangle_upper,
    wootters_concurrence,
)
from blochsep.states import (
    max_entangled,
    random_mixed,
    random_pure,
    random_separable,
    random_unitary,
    white_noise_mix,
)

seeds = st.integers(0, 2**32)
dims = st.tuples(st.integers(2, 4), st.integers(2, 5))


def product(m, n):
    v = np.zeros(m * n)
    v[0] = 1
    return PureState(v, m, n)


def schmidt_concurrence(psi):
    """Oracle: C = sqrt(2 (1 - sum_k s_k^4)) from the Schmidt coefficients."""
    s = np.linalg.svd(psi.coefficient_matrix(), compute_uv=False)
    return np.sqrt(max(2 * (1 - np.sum(s**4)), 0))


def two_qubit_states(count, seed0=0):
    for k in range(count):
        yield random_mixed(2, 2, rank=1 + k % 4, seed=seed0 + k)


# -- pure states -----------------------------------------------------------

@pytest.mark.parametrize("m,n", [(2, 2), (3, 4), (4, 2)])
def test_product_state_has_zero_entanglement(m, n):
    psi = product(m, n)
    assert pure_concurrence(psi).value == pytest.approx(0, abs=1e-12)
    assert pure_tangle_bloch(psi).value == pytest.approx(0, abs=1e-12)
    assert pure_tangle_cm(psi).value == pytest.approx(0, abs=1e-12)


def test_maximally_entangled_values():
    phi = max_entangled(2)
    assert pure_concurrence(phi).value == pytest.approx(1)
    assert pure_tangle_bloch(phi).value == pytest.approx(1)
    assert pure_tangle_cm(phi).value == pytest.approx(1)
    phi3 = max_entangled(3)
    assert pure_concurrence(phi3).value == pytest.approx(np.sqrt(4 / 3))
    assert pure_tangle_cm(phi3).value == pytest.approx(4 / 3)


@settings(max_examples=60, deadline=None)
@given(dims, seeds)
def test_pure_formulas_agree(d, seed):
    psi = random_pure(*d, seed=seed)
    c = pure_concurrence(psi)
    assert c.kind is Kind.EXACT_PURE
    assert c.value == pytest.approx(schmidt_concurrence(psi), abs=1e-12)
    assert c.value**2 == pytest.approx(pure_tangle_bloch(psi).value, abs=1e-10)
    assert pure_tangle_bloch(psi).value == pytest.approx(pure_tangle_cm(psi).value, abs=1e-10)
    m = min(d)
    assert 0 <= c.value <= np.sqrt(2 * (m - 1) / m) + 1e-12


def test_swapped_subsystems_are_recorded():
    psi = random_pure(4, 2, seed=1)
    assert pure_concurrence(psi).swapped
    assert pure_tangle_bloch(psi).swapped
    assert not pure_concurrence(random_pure(2, 4, seed=1)).swapped


# -- bounds ----------------------------------------------------------------

def test_caf_and_cm_on_bell(bell):
    caf = concurrence_lower_caf(bell)
    assert caf.value == pytest.approx(1)
    # sqrt(8 / (8 * 4 * 1)) * (3 - 1) = 1: tight, no capping needed
    cm = concurrence_lower_cm(bell)
    assert cm.raw == pytest.approx(1)
    assert cm.value == pytest.approx(1)


def test_lower_bounds_capped_at_maximum():
    from blochsep.measures import Measure, _lower

    est = _lower(Measure.CONCURRENCE, Source.CAF, 1.7, 1.0)
    assert (est.value, est.raw) == (1.0, 1.7)
    assert _lower(Measure.TANGLE, Source.HS_TANGLE_BOUND, -0.2, 1.0).value == 0.0


def test_lower_bound_rounding_residue_reports_zero():
    from blochsep.measures import BOUND_NOISE_FLOOR, Measure, _lower

    est = _lower(Measure.TANGLE, Source.HS_TANGLE_BOUND, 3e-15, 1.0)
    assert (est.value, est.raw) == (0.0, 3e-15)
    assert _lower(Measure.TANGLE, Source.HS_TANGLE_BOUND, 10 * BOUND_NOISE_FLOOR, 1.0).value > 0


def test_bounds_on_gt2_normal_form(gt2_fnf):
    rt = gt2_fnf.rho_tilde
    assert concurrence_lower_caf(rt).value == pytest.approx(0.0296, abs=5e-4)
    assert concurrence_lower_cm(rt).value == pytest.approx(0.0320, abs=5e-4)


def test_cm_bound_uses_smaller_dimension(gt2_fnf):
    rt = gt2_fnf.rho_tilde
    flipped = concurrence_lower_cm(rt.swapped())
    assert flipped.swapped
    assert flipped.value == pytest.approx(concurrence_lower_cm(rt).value, abs=1e-12)
    assert concurrence_lower_caf(rt.swapped()).value == pytest.approx(concurrence_lower_caf(rt).value, abs=1e-12)


def test_bounds_clamp_on_separable():
    rho = random_separable(3, 3, terms=6, seed=4)
    for est in (concurrence_lower_caf(rho), concurrence_lower_cm(rho), tangle_lower_hs(rho)):
        assert est.value == 0
        assert est.raw <= 0


@settings(max_examples=40, deadline=None)
@given(dims, seeds)
def test_hs_bound_exact_on_pure(d, seed):
    psi = random_pure(*d, seed=seed)
    assert tangle_lower_hs(psi.density_matrix()).value == pytest.approx(pure_tangle_cm(psi).value, abs=1e-10)
    assert tangle_upper(psi.density_matrix()).value == pytest.approx(pure_tangle_bloch(psi).value, abs=1e-10)


def test_upper_bound_simple_cases():
    assert tangle_upper(product(3, 4).density_matrix()).value == pytest.approx(0, abs=1e-12)
    up = tangle_upper(DensityMatrix.maximally_mixed(3, 4))
    assert up.kind is Kind.UPPER_BOUND
    assert up.value == pytest.approx(4 / 3)


@settings(max_examples=80, deadline=None)
@given(dims, seeds, st.floats(0, 1))
def test_ordering_sandwich(d, seed, p):
    rho = white_noise_mix(random_mixed(*d, rank=1 + seed % 3, seed=seed), p).mixed
    lower = max(tangle_lower_hs(rho).value, concurrence_lower_caf(rho).value ** 2,
                concurrence_lower_cm(rho).value ** 2)
    assert 0 <= lower <= tangle_upper(rho).value + 1e-9


@settings(max_examples=30, deadline=None)
@given(dims, seeds)
def test_bounds_local_unitary_invariant(d, seed):
    m, n = d
    rho = random_mixed(m, n, rank=2, seed=seed)
    u = np.kron(random_unitary(m, seed + 1), random_unitary(n, seed + 2))
    rot = DensityMatrix(u @ rho.matrix @ u.conj().T, m, n)
    for f in (concurrence_lower_caf, concurrence_lower_cm, tangle_lower_hs, tangle_upper):
        assert f(rot).raw == pytest.approx(f(rho).raw, abs=1e-9)


def test_hs_bound_beats_concurrence_bounds_near_pure():
    wins = 0
    for seed in range(100):
        rho = white_noise_mix(random_pure(3, 3, seed=seed).density_matrix(), 0.97).mixed
        best_c = max(concurrence_lower_caf(rho).value, concurrence_lower_cm(rho).value)
        wins += tangle_lower_hs(rho).value > best_c**2
    assert wins > 50


# -- two qubits ------------------------------------------------------------

def test_mnb_bell_and_product(bell):
    assert mnb_measure(bell).value == pytest.approx(1)
    assert mnb_from_cm(bell).value == pytest.approx(1)
    assert mnb_measure(product(2, 2).density_matrix()).value == pytest.approx(0, abs=1e-12)
    assert mnb_from_cm(DensityMatrix.maximally_mixed(2, 2)).value == 0


def test_wootters_bell_and_separable(bell):
    assert wootters_concurrence(bell).value == pytest.approx(1)
    assert wootters_concurrence(random_separable(2, 2, terms=5, seed=1)).value == pytest.approx(0, abs=1e-7)


def test_wootters_matches_pure_concurrence():
    for seed in range(50):
        psi = random_pure(2, 2, seed=seed)
        assert wootters_concurrence(psi.density_matrix()).value == pytest.approx(
            pure_concurrence(psi).value, abs=1e-7
        )


def test_wootters_werner_closed_form():
    # Werner states p|Phi+><Phi+| + (1-p) I/4 have C = max(0, (3p - 1)/2)
    phi = max_entangled(2).density_matrix()
    for p in np.linspace(0, 1, 21):
        rho = white_noise_mix(phi, p).mixed
        assert wootters_concurrence(rho).value == pytest.approx(max(0, (3 * p - 1) / 2), abs=1e-7)


def test_two_qubit_chain():
    for rho in two_qubit_states(500):
        e = mnb_measure(rho)
        assert e.value == pytest.approx(mnb_from_cm(rho).value, abs=1e-10)
        assert e.value == pytest.approx(tangle_lower_hs(rho).value, abs=1e-10)
        assert wootters_concurrence(rho).value >= e.value - 1e-10


def test_two_qubit_only():
    rho = DensityMatrix.maximally_mixed(2, 3)
    for f in (mnb_measure, mnb_from_cm, wootters_concurrence):
        with pytest.raises(DomainError):
            f(rho)


def test_estimate_all(bell):
    phi = max_entangled(2)
    ests = estimate_all(phi)
    assert [e.source for e in ests[:3]] == [Source.PURE_REDUCTION, Source.PURE_BLOCH, Source.PURE_CM]
    assert Source.WOOTTERS in {e.source for e in ests}
    mixed = estimate_all(DensityMatrix.maximally_mixed(3, 3))
    assert all(e.kind is not Kind.EXACT_PURE for e in mixed)
    assert len(mixed) == 4


def test_estimate_serialization():
    e = concurrence_lower_cm(max_entangled(2).density_matrix())
    assert MeasureEstimate.from_dict(e.to_dict()) == e
