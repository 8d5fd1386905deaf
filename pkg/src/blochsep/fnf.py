"""Filter normal form by alternating local whitening.

Local filters ``F_A``, ``F_B`` (determinant one) map a state to

    rho' = (F_A (x) F_B) rho (F_A (x) F_B)^dag / Tr(...)

and the normal form is the image whose reductions are both maximally mixed.
The iteration here whitens the A reduction, renormalizes, whitens the B
reduction, and repeats until both local Bloch vectors vanish.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .criteria import ppt_report
from .errors import NumericalError, SingularFilterError, SingularReductionError
from .matrix import (
    DensityMatrix,
    hs_norm,
    inv_sqrt_psd,
    partial_trace_a,
    partial_trace_b,
)

__all__ = [
    "FilterResult",
    "FnfInvariantReport",
    "apply_filter",
    "local_residual",
    "filter_normal_form",
    "fnf_invariant_check",
]

log = logging.getLogger(__name__)

#: Reductions with a smaller eigenvalue need ``eps > 0`` to be whitened.
SINGULAR_REDUCTION_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class FilterResult:
    rho_tilde: DensityMatrix
    f_a: np.ndarray
    f_b: np.ndarray
    iterations: int
    converged: bool
    residual: float


@dataclass(frozen=True)
class FnfInvariantReport:
    ppt_before: float
    ppt_after: float
    ppt_preserved: bool
    reconstruction_residual: float
    reduction_residual_a: float
    reduction_residual_b: float


def _hermitize(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


def apply_filter(rho: DensityMatrix, f_a, f_b) -> DensityMatrix:
    """Apply local filters and renormalize.

    Raises
    ------
    SingularFilterError
        If either filter has smallest singular value below ``1e-12`` or the
        normalizing trace vanishes.
    """
    f_a = np.asarray(f_a, dtype=complex)
    f_b = np.asarray(f_b, dtype=complex)
    m, n = rho.dims
    if f_a.shape != (m, m) or f_b.shape != (n, n):
        raise SingularFilterError(f"filter shapes {f_a.shape}, {f_b.shape} do not match dims ({m}, {n})")
    for name, f in (("F_A", f_a), ("F_B", f_b)):
        smin = np.linalg.svd(f, compute_uv=False)[-1]
        if smin <= 1e-12:
            raise SingularFilterError(f"{name} is singular (smallest singular value {smin:.3e})")
    big = np.kron(f_a, f_b)
    out = big @ rho.matrix @ big.conj().T
    tr = np.trace(out).real
    if not tr > 1e-300:
        raise SingularFilterError("filtered state has zero trace")
    return DensityMatrix(_hermitize(out / tr), m, n, tol=rho.tol)


def local_residual(rho: DensityMatrix) -> float:
    """``max(|r|, |s|)``: Euclidean norms of the local Bloch vectors.

    Uses ``|r| = (M / sqrt 2) ||rho_A - I/M||_HS``.
    """
    m, n = rho.dims
    ra = partial_trace_b(rho) - np.eye(m) / m
    rb = partial_trace_a(rho) - np.eye(n) / n
    return max(m * hs_norm(ra), n * hs_norm(rb)) / np.sqrt(2)


def _whitening_filter(red: np.ndarray, eps: float) -> np.ndarray:
    d = red.shape[0]
    red = _hermitize(red)
    w = np.linalg.eigvalsh(red)
    if eps == 0 and w[0] <= SINGULAR_REDUCTION_TOL:
        raise SingularReductionError(
            f"reduced state is numerically singular (min eigenvalue {w[0]:.3e}); pass eps > 0"
        )
    g = inv_sqrt_psd(red, eps)
    # det(g) = prod(w + eps)^(-1/2) > 0, so the real d-th root normalizes it to one
    logdet = -0.5 * np.sum(np.log(w + eps))
    return g * np.exp(-logdet / d)


def filter_normal_form(
    rho: DensityMatrix,
    tol: float = 1e-9,
    max_iter: int = 10000,
    eps: float = 0.0,
) -> FilterResult:
    """Bring ``rho`` to filter normal form.

    Parameters
    ----------
    rho : DensityMatrix
        Input state.  Full-rank states always converge; rank-deficient states
        generally need a small ``eps`` regularizing the whitening step.
    tol : float
        Stop once ``max(|r|, |s|) <= tol``.
    max_iter : int
        Maximum number of A/B sweeps.  Running out is not an error; the last
        iterate is returned with ``converged=False``.
    eps : float
        Shift added to each reduction before taking its inverse square root.
        The state itself is never mixed with noise.

    Returns
    -------
    FilterResult
    """
    m, n = rho.dims
    f_a = np.eye(m, dtype=complex)
    f_b = np.eye(n, dtype=complex)
    cur = rho.matrix.copy()
    res = local_residual(rho)
    it = 0
    while res > tol and it < max_iter:
        g_a = _whitening_filter(partial_trace_b(cur, (m, n)), eps)
        big = np.kron(g_a, np.eye(n))
        cur = big @ cur @ big.conj().T
        cur = _hermitize(cur / np.trace(cur).real)
        g_b = _whitening_filter(partial_trace_a(cur, (m, n)), eps)
        big = np.kron(np.eye(m), g_b)
        cur = big @ cur @ big.conj().T
        cur = _hermitize(cur / np.trace(cur).real)
        f_a = g_a @ f_a
        f_b = g_b @ f_b
        it += 1
        if not np.all(np.isfinite(cur)):
            raise NumericalError(f"filter iteration diverged after {it} steps")
        res = local_residual(DensityMatrix(cur, m, n, validate=False))
    converged = res <= tol
    if not converged:
        log.warning("filter normal form did not converge in %d iterations (residual %.3e)", it, res)
    rho_tilde = DensityMatrix(cur, m, n, tol=rho.tol)
    return FilterResult(rho_tilde, f_a, f_b, it, bool(converged), float(res))


def fnf_invariant_check(rho: DensityMatrix, result: FilterResult, ppt_tol: float = 1e-8) -> FnfInvariantReport:
    """Check what the filtering should have preserved or produced.

    Reports the PPT trace norm before and after, the entrywise distance
    between ``result.rho_tilde`` and the filters re-applied to ``rho``, and
    the HS distance of each reduction from maximal mixedness.
    """
    before = ppt_report(rho).value
    after = ppt_report(result.rho_tilde).value
    is_ppt_before = abs(before - 1) <= ppt_tol
    is_ppt_after = abs(after - 1) <= ppt_tol
    again = apply_filter(rho, result.f_a, result.f_b)
    recon = float(np.max(np.abs(again.matrix - result.rho_tilde.matrix)))
    m, n = rho.dims
    ra = hs_norm(partial_trace_b(result.rho_tilde) - np.eye(m) / m)
    rb = hs_norm(partial_trace_a(result.rho_tilde) - np.eye(n) / n)
    return FnfInvariantReport(before, after, is_ppt_before == is_ppt_after, recon, ra, rb)
