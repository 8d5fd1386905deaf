"""White-noise robustness: smallest mixing weight at which a criterion fires."""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq

from .criteria import CRITERIA, DETECTION_TOL, evaluate
from .matrix import DensityMatrix

__all__ = ["SweepResult", "noise_threshold", "sweep_noise", "noisy"]


@dataclass(frozen=True)
class SweepResult:
    criterion_id: str
    threshold_p: float | None  # None: never detected for p in [0, 1]
    monotone: bool
    evaluations: int

    def to_dict(self) -> dict:
        return asdict(self)


def noisy(rho: DensityMatrix, p: float) -> DensityMatrix:
    """``p * rho + (1 - p) * I / (MN)`` without re-validation."""
    d = rho.dim
    return DensityMatrix(p * rho.matrix + (1 - p) * np.eye(d) / d, rho.dim_a, rho.dim_b, validate=False)


def noise_threshold(
    rho: DensityMatrix,
    criterion: str,
    resolution: int = 100,
    bisect_tol: float = 1e-6,
    tol: float | None = None,
) -> SweepResult:
    """Minimal ``p`` for which ``criterion`` detects ``p * rho + (1-p) I/MN``.

    The margin is first scanned on ``resolution + 1`` equally spaced points of
    ``[0, 1]`` to bracket the first detection, then refined with Brent's
    method to ``bisect_tol``.  A warning is issued if the criterion value is
    not nondecreasing on the grid, since the bracket then need not contain the
    only crossing.
    """
    tol = DETECTION_TOL if tol is None else tol
    grid = np.linspace(0.0, 1.0, resolution + 1)
    values = np.array([evaluate(criterion, noisy(rho, p), tol).value for p in grid])
    thr = evaluate(criterion, rho, tol).threshold
    margins = values - thr - tol
    monotone = bool(np.all(np.diff(values) >= -1e-12 * max(1.0, float(np.max(np.abs(values))))))
    if not monotone:
        warnings.warn(
            f"{criterion} value is not monotone in p on the grid; the reported threshold "
            "is the first crossing found",
            RuntimeWarning,
            stacklevel=2,
        )
    hits = np.flatnonzero(margins > 0)
    n_eval = len(grid)
    if hits.size == 0:
        return SweepResult(criterion, None, monotone, n_eval)
    k = int(hits[0])
    if k == 0:
        return SweepResult(criterion, 0.0, monotone, n_eval)

    calls = 0

    def f(p):
        nonlocal calls
        calls += 1
        return evaluate(criterion, noisy(rho, p), tol).value - thr - tol

    p_star = brentq(f, grid[k - 1], grid[k], xtol=bisect_tol, rtol=4 * np.finfo(float).eps)
    return SweepResult(criterion, float(p_star), monotone, n_eval + calls)


def sweep_noise(
    rho: DensityMatrix,
    criteria=CRITERIA,
    resolution: int = 100,
    bisect_tol: float = 1e-6,
    tol: float | None = None,
    workers: int | None = None,
) -> list[SweepResult]:
    """:func:`noise_threshold` for several criteria, results in input order."""
    if workers == 1 or len(criteria) == 1:
        return [noise_threshold(rho, c, resolution, bisect_tol, tol) for c in criteria]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda c: noise_threshold(rho, c, resolution, bisect_tol, tol), criteria))
