"""Separability criteria reported as (value, threshold, verdict) records.

Each criterion is only sufficient for entanglement: a state is flagged when
``value - threshold`` exceeds ``detection_tol``.  A state that is not flagged
may still be entangled.
"""

from __future__ import annotations

import math
import os
from dataclasses import asdict, dataclass

from .bloch import decompose
from .errors import BlochsepError
from .matrix import DensityMatrix, hs_norm, partial_transpose_a, realign, trace_norm

__all__ = [
    "CRITERIA",
    "DETECTION_TOL",
    "CriterionReport",
    "cm_threshold",
    "ppt_report",
    "ccnr_report",
    "cm_report",
    "cm_hs_report",
    "full_report",
    "evaluate",
]

#: Default margin a criterion value must exceed its threshold by.
#: Overridable through the ``BLOCHSEP_DETECTION_TOL`` environment variable.
DETECTION_TOL = float(os.environ.get("BLOCHSEP_DETECTION_TOL", "1e-9"))

CRITERIA = ("PPT", "CCNR", "CM_TRACE", "CM_HS")


@dataclass(frozen=True)
class CriterionReport:
    criterion_id: str
    value: float
    threshold: float
    margin: float
    entangled: bool
    error: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "CriterionReport":
        return cls(**d)


def _report(cid: str, value: float, threshold: float, tol: float | None) -> CriterionReport:
    tol = DETECTION_TOL if tol is None else tol
    margin = value - threshold
    return CriterionReport(cid, value, threshold, margin, bool(margin > tol))


def cm_threshold(dim_a: int, dim_b: int) -> float:
    """Largest ``||T||_tr`` a separable ``M x N`` state can have."""
    return math.sqrt(dim_a * dim_b * (dim_a - 1) * (dim_b - 1) / 4)


def ppt_report(rho: DensityMatrix, tol: float | None = None) -> CriterionReport:
    return _report("PPT", trace_norm(partial_transpose_a(rho)), 1.0, tol)


def ccnr_report(rho: DensityMatrix, tol: float | None = None) -> CriterionReport:
    return _report("CCNR", trace_norm(realign(rho)), 1.0, tol)


def cm_report(rho: DensityMatrix, tol: float | None = None) -> CriterionReport:
    """Correlation-matrix criterion: ``||T||_tr <= sqrt(MN(M-1)(N-1)/4)``."""
    return _report("CM_TRACE", trace_norm(decompose(rho).t), cm_threshold(*rho.dims), tol)


def cm_hs_report(rho: DensityMatrix, tol: float | None = None) -> CriterionReport:
    """Hilbert-Schmidt variant of the CM criterion (never stronger than :func:`cm_report`)."""
    return _report("CM_HS", hs_norm(decompose(rho).t), cm_threshold(*rho.dims), tol)


_DISPATCH = {
    "PPT": ppt_report,
    "CCNR": ccnr_report,
    "CM_TRACE": cm_report,
    "CM_HS": cm_hs_report,
}


def evaluate(criterion_id: str, rho: DensityMatrix, tol: float | None = None) -> CriterionReport:
    try:
        fn = _DISPATCH[criterion_id]
    except KeyError:
        raise ValueError(f"unknown criterion {criterion_id!r}; expected one of {CRITERIA}") from None
    return fn(rho, tol)


def full_report(rho: DensityMatrix, tol: float | None = None) -> list[CriterionReport]:
    """All four criteria in the order PPT, CCNR, CM_TRACE, CM_HS.

    A criterion that fails numerically is reported with ``value = nan`` and
    the error message, and does not prevent the others from running.
    """
    out = []
    for cid in CRITERIA:
        try:
            out.append(evaluate(cid, rho, tol))
        except BlochsepError as exc:
            nan = float("nan")
            out.append(CriterionReport(cid, nan, nan, nan, False, error=f"{type(exc).__name__}: {exc}"))
    return out
