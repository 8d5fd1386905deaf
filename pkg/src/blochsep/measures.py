"""Concurrence, tangle and the two-qubit MNB measure.

For pure states the concurrence and tangle are computed exactly, three ways.
For mixed states only bounds are available (the convex roof is intractable
in general); lower bounds are clamped to ``[0, max]``, with raw values
below ``BOUND_NOISE_FLOOR`` reported as 0, and the unclamped number kept in
``raw``.  ``M`` below always denotes the smaller local
dimension; states with ``dim_a > dim_b`` are handled by swapping the
subsystems, which is recorded in ``swapped``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np

from .bloch import decompose
from .criteria import cm_threshold
from .errors import DomainError
from .matrix import (
    DensityMatrix,
    PureState,
    hs_norm,
    partial_trace_a,
    partial_trace_b,
    partial_transpose_a,
    realign,
    trace_norm,
)

__all__ = [
    "Measure",
    "Kind",
    "Source",
    "MeasureEstimate",
    "SIGMA_Y",
    "max_concurrence",
    "max_tangle",
    "pure_concurrence",
    "pure_tangle_bloch",
    "pure_tangle_cm",
    "concurrence_lower_caf",
    "concurrence_lower_cm",
    "tangle_lower_hs",
    "tangle_upper",
    "mnb_measure",
    "mnb_from_cm",
    "wootters_concurrence",
    "estimate_all",
]


class Measure(str, Enum):
    CONCURRENCE = "CONCURRENCE"
    TANGLE = "TANGLE"
    MNB = "MNB"


class Kind(str, Enum):
    EXACT_PURE = "EXACT_PURE"
    LOWER_BOUND = "LOWER_BOUND"
    UPPER_BOUND = "UPPER_BOUND"
    EXACT_CLOSED_FORM = "EXACT_CLOSED_FORM"


class Source(str, Enum):
    PURE_REDUCTION = "PURE_REDUCTION"
    PURE_BLOCH = "PURE_BLOCH"
    PURE_CM = "PURE_CM"
    CAF = "CAF"
    CM_TRACE_BOUND = "CM_TRACE_BOUND"
    HS_TANGLE_BOUND = "HS_TANGLE_BOUND"
    BLOCH_UPPER = "BLOCH_UPPER"
    MNB_DEF = "MNB_DEF"
    MNB_CM = "MNB_CM"
    WOOTTERS = "WOOTTERS"


@dataclass(frozen=True)
class MeasureEstimate:
    measure_id: Measure
    kind: Kind
    value: float
    source: Source
    raw: float
    swapped: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("measure_id", "kind", "source"):
            d[k] = d[k].value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MeasureEstimate":
        return cls(
            Measure(d["measure_id"]),
            Kind(d["kind"]),
            d["value"],
            Source(d["source"]),
            d["raw"],
            d.get("swapped", False),
        )


SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)


def max_concurrence(dim_a: int, dim_b: int) -> float:
    m = min(dim_a, dim_b)
    return math.sqrt(2 * (m - 1) / m)


def max_tangle(dim_a: int, dim_b: int) -> float:
    m = min(dim_a, dim_b)
    return 2 * (m - 1) / m


def _ordered(rho: DensityMatrix) -> tuple[DensityMatrix, bool]:
    if rho.dim_a > rho.dim_b:
        return rho.swapped(), True
    return rho, False


#: Raw lower bounds at or below this are rounding residue on the separable
#: boundary (product states sit exactly at every threshold) and report 0.
BOUND_NOISE_FLOOR = 1e-12


def _lower(measure, source, raw, cap, swapped=False) -> MeasureEstimate:
    value = 0.0 if raw <= BOUND_NOISE_FLOOR else min(raw, cap)
    return MeasureEstimate(measure, Kind.LOWER_BOUND, float(value), source, float(raw), swapped)


def _exact(measure, kind, source, value, swapped=False) -> MeasureEstimate:
    return MeasureEstimate(measure, kind, float(value), source, float(value), swapped)


# -- pure states -----------------------------------------------------------


def pure_concurrence(psi: PureState) -> MeasureEstimate:
    """``C = sqrt(2 (1 - Tr rho_A^2))`` from the smaller reduction."""
    rho = psi.density_matrix()
    swapped = psi.dim_a > psi.dim_b
    red = partial_trace_a(rho) if swapped else partial_trace_b(rho)
    p = float(np.sum(np.abs(red) ** 2))
    return _exact(Measure.CONCURRENCE, Kind.EXACT_PURE, Source.PURE_REDUCTION, math.sqrt(max(2 * (1 - p), 0.0)), swapped)


def pure_tangle_bloch(psi: PureState) -> MeasureEstimate:
    """``tau = 2 (M^2 - M - 2|r|^2) / M^2`` from the local Bloch vector."""
    rho, swapped = _ordered(psi.density_matrix())
    m = rho.dim_a
    r2 = float(np.sum(decompose(rho).r ** 2))
    return _exact(Measure.TANGLE, Kind.EXACT_PURE, Source.PURE_BLOCH, 2 * (m * m - m - 2 * r2) / m**2, swapped)


def _hs_tangle(rho: DensityMatrix) -> float:
    m, n = rho.dims
    t2 = hs_norm(decompose(rho).t) ** 2
    return 8 / (m * n * (m + n)) * (t2 - m * n * (m - 1) * (n - 1) / 4)


def pure_tangle_cm(psi: PureState) -> MeasureEstimate:
    """Tangle of a pure state from the correlation matrix alone:
    ``8 / (MN(M+N)) * (|T|_HS^2 - MN(M-1)(N-1)/4)``."""
    return _exact(Measure.TANGLE, Kind.EXACT_PURE, Source.PURE_CM, _hs_tangle(psi.density_matrix()))


# -- mixed-state bounds ----------------------------------------------------


def concurrence_lower_caf(rho: DensityMatrix) -> MeasureEstimate:
    """``C >= sqrt(2/(M(M-1))) * (max(|T_A(rho)|_tr, |R(rho)|_tr) - 1)``."""
    m = min(rho.dims)
    best = max(trace_norm(partial_transpose_a(rho)), trace_norm(realign(rho)))
    raw = math.sqrt(2 / (m * (m - 1))) * (best - 1)
    return _lower(Measure.CONCURRENCE, Source.CAF, raw, max_concurrence(*rho.dims))


def concurrence_lower_cm(rho: DensityMatrix) -> MeasureEstimate:
    """``C >= sqrt(8/(M^3 N^2 (M-1))) * (|T|_tr - sqrt(MN(M-1)(N-1)/4))``, ``M <= N``."""
    r, swapped = _ordered(rho)
    m, n = r.dims
    raw = math.sqrt(8 / (m**3 * n**2 * (m - 1))) * (trace_norm(decompose(r).t) - cm_threshold(m, n))
    return _lower(Measure.CONCURRENCE, Source.CM_TRACE_BOUND, raw, max_concurrence(m, n), swapped)


def tangle_lower_hs(rho: DensityMatrix) -> MeasureEstimate:
    """Tangle lower bound from ``|T|_HS``; exact on pure states."""
    return _lower(Measure.TANGLE, Source.HS_TANGLE_BOUND, _hs_tangle(rho), max_tangle(*rho.dims))


def tangle_upper(rho: DensityMatrix) -> MeasureEstimate:
    """``tau <= 2 min((M^2 - M - 2|r|^2)/M^2, (N^2 - N - 2|s|^2)/N^2)``."""
    m, n = rho.dims
    b = decompose(rho)
    val = 2 * min(
        (m * m - m - 2 * float(b.r @ b.r)) / m**2,
        (n * n - n - 2 * float(b.s @ b.s)) / n**2,
    )
    return _exact(Measure.TANGLE, Kind.UPPER_BOUND, Source.BLOCH_UPPER, val)


# -- two qubits ------------------------------------------------------------


def _require_qubits(rho: DensityMatrix, what: str) -> None:
    if rho.dims != (2, 2):
        raise DomainError(f"{what} is defined for two qubits only, got dims {rho.dims}")


def _spin_flip(rho: np.ndarray) -> np.ndarray:
    # conjugation in the computational (sigma_z eigen-) basis
    return _YY @ rho.conj() @ _YY


def mnb_measure(rho: DensityMatrix) -> MeasureEstimate:
    """``E = max(Tr rho^2 - 1 + Tr rho (sy x sy) rho* (sy x sy), 0)``."""
    _require_qubits(rho, "MNB measure")
    a = rho.matrix
    raw = float(np.real(np.trace(a @ a) - 1 + np.trace(a @ _spin_flip(a))))
    return MeasureEstimate(Measure.MNB, Kind.EXACT_CLOSED_FORM, max(raw, 0.0), Source.MNB_DEF, raw)


def mnb_from_cm(rho: DensityMatrix) -> MeasureEstimate:
    """MNB measure from the correlation matrix: ``max((|T|_HS^2 - 1)/2, 0)``."""
    _require_qubits(rho, "MNB measure")
    raw = (hs_norm(decompose(rho).t) ** 2 - 1) / 2
    return MeasureEstimate(Measure.MNB, Kind.EXACT_CLOSED_FORM, max(raw, 0.0), Source.MNB_CM, raw)


def wootters_concurrence(rho: DensityMatrix) -> MeasureEstimate:
    """Two-qubit concurrence ``max(0, mu_1 - mu_2 - mu_3 - mu_4)``.

    ``mu_i`` are the decreasing square roots of the eigenvalues of
    ``rho (sy x sy) rho* (sy x sy)``, obtained here from the Hermitian
    similar matrix ``sqrt(rho) rho~ sqrt(rho)`` for numerical stability.
    """
    _require_qubits(rho, "Wootters concurrence")
    w, v = np.linalg.eigh(rho.matrix)
    sq = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    h = sq @ _spin_flip(rho.matrix) @ sq
    mu = np.sqrt(np.clip(np.linalg.eigvalsh((h + h.conj().T) / 2), 0, None))[::-1]
    raw = float(mu[0] - mu[1] - mu[2] - mu[3])
    return MeasureEstimate(Measure.CONCURRENCE, Kind.EXACT_CLOSED_FORM, max(raw, 0.0), Source.WOOTTERS, raw)


def estimate_all(state) -> list[MeasureEstimate]:
    """Every applicable estimate for a :class:`PureState` or :class:`DensityMatrix`.

    Pure states get the three exact values first; every state gets the
    lower and upper bounds; two-qubit states additionally get the MNB
    measure in both forms and the Wootters concurrence.
    """
    out = []
    if isinstance(state, PureState):
        out += [pure_concurrence(state), pure_tangle_bloch(state), pure_tangle_cm(state)]
        rho = state.density_matrix()
    else:
        rho = state
    out += [concurrence_lower_caf(rho), concurrence_lower_cm(rho), tangle_lower_hs(rho), tangle_upper(rho)]
    if rho.dims == (2, 2):
        out += [mnb_measure(rho), mnb_from_cm(rho), wootters_concurrence(rho)]
    return out
