"""Dense complex-matrix primitives for bipartite states.

Composite basis states ``|ij>`` are ordered row-major, i.e. the index of
``|ij>`` is ``i * N + j`` where ``i`` labels subsystem A (``M`` levels) and
``j`` labels subsystem B (``N`` levels).  Every rearrangement below is written
against that single convention by reshaping ``rho`` to a rank-4 tensor
``rho[i, j, k, l] = <ij|rho|kl>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NumericalError, ValidationError

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "MAX_DIM",
    "DensityMatrix",
    "PureState",
    "kron",
    "partial_trace_a",
    "partial_trace_b",
    "partial_transpose_a",
    "partial_transpose_b",
    "realign",
    "trace_norm",
    "hs_norm",
    "inv_sqrt_psd",
    "purity",
    "is_hermitian",
]

#: Largest row or column count ``kron`` will produce.
MAX_DIM = 4096


@dataclass(frozen=True)
class Tolerances:
    """Validation tolerances for density matrices and pure states."""

    hermitian: float = 1e-12
    trace: float = 1e-12
    psd: float = 1e-10
    norm: float = 1e-12


DEFAULT_TOLERANCES = Tolerances()


def _as_matrix(x) -> np.ndarray:
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def is_hermitian(a: np.ndarray, atol: float = DEFAULT_TOLERANCES.hermitian) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and float(np.max(np.abs(a - a.conj().T), initial=0.0)) <= atol


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated bipartite density matrix on ``C^M (x) C^N``.

    Parameters
    ----------
    matrix : array_like
        ``MN x MN`` complex matrix.
    dim_a, dim_b : int
        Subsystem dimensions ``M`` and ``N``.  ``M <= N`` is not required.
    tol : Tolerances, optional
        Validation tolerances (Hermiticity, trace, positivity).
    validate : bool
        Skip all checks when False.  Only for internal callers that construct
        states by operations known to preserve validity.
    """

    matrix: np.ndarray
    dim_a: int
    dim_b: int
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        m, n = int(self.dim_a), int(self.dim_b)
        if m < 1 or n < 1:
            raise DimensionError(f"subsystem dimensions must be positive, got ({m}, {n})")
        a = _as_matrix(self.matrix)
        if a.shape != (m * n, m * n):
            raise DimensionError(f"matrix shape {a.shape} does not match dims ({m}, {n})")
        object.__setattr__(self, "dim_a", m)
        object.__setattr__(self, "dim_b", n)
        object.__setattr__(self, "matrix", _readonly(a))
        if self.validate:
            self.check()

    def check(self) -> None:
        """Raise :class:`ValidationError` unless Hermitian, unit trace and PSD."""
        a = self.matrix
        herm = float(np.max(np.abs(a - a.conj().T)))
        if herm > self.tol.hermitian:
            raise ValidationError(f"matrix is not Hermitian (max deviation {herm:.3e})")
        tr = np.trace(a)
        if abs(tr - 1) > self.tol.trace:
            raise ValidationError(f"trace is {tr.real:.15g}, expected 1")
        lam = float(np.linalg.eigvalsh(a)[0])
        if lam < -self.tol.psd:
            raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {lam:.3e})")

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    @classmethod
    def from_pure(cls, psi: "PureState") -> "DensityMatrix":
        return cls(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.dim_a, psi.dim_b)

    @classmethod
    def maximally_mixed(cls, dim_a: int, dim_b: int) -> "DensityMatrix":
        d = dim_a * dim_b
        return cls(np.eye(d) / d, dim_a, dim_b)

    def tensor(self) -> np.ndarray:
        """View as ``rho[i, j, k, l] = <ij|rho|kl>``."""
        return self.matrix.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)

    def swapped(self) -> "DensityMatrix":
        """Same state with the roles of A and B exchanged."""
        t = self.tensor().transpose(1, 0, 3, 2).reshape(self.dim, self.dim)
        return DensityMatrix(t, self.dim_b, self.dim_a, tol=self.tol, validate=False)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector on ``C^M (x) C^N``."""

    amplitudes: np.ndarray
    dim_a: int
    dim_b: int
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex).ravel()
        m, n = int(self.dim_a), int(self.dim_b)
        if v.size != m * n:
            raise DimensionError(f"{v.size} amplitudes do not match dims ({m}, {n})")
        if not np.all(np.isfinite(v)):
            raise ValidationError("amplitudes have non-finite entries")
        nrm = float(np.vdot(v, v).real)
        if abs(nrm - 1) > self.tol.norm:
            raise ValidationError(f"squared norm is {nrm:.15g}, expected 1")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "amplitudes", v)
        object.__setattr__(self, "dim_a", m)
        object.__setattr__(self, "dim_b", n)

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    def coefficient_matrix(self) -> np.ndarray:
        """Amplitudes arranged as an ``M x N`` matrix ``psi[i, j] = <ij|psi>``."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def density_matrix(self) -> DensityMatrix:
        return DensityMatrix.from_pure(self)


def _unpack(rho, dims) -> tuple[np.ndarray, int, int]:
    if isinstance(rho, DensityMatrix):
        return rho.matrix, rho.dim_a, rho.dim_b
    if dims is None:
        raise DimensionError("dims=(M, N) is required for a bare array")
    a = _as_matrix(rho)
    m, n = dims
    if a.shape != (m * n, m * n):
        raise DimensionError(f"matrix shape {a.shape} does not match dims ({m}, {n})")
    return a, m, n


def kron(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    """Kronecker product with ``(a (x) b)[i*p + k, j*q + l] = a[i, j] * b[k, l]``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise DimensionError("kron expects 2-d arrays")
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows > max_dim or cols > max_dim:
        raise DimensionError(f"kron result {rows}x{cols} exceeds max_dim={max_dim}")
    return np.kron(a, b)


def partial_trace_b(rho, dims=None) -> np.ndarray:
    """Reduced state ``rho_A = Tr_B rho`` (``M x M``)."""
    a, m, n = _unpack(rho, dims)
    return np.einsum("ijkj->ik", a.reshape(m, n, m, n))


def partial_trace_a(rho, dims=None) -> np.ndarray:
    """Reduced state ``rho_B = Tr_A rho`` (``N x N``)."""
    a, m, n = _unpack(rho, dims)
    return np.einsum("ijil->jl", a.reshape(m, n, m, n))


def partial_transpose_a(rho, dims=None) -> np.ndarray:
    """Partial transpose on A: ``T_A(rho)[ij, kl] = rho[kj, il]``."""
    a, m, n = _unpack(rho, dims)
    return a.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)


def partial_transpose_b(rho, dims=None) -> np.ndarray:
    a, m, n = _unpack(rho, dims)
    return a.reshape(m, n, m, n).transpose(0, 3, 2, 1).reshape(m * n, m * n)


def realign(rho, dims=None) -> np.ndarray:
    """Realigned matrix ``R(rho)[(i,j), (k,l)] = rho[ik, jl]`` of shape ``M^2 x N^2``.

    Rows are indexed by the pair of A indices, columns by the pair of B
    indices, so that ``realign(A (x) B) = vec(A) vec(B)^T`` with row-stacking
    ``vec``.
    """
    a, m, n = _unpack(rho, dims)
    return a.reshape(m, n, m, n).transpose(0, 2, 1, 3).reshape(m * m, n * n)


def singular_values(x) -> np.ndarray:
    a = _as_matrix(x)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc


def trace_norm(x) -> float:
    """Sum of singular values (nuclear / Ky Fan norm)."""
    return float(np.sum(singular_values(x)))


def hs_norm(x) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(_as_matrix(x), "fro"))


def inv_sqrt_psd(m, eps: float = 0.0, atol: float = 1e-10) -> np.ndarray:
    """``(m + eps*I)^(-1/2)`` for Hermitian PSD ``m``, via eigendecomposition.

    Raises
    ------
    ValidationError
        If ``m`` is not Hermitian within ``atol``.
    NumericalError
        If ``m + eps*I`` has a non-positive eigenvalue.
    """
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1] or not is_hermitian(a, atol):
        raise ValidationError("inv_sqrt_psd requires a Hermitian matrix")
    a = (a + a.conj().T) / 2
    w, v = np.linalg.eigh(a)
    w = w + eps
    if w[0] <= 0:
        raise NumericalError(f"matrix is singular or indefinite (min eigenvalue {w[0]:.3e})")
    return (v / np.sqrt(w)) @ v.conj().T


def purity(rho, dims=None) -> float:
    """``Tr(rho^2)``."""
    a, _, _ = _unpack(rho, dims)
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(a) ** 2))
