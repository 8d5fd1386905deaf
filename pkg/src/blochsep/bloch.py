"""SU(d) generators and the Fano (Bloch) form of bipartite states."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError, DomainError, NumericalError, ValidationError
from .matrix import DEFAULT_TOLERANCES, DensityMatrix, PureState, partial_trace_b

__all__ = [
    "GeneratorBasis",
    "BlochDecomposition",
    "su_generators",
    "bloch_vector",
    "decompose",
    "reconstruct",
    "purity_relations_check",
]

#: Imaginary residue above which a Bloch trace signals a non-Hermitian input.
IMAG_RESIDUE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    """Traceless Hermitian generators with ``Tr(l_i l_j) = 2 delta_ij``.

    ``generators`` has shape ``(d**2 - 1, d, d)`` and is read-only.
    """

    dim: int
    generators: np.ndarray

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]


@lru_cache(maxsize=None)
def _generators(d: int) -> np.ndarray:
    out = []
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = g[k, j] = 1
        out.append(g)
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = -1j
        g[k, j] = 1j
        out.append(g)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1
        diag[l] = -l
        out.append(np.sqrt(2 / (l * (l + 1))) * np.diag(diag).astype(complex))
    gens = np.array(out)
    gens.setflags(write=False)
    return gens


def su_generators(d: int) -> GeneratorBasis:
    """Generalized Gell-Mann basis of su(d).

    Order: symmetric ``|j><k| + |k><j|`` for ``j < k`` (lexicographic), then
    antisymmetric ``-i(|j><k| - |k><j|)`` in the same order, then the ``d - 1``
    diagonal matrices.  For ``d = 2`` this is ``(sigma_x, sigma_y, sigma_z)``.
    The result is cached per dimension.
    """
    if int(d) != d or d < 2:
        raise DomainError(f"su_generators needs an integer d >= 2, got {d}")
    d = int(d)
    return GeneratorBasis(d, _generators(d))


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    """Local Bloch vectors ``r``, ``s`` and correlation matrix ``t``."""

    dim_a: int
    dim_b: int
    r: np.ndarray
    s: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        m, n = self.dim_a, self.dim_b
        r = np.asarray(self.r, dtype=float).ravel()
        s = np.asarray(self.s, dtype=float).ravel()
        t = np.asarray(self.t, dtype=float)
        if r.shape != (m * m - 1,) or s.shape != (n * n - 1,) or t.shape != (m * m - 1, n * n - 1):
            raise DimensionError(
                f"Bloch data shapes r{r.shape} s{s.shape} t{t.shape} inconsistent with ({m}, {n})"
            )
        if not (np.all(np.isfinite(r)) and np.all(np.isfinite(s)) and np.all(np.isfinite(t))):
            raise ValidationError("Bloch data has non-finite entries")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    def allclose(self, other: "BlochDecomposition", atol: float = 1e-10) -> bool:
        return (
            self.dims == other.dims
            and np.allclose(self.r, other.r, rtol=0, atol=atol)
            and np.allclose(self.s, other.s, rtol=0, atol=atol)
            and np.allclose(self.t, other.t, rtol=0, atol=atol)
        )


def _real(x: np.ndarray, what: str) -> np.ndarray:
    im = float(np.max(np.abs(np.imag(x)), initial=0.0))
    if im > IMAG_RESIDUE_TOL:
        raise NumericalError(f"{what} has imaginary residue {im:.3e}; input is not Hermitian")
    return np.real(x).copy()


def bloch_vector(state: np.ndarray) -> np.ndarray:
    """Bloch vector ``(d/2) Tr(state l_i)`` of a single ``d x d`` operator."""
    state = np.asarray(state, dtype=complex)
    d = state.shape[0]
    gens = su_generators(d).generators
    return _real((d / 2) * np.einsum("ij,kji->k", state, gens), "Bloch vector")


def decompose(rho: DensityMatrix) -> BlochDecomposition:
    """Fano-form coefficients of ``rho``.

    ``r_i = (M/2) Tr(rho l_i (x) I)``, ``s_j = (N/2) Tr(rho I (x) l_j)`` and
    ``t_ij = (MN/4) Tr(rho l_i (x) l_j)``, with generators ordered as in
    :func:`su_generators`.
    """
    m, n = rho.dims
    ga = su_generators(m).generators
    gb = su_generators(n).generators
    x = rho.tensor()
    # Tr(rho (a (x) b)) = sum rho[i,j,k,l] a[k,i] b[l,j]
    half = np.einsum("ijkl,pki->pjl", x, ga)
    t = (m * n / 4) * np.einsum("pjl,qlj->pq", half, gb)
    r = (m / 2) * np.einsum("pjj->p", half)
    s = (n / 2) * np.einsum("ijil,qlj->q", x, gb)
    return BlochDecomposition(m, n, _real(r, "r"), _real(s, "s"), _real(t, "T"))


def reconstruct(b: BlochDecomposition, check_psd: bool = False) -> DensityMatrix:
    """Inverse of :func:`decompose`.

    The result is Hermitian with unit trace.  Positivity only holds for
    admissible ``(r, s, t)`` and is checked when ``check_psd`` is True.

    Raises
    ------
    ValidationError
        When ``check_psd`` is set and the reconstructed matrix has a negative
        eigenvalue; the message carries the minimal eigenvalue.
    """
    m, n = b.dims
    ga = su_generators(m).generators
    gb = su_generators(n).generators
    a_part = np.eye(m) + np.einsum("p,pik->ik", b.r, ga)
    rho = np.kron(a_part, np.eye(n)) + np.kron(np.eye(m), np.einsum("q,qjl->jl", b.s, gb))
    corr = np.einsum("pq,pik,qjl->ijkl", b.t, ga, gb).reshape(m * n, m * n)
    rho = (rho + corr) / (m * n)
    rho = (rho + rho.conj().T) / 2
    if check_psd:
        lam = float(np.linalg.eigvalsh(rho)[0])
        if lam < -DEFAULT_TOLERANCES.psd:
            err = ValidationError(f"reconstructed matrix is not PSD (min eigenvalue {lam:.6e})")
            err.min_eigenvalue = lam
            raise err
    return DensityMatrix(rho, m, n, validate=check_psd)


def purity_relations_check(psi: PureState) -> tuple[float, float, float]:
    """Residuals of the pure-state Bloch identities.

    Returns
    -------
    tuple of float
        ``|Tr rho_A^2 - (M + 2|r|^2)/M^2|``,
        ``|(M + 2|r|^2)/M^2 - (N + 2|s|^2)/N^2|`` and
        ``|N|r|^2 + M|s|^2 + 2|T|_HS^2 - MN(MN - 1)/2|``.
    """
    rho = psi.density_matrix()
    m, n = rho.dims
    b = decompose(rho)
    r2 = float(b.r @ b.r)
    s2 = float(b.s @ b.s)
    t2 = float(np.sum(b.t**2))
    pa = float(np.sum(np.abs(partial_trace_b(rho)) ** 2))
    lhs_a = (m + 2 * r2) / m**2
    lhs_b = (n + 2 * s2) / n**2
    return (
        abs(pa - lhs_a),
        abs(lhs_a - lhs_b),
        abs(n * r2 + m * s2 + 2 * t2 - m * n * (m * n - 1) / 2),
    )
