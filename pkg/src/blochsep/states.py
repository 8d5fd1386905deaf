"""Concrete states: GenTiles2 bound entangled states, maximally entangled
states, white-noise mixtures, seeded random ensembles and the state file
format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, NumericalError, ValidationError
from .matrix import DensityMatrix, PureState

__all__ = [
    "UpbFamily",
    "NoiseMixture",
    "gentiles2_upb",
    "gentiles2_state",
    "max_entangled",
    "white_noise_mix",
    "random_pure",
    "random_mixed",
    "random_separable",
    "random_unitary",
    "state_to_dict",
    "state_from_dict",
    "write_state",
    "read_state",
]


@dataclass(frozen=True, eq=False)
class UpbFamily:
    """Orthonormal product vectors, one per row of ``vectors``."""

    dim_a: int
    dim_b: int
    vectors: np.ndarray

    def __len__(self):
        return len(self.vectors)

    def pure_states(self) -> list[PureState]:
        return [PureState(v, self.dim_a, self.dim_b) for v in self.vectors]

    def defects(self) -> dict[str, float]:
        """Worst deviations from unit norm, orthogonality and product form."""
        v = self.vectors
        gram = v.conj() @ v.T
        k = len(v)
        sv2 = [
            np.linalg.svd(x.reshape(self.dim_a, self.dim_b), compute_uv=False)[1] for x in v
        ]
        return {
            "norm": float(np.max(np.abs(np.diag(gram) - 1))),
            "overlap": float(np.max(np.abs(gram - np.diag(np.diag(gram))))) if k > 1 else 0.0,
            "product": float(max(sv2)),
        }


@dataclass(frozen=True, eq=False)
class NoiseMixture:
    base: DensityMatrix
    p: float
    mixed: DensityMatrix


def _basis(d: int, i: int) -> np.ndarray:
    e = np.zeros(d, dtype=complex)
    e[i] = 1
    return e


def _check_gt2_dims(m: int, n: int) -> None:
    if not (m >= 3 and n > 3 and m <= n):
        raise DomainError(f"GenTiles2 needs M >= 3, N > 3 and M <= N, got ({m}, {n})")


def gentiles2_upb(m: int, n: int) -> UpbFamily:
    """The GenTiles2 unextendible product basis in ``M x N``.

    Vectors, in order: ``|F>``, then ``|S_j>`` for ``j = 0..M-1``, then
    ``|L_jk>`` for ``j = 0..M-1``, ``k = 1..N-3``:

    * ``|F> = (MN)^(-1/2) sum_ij |ij>``
    * ``|S_j> = (|j> - |j+1 mod M>) |j> / sqrt 2``
    * ``|L_jk> = (N-2)^(-1/2) |j> (sum_{l=0}^{M-3} w^(lk) |l+j+1 mod M>
      + sum_{l=M-2}^{N-3} w^(lk) |l+2>)`` with ``w = exp(2 pi i / (N-2))``

    Raises
    ------
    DomainError
        Unless ``M >= 3``, ``N > 3`` and ``M <= N``.
    NumericalError
        If the constructed set fails the orthonormal-product-basis checks.
    """
    _check_gt2_dims(m, n)
    vecs = [np.ones(m * n, dtype=complex) / np.sqrt(m * n)]
    for j in range(m):
        a = _basis(m, j) - _basis(m, (j + 1) % m)
        vecs.append(np.kron(a, _basis(n, j)) / np.sqrt(2))
    for j in range(m):
        for k in range(1, n - 2):
            b = np.zeros(n, dtype=complex)
            for l in range(0, m - 2):
                b[(l + j + 1) % m] += np.exp(2j * np.pi * l * k / (n - 2))
            for l in range(m - 2, n - 2):
                b[l + 2] += np.exp(2j * np.pi * l * k / (n - 2))
            vecs.append(np.kron(_basis(m, j), b) / np.sqrt(n - 2))
    fam = UpbFamily(m, n, np.array(vecs))
    bad = {k: v for k, v in fam.defects().items() if v > (1e-12 if k == "norm" else 1e-10)}
    if bad:
        raise NumericalError(f"GenTiles2({m}, {n}) is not an orthonormal product basis: {bad}")
    return fam


def gentiles2_state(m: int, n: int) -> DensityMatrix:
    """Bound entangled state ``(I - P_UPB) / (2M - 1)`` built from GenTiles2."""
    fam = gentiles2_upb(m, n)
    proj = fam.vectors.T @ fam.vectors.conj()
    rho = (np.eye(m * n) - proj) / (2 * m - 1)
    return DensityMatrix((rho + rho.conj().T) / 2, m, n)


def max_entangled(d: int) -> PureState:
    """``d^(-1/2) sum_i |ii>`` on ``d x d``."""
    if d < 2:
        raise DomainError(f"max_entangled needs d >= 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    v[np.arange(d) * (d + 1)] = 1 / np.sqrt(d)
    return PureState(v, d, d)


def white_noise_mix(base: DensityMatrix, p: float) -> NoiseMixture:
    """``p * base + (1 - p) * I / (MN)``."""
    if not 0 <= p <= 1:
        raise DomainError(f"mixing weight must lie in [0, 1], got {p}")
    d = base.dim
    mixed = p * base.matrix + (1 - p) * np.eye(d) / d
    return NoiseMixture(base, float(p), DensityMatrix(mixed, base.dim_a, base.dim_b, tol=base.tol))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)


def _complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def random_pure(m: int, n: int, seed=0) -> PureState:
    """Haar-random pure state (normalized complex Gaussian amplitudes)."""
    rng = _rng(seed)
    return PureState(_unit(_complex_normal(rng, m * n)), m, n)


def random_mixed(m: int, n: int, rank: int | None = None, seed=0) -> DensityMatrix:
    """Mixture of ``rank`` random pure projectors with flat-Dirichlet weights.

    ``rank`` defaults to ``M*N`` (full rank with probability one).
    """
    rank = m * n if rank is None else rank
    if rank < 1:
        raise DomainError(f"rank must be >= 1, got {rank}")
    rng = _rng(seed)
    vs = _complex_normal(rng, (rank, m * n))
    vs /= np.linalg.norm(vs, axis=1, keepdims=True)
    w = rng.dirichlet(np.ones(rank))
    rho = (vs.T * w) @ vs.conj()
    return DensityMatrix((rho + rho.conj().T) / 2, m, n)


def random_separable(m: int, n: int, terms: int = 10, seed=0) -> DensityMatrix:
    """Explicit convex mixture of ``terms`` random product pure states."""
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    rng = _rng(seed)
    w = rng.dirichlet(np.ones(terms))
    rho = np.zeros((m * n, m * n), dtype=complex)
    for p in w:
        v = np.kron(_unit(_complex_normal(rng, m)), _unit(_complex_normal(rng, n)))
        rho += p * np.outer(v, v.conj())
    return DensityMatrix((rho + rho.conj().T) / 2, m, n)


def random_unitary(d: int, seed=0) -> np.ndarray:
    """Haar-random ``d x d`` unitary (QR of a complex Gaussian with phase fix)."""
    rng = _rng(seed)
    q, r = np.linalg.qr(_complex_normal(rng, (d, d)))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


# -- state files -----------------------------------------------------------
#
# JSON document:
#   {"dim_a": M, "dim_b": N, "matrix": [[[re, im], ...], ...],
#    "name": optional str, "seed": optional int}
# Floats are written with repr precision so files round-trip exactly.


def state_to_dict(rho: DensityMatrix, name: str | None = None, seed: int | None = None) -> dict:
    doc = {
        "dim_a": rho.dim_a,
        "dim_b": rho.dim_b,
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in rho.matrix],
    }
    if name is not None:
        doc["name"] = name
    if seed is not None:
        doc["seed"] = int(seed)
    return doc


def state_from_dict(doc: dict) -> tuple[DensityMatrix, dict]:
    """Parse a state document; returns the state and its metadata.

    Raises
    ------
    ValidationError
        For missing fields, malformed entries or an invalid density matrix.
    """
    try:
        m = int(doc["dim_a"])
        n = int(doc["dim_b"])
        arr = np.asarray(doc["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed state document: {exc}") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValidationError(f"'matrix' must be an array of [re, im] pairs, got shape {arr.shape}")
    meta = {k: doc[k] for k in ("name", "seed") if k in doc}
    return DensityMatrix(arr[..., 0] + 1j * arr[..., 1], m, n), meta


def write_state(path, rho: DensityMatrix, name: str | None = None, seed: int | None = None) -> None:
    text = json.dumps(state_to_dict(rho, name, seed), indent=1)
    Path(path).write_text(text + "\n")


def read_state(path) -> tuple[DensityMatrix, dict]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not a JSON state file ({exc})") from exc
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: state file must hold a JSON object")
    return state_from_dict(doc)
