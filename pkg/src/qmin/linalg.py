"""Dense complex linear algebra and seeded randomness used by every other module.

All matrices are plain ``numpy.ndarray`` objects with ``complex128`` entries.
Randomness always flows through an explicitly seeded ``numpy.random.Generator``
so that identical seeds reproduce identical draw sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    """Central record of every numerical tolerance used by the library."""

    hermiticity: float = 1e-10
    unit_trace: float = 1e-10
    positivity: float = 1e-10
    eigen_residual: float = 1e-9
    unitarity: float = 1e-10
    basis_orthonormality: float = 1e-12
    coefficient_imag: float = 1e-10
    projector: float = 1e-10
    kraus_completeness: float = 1e-12
    degeneracy_gap: float = 1e-8
    bloch_zero: float = 1e-9


DEFAULT_TOL = Tolerances()


def make_rng(seed) -> np.random.Generator:
    """Seeded random source; identical seed gives identical draws.

    Accepts anything numpy's SeedSequence does (ints or tuples of ints).
    """
    return np.random.default_rng(seed)


def as_complex_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with an explicit shape check."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex_matrix(a).conj().T


def trace(a: np.ndarray) -> complex:
    """Trace of a square matrix."""
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace requires a square matrix, got {a.shape}")
    return complex(np.trace(a))


def hermiticity_defect(h: np.ndarray) -> float:
    """Largest entrywise deviation |h - h^dagger|."""
    h = as_complex_matrix(h)
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def hermitian_eigensystem(
    h: np.ndarray, tol: Tolerances = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of Hermitian h.

    Raises if h is not Hermitian within ``tol.hermiticity``.
    """
    h = as_complex_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"eigensystem requires a square matrix, got {h.shape}")
    defect = hermiticity_defect(h)
    if defect > tol.hermiticity:
        raise ValueError(f"matrix is not Hermitian: max |h - h^dagger| = {defect:.3e}")
    vals, vecs = np.linalg.eigh(h)
    return vals, vecs


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed d x d unitary.

    QR of a complex Ginibre matrix with the diagonal of R phase-fixed, which
    makes the distribution exactly Haar rather than merely column-orthonormal.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    phases = diag / np.abs(diag)
    return q * phases
