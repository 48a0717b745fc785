"""Orthonormal Hermitian operator bases and the correlation-data decomposition.

A state on an m x n split is expanded in the product basis {X_i (x) Y_j} of
Hilbert-Schmidt-orthonormal Hermitian operators. The expansion coefficients
are organized as the scalar gamma00 = 1/sqrt(mn), local vectors x and y, and
the correlation matrix T:

    x_i = tr(rho X_i (x) I) / sqrt(n)      i = 1..m^2-1
    y_j = tr(rho I (x) Y_j) / sqrt(m)      j = 1..n^2-1
    t_ij = tr(rho X_i (x) Y_j)

With these prefactors the squared coefficient norm equals the state's purity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import DEFAULT_TOL, Tolerances
from .states import BipartiteState, validate


@dataclass(frozen=True)
class OperatorBasis:
    """d^2 Hermitian matrices, HS-orthonormal, element 0 equal to I/sqrt(d)."""

    dim: int
    ops: np.ndarray  # shape (d^2, d, d)


@dataclass(frozen=True)
class GammaDecomposition:
    """Coefficient data (gamma00, x, y, T) of a bipartite state."""

    m: int
    n: int
    gamma00: float
    x: np.ndarray  # length m^2 - 1
    y: np.ndarray  # length n^2 - 1
    T: np.ndarray  # shape (m^2 - 1, n^2 - 1)
    gamma_norm_sq: float

    def full_matrix(self) -> np.ndarray:
        """Assemble the full m^2 x n^2 coefficient matrix from the blocks."""
        g = np.zeros((self.m**2, self.n**2))
        g[0, 0] = self.gamma00
        g[1:, 0] = self.x
        g[0, 1:] = self.y
        g[1:, 1:] = self.T
        return g


@lru_cache(maxsize=None)
def orthonormal_hermitian_basis(d: int) -> OperatorBasis:
    """Generalized Gell-Mann basis scaled to unit Hilbert-Schmidt norm.

    Element 0 is I/sqrt(d); then the symmetric family, the antisymmetric
    family, and the diagonal family, each ordered lexicographically by index
    pair. For d=2 this is {I, sigma_x, sigma_y, sigma_z}/sqrt(2).
    """
    if d < 2:
        raise ValueError(f"basis dimension must be >= 2, got {d}")
    ops = [np.eye(d, dtype=complex) / np.sqrt(d)]
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0 / np.sqrt(2.0)
            ops.append(sym)
    for j in range(d):
        for k in range(j + 1, d):
            anti = np.zeros((d, d), dtype=complex)
            anti[j, k] = -1j / np.sqrt(2.0)
            anti[k, j] = 1j / np.sqrt(2.0)
            ops.append(anti)
    for l in range(1, d):
        diag = np.zeros(d, dtype=complex)
        diag[:l] = 1.0
        diag[l] = -l
        ops.append(np.diag(diag) / np.sqrt(l * (l + 1)))
    return OperatorBasis(d, np.array(ops))


def gamma_decompose(
    state: BipartiteState, tol: Tolerances = DEFAULT_TOL
) -> GammaDecomposition:
    """Expansion coefficients of a state in the product operator basis.

    Coefficients are real for Hermitian input; an imaginary part above
    ``tol.coefficient_imag`` signals a non-Hermitian matrix slipped through
    and raises.
    """
    m, n = state.dim_a, state.dim_b
    xs = orthonormal_hermitian_basis(m).ops
    ys = orthonormal_hermitian_basis(n).ops
    r = state.mat.reshape(m, n, m, n)
    # gamma_ij = tr(rho X_i (x) Y_j) = sum rho[(ab),(cd)] X_i[c,a] Y_j[d,b]
    gamma = np.einsum("abcd,ica,jdb->ij", r, xs, ys)
    worst_imag = float(np.max(np.abs(gamma.imag)))
    if worst_imag > tol.coefficient_imag:
        raise ValueError(
            f"inconsistent decomposition: coefficient imaginary part {worst_imag:.3e}"
        )
    gamma = gamma.real
    return GammaDecomposition(
        m=m,
        n=n,
        gamma00=float(gamma[0, 0]),
        x=gamma[1:, 0].copy(),
        y=gamma[0, 1:].copy(),
        T=gamma[1:, 1:].copy(),
        gamma_norm_sq=float(np.sum(gamma**2)),
    )


def reconstruct(g: GammaDecomposition, tol: Tolerances = DEFAULT_TOL) -> BipartiteState:
    """Rebuild the state sum_ij gamma_ij X_i (x) Y_j; inverse of gamma_decompose.

    The rebuilt matrix is validated, so inconsistent coefficients surface as a
    StateValidationError.
    """
    xs = orthonormal_hermitian_basis(g.m).ops
    ys = orthonormal_hermitian_basis(g.n).ops
    full = g.full_matrix()
    rho = np.einsum("ij,iac,jbd->abcd", full, xs, ys).reshape(g.m * g.n, g.m * g.n)
    return validate(rho, tol, dims=(g.m, g.n))
