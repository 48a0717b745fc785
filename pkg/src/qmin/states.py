"""Density matrices and bipartite states: validation, tensor products,
partial traces, purity, and Schmidt decompositions.

Basis convention: the composite computational basis is |i>_a (x) |j>_b with the
a-index slower, i.e. the product basis index is i*n + j. All matrix-element
labels elsewhere in the library (r11, r14, ...) are 1-based in this ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, Tolerances, as_complex_matrix, hermitian_eigensystem


class StateValidationError(ValueError):
    """A matrix failed one of the density-matrix invariants.

    ``violation`` names the failed invariant ("hermiticity", "trace" or
    "positivity"); ``magnitude`` is the size of the violation.
    """

    def __init__(self, violation: str, magnitude: float):
        self.violation = violation
        self.magnitude = magnitude
        super().__init__(f"{violation} violation of magnitude {magnitude:.6e}")


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive matrix. Construct through validate()."""

    mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class BipartiteState:
    """A density matrix with a declared dim_a x dim_b subsystem split."""

    rho: DensityMatrix
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 2 or self.dim_b < 2:
            raise ValueError("both subsystem dimensions must be >= 2")
        if self.dim_a * self.dim_b != self.rho.dim:
            raise ValueError(
                f"subsystem split {self.dim_a}x{self.dim_b} does not match "
                f"total dimension {self.rho.dim}"
            )

    @property
    def mat(self) -> np.ndarray:
        return self.rho.mat


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt data of a pure bipartite vector.

    ``coefficients`` are the probabilities lambda_i in descending order;
    ``basis_a`` / ``basis_b`` hold the matching orthonormal columns.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray


def validate(
    mat, tol: Tolerances = DEFAULT_TOL, dims: tuple[int, int] | None = None
) -> DensityMatrix | BipartiteState:
    """Check the density-matrix invariants and return the typed state.

    Raises StateValidationError naming the violated invariant and its
    magnitude. With ``dims`` the result is wrapped as a BipartiteState.
    """
    m = as_complex_matrix(mat)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"density matrix must be square, got {m.shape}")

    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > tol.hermiticity:
        raise StateValidationError("hermiticity", herm)

    tr_dev = abs(np.trace(m) - 1.0)
    if tr_dev > tol.unit_trace:
        raise StateValidationError("trace", float(tr_dev))

    evals = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if evals[0] < -tol.positivity:
        raise StateValidationError("positivity", float(-evals[0]))

    rho = DensityMatrix(m)
    if dims is not None:
        return BipartiteState(rho, dims[0], dims[1])
    return rho


def density_from_pure(psi) -> DensityMatrix:
    """Rank-1 projector |psi><psi|, renormalizing the input vector."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("cannot build a state from the zero vector")
    v = v / norm
    return DensityMatrix(np.outer(v, v.conj()))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with subsystem a as the slower index."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def partial_trace(state: BipartiteState, keep: str) -> DensityMatrix:
    """Reduced density matrix of the kept subsystem ("a" or "b")."""
    m, n = state.dim_a, state.dim_b
    r = state.mat.reshape(m, n, m, n)
    k = keep.lower()
    if k == "a":
        reduced = np.einsum("ijkj->ik", r)
    elif k == "b":
        reduced = np.einsum("ijil->jl", r)
    else:
        raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")
    return DensityMatrix(reduced)


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2), in [1/d, 1]."""
    return float(np.real(np.trace(rho.mat @ rho.mat)))


def schmidt(psi, m: int, n: int, tol: Tolerances = DEFAULT_TOL) -> SchmidtDecomposition:
    """Schmidt decomposition of a normalized pure vector on an m x n split.

    Obtained from the eigendecomposition of the reduced state of subsystem a;
    the solver's ascending order is reversed so coefficients come descending.
    The min(m, n) retained coefficients are the eigenvalues of the reduced
    state (anything dropped for m > n is exactly zero). For zero coefficients
    the b-side vectors are completed from the orthogonal complement so both
    bases stay orthonormal.
    """
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.size != m * n:
        raise ValueError(f"vector length {v.size} does not match split {m}x{n}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise ValueError("schmidt requires a normalized vector")

    k = min(m, n)
    psi_mat = v.reshape(m, n)
    rho_a = psi_mat @ psi_mat.conj().T
    vals, vecs = hermitian_eigensystem(rho_a, tol)
    order = np.argsort(vals, kind="stable")[::-1][:k]
    lams = np.clip(vals[order], 0.0, None)
    basis_a = vecs[:, order]

    basis_b = np.zeros((n, k), dtype=complex)
    filled = []
    for i in range(k):
        b = basis_a[:, i].conj() @ psi_mat
        norm = np.linalg.norm(b)
        if norm > 1e-8:
            basis_b[:, i] = b / norm
            filled.append(i)
    missing = [i for i in range(k) if i not in filled]
    if missing:
        used = basis_b[:, filled]
        proj = np.eye(n, dtype=complex) - used @ used.conj().T
        q, _ = np.linalg.qr(proj)
        # keep the q columns lying inside the complement (projector norm ~1)
        fresh = [q[:, j] for j in range(n) if np.linalg.norm(proj @ q[:, j]) > 0.5]
        for i, col in zip(missing, fresh):
            basis_b[:, i] = col

    return SchmidtDecomposition(lams, basis_a, basis_b)
