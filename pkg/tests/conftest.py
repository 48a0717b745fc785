"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from qmin import BipartiteState, DensityMatrix, density_from_pure, tensor, validate
from qmin.random_states import (
    random_bell_diagonal,
    random_bipartite,
    random_density,
    random_pure,
    random_pure_bipartite,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def bell_vector() -> np.ndarray:
    return np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def bell_state() -> BipartiteState:
    return BipartiteState(density_from_pure(bell_vector()), 2, 2)


def maximally_mixed(m: int, n: int) -> BipartiteState:
    d = m * n
    return BipartiteState(DensityMatrix(np.eye(d, dtype=complex) / d), m, n)


def product_state(rho: DensityMatrix, sigma: DensityMatrix) -> BipartiteState:
    return BipartiteState(
        validate(tensor(rho.mat, sigma.mat)), rho.dim, sigma.dim
    )


def brute_post_measurement_purity(state: BipartiteState, projectors) -> float:
    """tr(Pi(rho)^2) by literally applying the projectors to the full matrix."""
    eye_b = np.eye(state.dim_b, dtype=complex)
    out = np.zeros_like(state.mat)
    for p in projectors:
        big = np.kron(p, eye_b)
        out += big @ state.mat @ big
    return float(np.real(np.trace(out @ out)))


def brute_gamma_matrix(state: BipartiteState, xs, ys) -> np.ndarray:
    """Coefficient matrix via explicit Kronecker products and traces."""
    gamma = np.zeros((len(xs), len(ys)))
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            gamma[i, j] = np.real(np.trace(state.mat @ np.kron(x, y)))
    return gamma


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "bell_vector",
    "bell_state",
    "maximally_mixed",
    "product_state",
    "brute_post_measurement_purity",
    "brute_gamma_matrix",
    "random_bell_diagonal",
    "random_bipartite",
    "random_density",
    "random_pure",
    "random_pure_bipartite",
]
