"""Seeded samplers for the random states used by the oracle checks."""

from __future__ import annotations

import numpy as np

from .families import maximally_entangled
from .states import BipartiteState, DensityMatrix, density_from_pure


def random_pure(d: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized complex Gaussian vector (Haar-distributed direction)."""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_density(d: int, rng: np.random.Generator) -> DensityMatrix:
    """Full-rank random state G G^dagger / tr(G G^dagger), G complex Gaussian."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_bipartite(m: int, n: int, rng: np.random.Generator) -> BipartiteState:
    return BipartiteState(random_density(m * n, rng), m, n)


def random_pure_bipartite(m: int, n: int, rng: np.random.Generator) -> BipartiteState:
    return BipartiteState(density_from_pure(random_pure(m * n, rng)), m, n)


def random_bell_diagonal(rng: np.random.Generator) -> BipartiteState:
    """Random mixture of the four maximally entangled two-qubit states.

    Both marginals are exactly I/2, which exercises the degenerate-marginal
    (free measurement basis) branch of the optimizer.
    """
    phi_p = maximally_entangled(2)
    phi_m = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2)
    psi_p = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
    psi_m = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    probs = rng.dirichlet(np.ones(4))
    rho = sum(
        p * np.outer(v, v.conj()) for p, v in zip(probs, (phi_p, phi_m, psi_p, psi_m))
    )
    return BipartiteState(DensityMatrix(rho), 2, 2)
