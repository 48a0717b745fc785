"""Named bipartite state families and their closed-form fidelity measures."""

from __future__ import annotations

import numpy as np

from .states import BipartiteState, density_from_pure, validate


def maximally_entangled(m: int) -> np.ndarray:
    """The vector (1/sqrt(m)) sum_i |ii> on an m x m split."""
    psi = np.zeros(m * m, dtype=complex)
    for i in range(m):
        psi[i * m + i] = 1.0
    return psi / np.sqrt(m)


def isotropic(m: int, x: float) -> BipartiteState:
    """Mixture of white noise and the maximally entangled state.

    rho = (1-x)/(m^2-1) I + (m^2 x - 1)/(m^2-1) |Psi+><Psi+| with the overlap
    tr(rho |Psi+><Psi+|) = x; both marginals are I/m.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"isotropic parameter must lie in [0, 1], got {x}")
    d = m * m
    psi = maximally_entangled(m)
    proj = np.outer(psi, psi.conj())
    rho = ((1.0 - x) / (d - 1)) * np.eye(d, dtype=complex) + (
        (d * x - 1.0) / (d - 1)
    ) * proj
    return validate(rho, dims=(m, m))


def fmin_isotropic(m: int, x: float) -> float:
    """Closed-form fidelity measure of the isotropic state; zero at x = 1/m^2."""
    num = (m * m * x - 1.0) ** 2
    den = m * m * (1.0 - x) ** 2 + (m - 1.0) * (1.0 + m * x) ** 2 + num
    return num / den


def flip_operator(m: int) -> np.ndarray:
    """Swap operator sum |ab><ba| on an m x m split, built explicitly."""
    p = np.zeros((m * m, m * m), dtype=complex)
    for a in range(m):
        for b in range(m):
            p[a * m + b, b * m + a] = 1.0
    return p


def werner(m: int, x: float) -> BipartiteState:
    """Swap-invariant family omega = (m-x)/(m^3-m) I + (mx-1)/(m^3-m) P.

    x = tr(omega P) ranges over [-1, 1]; both marginals are I/m.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if not -1.0 <= x <= 1.0:
        raise ValueError(f"werner parameter must lie in [-1, 1], got {x}")
    d = m * m
    denom = m**3 - m
    rho = ((m - x) / denom) * np.eye(d, dtype=complex) + ((m * x - 1.0) / denom) * flip_operator(m)
    return validate(rho, dims=(m, m))


def fmin_werner(m: int, x: float) -> float:
    """Closed-form fidelity measure of the Werner state; zero at x = 1/m."""
    num = (m * x - 1.0) ** 2
    den = (m - x) ** 2 + (m - 1.0) * (x + 1.0) ** 2 + num
    return num / den


def pure_alpha(alpha: float) -> BipartiteState:
    """Two-qubit pure state sqrt(alpha)|00> + sqrt(1-alpha)|11>."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    psi = np.zeros(4, dtype=complex)
    psi[0] = np.sqrt(alpha)
    psi[3] = np.sqrt(1.0 - alpha)
    return BipartiteState(density_from_pure(psi), 2, 2)
