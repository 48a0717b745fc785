"""Fidelity, measurement disturbance, and the correlation measures built on them.

Two quantities share one optimization: for projective measurements Pi on
subsystem a that preserve the marginal, both the squared Hilbert-Schmidt
disturbance ||rho - Pi(rho)||^2 and the squared sine distance 1 - F are
maximized by the same measurement, because

    F(rho, Pi(rho)) = tr(A Gamma Gamma^t A^t) / ||Gamma||^2
    ||rho - Pi(rho)||^2 = ||Gamma||^2 - tr(A Gamma Gamma^t A^t)

where A collects the coefficients a_ki = <k|X_i|k> of the measurement basis.
Hence hs_min = purity * f_min always, and one optimum serves both measures.

For dim_a = 2 the constrained optimum is available in closed form. A second
eigenvalue formula (mu_2 + mu_3)/||Gamma||^2, which ignores the marginal
constraint, is exposed separately: it is exact when the marginal of a is
maximally mixed and is otherwise an upper bound on the constrained value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import GammaDecomposition, gamma_decompose, orthonormal_hermitian_basis
from .linalg import DEFAULT_TOL, Tolerances
from .states import (
    BipartiteState,
    DensityMatrix,
    SchmidtDecomposition,
    partial_trace,
    purity,
    tensor,
    validate,
)

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """Complete set of rank-1 orthogonal projectors on subsystem a."""

    dim: int
    projectors: np.ndarray  # shape (m, m, m)

    @classmethod
    def from_basis(cls, columns: np.ndarray) -> "ProjectiveMeasurement":
        """Measurement projecting onto the columns of a unitary matrix."""
        cols = np.asarray(columns, dtype=complex)
        m = cols.shape[0]
        projs = np.einsum("ak,bk->kab", cols, cols.conj())
        return cls(m, projs)

    def check(self, tol: Tolerances = DEFAULT_TOL) -> None:
        """Verify idempotence, mutual orthogonality, and completeness."""
        m = self.dim
        for k, p in enumerate(self.projectors):
            if np.max(np.abs(p @ p - p)) > tol.projector:
                raise ValueError(f"projector {k} is not idempotent")
        for k in range(m):
            for l in range(k + 1, m):
                if np.max(np.abs(self.projectors[k] @ self.projectors[l])) > tol.projector:
                    raise ValueError(f"projectors {k},{l} are not orthogonal")
        if np.max(np.abs(self.projectors.sum(axis=0) - np.eye(m))) > tol.projector:
            raise ValueError("projectors do not sum to the identity")


@dataclass(frozen=True)
class MeasureReport:
    """Bundle of correlation measures for one state, from one optimization."""

    concurrence: float | None
    hs_min: float
    f_min: float
    f_min_upper_bound: float
    purity: float
    optimal_measurement: ProjectiveMeasurement


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """(tr rho sigma)^2 / (tr rho^2 tr sigma^2), in [0, 1]."""
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    overlap = float(np.real(np.trace(rho.mat @ sigma.mat)))
    value = overlap**2 / (purity(rho) * purity(sigma))
    return float(min(max(value, 0.0), 1.0))


def sine_metric(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """sqrt(1 - fidelity)."""
    return float(np.sqrt(1.0 - fidelity(rho, sigma)))


def post_measurement_state(
    state: BipartiteState, pm: ProjectiveMeasurement
) -> BipartiteState:
    """sum_k (Pi_k (x) I) rho (Pi_k (x) I); idempotent in pm."""
    if pm.dim != state.dim_a:
        raise ValueError(
            f"measurement dimension {pm.dim} does not match dim_a {state.dim_a}"
        )
    eye_b = np.eye(state.dim_b, dtype=complex)
    out = np.zeros_like(state.mat)
    for p in pm.projectors:
        big = tensor(p, eye_b)
        out += big @ state.mat @ big
    return validate(out, dims=(state.dim_a, state.dim_b))


def measurement_coefficients(pm: ProjectiveMeasurement) -> np.ndarray:
    """Real m x m^2 matrix a_ki = tr(Pi_k X_i); rows have unit norm."""
    xs = orthonormal_hermitian_basis(pm.dim).ops
    return np.einsum("kab,iba->ki", pm.projectors, xs).real


def objective(g: GammaDecomposition, pm: ProjectiveMeasurement) -> float:
    """tr(A Gamma Gamma^t A^t): the purity of the post-measurement state."""
    if pm.dim != g.m:
        raise ValueError(f"measurement dimension {pm.dim} does not match m={g.m}")
    a = measurement_coefficients(pm)
    ag = a @ g.full_matrix()
    return float(np.sum(ag**2))


def fmin_pure(sd: SchmidtDecomposition) -> float:
    """Fidelity-based disturbance of a pure state: 1 - sum_i lambda_i^2."""
    return float(1.0 - np.sum(sd.coefficients**2))


def _local_correlation_matrix(g: GammaDecomposition) -> np.ndarray:
    """x x^t + T T^t, the (m^2-1)-dimensional matrix behind the closed forms."""
    return np.outer(g.x, g.x) + g.T @ g.T.T


def fmin_upper_bound(state: BipartiteState) -> float:
    """Eigenvalue upper bound on the fidelity-based measure for any m x n state.

    Sum of the largest m^2 - m eigenvalues of x x^t + T T^t over the squared
    coefficient norm. Tight when the marginal of a is maximally mixed.
    """
    g = gamma_decompose(state)
    mu = np.linalg.eigvalsh(_local_correlation_matrix(g))
    return float(np.sum(mu[g.m - 1 :]) / g.gamma_norm_sq)


def _bloch_measurement(direction: np.ndarray) -> ProjectiveMeasurement:
    """Qubit measurement along a unit Bloch direction."""
    nvec = direction / np.linalg.norm(direction)
    ndots = sum(nvec[i] * _PAULI[a] for i, a in enumerate("xyz"))
    eye2 = np.eye(2, dtype=complex)
    projs = np.array([(eye2 + ndots) / 2.0, (eye2 - ndots) / 2.0])
    return ProjectiveMeasurement(2, projs)


def min_exact_2xn(
    state: BipartiteState, tol: Tolerances = DEFAULT_TOL
) -> tuple[float, float, ProjectiveMeasurement]:
    """Exact constrained optimum for dim_a = 2 states.

    Over marginal-preserving measurements:
      - nondegenerate marginal (||x|| above tol.bloch_zero): the measurement
        is forced to the eigenbasis of the marginal, giving
        hs_min = tr(T T^t) - x^t T T^t x / ||x||^2;
      - maximally mixed marginal: all bases are allowed and
        hs_min = tr(T T^t) - mu_min(T T^t).

    Returns (hs_min, f_min, optimal measurement) with f_min = hs_min / purity.
    """
    if state.dim_a != 2:
        raise ValueError(f"closed form requires dim_a = 2, got {state.dim_a}")
    g = gamma_decompose(state)
    tt = g.T @ g.T.T
    xnorm = float(np.linalg.norm(g.x))
    if xnorm > tol.bloch_zero:
        e = g.x / xnorm
        hs = float(np.trace(tt) - e @ tt @ e)
        pm = _bloch_measurement(e)
    else:
        mu, vecs = np.linalg.eigh(tt)
        hs = float(np.trace(tt) - mu[0])
        pm = _bloch_measurement(vecs[:, 0])
    hs = max(hs, 0.0)
    return hs, hs / g.gamma_norm_sq, pm


def fmin_unconstrained_2xn(state: BipartiteState) -> float:
    """Unconstrained eigenvalue form (mu_2 + mu_3)/||Gamma||^2 for dim_a = 2.

    Exact when the marginal of a is maximally mixed; otherwise an upper bound
    on the constrained value from min_exact_2xn.
    """
    if state.dim_a != 2:
        raise ValueError(f"eigenvalue form requires dim_a = 2, got {state.dim_a}")
    g = gamma_decompose(state)
    mu = np.linalg.eigvalsh(_local_correlation_matrix(g))
    return float((mu[1] + mu[2]) / g.gamma_norm_sq)


def concurrence(state: BipartiteState) -> float:
    """Wootters concurrence of a two-qubit state.

    max{0, sqrt(w1) - sqrt(w2) - sqrt(w3) - sqrt(w4)} with w_i the descending
    eigenvalues of rho (sy (x) sy) rho* (sy (x) sy); tiny negative eigenvalues
    from round-off are clamped to zero before the square roots.
    """
    if state.dim_a != 2 or state.dim_b != 2:
        raise ValueError("concurrence is defined for two-qubit states only")
    rho = state.mat
    flip = tensor(_PAULI["y"], _PAULI["y"])
    w = np.linalg.eigvals(rho @ flip @ rho.conj() @ flip).real
    w = np.sort(np.clip(w, 0.0, None))[::-1]
    roots = np.sqrt(w)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def exact_report_2xn(state: BipartiteState) -> MeasureReport:
    """MeasureReport for dim_a = 2 states via the closed-form optimum."""
    hs, f, pm = min_exact_2xn(state)
    return MeasureReport(
        concurrence=concurrence(state) if state.dim_b == 2 else None,
        hs_min=hs,
        f_min=f,
        f_min_upper_bound=fmin_upper_bound(state),
        purity=purity(state.rho),
        optimal_measurement=pm,
    )


__all__ = [
    "ProjectiveMeasurement",
    "MeasureReport",
    "fidelity",
    "sine_metric",
    "post_measurement_state",
    "measurement_coefficients",
    "objective",
    "fmin_pure",
    "fmin_upper_bound",
    "min_exact_2xn",
    "fmin_unconstrained_2xn",
    "concurrence",
    "exact_report_2xn",
]
