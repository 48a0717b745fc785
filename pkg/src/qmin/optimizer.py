"""Brute-force oracle for the measurement optimization.

Minimizes tr(A Gamma Gamma^t A^t) over von Neumann measurements on subsystem a
that preserve its marginal, for any subsystem dimension. Used to validate the
closed forms and the eigenvalue bound rather than to be fast.

The marginal constraint shapes the search space: eigenvectors of the marginal
belonging to distinct eigenvalues are pinned, while any degenerate eigenspace
leaves a free unitary acting inside its block. Nondegenerate marginals
therefore admit exactly one measurement (no search); otherwise the oracle
samples Haar-random block unitaries and polishes the best one with sequential
two-column rotations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import gamma_decompose, orthonormal_hermitian_basis
from .linalg import DEFAULT_TOL, Tolerances, make_rng, random_unitary
from .measures import (
    MeasureReport,
    ProjectiveMeasurement,
    concurrence,
    fmin_upper_bound,
)
from .states import BipartiteState, partial_trace, purity

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MarginalStructure:
    """Eigenvalue clustering of the marginal of subsystem a.

    ``eigenblocks`` is a list of (eigenvalue, multiplicity, basis columns);
    ``degenerate`` is True when the whole marginal is one block.
    """

    eigenblocks: list[tuple[float, int, np.ndarray]]
    degenerate: bool


@dataclass(frozen=True)
class MeasurementFamily:
    """Marginal-preserving measurements: a single basis or a block manifold."""

    kind: str  # "unique" | "manifold"
    block_sizes: tuple[int, ...]


@dataclass(frozen=True)
class OracleConfig:
    samples: int = 2000
    refine_iters: int = 300
    seed: int = 7
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


def marginal_structure(
    state: BipartiteState, tol: Tolerances = DEFAULT_TOL
) -> MarginalStructure:
    """Cluster the marginal's eigenvalues with gap threshold tol.degeneracy_gap."""
    rho_a = partial_trace(state, "a").mat
    vals, vecs = np.linalg.eigh(rho_a)
    blocks = []
    start = 0
    # split on consecutive gaps so adjacent blocks are separated by more
    # than the threshold
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol.degeneracy_gap:
            blocks.append(
                (float(np.mean(vals[start:i])), i - start, vecs[:, start:i].copy())
            )
            start = i
    return MarginalStructure(blocks, degenerate=len(blocks) == 1)


def allowed_measurements(ms: MarginalStructure) -> MeasurementFamily:
    """Unique eigenbasis, or a manifold of block rotations, per the clustering."""
    sizes = tuple(mult for _, mult, _ in ms.eigenblocks)
    kind = "unique" if all(s == 1 for s in sizes) else "manifold"
    return MeasurementFamily(kind, sizes)


def _objective_evaluator(state: BipartiteState):
    """Closure computing tr(A Gamma Gamma^t A^t) from a measurement basis."""
    g = gamma_decompose(state)
    big = g.full_matrix() @ g.full_matrix().T  # Gamma Gamma^t, m^2 x m^2
    xs = orthonormal_hermitian_basis(state.dim_a).ops

    def evaluate(cols: np.ndarray) -> float:
        a = np.einsum("ak,iab,bk->ki", cols.conj(), xs, cols).real
        return float(np.einsum("ki,ij,kj->", a, big, a))

    return evaluate


def _assemble_basis(ms: MarginalStructure, block_unitaries: list[np.ndarray]) -> np.ndarray:
    """Full measurement basis from per-block unitaries (identity for 1-blocks)."""
    cols = []
    for (_, mult, basis), u in zip(ms.eigenblocks, block_unitaries):
        cols.append(basis if mult == 1 else basis @ u)
    return np.hstack(cols)


def _golden_section(fn, lo: float, hi: float, iters: int = 48) -> tuple[float, float]:
    """Golden-section minimum of fn on [lo, hi]; returns (argmin, value)."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = fn(d)
    return (c, fc) if fc < fd else (d, fd)


def _rotate_pair(cols: np.ndarray, p: int, q: int, theta: float, phi: float) -> np.ndarray:
    """Mix columns p and q by a Givens rotation with relative phase phi."""
    out = cols.copy()
    cp, cq = cols[:, p], cols[:, q]
    ph = np.exp(1j * phi)
    out[:, p] = np.cos(theta) * cp + np.sin(theta) * ph * cq
    out[:, q] = -np.sin(theta) * np.conj(ph) * cp + np.cos(theta) * cq
    return out


def _refine(cols: np.ndarray, pairs: list[tuple[int, int]], evaluate, cfg: OracleConfig):
    """Cyclic two-column rotations with golden-section line searches.

    Each accepted move strictly lowers the objective; a cycle that improves by
    less than cfg.tolerance stops the polish.
    """
    current = evaluate(cols)
    for _ in range(cfg.refine_iters):
        start = current
        for p, q in pairs:
            for phi in (0.0, np.pi / 2.0):
                theta, value = _golden_section(
                    lambda t: evaluate(_rotate_pair(cols, p, q, t, phi)), 0.0, np.pi
                )
                if value < current:
                    cols = _rotate_pair(cols, p, q, theta, phi)
                    assert value <= current + 1e-15, "refinement increased objective"
                    current = value
        if start - current < cfg.tolerance:
            break
    return cols, current


def minimize(
    state: BipartiteState, cfg: OracleConfig = OracleConfig()
) -> tuple[float, ProjectiveMeasurement]:
    """Minimum of the measurement objective over marginal-preserving bases.

    Nondegenerate marginal: single allowed basis, evaluated directly.
    Degenerate blocks: best of cfg.samples Haar draws per block, then the
    Givens polish. Deterministic for a fixed cfg.
    """
    ms = marginal_structure(state)
    family = allowed_measurements(ms)
    evaluate = _objective_evaluator(state)

    if family.kind == "unique":
        cols = _assemble_basis(ms, [np.eye(1)] * len(ms.eigenblocks))
        return evaluate(cols), ProjectiveMeasurement.from_basis(cols)

    rng = make_rng(cfg.seed)
    best_val = np.inf
    best_cols = None
    for _ in range(cfg.samples):
        us = [
            np.eye(mult, dtype=complex) if mult == 1 else random_unitary(mult, rng)
            for _, mult, _ in ms.eigenblocks
        ]
        cols = _assemble_basis(ms, us)
        val = evaluate(cols)
        if val < best_val:
            best_val, best_cols = val, cols

    # column index pairs free to mix: only those inside one degenerate block
    pairs = []
    offset = 0
    for _, mult, _ in ms.eigenblocks:
        for p in range(mult):
            for q in range(p + 1, mult):
                pairs.append((offset + p, offset + q))
        offset += mult
    best_cols, best_val = _refine(best_cols, pairs, evaluate, cfg)
    return best_val, ProjectiveMeasurement.from_basis(best_cols)


def oracle_report(state: BipartiteState, cfg: OracleConfig = OracleConfig()) -> MeasureReport:
    """Measures assembled from the oracle minimum.

    hs_min = purity - value and f_min = 1 - value/purity, so the pair shares
    one optimization and hs_min = purity * f_min holds identically.
    """
    value, pm = minimize(state, cfg)
    pur = purity(state.rho)
    hs = max(pur - value, 0.0)
    two_qubit = state.dim_a == 2 and state.dim_b == 2
    return MeasureReport(
        concurrence=concurrence(state) if two_qubit else None,
        hs_min=hs,
        f_min=hs / pur,
        f_min_upper_bound=fmin_upper_bound(state),
        purity=pur,
        optimal_measurement=pm,
    )
