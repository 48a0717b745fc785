"""Single-qubit Kraus channels, two-qubit product evolution, and the closed
measures of the evolved X states.

Channels act on both qubits independently (E_i (x) E_j). The initial states
are sqrt(alpha)|00> + sqrt(1-alpha)|11>, whose evolution under any of the
channels here stays of X form with equal middle populations r22 = r33 and a
single real coherence r14.

The closed-form element tables are derived from the single-qubit action

    |0><0| -> (1-u)|0><0| + u|1><1|
    |1><1| -> v|0><0| + (1-v)|1><1|
    |0><1| -> c |0><1|

with (u, v, c) = (0, g, sqrt(1-g)) for amplitude damping,
(g(1-p), gp, sqrt(1-g)) for generalized amplitude damping, and
(g/2, g/2, 1-g) for depolarizing. Composing the channel on both qubits gives

    r11 = a(1-u)^2 + (1-a)v^2          r22 = a u(1-u) + (1-a)v(1-v)
    r44 = a u^2 + (1-a)(1-v)^2         r14 = sqrt(a(1-a)) c^2.

Note the depolarizing coherence picks up c^2 = (1-g)^2: each qubit
contributes one factor (1-g). These forms are certified against the brute
Kraus composition in the test suite before anything relies on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .families import pure_alpha
from .linalg import DEFAULT_TOL, Tolerances
from .measures import concurrence
from .states import BipartiteState, tensor, validate

CHANNEL_KINDS = ("ad", "depol", "gad", "identity")

_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class KrausChannel:
    """Completely positive trace-preserving single-qubit map."""

    kind: str
    gamma: float
    p: float | None
    ops: tuple = field(repr=False)


@dataclass(frozen=True)
class XStateElements:
    """Nonzero elements of an evolved X state (r33 = r22, r41 = r14)."""

    r11: float
    r22: float
    r44: float
    r14: float

    def __post_init__(self):
        total = self.r11 + 2 * self.r22 + self.r44
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"populations sum to {total}, not 1")
        if self.r14**2 > self.r11 * self.r44 + 1e-10:
            raise ValueError("coherence violates positivity of the X block")

    def as_matrix(self) -> np.ndarray:
        rho = np.diag([self.r11, self.r22, self.r22, self.r44]).astype(complex)
        rho[0, 3] = rho[3, 0] = self.r14
        return rho


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def kraus(kind: str, gamma: float, p: float | None = None) -> KrausChannel:
    """Kraus operators for one of the supported channel kinds.

    Completeness sum E_i^dagger E_i = I is checked to 1e-12 at construction.
    """
    if kind not in CHANNEL_KINDS:
        raise ValueError(f"unknown channel kind {kind!r}; expected one of {CHANNEL_KINDS}")
    gamma = _check_unit_interval("gamma", gamma)
    if kind == "gad":
        if p is None:
            raise ValueError("generalized amplitude damping requires p")
        p = _check_unit_interval("p", p)
    elif p is not None:
        raise ValueError(f"p is only meaningful for the gad channel, not {kind!r}")

    root = np.sqrt(1.0 - gamma)
    decay_hi = np.array([[1, 0], [0, root]], dtype=complex)
    jump_down = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
    if kind == "ad":
        ops = (decay_hi, jump_down)
    elif kind == "depol":
        ops = (
            np.sqrt(1.0 - 3.0 * gamma / 4.0) * np.eye(2, dtype=complex),
            np.sqrt(gamma) * _SIGMA_X / 2.0,
            np.sqrt(gamma) * _SIGMA_Y / 2.0,
            np.sqrt(gamma) * _SIGMA_Z / 2.0,
        )
    elif kind == "gad":
        decay_lo = np.array([[root, 0], [0, 1]], dtype=complex)
        jump_up = np.array([[0, 0], [np.sqrt(gamma), 0]], dtype=complex)
        ops = (
            np.sqrt(p) * decay_hi,
            np.sqrt(p) * jump_down,
            np.sqrt(1.0 - p) * decay_lo,
            np.sqrt(1.0 - p) * jump_up,
        )
    else:
        ops = (np.eye(2, dtype=complex),)

    completeness = sum(e.conj().T @ e for e in ops)
    defect = float(np.max(np.abs(completeness - np.eye(2))))
    if defect > DEFAULT_TOL.kraus_completeness:
        raise ValueError(f"Kraus set is not trace preserving: defect {defect:.3e}")
    return KrausChannel(kind, gamma, p if kind == "gad" else None, ops)


def gamma_from_time(rate: float, t: float) -> float:
    """Map a decay rate and a time onto the channel parameter 1 - exp(-rate*t)."""
    if rate < 0 or t < 0:
        raise ValueError("rate and time must be nonnegative")
    return float(1.0 - np.exp(-rate * t))


def apply_product_channel(
    state: BipartiteState, ch: KrausChannel, tol: Tolerances = DEFAULT_TOL
) -> BipartiteState:
    """Evolve a two-qubit state by the channel acting on both qubits."""
    if state.dim_a != 2 or state.dim_b != 2:
        raise ValueError("product-channel evolution requires a two-qubit state")
    out = np.zeros_like(state.mat)
    for ei in ch.ops:
        for ej in ch.ops:
            k = tensor(ei, ej)
            out += k @ state.mat @ k.conj().T
    return validate(out, tol, dims=(2, 2))


def _population_params(kind: str, gamma: float, p: float | None) -> tuple[float, float, float]:
    """(u, v, coherence factor) of the single-qubit action; see module docstring."""
    if kind == "ad":
        return 0.0, gamma, 1.0 - gamma
    if kind == "gad":
        return gamma * (1.0 - p), gamma * p, 1.0 - gamma
    if kind == "depol":
        return gamma / 2.0, gamma / 2.0, (1.0 - gamma) ** 2
    return 0.0, 0.0, 1.0  # identity


def analytic_evolved_xstate(
    kind: str, alpha: float, gamma: float, p: float | None = None
) -> XStateElements:
    """Closed-form elements of the evolved X state; same validation as kraus()."""
    kraus(kind, gamma, p)  # reuse parameter validation, discard the operators
    alpha = _check_unit_interval("alpha", alpha)
    u, v, coh = _population_params(kind, gamma, p)
    beta = 1.0 - alpha
    return XStateElements(
        r11=alpha * (1.0 - u) ** 2 + beta * v**2,
        r22=alpha * u * (1.0 - u) + beta * v * (1.0 - v),
        r44=alpha * u**2 + beta * (1.0 - v) ** 2,
        r14=np.sqrt(alpha * beta) * coh,
    )


def xstate_measures(e: XStateElements) -> tuple[float, float, float]:
    """(concurrence, hs_min, f_min) of an X state in closed form.

    C = 2 max{0, r14 - r22}; hs_min = 2 r14^2; f_min divides by the purity
    r11^2 + 2 r14^2 + 2 r22^2 + r44^2.
    """
    c = 2.0 * max(0.0, e.r14 - e.r22)
    hs = 2.0 * e.r14**2
    pur = e.r11**2 + 2.0 * e.r14**2 + 2.0 * e.r22**2 + e.r44**2
    return c, hs, hs / pur


def depol_sudden_death_threshold(alpha: float) -> float:
    """Closed-form depolarizing parameter above which concurrence vanishes.

    gamma_0 = 1 + sqrt(4 a (1-a)) - sqrt(1 + 4 a (1-a)). This expression
    tracks a single-sided coherence decay r14 ~ (1-g); under the two-sided
    product channel implemented here the coherence decays as (1-g)^2 and the
    actual zero crossing (see concurrence_zero_crossing) is smaller.
    """
    alpha = _check_unit_interval("alpha", alpha)
    s = 4.0 * alpha * (1.0 - alpha)
    return float(1.0 + np.sqrt(s) - np.sqrt(1.0 + s))


def _signed_concurrence(kind: str, alpha: float, gamma: float, p: float | None) -> float:
    """Wootters quantity before the max{0, .} clamp; negative past sudden death."""
    st = apply_product_channel(pure_alpha(alpha), kraus(kind, gamma, p))
    rho = st.mat
    flip = tensor(_SIGMA_Y, _SIGMA_Y)
    w = np.sort(np.clip(np.linalg.eigvals(rho @ flip @ rho.conj() @ flip).real, 0.0, None))[::-1]
    roots = np.sqrt(w)
    return float(roots[0] - roots[1] - roots[2] - roots[3])


def concurrence_zero_crossing(
    kind: str, alpha: float, p: float | None = None, tol: float = 1e-8
) -> float | None:
    """Smallest gamma in (0, 1] where the evolved concurrence reaches zero.

    Bisection on the unclamped Wootters quantity of the Kraus-evolved state.
    Returns 0.0 when the initial state is already unentangled, 1.0 when the
    concurrence only dies at the endpoint, and None when it stays positive
    through gamma = 1 (entanglement never lost).
    """
    if _signed_concurrence(kind, alpha, 0.0, p) <= tol:
        return 0.0
    grid = np.linspace(0.0, 1.0, 512)
    lo = 0.0
    for g in grid[1:]:
        value = _signed_concurrence(kind, alpha, float(g), p)
        if value <= 0.0:
            hi = float(g)
            for _ in range(64):
                mid = 0.5 * (lo + hi)
                if _signed_concurrence(kind, alpha, mid, p) <= 0.0:
                    hi = mid
                else:
                    lo = mid
                if hi - lo < tol:
                    break
            return 0.5 * (lo + hi)
        lo = float(g)
    if _signed_concurrence(kind, alpha, 1.0, p) <= tol:
        return 1.0
    return None


def gad_sudden_death_threshold(alpha: float, p: float, tol: float = 1e-8) -> float | None:
    """Sudden-death parameter of generalized amplitude damping, by bisection."""
    return concurrence_zero_crossing("gad", alpha, p, tol)


def evolved_concurrence(kind: str, alpha: float, gamma: float, p: float | None = None) -> float:
    """Wootters concurrence of the Kraus-evolved state (full-matrix route)."""
    return concurrence(apply_product_channel(pure_alpha(alpha), kraus(kind, gamma, p)))
