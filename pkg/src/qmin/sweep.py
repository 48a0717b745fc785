"""Channel-parameter sweeps of (concurrence, hs_min, f_min) and CSV rendering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import apply_product_channel, kraus
from .families import pure_alpha
from .measures import concurrence, min_exact_2xn

CSV_HEADER = "gamma,concurrence,hs_min,f_min"

# preset sweeps: figure id -> (channel kind, alpha, p)
FIGURE_PRESETS = {
    "1": ("ad", 0.5, None),
    "2": ("depol", 0.5, None),
    "3a": ("gad", 0.5, 2.0 / 3.0),
    "3b": ("gad", 0.5, 1.0),
}
FIGURE_STEPS = 201


@dataclass(frozen=True)
class SweepRecord:
    gamma: float
    concurrence: float
    hs_min: float
    f_min: float

    def __post_init__(self):
        for name in ("gamma", "concurrence", "hs_min", "f_min"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < -1e-12:
                raise ValueError(f"sweep value {name}={v} out of range")


def _clamp(v: float) -> float:
    """Zero out negative round-off below 1e-12; larger negatives are bugs."""
    return 0.0 if -1e-12 < v < 0.0 else float(v)


def sweep_point(kind: str, alpha: float, gamma: float, p: float | None) -> SweepRecord:
    """One row: Kraus-evolve the initial state, then apply the full machinery."""
    state = apply_product_channel(pure_alpha(alpha), kraus(kind, gamma, p))
    hs, f, _ = min_exact_2xn(state)
    return SweepRecord(
        gamma=float(gamma),
        concurrence=_clamp(concurrence(state)),
        hs_min=_clamp(hs),
        f_min=_clamp(f),
    )


def sweep_records(
    kind: str, alpha: float, steps: int, p: float | None = None
) -> list[SweepRecord]:
    """Rows for gamma sampled uniformly on [0, 1] inclusive."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    gammas = np.linspace(0.0, 1.0, steps)
    return [sweep_point(kind, alpha, float(g), p) for g in gammas]


def format_csv(records: list[SweepRecord]) -> str:
    """Line-feed terminated CSV with 12 significant digits per number."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.gamma:.12g},{r.concurrence:.12g},{r.hs_min:.12g},{r.f_min:.12g}"
        )
    return "\n".join(lines) + "\n"
