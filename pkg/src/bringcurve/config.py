"""Shared numerical configuration for the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class PipelineConfig:
    """Tolerances and knobs used across all pipeline stages.

    Every output file records the seed so runs are reproducible; all
    tolerances must be positive.
    """

    seed: int = 20120610
    quad_order: int = 24
    quad_tol: float = 1e-11
    continuation_step: float = 1.0 / 32.0
    continuation_min_step: float = 1e-6
    ambiguity_factor: float = 0.5
    theta_tail: float = 1e-12
    theta_radius_max: int = 14
    theta_radius_override: int | None = None
    tol_periods: float = 1e-6
    tol_theta: float = 1e-5
    out_dir: str = "out"

    def __post_init__(self):
        for name in ("quad_tol", "continuation_step", "continuation_min_step",
                     "ambiguity_factor", "theta_tail", "tol_periods", "tol_theta"):
            if getattr(self, name) <= 0:
                raise ValueError(f"configuration field {name!r} must be positive")

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_CONFIG = PipelineConfig()
