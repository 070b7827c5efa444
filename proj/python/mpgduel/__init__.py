"""Mean payoff duels: finite values, certified asymptotics, covering radii."""

from ._core import (
    DomainError,
    GameInstance,
    ResourceError,
    ValidationError,
    asymptotic_covering_radius,
    cli,
    covering_radius,
    gallery_instance,
    gallery_names,
    gallery_run,
    trace,
    value_alt_finite,
    value_alt_infinite,
    value_nonalt_bounds,
    value_nonalt_finite,
)

__all__ = [
    "DomainError",
    "GameInstance",
    "ResourceError",
    "ValidationError",
    "asymptotic_covering_radius",
    "cli",
    "covering_radius",
    "gallery_instance",
    "gallery_names",
    "gallery_run",
    "trace",
    "value_alt_finite",
    "value_alt_infinite",
    "value_nonalt_bounds",
    "value_nonalt_finite",
]
