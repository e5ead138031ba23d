"""Comparison-oracle optimization: normal estimation, NDD, adaNDD and the ellipsoid method."""

from ._core import (
    CSV_HEADER,
    ConfigError,
    Instance,
    InvalidParameter,
    Outcome,
    PrefoptError,
    RadiusUnderflow,
    UndefinedNormal,
    adandd,
    bounds,
    depth_for_accuracy,
    ellipsoid,
    estimate_normal,
    make_dist_to_box,
    make_hard_instance,
    make_linear,
    make_mckinnon,
    make_quadratic,
    make_sphere,
    ndd,
    run_config,
    verify_bounds,
)

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "Instance",
    "InvalidParameter",
    "Outcome",
    "PrefoptError",
    "RadiusUnderflow",
    "UndefinedNormal",
    "adandd",
    "bounds",
    "depth_for_accuracy",
    "ellipsoid",
    "estimate_normal",
    "make_dist_to_box",
    "make_hard_instance",
    "make_linear",
    "make_mckinnon",
    "make_quadratic",
    "make_sphere",
    "ndd",
    "run_config",
    "verify_bounds",
]
