"""RSK insertion, limit curves of the marked-box trajectory and Monte Carlo checks."""

__version__ = "0.1.0"

from .limit_curves import CurvePoint, InversionConfig, f_sc, g, h, omega_star, prec, u, v
from .tableau import (
    BoxPosition,
    Tableau,
    extend_permutation,
    insert,
    inverse_permutation,
    locate,
    reverse_insert,
    rsk,
    shape,
)
from .trajectory import Trajectory, TrajectoryConfig, scaled_deviation, track_trajectory

__all__ = [
    "BoxPosition",
    "CurvePoint",
    "InversionConfig",
    "Tableau",
    "Trajectory",
    "TrajectoryConfig",
    "extend_permutation",
    "f_sc",
    "g",
    "h",
    "insert",
    "inverse_permutation",
    "locate",
    "omega_star",
    "prec",
    "reverse_insert",
    "rsk",
    "scaled_deviation",
    "shape",
    "track_trajectory",
    "u",
    "v",
]
