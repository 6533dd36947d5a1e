"""Revolving Fractals - revolving-sequence series, dragon attractors and their decomposition checks."""

__version__ = "0.1.0"

from .core.angle_group import build_group, make_angle, make_generator_set
from .core.ifs import attractor_exhaustive, attractor_sampled, eval_coding
from .core.models import IFSSpec, PointCloud, SeriesSpec, VerificationReport
from .core.series import cloud_grs, cloud_X, cloud_Xstar

__all__ = [
    "make_angle",
    "make_generator_set",
    "build_group",
    "IFSSpec",
    "SeriesSpec",
    "PointCloud",
    "VerificationReport",
    "eval_coding",
    "attractor_exhaustive",
    "attractor_sampled",
    "cloud_X",
    "cloud_Xstar",
    "cloud_grs",
]
