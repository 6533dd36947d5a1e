"""Hausdorff distance between finite point clouds."""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from ..config.settings import get_settings
from ..core.models import PointCloud

logger = logging.getLogger(__name__)

CloudLike = Union[PointCloud, np.ndarray]


def _as_plane(cloud: CloudLike) -> np.ndarray:
    points = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud)
    points = points.astype(np.complex128).reshape(-1)
    return np.column_stack([points.real, points.imag])


def directed_hausdorff_distance(a: np.ndarray, b: np.ndarray, brute_force: bool) -> float:
    """sup over a of the distance to the nearest point of b."""
    if brute_force:
        return float(cdist(a, b).min(axis=1).max())
    distances, _ = cKDTree(b).query(a, k=1)
    return float(np.max(distances))


def hausdorff(
    a: CloudLike, b: CloudLike, brute_force_limit: Optional[int] = None
) -> float:
    """max(sup_a inf_b |a−b|, sup_b inf_a |a−b|), exact over the finite sets.

    Pairwise distances are used while both clouds have at most
    ``brute_force_limit`` points; larger clouds go through a k-d tree, which
    returns the same exact nearest-neighbour distances.

    Raises:
        ValueError: if either cloud is empty
    """
    plane_a = _as_plane(a)
    plane_b = _as_plane(b)
    if plane_a.shape[0] == 0 or plane_b.shape[0] == 0:
        raise ValueError("hausdorff distance needs two nonempty clouds")
    if brute_force_limit is None:
        brute_force_limit = get_settings().hausdorff_bruteforce_limit

    brute_force = max(plane_a.shape[0], plane_b.shape[0]) <= brute_force_limit
    logger.debug(
        f"hausdorff over {plane_a.shape[0]}x{plane_b.shape[0]} points "
        f"({'pairwise' if brute_force else 'k-d tree'})"
    )
    return max(
        directed_hausdorff_distance(plane_a, plane_b, brute_force),
        directed_hausdorff_distance(plane_b, plane_a, brute_force),
    )


def set_match(a: CloudLike, b: CloudLike, eps: float) -> Tuple[bool, float]:
    """(hausdorff(a, b) ≤ eps, hausdorff(a, b))."""
    distance = hausdorff(a, b)
    return distance <= eps, distance


def one_sided_excess(a: CloudLike, b: CloudLike) -> float:
    """sup over a of the distance to b: containment of a in a neighbourhood of b."""
    plane_a = _as_plane(a)
    plane_b = _as_plane(b)
    if plane_a.shape[0] == 0 or plane_b.shape[0] == 0:
        raise ValueError("containment check needs two nonempty clouds")
    limit = get_settings().hausdorff_bruteforce_limit
    brute_force = max(plane_a.shape[0], plane_b.shape[0]) <= limit
    return directed_hausdorff_distance(plane_a, plane_b, brute_force)
