"""IFS maps ψ_k, coding-word evaluation and attractor point clouds.

For an IFSSpec (α, S, c) the maps are ψ_k(z) = αe^{iθ_k}z + c_k. A depth-N
coding word x is evaluated as

    Σ_{n=1}^{N} c_{x_n} α^{n−1} e^{iΣ_{j<n} θ_{x_j}}

with the rotation kept as an exact group exponent until the final multiply.
"""

import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from ..config.settings import Settings, get_settings
from ..monitoring.logger import log_performance
from .angle_group import build_group, root_table, unit_roots
from .errors import EnumerationCapExceeded
from .models import AffineMap, CodingWord, GenerationMode, IFSSpec, PointCloud
from .sequences import count_digit

logger = logging.getLogger(__name__)


def maps_from_spec(spec: IFSSpec) -> List[AffineMap]:
    """ψ_k with ratio αe^{iθ_k} and offset c_k."""
    group = build_group(spec.generators)
    roots = root_table(group.order)
    return [
        AffineMap(ratio=spec.alpha * roots[a], offset=c)
        for a, c in zip(group.step_exponents, spec.constants)
    ]


def accumulate_terms(alpha: complex, terms: Iterable[Tuple[complex, complex]]) -> complex:
    """Σ α^{n−1}·c_n·u_n over (c_n, u_n) pairs, n = 1, 2, …

    Shared by coding-word and Δ-word evaluation so both perform identical
    floating-point operations on identical inputs.
    """
    total = 0j
    power = 1 + 0j
    for constant, unit in terms:
        total += power * constant * unit
        power *= alpha
    return total


def eval_coding(spec: IFSSpec, word: CodingWord) -> complex:
    """Depth-N partial sum of the coding representation of T_{α,S}."""
    group = build_group(spec.generators)
    roots = root_table(group.order)
    steps = group.step_exponents

    def terms():
        exponent = 0
        for digit in word.digits:
            yield spec.constants[digit], roots[exponent]
            exponent = (exponent + steps[digit]) % group.order

    return accumulate_terms(spec.alpha, terms())


def compose_maps(spec: IFSSpec, word: CodingWord) -> complex:
    """ψ_{x_1}∘ψ_{x_2}∘…∘ψ_{x_N}(0)."""
    maps = maps_from_spec(spec)
    z = 0j
    for digit in reversed(word.digits):
        z = maps[digit](z)
    return z


def eval_coding_product(spec: IFSSpec, word: CodingWord) -> complex:
    """Σ c_{x_n} Π_k α_k^{I_k(x, n−1)}, the product form with α_k = αe^{iθ_k}."""
    ratios = [f.ratio for f in maps_from_spec(spec)]
    total = 0j
    for n in range(1, len(word) + 1):
        product = 1 + 0j
        for k, ratio in enumerate(ratios):
            product *= ratio ** count_digit(word, k, n - 1)
        total += spec.constants[word.digits[n - 1]] * product
    return total


def fixed_point(f: AffineMap) -> complex:
    """z with f(z) = z."""
    return f.offset / (1 - f.ratio)


def bounding_radius(spec: IFSSpec) -> float:
    """max|c| / (1 − |α|): every partial sum lies in this disk."""
    return max(abs(c) for c in spec.constants) / (1.0 - abs(spec.alpha))


def tail_bound(spec: IFSSpec, depth: int) -> float:
    """max|c|·|α|^N / (1 − |α|): distance from a depth-N sum to any extension."""
    return bounding_radius(spec) * abs(spec.alpha) ** depth


def canonical_cloud(
    points: np.ndarray,
    depth: Optional[int],
    mode: GenerationMode,
    source: str,
    tolerance: Optional[float] = None,
) -> PointCloud:
    """Sort by (real, imag); with a tolerance, also merge points closer than it.

    Points within ``tolerance`` of each other are chained into one cluster and
    the cluster keeps its first point in (real, imag) order.
    """
    points = np.asarray(points, dtype=np.complex128).reshape(-1)
    if tolerance is None or not points.size:
        points = points[np.lexsort((points.imag, points.real))]
        return PointCloud(points=points, depth=depth, mode=mode, source=source)

    plane, index = np.unique(
        np.column_stack([points.real, points.imag]), axis=0, return_index=True
    )
    points = points[index]
    pairs = cKDTree(plane).query_pairs(tolerance, output_type="ndarray")
    if pairs.size:
        n = plane.shape[0]
        graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
        _, first = np.unique(labels, return_index=True)
        points = points[np.sort(first)]
    return PointCloud(points=points, depth=depth, mode=mode, source=source)


def _check_points_cap(count: int, settings: Settings) -> None:
    if count > settings.enumeration_cap:
        raise EnumerationCapExceeded(count, settings.enumeration_cap, "points")


def coding_points(
    spec: IFSSpec,
    depth: int,
    form: str = "series",
    settings: Optional[Settings] = None,
) -> np.ndarray:
    """All m^N depth-N partial sums, undeduplicated.

    ``form="series"`` evaluates the exponent-sum series level by level in
    lexicographic coding order; ``form="maps"`` applies the maps ψ_k to the
    previous level instead.
    """
    settings = settings or get_settings()
    _check_points_cap(spec.m ** depth, settings)
    constants = np.array(spec.constants, dtype=np.complex128)

    if form == "maps":
        ratios = np.array([f.ratio for f in maps_from_spec(spec)], dtype=np.complex128)
        points = np.zeros(1, dtype=np.complex128)
        for _ in range(depth):
            points = (ratios[None, :] * points[:, None] + constants[None, :]).reshape(-1)
        return points
    if form != "series":
        raise ValueError(f"unknown evaluation form '{form}'")

    return drc_sums(spec, depth, np.zeros(1, dtype=np.int64))


def drc_sums(spec: IFSSpec, depth: int, starts: np.ndarray) -> np.ndarray:
    """Σ_{n≤N} α^{n−1} s_n γ_n for every Δ-word of length N+1 whose γ₁ is in ``starts``."""
    group = build_group(spec.generators)
    roots = unit_roots(group.order)
    steps = np.array(group.step_exponents, dtype=np.int64)
    constants = np.array(spec.constants, dtype=np.complex128)

    exponents = np.asarray(starts, dtype=np.int64)
    sums = np.zeros(exponents.shape[0], dtype=np.complex128)
    power = 1 + 0j
    for _ in range(depth):
        terms = (power * constants)[None, :] * roots[exponents][:, None]
        sums = (sums[:, None] + terms).reshape(-1)
        exponents = ((exponents[:, None] + steps[None, :]) % group.order).reshape(-1)
        power *= spec.alpha
    return sums


@log_performance
def attractor_exhaustive(
    spec: IFSSpec,
    depth: int,
    settings: Optional[Settings] = None,
    form: str = "series",
) -> PointCloud:
    """{eval_coding(x) : |x| = N}, deduplicated and canonically ordered.

    Raises:
        EnumerationCapExceeded: if m^N exceeds the enumeration cap
    """
    settings = settings or get_settings()
    points = coding_points(spec, depth, form=form, settings=settings)
    logger.debug(f"evaluated {points.size} codings at depth {depth}", extra={"depth": depth})
    return canonical_cloud(
        points,
        depth,
        GenerationMode.EXHAUSTIVE,
        f"T(alpha={spec.alpha}, S={spec.generators})",
        settings.dedup_tolerance,
    )


@log_performance
def attractor_sampled(
    spec: IFSSpec,
    n_points: int,
    seed: int,
    settings: Optional[Settings] = None,
    burn_in: Optional[int] = None,
) -> PointCloud:
    """Chaos game: ``n_points`` independent orbits of random maps from 0.

    Each orbit is iterated ``burn_in`` times and its last iterate is kept, so
    every point is a random composition ψ_{x_1}∘…∘ψ_{x_B}(0). ``burn_in=0``
    keeps the starting point.
    """
    if n_points < 1:
        raise ValueError("n_points must be at least 1")
    settings = settings or get_settings()
    if burn_in is None:
        burn_in = settings.chaos_burn_in
    if burn_in < 0:
        raise ValueError("burn_in must be non-negative")
    maps = maps_from_spec(spec)
    ratios = np.array([f.ratio for f in maps], dtype=np.complex128)
    offsets = np.array([f.offset for f in maps], dtype=np.complex128)

    rng = np.random.default_rng(seed)
    z = np.zeros(n_points, dtype=np.complex128)
    for _ in range(burn_in):
        choice = rng.integers(spec.m, size=n_points)
        z = ratios[choice] * z + offsets[choice]
    return canonical_cloud(
        z,
        burn_in,
        GenerationMode.SAMPLED,
        f"chaos(alpha={spec.alpha}, S={spec.generators}, seed={seed})",
    )
