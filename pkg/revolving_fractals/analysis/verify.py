"""Finite-depth checks of the decomposition identities.

Every check builds the two sides of an identity through independent code paths
and reports their Hausdorff distance. At equal depth both sides are the same
finite set, so the expected discrepancy is floating-point noise.
"""

import cmath
import logging
import time
from typing import Callable, Dict, List, Optional

import numpy as np

from ..config.settings import Settings, get_settings
from ..core.angle_group import build_group, closure_size, make_generator_set
from ..core.errors import InvalidGeneratorSetError
from ..core.ifs import attractor_exhaustive, canonical_cloud, coding_points, tail_bound
from ..core.models import (
    GenerationMode,
    GeneratorSet,
    IFSSpec,
    PointCloud,
    RationalAngle,
    VerificationReport,
)
from ..core.presets import delta_presets
from ..core.series import cloud_grs, cloud_X, cloud_Xstar, tstar_spec
from ..core.sequences import group_for_angle
from ..monitoring.logger import LogContext, log_performance
from ..storage.formats import format_report_line
from .hausdorff import hausdorff

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10


def _report(
    claim_id: str,
    parameters: Dict[str, object],
    depth: int,
    tolerance: float,
    discrepancy: float,
    started: float,
) -> VerificationReport:
    report = VerificationReport(
        claim_id=claim_id,
        parameters={k: str(v) for k, v in parameters.items()},
        depth=depth,
        tolerance=tolerance,
        discrepancy=discrepancy,
        seconds=time.perf_counter() - started,
    )
    log = logger.info if report.passed else logger.warning
    log(
        f"{claim_id}: {report.status} discrepancy={discrepancy:.3e} tolerance={tolerance:.1e}",
        extra={"claim_id": claim_id, "depth": depth},
    )
    return report


def _distance(a: PointCloud, b: PointCloud, settings: Settings) -> float:
    return hausdorff(a, b, settings.hausdorff_bruteforce_limit)


def _rotated_maps_cloud(
    spec: IFSSpec, depth: int, rotations: np.ndarray, source: str, settings: Settings
) -> PointCloud:
    """∪ r·{ψ_{x_1}∘…∘ψ_{x_N}(0)} over the given rotations r."""
    points = coding_points(spec, depth, form="maps", settings=settings)
    rotated = (np.asarray(rotations)[:, None] * points[None, :]).reshape(-1)
    return canonical_cloud(
        rotated, depth, GenerationMode.EXHAUSTIVE, source, settings.dedup_tolerance
    )


@log_performance
def check_main_theorem(
    spec: IFSSpec,
    depth: int,
    eps: float = DEFAULT_TOLERANCE,
    reference_spec: Optional[IFSSpec] = None,
    settings: Optional[Settings] = None,
) -> VerificationReport:
    """X_{α,S} against ∪_{γ∈Δ} γ·T_{α,S} at depth N.

    The X side sums every Δ-word with a free first element; the T side composes
    the maps ψ_k and rotates the result. ``reference_spec`` replaces ``spec``
    on the T side (used for perturbed comparisons).
    """
    settings = settings or get_settings()
    started = time.perf_counter()
    reference = reference_spec or spec
    group = build_group(spec.generators)
    with LogContext(claim_id="main"):
        x_cloud = cloud_X(spec, depth, full_enumeration=True, settings=settings)
        roots = np.array(
            [cmath.rect(1.0, 2.0 * np.pi * k / group.order) for k in range(group.order)]
        )
        t_cloud = _rotated_maps_cloud(reference, depth, roots, "∪γT", settings)
        discrepancy = _distance(x_cloud, t_cloud, settings)
    return _report(
        "main",
        {"alpha": spec.alpha, "S": spec.generators, "c": spec.constants, "order": group.order},
        depth, eps, discrepancy, started,
    )


@log_performance
def check_corollary(
    alpha: complex,
    generators: GeneratorSet,
    depth: int,
    eps: float = DEFAULT_TOLERANCE,
    settings: Optional[Settings] = None,
) -> VerificationReport:
    """X*_{α,S} against ∪_{γ∈Δ} γ·T*_{α,S}, T* built from ψ₀(z)=αz, ψ_k(z)=αe^{iθ_k}z+α."""
    settings = settings or get_settings()
    started = time.perf_counter()
    group = build_group(generators)
    with LogContext(claim_id="corollary"):
        star_cloud = cloud_Xstar(alpha, generators, depth, settings=settings)
        roots = np.array(
            [cmath.rect(1.0, 2.0 * np.pi * k / group.order) for k in range(group.order)]
        )
        t_cloud = _rotated_maps_cloud(
            tstar_spec(alpha, generators), depth, roots, "∪γT*", settings
        )
        discrepancy = _distance(star_cloud, t_cloud, settings)
    return _report(
        "corollary",
        {"alpha": alpha, "S": generators, "order": group.order},
        depth, eps, discrepancy, started,
    )


def _require_revolving(angle: RationalAngle) -> None:
    if angle.is_zero:
        raise InvalidGeneratorSetError("the revolving angle θ must be nonzero")


@log_performance
def check_kawamura_allen(
    alpha: complex,
    angle: RationalAngle,
    depth: int,
    eps: float = DEFAULT_TOLERANCE,
    settings: Optional[Settings] = None,
) -> VerificationReport:
    """X_{α,θ} against ∪_{l<p} (e^{iθ})^l·M_{α,θ}, M from ψ₀(z)=αz, ψ₁(z)=αe^{iθ}z+α.

    The rotations are powers of e^{iθ} taken in floating point, not the
    exponent table of Δ.
    """
    _require_revolving(angle)
    settings = settings or get_settings()
    started = time.perf_counter()
    with LogContext(claim_id="ka"):
        grs_cloud = cloud_grs(alpha, angle, depth, settings=settings)
        generators = make_generator_set([(0, 1), angle])
        step = cmath.rect(1.0, angle.radians)
        rotations = np.array([step ** l for l in range(angle.p)])
        m_cloud = _rotated_maps_cloud(
            tstar_spec(alpha, generators), depth, rotations, "∪(e^{iθ})^l M", settings
        )
        discrepancy = _distance(grs_cloud, m_cloud, settings)
    return _report(
        "ka", {"alpha": alpha, "theta": angle, "p": angle.p}, depth, eps, discrepancy, started
    )


def check_group_order(generators: GeneratorSet) -> VerificationReport:
    """Brute-force closure of {e^{iθ_j}} in floating point against lcm(p_j)."""
    started = time.perf_counter()
    with LogContext(claim_id="group"):
        order = build_group(generators).order
        closure = closure_size(generators)
    return _report(
        "group",
        {"S": generators, "order": order, "closure": closure},
        0, 0.0, float(abs(closure - order)), started,
    )


@log_performance
def check_grs_reduction(
    alpha: complex,
    angle: RationalAngle,
    depth: int,
    eps: float = DEFAULT_TOLERANCE,
    settings: Optional[Settings] = None,
) -> VerificationReport:
    """X_{α,θ} against X_{α,S} for S = {0, θ}, c = (0, α), both at depth N.

    Under δ_n = α⁻¹γ_n s_n the generalized revolving words and the Δ-words
    produce the same sums.
    """
    _require_revolving(angle)
    settings = settings or get_settings()
    started = time.perf_counter()
    with LogContext(claim_id="reduction"):
        grs_cloud = cloud_grs(alpha, angle, depth, settings=settings)
        generators = group_for_angle(angle).generators
        spec = IFSSpec(alpha=alpha, generators=generators, constants=(0j, alpha))
        delta_cloud = cloud_X(spec, depth, full_enumeration=True, settings=settings)
        discrepancy = _distance(grs_cloud, delta_cloud, settings)
    return _report(
        "reduction", {"alpha": alpha, "theta": angle}, depth, eps, discrepancy, started
    )


@log_performance
def check_tail_bound(
    spec: IFSSpec,
    depth: int,
    extra: int = 5,
    settings: Optional[Settings] = None,
) -> VerificationReport:
    """hausdorff(T at depth N, T at depth N+extra) against max|c|·|α|^N/(1−|α|)."""
    settings = settings or get_settings()
    started = time.perf_counter()
    with LogContext(claim_id="tail"):
        shallow = attractor_exhaustive(spec, depth, settings=settings)
        deep = attractor_exhaustive(spec, depth + extra, settings=settings)
        discrepancy = _distance(shallow, deep, settings)
    return _report(
        "tail",
        {"alpha": spec.alpha, "S": spec.generators, "extra": extra},
        depth, tail_bound(spec, depth), discrepancy, started,
    )


def _suite_checks(settings: Settings) -> List[Callable[[], VerificationReport]]:
    checks: List[Callable[[], VerificationReport]] = [
        lambda: check_group_order(make_generator_set([(0, 1), (1, 2), (1, 3)])),
    ]
    for preset in delta_presets():
        spec = preset.series_spec().ifs
        depth = 10 if spec.m == 2 else 7
        checks.append(
            lambda spec=spec, depth=depth: check_main_theorem(spec, depth, settings=settings)
        )
        checks.append(
            lambda spec=spec, depth=depth: check_tail_bound(spec, depth - 2, settings=settings)
        )
    corollary_sets = [
        (make_generator_set([(0, 1), (1, 2)]), 8),
        (make_generator_set([(0, 1), (1, 2), (1, 3)]), 6),
        (make_generator_set([(0, 1), (1, 4), (-1, 4)]), 6),
    ]
    for generators, depth in corollary_sets:
        checks.append(
            lambda g=generators, d=depth: check_corollary(0.4 + 0.2j, g, d, settings=settings)
        )
    alpha = (1 - 1j) / 2
    for q in (1, -1):
        angle = RationalAngle(q=q, p=4)
        checks.append(lambda a=angle: check_kawamura_allen(alpha, a, 10, settings=settings))
        checks.append(lambda a=angle: check_grs_reduction(alpha, a, 10, settings=settings))
    return checks


def run_suite(settings: Optional[Settings] = None) -> List[VerificationReport]:
    """Run the standard set of checks in a fixed order."""
    settings = settings or get_settings()
    reports = [check() for check in _suite_checks(settings)]
    passed = sum(r.passed for r in reports)
    logger.info(f"verification suite: {passed}/{len(reports)} checks passed")
    return reports


def format_summary(reports: List[VerificationReport]) -> str:
    """``summary passed=<k> failed=<j> total=<n>``."""
    passed = sum(r.passed for r in reports)
    return f"summary passed={passed} failed={len(reports) - passed} total={len(reports)}"


def format_reports(reports: List[VerificationReport]) -> str:
    """One report line per claim followed by the summary line."""
    lines = [format_report_line(r) for r in reports]
    lines.append(format_summary(reports))
    return "\n".join(lines)
