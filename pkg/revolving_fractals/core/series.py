"""Partial sums of the sequence-parametrized sets X_{α,S}, X*_{α,S} and X_{α,θ}.

Depth N always means N series terms. A Δ-word therefore carries N+1 elements
(s_N depends on γ_{N+1}); Δ₀ and GR words carry N entries and their sums start
at α¹.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..config.settings import Settings, get_settings
from ..monitoring.logger import log_performance
from .angle_group import build_group, root_table, unit_roots
from .errors import EnumerationCapExceeded, InvalidGeneratorSetError, InvalidWordError
from .ifs import accumulate_terms, canonical_cloud, coding_points, drc_sums
from .models import (
    DeltaWord,
    DeltaZeroWord,
    GenerationMode,
    GeneratorSet,
    GRWord,
    IFSSpec,
    PointCloud,
    RationalAngle,
    RevolvingGroup,
    SeriesKind,
    SeriesSpec,
)
from .sequences import count_dzrc, delta_to_coding, group_for_angle, word_to_complex

logger = logging.getLogger(__name__)


def eval_delta_word(spec: IFSSpec, word: DeltaWord) -> complex:
    """Σ_{n=1}^{N} α^{n−1} s_n γ_n for a Δ-word of length N+1.

    Raises:
        InvalidWordError: if the word is shorter than 2 or breaks the DRC
    """
    if len(word) < 2:
        raise InvalidWordError("a Δ-word needs at least 2 elements for one series term")
    if word.group.generators != spec.generators:
        raise InvalidWordError("word and spec use different generator sets")
    roots = root_table(word.group.order)
    digits = delta_to_coding(word).digits
    return accumulate_terms(
        spec.alpha,
        ((spec.constants[d], roots[word.exponents[n]]) for n, d in enumerate(digits)),
    )


def _sum_from_alpha(alpha: complex, values) -> complex:
    total = 0j
    power = alpha
    for value in values:
        if value != 0:
            total += power * value
        power *= alpha
    return total


def eval_grs_word(alpha: complex, word: GRWord) -> complex:
    """Σ δ_n α^n, powers starting at 1."""
    return _sum_from_alpha(alpha, word_to_complex(word))


def eval_dzrc_word(alpha: complex, word: DeltaZeroWord) -> complex:
    """Σ δ_n α^n with ZERO contributing nothing."""
    return _sum_from_alpha(alpha, word_to_complex(word))


def rotate_cloud_points(points: np.ndarray, group: RevolvingGroup) -> np.ndarray:
    """∪_{γ∈Δ} γ·points as one flat array."""
    return (unit_roots(group.order)[:, None] * np.asarray(points)[None, :]).reshape(-1)


def _check_cap(count: int, settings: Settings) -> None:
    if count > settings.enumeration_cap:
        raise EnumerationCapExceeded(count, settings.enumeration_cap, "points")


def _require_samples(samples: Optional[int]) -> int:
    if samples is None or samples < 1:
        raise ValueError("sampled mode needs a positive sample count")
    return samples


@log_performance
def cloud_X(
    spec: IFSSpec,
    depth: int,
    mode: GenerationMode = GenerationMode.EXHAUSTIVE,
    samples: Optional[int] = None,
    seed: int = 0,
    full_enumeration: bool = False,
    settings: Optional[Settings] = None,
) -> PointCloud:
    """Depth-N partial sums of X_{α,S} over Δ-words with a free first element.

    Exhaustive mode enumerates the γ₁ = 1 words and applies the |Δ| rotations
    afterwards; ``full_enumeration`` walks every γ₁ directly instead. Sampled
    mode draws γ₁ and each step uniformly.
    """
    settings = settings or get_settings()
    group = build_group(spec.generators)
    source = f"X(alpha={spec.alpha}, S={spec.generators})"

    if GenerationMode(mode) == GenerationMode.SAMPLED:
        n = _require_samples(samples)
        rng = np.random.default_rng(seed)
        roots = unit_roots(group.order)
        steps = np.array(group.step_exponents, dtype=np.int64)
        constants = np.array(spec.constants, dtype=np.complex128)
        exponents = rng.integers(group.order, size=n)
        sums = np.zeros(n, dtype=np.complex128)
        power = 1 + 0j
        for _ in range(depth):
            choice = rng.integers(spec.m, size=n)
            sums += (power * constants[choice]) * roots[exponents]
            exponents = (exponents + steps[choice]) % group.order
            power *= spec.alpha
        return canonical_cloud(sums, depth, GenerationMode.SAMPLED, source)

    _check_cap(group.order * spec.m ** depth, settings)
    if full_enumeration:
        points = drc_sums(spec, depth, np.arange(group.order, dtype=np.int64))
    else:
        points = rotate_cloud_points(coding_points(spec, depth, settings=settings), group)
    return canonical_cloud(
        points, depth, GenerationMode.EXHAUSTIVE, source, settings.dedup_tolerance
    )


def _zero_grammar_sums(alpha: complex, group: RevolvingGroup, depth: int) -> np.ndarray:
    """Σ δ_n α^n over every Δ₀-word of length N (the all-zero word included)."""
    roots = unit_roots(group.order)
    rotations = np.array(group.generator_exponents, dtype=np.int64)
    sums = np.zeros(0, dtype=np.complex128)
    last = np.zeros(0, dtype=np.int64)
    power = alpha
    for _ in range(depth):
        if sums.size and rotations.size:
            moved = (last[:, None] + rotations[None, :]) % group.order
            moved_sums = sums[:, None] + power * roots[moved]
            sums = np.concatenate([sums, moved_sums.reshape(-1)])
            last = np.concatenate([last, moved.reshape(-1)])
        # leaving the all-zero prefix
        sums = np.concatenate([sums, power * roots])
        last = np.concatenate([last, np.arange(group.order, dtype=np.int64)])
        power *= alpha
    return np.concatenate([np.zeros(1, dtype=np.complex128), sums])


def _zero_grammar_samples(
    alpha: complex, group: RevolvingGroup, depth: int, n: int, seed: int
) -> np.ndarray:
    roots = unit_roots(group.order)
    rotations = np.array(group.generator_exponents, dtype=np.int64)
    rng = np.random.default_rng(seed)
    sums = np.zeros(n, dtype=np.complex128)
    last = np.full(n, -1, dtype=np.int64)
    power = alpha
    for _ in range(depth):
        started = last >= 0
        # unstarted: pick in [0, L], L meaning ZERO; started: 0 means ZERO, j a rotation
        highs = np.where(started, group.m, group.order + 1)
        pick = rng.integers(0, highs)
        new_last = np.full(n, -1, dtype=np.int64)
        fresh = ~started & (pick < group.order)
        new_last[fresh] = pick[fresh]
        if rotations.size:
            moving = started & (pick > 0)
            new_last[moving] = (last[moving] + rotations[pick[moving] - 1]) % group.order
        emitted = new_last >= 0
        sums[emitted] += power * roots[new_last[emitted]]
        last = np.where(emitted, new_last, last)
        power *= alpha
    return sums


@log_performance
def cloud_Xstar(
    alpha: complex,
    generators: GeneratorSet,
    depth: int,
    mode: GenerationMode = GenerationMode.EXHAUSTIVE,
    samples: Optional[int] = None,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> PointCloud:
    """Depth-N partial sums Σ δ_n α^n of X*_{α,S} over Δ₀-revolving words."""
    settings = settings or get_settings()
    group = build_group(generators)
    return _zero_grammar_cloud(
        alpha, group, depth, mode, samples, seed, settings,
        f"X*(alpha={alpha}, S={generators})",
    )


@log_performance
def cloud_grs(
    alpha: complex,
    angle: RationalAngle,
    depth: int,
    mode: GenerationMode = GenerationMode.EXHAUSTIVE,
    samples: Optional[int] = None,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> PointCloud:
    """Depth-N partial sums Σ δ_n α^n of X_{α,θ} over generalized revolving words.

    Raises:
        InvalidGeneratorSetError: if θ is the zero angle
    """
    if angle.is_zero:
        raise InvalidGeneratorSetError("X_{alpha,theta} needs a nonzero revolving angle")
    settings = settings or get_settings()
    group = group_for_angle(angle)
    return _zero_grammar_cloud(
        alpha, group, depth, mode, samples, seed, settings,
        f"X(alpha={alpha}, theta={angle})",
    )


def _zero_grammar_cloud(
    alpha: complex,
    group: RevolvingGroup,
    depth: int,
    mode: GenerationMode,
    samples: Optional[int],
    seed: int,
    settings: Settings,
    source: str,
) -> PointCloud:
    if not abs(alpha) < 1.0:
        raise ValueError(f"|alpha| must be < 1, got {abs(alpha)}")
    if GenerationMode(mode) == GenerationMode.SAMPLED:
        points = _zero_grammar_samples(alpha, group, depth, _require_samples(samples), seed)
        return canonical_cloud(points, depth, GenerationMode.SAMPLED, source)
    _check_cap(count_dzrc(group, depth), settings)
    points = _zero_grammar_sums(alpha, group, depth)
    return canonical_cloud(
        points, depth, GenerationMode.EXHAUSTIVE, source, settings.dedup_tolerance
    )


def x_cloud_bound(alpha: complex, constants: Sequence[complex]) -> float:
    """max|c| / (1 − |α|); Δ₀ and GR series behave as constants (α,)."""
    return max(abs(c) for c in constants) / (1.0 - abs(alpha))


def series_bound(spec: SeriesSpec) -> float:
    """Radius of a disk containing every partial sum of the series."""
    if spec.kind == SeriesKind.DELTA:
        return x_cloud_bound(spec.alpha, spec.ifs.constants)
    return x_cloud_bound(spec.alpha, (spec.alpha,))


def cloud_for_series(
    spec: SeriesSpec,
    depth: int,
    mode: GenerationMode = GenerationMode.EXHAUSTIVE,
    samples: Optional[int] = None,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> PointCloud:
    """Dispatch to cloud_X, cloud_Xstar or cloud_grs by series kind."""
    if spec.kind == SeriesKind.DELTA:
        return cloud_X(spec.ifs, depth, mode, samples, seed, settings=settings)
    if spec.kind == SeriesKind.DELTA_ZERO:
        return cloud_Xstar(spec.alpha, spec.generators, depth, mode, samples, seed, settings)
    return cloud_grs(spec.alpha, spec.angle, depth, mode, samples, seed, settings)


def tstar_spec(alpha: complex, generators: GeneratorSet) -> IFSSpec:
    """IFS of T*_{α,S}: ψ₀(z) = αz, ψ_k(z) = αe^{iθ_k}z + α."""
    return IFSSpec(
        alpha=alpha,
        generators=generators,
        constants=(0j,) + (alpha,) * (generators.m - 1),
    )
