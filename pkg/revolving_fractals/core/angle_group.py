"""Exact arithmetic for rational revolving angles and the revolving group Δ.

Δ is stored as Z_L: an element is its exponent k standing for e^{2πik/L}.
Multiplication is exponent addition mod L, so the group law never touches
floating point; complex values are produced only by ``elem_to_complex`` and
``unit_roots``.
"""

import cmath
import logging
import math
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .errors import InvalidAngleError, InvalidGeneratorSetError
from .models import GeneratorSet, GroupElement, RationalAngle, RevolvingGroup

logger = logging.getLogger(__name__)

AngleLike = Union[RationalAngle, Tuple[int, int], str]

# Exact values of e^{2πik/4}.
_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def make_angle(q: int, p: int) -> RationalAngle:
    """Build the reduced angle 2πq/p normalized into (−π, π].

    Args:
        q: Numerator (any sign)
        p: Positive denominator

    Returns:
        The canonical RationalAngle

    Raises:
        InvalidAngleError: if p is not a positive integer
    """
    if p == 0:
        raise InvalidAngleError("angle denominator must be nonzero")
    if p < 0:
        q, p = -q, -p
    return RationalAngle(q=q, p=p)


def parse_angle(text: str) -> RationalAngle:
    """Parse a fraction of a full turn: ``"0"``, ``"1/3"``, ``"-1/4"``."""
    text = text.strip()
    try:
        if "/" in text:
            q_text, p_text = text.split("/", 1)
            return make_angle(int(q_text), int(p_text))
        return make_angle(int(text), 1)
    except ValueError as e:
        if isinstance(e, InvalidAngleError):
            raise
        raise InvalidAngleError(f"cannot parse angle '{text}' as q/p") from e


def _as_angle(value: AngleLike) -> RationalAngle:
    if isinstance(value, RationalAngle):
        return value
    if isinstance(value, str):
        return parse_angle(value)
    q, p = value
    return make_angle(q, p)


def make_generator_set(angles: Iterable[AngleLike]) -> GeneratorSet:
    """Build a generator set, rejecting a nonzero θ₀ and repeated angles.

    Raises:
        InvalidGeneratorSetError: on θ₀ ≠ 0 or duplicate angles
    """
    parsed = [_as_angle(a) for a in angles]
    if not parsed:
        raise InvalidGeneratorSetError("a generator set needs at least the zero angle")
    if not parsed[0].is_zero:
        raise InvalidGeneratorSetError(
            f"the first angle must be 0, got {parsed[0]}"
        )
    seen = set()
    for angle in parsed:
        if angle in seen:
            raise InvalidGeneratorSetError(
                f"angle {angle} appears twice; generator set angles must be distinct"
                + (" (a second zero angle duplicates θ₀)" if angle.is_zero else "")
            )
        seen.add(angle)
    return GeneratorSet(angles=tuple(parsed))


@lru_cache(maxsize=256)
def build_group(generators: GeneratorSet) -> RevolvingGroup:
    """Build Δ generated by S: L = lcm(p₁..p_{m−1}), a_j = q_j·L/p_j mod L.

    Results are cached per generator set; both are immutable.
    """
    if generators.is_degenerate:
        logger.warning(f"generator set {generators} is degenerate: Δ is trivial")
    denominators = [a.p for a in generators.angles[1:]]
    order = math.lcm(*denominators) if denominators else 1
    exponents = tuple((a.q * (order // a.p)) % order for a in generators.angles[1:])
    logger.debug(f"built revolving group of order {order} for S={generators}")
    return RevolvingGroup(
        order=order,
        generator_exponents=exponents,
        generators=generators,
    )


def angle_index(angle: RationalAngle, group: RevolvingGroup) -> int:
    """Position j of θ in the generator set.

    Raises:
        InvalidAngleError: if θ is not one of the generators
    """
    try:
        return group.generators.angles.index(angle)
    except ValueError:
        raise InvalidAngleError(
            f"angle {angle} is not in the generator set {group.generators}"
        ) from None


def elem_apply_angle(
    element: GroupElement, angle: RationalAngle, group: RevolvingGroup
) -> GroupElement:
    """Rotate γ by e^{iθ_j}: k' = (k + a_j) mod L."""
    step = group.step_exponents[angle_index(angle, group)]
    return GroupElement(exponent=(element.exponent + step) % group.order, order=group.order)


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group law of Δ by exponent addition."""
    if g.order != h.order:
        raise ValueError(f"elements of groups of order {g.order} and {h.order}")
    return GroupElement(exponent=(g.exponent + h.exponent) % g.order, order=g.order)


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(exponent=(-g.exponent) % g.order, order=g.order)


@lru_cache(maxsize=64)
def root_table(order: int) -> Tuple[complex, ...]:
    roots = []
    for k in range(order):
        if (4 * k) % order == 0:
            roots.append(_QUARTER_TURNS[(4 * k) // order])
        else:
            roots.append(cmath.rect(1.0, 2.0 * math.pi * k / order))
    return tuple(roots)


def unit_roots(order: int) -> np.ndarray:
    """e^{2πik/L} for k = 0..L−1, exact at quarter turns."""
    return np.array(root_table(order), dtype=np.complex128)


def elem_to_complex(element: GroupElement, group: RevolvingGroup = None) -> complex:
    """Complex value of a group element."""
    order = group.order if group is not None else element.order
    return root_table(order)[element.exponent % order]


def enumerate_elements(group: RevolvingGroup) -> List[GroupElement]:
    """All L elements of Δ, exponents 0..L−1."""
    return [GroupElement(exponent=k, order=group.order) for k in range(group.order)]


def additive_order(exponent: int, order: int) -> int:
    """Order of a in Z_L."""
    return order // math.gcd(exponent, order)


def closure_size(generators: GeneratorSet, decimals: int = 6) -> int:
    """Size of the multiplicative closure of {e^{iθ_j}} computed in floating point.

    Independent of the exponent representation; used to cross-check |Δ|.
    """

    def key(z: complex) -> Tuple[float, float]:
        return (round(z.real, decimals) + 0.0, round(z.imag, decimals) + 0.0)

    steps: Sequence[complex] = [cmath.rect(1.0, a.radians) for a in generators.angles]
    seen = {key(1 + 0j): 1 + 0j}
    frontier = [1 + 0j]
    while frontier:
        next_frontier = []
        for z in frontier:
            for s in steps:
                w = z * s
                k = key(w)
                if k not in seen:
                    seen[k] = w
                    next_frontier.append(w)
        frontier = next_frontier
    return len(seen)
