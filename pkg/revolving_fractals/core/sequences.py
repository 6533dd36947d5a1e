"""Validation, enumeration, sampling and conversion of revolving-sequence words.

Four word kinds are handled, all finite prefixes of infinite sequences:

* CodingWord    digits x_n in {0..m−1}
* DeltaWord     Δ-revolving (DRC): each step multiplies by some e^{iθ_j}, θ_j ∈ S
* DeltaZeroWord Δ₀-revolving (DZRC): zeros anywhere; each nonzero entry is the
                last nonzero entry rotated by some θ_k ∈ S∖{0}
* GRWord        generalized revolving (GRC): like DZRC with the single angle θ

Enumerations are depth-first in lexicographic order (ZERO sorts first) and refuse
to run past ``Settings.enumeration_cap``.
"""

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Union

import numpy as np

from ..config.settings import Settings, get_settings
from .angle_group import build_group, make_generator_set, unit_roots
from .errors import EnumerationCapExceeded, InvalidGeneratorSetError, InvalidWordError
from .models import (
    ZERO,
    CodingWord,
    DeltaWord,
    DeltaZeroWord,
    Grammar,
    GroupElement,
    GRWord,
    RationalAngle,
    RevolvingGroup,
)

logger = logging.getLogger(__name__)

Word = Union[CodingWord, DeltaWord, DeltaZeroWord, GRWord]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_grc(word: GRWord) -> bool:
    """True iff every nonzero entry after the first is the last nonzero entry times e^{iθ}."""
    p = word.angle.p
    last: Optional[int] = None
    for entry in word.entries:
        if entry is ZERO:
            continue
        if last is not None and entry != (last + 1) % p:
            return False
        last = entry
    return True


def validate_drc(word: DeltaWord) -> bool:
    """True iff each γ_{k+1}/γ_k is e^{iθ_j} for some θ_j ∈ S (θ₀ = 0 included)."""
    steps = set(word.group.step_exponents)
    order = word.group.order
    exps = word.exponents
    return all((b - a) % order in steps for a, b in zip(exps, exps[1:]))


def validate_dzrc(word: DeltaZeroWord) -> bool:
    """True iff each nonzero entry after the first is the last nonzero one rotated by S∖{0}."""
    rotations = set(word.group.generator_exponents)
    order = word.group.order
    last: Optional[int] = None
    for entry in word.entries:
        if entry is ZERO:
            continue
        if last is not None and (entry - last) % order not in rotations:
            return False
        last = entry
    return True


def validate(word: Word) -> bool:
    """Dispatch to the validator of the word's grammar; coding words are always valid."""
    if isinstance(word, GRWord):
        return validate_grc(word)
    if isinstance(word, DeltaWord):
        return validate_drc(word)
    if isinstance(word, DeltaZeroWord):
        return validate_dzrc(word)
    return True


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

def count_drc(group: RevolvingGroup, length: int, first_fixed: bool = False) -> int:
    """|W^Δ prefixes of length N| = |Δ|·m^{N−1}, or m^{N−1} with γ₁ fixed."""
    if length < 1:
        return 0
    base = group.m ** (length - 1)
    return base if first_fixed else group.order * base


def _count_zero_grammar(free_choices: int, followers: int, length: int) -> int:
    # all-zero prefix: 1 word; started words: each extends by `followers` options
    started = 0
    for _ in range(length):
        started = started * followers + free_choices
    return started + 1


def count_grc(angle: RationalAngle, length: int) -> int:
    """Number of GRC words of length N: zero prefix picks among p roots, then 2 options."""
    return _count_zero_grammar(angle.p, 2, length)


def count_dzrc(group: RevolvingGroup, length: int) -> int:
    """Number of DZRC words of length N: zero prefix picks among |Δ|, then m options."""
    return _count_zero_grammar(group.order, group.m, length)


def _check_cap(count: int, settings: Optional[Settings], what: str = "words") -> None:
    cap = (settings or get_settings()).enumeration_cap
    if count > cap:
        raise EnumerationCapExceeded(count, cap, what)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def enumerate_drc(
    group: RevolvingGroup,
    length: int,
    first: Optional[GroupElement] = None,
    settings: Optional[Settings] = None,
) -> List[DeltaWord]:
    """All DRC words of the given length in lexicographic order, γ₁ fixed to ``first`` or free.

    Raises:
        ValueError: if length < 1
        EnumerationCapExceeded: if the word count exceeds the cap
    """
    if length < 1:
        raise ValueError("word length must be at least 1")
    _check_cap(count_drc(group, length, first_fixed=first is not None), settings)

    order = group.order
    steps = group.step_exponents
    starts = [first.exponent] if first is not None else range(order)
    prefixes = [(start,) for start in starts]
    for _ in range(length - 1):
        prefixes = [
            prefix + (value,)
            for prefix in prefixes
            for value in sorted((prefix[-1] + a) % order for a in steps)
        ]
    words = [DeltaWord.model_construct(exponents=exps, group=group) for exps in prefixes]
    logger.debug(f"enumerated {len(words)} DRC words of length {length}")
    return words


def _zero_grammar_words(
    free_choices: int, step: Sequence[int], modulus: int, length: int
) -> Iterator[tuple]:
    """Depth-first generation shared by GRC and DZRC."""

    def extend(prefix: tuple, last: Optional[int]) -> Iterator[tuple]:
        if len(prefix) == length:
            yield prefix
            return
        yield from extend(prefix + (ZERO,), last)
        if last is None:
            options = range(free_choices)
        else:
            options = sorted({(last + a) % modulus for a in step})
        for value in options:
            yield from extend(prefix + (value,), value)

    yield from extend((), None)


def enumerate_grc(
    angle: RationalAngle, length: int, settings: Optional[Settings] = None
) -> List[GRWord]:
    """All GRC words of the given length over Δ_θ."""
    if length < 1:
        raise ValueError("word length must be at least 1")
    if angle.is_zero:
        raise InvalidGeneratorSetError("generalized revolving sequences need θ ≠ 0")
    _check_cap(count_grc(angle, length), settings)
    return [
        GRWord.model_construct(entries=entries, angle=angle)
        for entries in _zero_grammar_words(angle.p, (1,), angle.p, length)
    ]


def enumerate_dzrc(
    group: RevolvingGroup, length: int, settings: Optional[Settings] = None
) -> List[DeltaZeroWord]:
    """All DZRC words of the given length over Δ₀."""
    if length < 1:
        raise ValueError("word length must be at least 1")
    _check_cap(count_dzrc(group, length), settings)
    return [
        DeltaZeroWord.model_construct(entries=entries, group=group)
        for entries in _zero_grammar_words(
            group.order, group.generator_exponents, group.order, length
        )
    ]


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def sample_random(
    kind: Grammar,
    length: int,
    seed: int,
    group: Optional[RevolvingGroup] = None,
    angle: Optional[RationalAngle] = None,
) -> Word:
    """Draw one valid word with uniform, independent choices.

    DRC: γ₁ uniform in Δ, each step uniform over the m angles.
    GRC/DZRC: while the prefix is all zero, uniform over ZERO and every root;
    afterwards uniform over ZERO and each allowed rotation.
    """
    if length < 1:
        raise ValueError("word length must be at least 1")
    rng = np.random.default_rng(seed)
    kind = Grammar(kind)

    if kind == Grammar.DRC:
        if group is None:
            raise ValueError("DRC sampling needs a revolving group")
        steps = group.step_exponents
        exps = [int(rng.integers(group.order))]
        for idx in rng.integers(len(steps), size=length - 1):
            exps.append((exps[-1] + steps[idx]) % group.order)
        return DeltaWord(exponents=tuple(exps), group=group)

    if kind == Grammar.GRC:
        if angle is None:
            raise ValueError("GRC sampling needs a revolving angle")
        modulus, rotations = angle.p, (1,)
    else:
        if group is None:
            raise ValueError("DZRC sampling needs a revolving group")
        modulus, rotations = group.order, group.generator_exponents

    entries: List[Optional[int]] = []
    last: Optional[int] = None
    for _ in range(length):
        if last is None:
            pick = int(rng.integers(modulus + 1))
            value = None if pick == modulus else pick
        else:
            pick = int(rng.integers(len(rotations) + 1))
            value = None if pick == 0 else (last + rotations[pick - 1]) % modulus
        entries.append(value)
        if value is not None:
            last = value

    if kind == Grammar.GRC:
        return GRWord(entries=tuple(entries), angle=angle)
    return DeltaZeroWord(entries=tuple(entries), group=group)


# ---------------------------------------------------------------------------
# Conversions
# ---------------------------------------------------------------------------

def coding_to_delta(word: CodingWord, group: RevolvingGroup) -> DeltaWord:
    """γ₁ = 1, γ_{n+1} = γ_n·e^{iθ_{x_n}}; the result has N+1 elements."""
    if word.m != group.m:
        raise InvalidWordError(f"coding word over {word.m} digits, group has m={group.m}")
    steps = group.step_exponents
    exps = [0]
    for digit in word.digits:
        exps.append((exps[-1] + steps[digit]) % group.order)
    return DeltaWord(exponents=tuple(exps), group=group)


def _step_lookup(group: RevolvingGroup) -> Dict[int, int]:
    return {a: j for j, a in enumerate(group.step_exponents)}


def delta_to_coding(word: DeltaWord) -> CodingWord:
    """Recover x_n = k where γ_{n+1} = γ_n e^{iθ_k}; unique because the θ_k are distinct.

    Raises:
        InvalidWordError: if the word breaks the DRC
    """
    lookup = _step_lookup(word.group)
    order = word.group.order
    digits = []
    for a, b in zip(word.exponents, word.exponents[1:]):
        step = (b - a) % order
        if step not in lookup:
            raise InvalidWordError(
                f"step {a}->{b} is not a rotation by any angle of {word.group.generators}"
            )
        digits.append(lookup[step])
    return CodingWord(digits=tuple(digits), m=word.group.m)


def constant_sequence(word: DeltaWord, constants: Sequence[complex]) -> List[complex]:
    """s_n = c_k when γ_{n+1} = γ_n e^{iθ_k}; length N−1."""
    if len(word) < 2:
        raise InvalidWordError("a constant sequence needs a word of length at least 2")
    if len(constants) != word.group.m:
        raise ValueError(f"{len(constants)} constants for m={word.group.m}")
    return [constants[k] for k in delta_to_coding(word).digits]


def dzrc_from_coding(word: CodingWord, group: RevolvingGroup) -> DeltaZeroWord:
    """δ_n = I(x_n)·e^{iΣ_{j<n} θ_{x_j}}: ZERO where x_n = 0, else the accumulated rotation."""
    if word.m != group.m:
        raise InvalidWordError(f"coding word over {word.m} digits, group has m={group.m}")
    steps = group.step_exponents
    acc = 0
    entries: List[Optional[int]] = []
    for digit in word.digits:
        entries.append(ZERO if digit == 0 else acc)
        acc = (acc + steps[digit]) % group.order
    return DeltaZeroWord(entries=tuple(entries), group=group)


def delta_to_grs(word: DeltaWord) -> GRWord:
    """Map a Δ-word for S = {0, θ} to the GR word δ_n = α⁻¹γ_n s_n with c = (0, α).

    δ_n = γ_n where step n rotates, ZERO where it stays. γ's exponent over
    L = p becomes a power of e^{iθ} through q⁻¹ mod p. Output length N−1.
    """
    group = word.group
    if group.m != 2:
        raise InvalidGeneratorSetError("the GR reduction needs a generator set {0, θ}")
    angle = group.generators.angles[1]
    p = angle.p
    q_inverse = pow(angle.q, -1, p)
    digits = delta_to_coding(word).digits
    entries = tuple(
        (word.exponents[n] * q_inverse) % p if digit == 1 else ZERO
        for n, digit in enumerate(digits)
    )
    return GRWord(entries=entries, angle=angle)


def group_for_angle(angle: RationalAngle) -> RevolvingGroup:
    """Δ for S = {0, θ}: the p-th roots of unity."""
    return build_group(make_generator_set([(0, 1), angle]))


def count_digit(word: CodingWord, k: int, n: int) -> int:
    """I_k(x, n): occurrences of digit k among x_1..x_n."""
    if not 0 <= n <= len(word):
        raise ValueError(f"prefix length {n} outside [0, {len(word)}]")
    return word.digits[:n].count(k)


def all_codings(m: int, length: int, settings: Optional[Settings] = None) -> List[CodingWord]:
    """Every coding word of the given length, lexicographic."""
    _check_cap(m ** length, settings)
    return [
        CodingWord.model_construct(digits=digits, m=m)
        for digits in itertools.product(range(m), repeat=length)
    ]


def word_to_complex(word: Word) -> List[complex]:
    """Complex values of a word's entries; ZERO maps to 0."""
    if isinstance(word, CodingWord):
        raise TypeError("coding words have no complex view")
    if isinstance(word, GRWord):
        group = group_for_angle(word.angle)
        roots = unit_roots(group.order)
        a = group.generator_exponents[0]
        return [
            0j if e is ZERO else complex(roots[(e * a) % group.order])
            for e in word.entries
        ]
    roots = unit_roots(word.group.order)
    if isinstance(word, DeltaWord):
        return [complex(roots[k]) for k in word.exponents]
    return [0j if k is ZERO else complex(roots[k]) for k in word.entries]
