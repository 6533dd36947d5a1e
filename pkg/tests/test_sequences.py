"""Tests for revolving-sequence grammars."""

import itertools

import pytest
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from revolving_fractals.core.angle_group import build_group, make_angle, make_generator_set
from revolving_fractals.core.errors import (
    EnumerationCapExceeded,
    InvalidGeneratorSetError,
    InvalidWordError,
)
from revolving_fractals.core.models import (
    ZERO,
    CodingWord,
    DeltaWord,
    DeltaZeroWord,
    Grammar,
    GroupElement,
    GRWord,
)
from revolving_fractals.core.sequences import (
    all_codings,
    coding_to_delta,
    constant_sequence,
    count_digit,
    count_drc,
    count_dzrc,
    count_grc,
    delta_to_coding,
    delta_to_grs,
    dzrc_from_coding,
    enumerate_drc,
    enumerate_dzrc,
    enumerate_grc,
    group_for_angle,
    sample_random,
    validate,
    validate_drc,
    validate_dzrc,
    validate_grc,
    word_to_complex,
)

QUARTER = make_angle(1, 4)


def _grc_oracle(angle, length):
    """Count GRC words by filtering every tuple over {ZERO, 0..p−1}."""
    alphabet = [ZERO] + list(range(angle.p))
    return sum(
        validate_grc(GRWord.model_construct(entries=entries, angle=angle))
        for entries in itertools.product(alphabet, repeat=length)
    )


def _dzrc_oracle(group, length):
    alphabet = [ZERO] + list(range(group.order))
    return sum(
        validate_dzrc(DeltaZeroWord.model_construct(entries=entries, group=group))
        for entries in itertools.product(alphabet, repeat=length)
    )


class TestValidators:
    """Tests for the three grammar validators."""

    def test_grc_accepts_rotation_steps(self):
        assert validate_grc(GRWord(entries=(ZERO, 2, ZERO, 3, 0), angle=QUARTER))

    def test_grc_rejects_skipped_rotation(self):
        assert not validate_grc(GRWord(entries=(1, ZERO, 3), angle=QUARTER))

    def test_grc_all_zero(self):
        assert validate_grc(GRWord(entries=(ZERO, ZERO), angle=QUARTER))

    def test_drc(self, six_group):
        assert validate_drc(DeltaWord(exponents=(5, 5, 2, 4), group=six_group))
        assert not validate_drc(DeltaWord(exponents=(0, 1), group=six_group))

    def test_dzrc_rejects_zero_rotation(self, six_group):
        """Test that a repeated nonzero entry is not a valid Δ₀ step."""
        assert validate_dzrc(DeltaZeroWord(entries=(ZERO, 1, ZERO, 4, 0), group=six_group))
        assert not validate_dzrc(DeltaZeroWord(entries=(1, 1), group=six_group))

    def test_grc_sixth_turn_word(self):
        """Test a θ = π/3 word that rotates by one step at every nonzero entry."""
        word = GRWord(entries=(ZERO, 0, 1, ZERO, 2, ZERO, ZERO, 3, 4, ZERO), angle=make_angle(1, 6))
        assert validate_grc(word)

    def test_drc_three_angle_walk(self, six_group):
        word = DeltaWord(exponents=(0, 3, 3, 5, 5, 5, 2), group=six_group)
        assert validate_drc(word)
        assert delta_to_coding(word).digits == (1, 0, 2, 0, 0, 1)

    def test_dzrc_three_angle_word(self, six_group):
        assert validate_dzrc(
            DeltaZeroWord(entries=(0, 3, ZERO, 5, ZERO, ZERO, 2), group=six_group)
        )

    def test_dispatch(self, six_group):
        assert validate(CodingWord(digits=(0, 2), m=3))
        assert not validate(DeltaWord(exponents=(0, 1), group=six_group))
        assert not validate(GRWord(entries=(0, 0), angle=QUARTER))


class TestCounts:
    """Tests for closed-form counts against enumeration."""

    def test_grc_quarter_counts(self):
        """Test θ = π/2 gives 5, 13 and 29 words of length 1, 2 and 3."""
        assert [count_grc(QUARTER, n) for n in (1, 2, 3)] == [5, 13, 29]
        assert [len(enumerate_grc(QUARTER, n)) for n in (1, 2, 3)] == [5, 13, 29]

    @pytest.mark.parametrize("angle", [make_angle(1, 2), make_angle(1, 3), make_angle(-1, 4)])
    @pytest.mark.parametrize("length", [1, 2, 3])
    def test_grc_against_oracle(self, angle, length):
        assert count_grc(angle, length) == _grc_oracle(angle, length)

    def test_dzrc_half_turn(self):
        """Test S = {0, π} at length 2 gives 7 words."""
        group = build_group(make_generator_set([(0, 1), (1, 2)]))
        assert count_dzrc(group, 2) == 7
        words = enumerate_dzrc(group, 2)
        assert len(words) == 7
        assert all(validate_dzrc(w) for w in words)

    def test_dzrc_against_oracle(self, six_group):
        assert count_dzrc(six_group, 3) == _dzrc_oracle(six_group, 3)
        assert len(enumerate_dzrc(six_group, 3)) == _dzrc_oracle(six_group, 3)

    def test_drc(self, six_group):
        """Test |Δ|·m^{N−1} free words and m^{N−1} with γ₁ fixed."""
        assert count_drc(six_group, 3) == 6 * 9
        assert count_drc(six_group, 3, first_fixed=True) == 9
        words = enumerate_drc(six_group, 3)
        assert len(words) == 54
        assert len(set(w.exponents for w in words)) == 54
        assert all(validate_drc(w) for w in words)

    def test_drc_fixed_first(self, quarter_group):
        words = enumerate_drc(quarter_group, 4, first=GroupElement(exponent=2, order=4))
        assert len(words) == 8
        assert all(w.exponents[0] == 2 for w in words)

    def test_zero_length(self, quarter_group):
        assert count_drc(quarter_group, 0) == 0
        with pytest.raises(ValueError):
            enumerate_drc(quarter_group, 0)


class TestEnumeration:
    """Tests for enumeration order and limits."""

    def test_lexicographic_with_zero_first(self):
        words = enumerate_grc(QUARTER, 1)
        assert [w.entries for w in words] == [(ZERO,), (0,), (1,), (2,), (3,)]

    def test_grc_words_valid(self):
        assert all(validate_grc(w) for w in enumerate_grc(make_angle(1, 3), 4))

    def test_cap(self, six_group, tiny_settings):
        with pytest.raises(EnumerationCapExceeded) as exc_info:
            enumerate_drc(six_group, 3, settings=tiny_settings)
        assert exc_info.value.count == 54
        assert exc_info.value.cap == 10

    def test_grc_zero_angle(self):
        with pytest.raises(InvalidGeneratorSetError):
            enumerate_grc(make_angle(0, 1), 2)

    def test_all_codings(self):
        words = all_codings(2, 3)
        assert len(words) == 8
        assert words[0].digits == (0, 0, 0)
        assert words[-1].digits == (1, 1, 1)

    def test_drc_lexicographic(self, six_group):
        """Test DRC words come out sorted by exponent tuple."""
        exponents = [w.exponents for w in enumerate_drc(six_group, 4)]
        assert exponents == sorted(exponents)
        fixed = enumerate_drc(six_group, 4, first=GroupElement(exponent=3, order=6))
        assert [w.exponents for w in fixed] == sorted(w.exponents for w in fixed)


ANGLE_SETS = [
    [(0, 1), (1, 2)],
    [(0, 1), (1, 2), (1, 3)],
    [(0, 1), (1, 4), (-1, 4)],
]


def _drc_oracle(group, length):
    return sum(
        validate_drc(DeltaWord.model_construct(exponents=exps, group=group))
        for exps in itertools.product(range(group.order), repeat=length)
    )


class TestCodingDeltaCorrespondence:
    """Test codings, rotations and DRC words line up exhaustively up to length 8."""

    @pytest.mark.parametrize("angles", ANGLE_SETS)
    @pytest.mark.parametrize("length", range(1, 9))
    def test_count_law(self, angles, length):
        """Test |Δ|·m^{N−1} free words and m^{N−1} with γ₁ fixed."""
        group = build_group(make_generator_set(angles))
        free = group.order * group.m ** (length - 1)
        assert count_drc(group, length) == free
        assert count_drc(group, length, first_fixed=True) == group.m ** (length - 1)
        assert len(enumerate_drc(group, length)) == free
        if length <= 4:
            assert _drc_oracle(group, length) == free

    @pytest.mark.parametrize("angles", ANGLE_SETS)
    @pytest.mark.parametrize("length", range(1, 9))
    def test_rotation_closure(self, angles, length):
        """Test the free DRC words are the Δ-rotations of the words starting at 1."""
        group = build_group(make_generator_set(angles))
        order = group.order
        anchored = enumerate_drc(group, length, first=GroupElement(exponent=0, order=order))
        rotated = {
            tuple((e + g) % order for e in w.exponents) for g in range(order) for w in anchored
        }
        assert {w.exponents for w in enumerate_drc(group, length)} == rotated

    @pytest.mark.parametrize("angles", ANGLE_SETS)
    @pytest.mark.parametrize("length", range(1, 9))
    def test_coding_bijection(self, angles, length):
        """Test codings of length N map one-to-one onto DRC words of length N+1 with γ₁ = 1."""
        group = build_group(make_generator_set(angles))
        codings = all_codings(group.m, length)
        images = [coding_to_delta(c, group) for c in codings]
        exponents = {w.exponents for w in images}
        assert len(exponents) == len(codings)
        identity = GroupElement(exponent=0, order=group.order)
        anchored = enumerate_drc(group, length + 1, first=identity)
        assert exponents == {w.exponents for w in anchored}
        assert [delta_to_coding(w).digits for w in images] == [c.digits for c in codings]


class TestSampling:
    """Tests for sample_random."""

    @pytest.mark.parametrize("kind", [Grammar.DRC, Grammar.DZRC, Grammar.GRC])
    def test_samples_are_valid(self, kind, six_group):
        for seed in range(25):
            word = sample_random(kind, 12, seed, group=six_group, angle=make_angle(1, 3))
            assert len(word) == 12
            assert validate(word)

    def test_deterministic(self, six_group):
        first = sample_random(Grammar.DZRC, 20, 7, group=six_group)
        second = sample_random(Grammar.DZRC, 20, 7, group=six_group)
        assert first == second

    def test_step_frequencies_uniform(self, six_group):
        """Test each angle is chosen with frequency 1/m over a long DRC word."""
        word = sample_random(Grammar.DRC, 100_001, 0, group=six_group)
        digits = delta_to_coding(word).digits
        for k in range(3):
            assert digits.count(k) / len(digits) == pytest.approx(1 / 3, abs=0.01)

    def test_missing_group(self):
        with pytest.raises(ValueError):
            sample_random(Grammar.DRC, 3, 0)


class TestConversions:
    """Tests for conversions between coding words and revolving words."""

    def test_coding_to_delta(self, quarter_group):
        word = coding_to_delta(CodingWord(digits=(1, 0, 1, 1), m=2), quarter_group)
        assert word.exponents == (0, 1, 1, 2, 3)
        assert validate_drc(word)

    @given(st.lists(st.integers(0, 2), max_size=12))
    @hypothesis_settings(max_examples=50)
    def test_coding_delta_round_trip(self, digits):
        group = build_group(make_generator_set([(0, 1), (1, 6), (-1, 3)]))
        word = CodingWord(digits=tuple(digits), m=3)
        assert delta_to_coding(coding_to_delta(word, group)) == word

    def test_delta_to_coding_rejects_bad_step(self, quarter_group):
        with pytest.raises(InvalidWordError):
            delta_to_coding(DeltaWord(exponents=(0, 2), group=quarter_group))

    def test_arity_mismatch(self, quarter_group):
        with pytest.raises(InvalidWordError):
            coding_to_delta(CodingWord(digits=(2,), m=3), quarter_group)

    def test_constant_sequence(self, quarter_group):
        word = DeltaWord(exponents=(0, 1, 1, 2), group=quarter_group)
        assert constant_sequence(word, (0j, 1 + 0j)) == [1, 0, 1]

    def test_constant_sequence_short_word(self, quarter_group):
        with pytest.raises(InvalidWordError):
            constant_sequence(DeltaWord(exponents=(0,), group=quarter_group), (0j, 1 + 0j))

    def test_dzrc_from_coding_example(self, six_group):
        """Test digits (0, 1, 2) map to (ZERO, 1, e^{iπ}) as exponents (ZERO, 0, 3)."""
        word = dzrc_from_coding(CodingWord(digits=(0, 1, 2), m=3), six_group)
        assert word.entries == (ZERO, 0, 3)

    def test_coding_to_delta_three_angles(self, six_group):
        word = coding_to_delta(CodingWord(digits=(1, 2), m=3), six_group)
        assert word.exponents == (0, 3, 5)

    def test_dzrc_from_coding_half_turn(self):
        group = build_group(make_generator_set([(0, 1), (1, 2)]))
        word = dzrc_from_coding(CodingWord(digits=(1, 1, 0, 1), m=2), group)
        assert word.entries == (0, 1, ZERO, 0)

    def test_dzrc_from_coding_always_valid(self, six_group):
        for coding in all_codings(3, 5):
            assert validate_dzrc(dzrc_from_coding(coding, six_group))

    def test_delta_to_grs_example(self):
        """Test a θ = −π/2 Δ-word maps to powers of e^{iθ}."""
        angle = make_angle(-1, 4)
        group = group_for_angle(angle)
        assert group.generator_exponents == (3,)
        word = DeltaWord(exponents=(0, 3, 3, 2), group=group)
        grs = delta_to_grs(word)
        assert grs.entries == (0, ZERO, 1)
        assert validate_grc(grs)

    def test_delta_to_grs_always_valid(self):
        group = group_for_angle(make_angle(1, 3))
        for word in enumerate_drc(group, 6):
            grs = delta_to_grs(word)
            assert len(grs) == 5
            assert validate_grc(grs)

    def test_delta_to_grs_needs_two_angles(self, six_group):
        with pytest.raises(InvalidGeneratorSetError):
            delta_to_grs(DeltaWord(exponents=(0, 3), group=six_group))

    def test_count_digit(self):
        assert count_digit(CodingWord(digits=(0, 1, 1, 0, 2), m=3), 1, 4) == 2
        word = CodingWord(digits=(1, 0, 1, 1), m=2)
        assert count_digit(word, 1, 3) == 2
        assert count_digit(word, 0, 0) == 0
        with pytest.raises(ValueError):
            count_digit(word, 1, 5)


class TestWordToComplex:
    """Tests for complex views of words."""

    def test_delta_word(self, quarter_group):
        assert word_to_complex(DeltaWord(exponents=(0, 1, 2), group=quarter_group)) == [1, 1j, -1]

    def test_zero_entries(self, quarter_group):
        values = word_to_complex(DeltaZeroWord(entries=(ZERO, 3), group=quarter_group))
        assert values == [0, -1j]

    def test_grs_word_uses_angle_powers(self):
        """Test entry e stands for e^{ieθ}, not e^{2πie/p}."""
        values = word_to_complex(GRWord(entries=(1, 2), angle=make_angle(-1, 4)))
        assert values == [-1j, -1]

    def test_coding_word_has_no_view(self):
        with pytest.raises(TypeError):
            word_to_complex(CodingWord(digits=(0,), m=2))
