"""Tests for series evaluation and sequence-parametrized clouds."""

import numpy as np
import pytest

from revolving_fractals.analysis.hausdorff import hausdorff, one_sided_excess
from revolving_fractals.core.angle_group import (
    build_group,
    make_angle,
    make_generator_set,
    unit_roots,
)
from revolving_fractals.core.errors import (
    EnumerationCapExceeded,
    InvalidGeneratorSetError,
    InvalidWordError,
)
from revolving_fractals.core.ifs import eval_coding
from revolving_fractals.core.models import (
    CodingWord,
    DeltaWord,
    DeltaZeroWord,
    GenerationMode,
    IFSSpec,
    SeriesSpec,
)
from revolving_fractals.core.presets import get_preset
from revolving_fractals.core.sequences import (
    all_codings,
    coding_to_delta,
    count_dzrc,
    count_grc,
    delta_to_grs,
    dzrc_from_coding,
    enumerate_drc,
    enumerate_dzrc,
    enumerate_grc,
)
from revolving_fractals.core.series import (
    cloud_for_series,
    cloud_grs,
    cloud_X,
    cloud_Xstar,
    eval_delta_word,
    eval_dzrc_word,
    eval_grs_word,
    rotate_cloud_points,
    series_bound,
    tstar_spec,
)

ALPHA = 0.4 + 0.2j
LEVY_ALPHA = (1 - 1j) / 2


@pytest.fixture
def six_generators():
    return make_generator_set([(0, 1), (1, 2), (1, 3)])


class TestEvalDeltaWord:
    """Tests for Σ α^{n−1} s_n γ_n."""

    @pytest.mark.parametrize("preset_fixture", ["heighway", "twindragon", "fudgeflake"])
    def test_identity_start_matches_coding(self, preset_fixture, request):
        """Test γ₁ = 1 words reproduce eval_coding bit for bit."""
        spec = request.getfixturevalue(preset_fixture)
        group = build_group(spec.generators)
        depth = 8
        for word in all_codings(spec.m, depth):
            assert eval_delta_word(spec, coding_to_delta(word, group)) == eval_coding(spec, word)

    def test_free_start_rotates(self, fudgeflake):
        """Test starting at γ₁ multiplies the whole sum by γ₁."""
        group = build_group(fudgeflake.generators)
        roots = unit_roots(group.order)
        word = coding_to_delta(CodingWord(digits=(2, 0, 1, 1, 2), m=3), group)
        base = eval_delta_word(fudgeflake, word)
        for k in range(group.order):
            shifted = DeltaWord(
                exponents=tuple((e + k) % group.order for e in word.exponents), group=group
            )
            expected = roots[k] * base
            assert eval_delta_word(fudgeflake, shifted) == pytest.approx(expected, abs=1e-13)

    def test_heighway_reduces_to_grs(self, heighway):
        """Test a Heighway Δ-sum equals the GR sum of its reduced word divided by α."""
        group = build_group(heighway.generators)
        for word in enumerate_drc(group, 7):
            expected = eval_grs_word(heighway.alpha, delta_to_grs(word)) / heighway.alpha
            assert eval_delta_word(heighway, word) == pytest.approx(expected, abs=1e-13)

    def test_short_word(self, heighway, quarter_group):
        with pytest.raises(InvalidWordError):
            eval_delta_word(heighway, DeltaWord(exponents=(0,), group=quarter_group))

    def test_foreign_group(self, heighway, six_group):
        with pytest.raises(InvalidWordError):
            eval_delta_word(heighway, DeltaWord(exponents=(0, 3), group=six_group))


class TestZeroGrammarSums:
    """Tests for Σ δ_n α^n over Δ₀ and GR words."""

    def test_dzrc_matches_tstar_coding(self, six_generators):
        """Test δ = dzrc_from_coding(x) sums to the T* coding value of x."""
        group = build_group(six_generators)
        spec = tstar_spec(ALPHA, six_generators)
        for word in all_codings(3, 5):
            value = eval_dzrc_word(ALPHA, dzrc_from_coding(word, group))
            assert value == pytest.approx(eval_coding(spec, word), abs=1e-13)

    def test_tstar_constants(self, six_generators):
        spec = tstar_spec(ALPHA, six_generators)
        assert spec.constants == (0j, ALPHA, ALPHA)

    def test_grs_sum_starts_at_alpha(self):
        word = enumerate_grc(make_angle(1, 4), 1)[1]
        assert eval_grs_word(LEVY_ALPHA, word) == LEVY_ALPHA

    def test_single_entry_word(self, six_generators):
        """Test a length-1 word δ = (γ) sums to γ·α."""
        group = build_group(six_generators)
        roots = unit_roots(group.order)
        for exponent in range(group.order):
            word = DeltaZeroWord(entries=(exponent,), group=group)
            assert eval_dzrc_word(ALPHA, word) == pytest.approx(roots[exponent] * ALPHA, abs=1e-14)


class TestClouds:
    """Tests for cloud_X, cloud_Xstar and cloud_grs."""

    def test_cloud_X_matches_enumerated_words(self, fudgeflake):
        group = build_group(fudgeflake.generators)
        cloud = cloud_X(fudgeflake, 4)
        words = enumerate_drc(group, 5)
        direct = np.array([eval_delta_word(fudgeflake, w) for w in words])
        assert hausdorff(cloud, direct) < 1e-10

    def test_full_enumeration_matches_rotation(self, heighway, fudgeflake):
        for spec, depth in ((heighway, 10), (fudgeflake, 6)):
            shortcut = cloud_X(spec, depth)
            full = cloud_X(spec, depth, full_enumeration=True)
            assert hausdorff(shortcut, full) < 1e-10

    def test_cloud_X_rotation_invariant(self, fudgeflake):
        """Test X is closed under every rotation in Δ."""
        cloud = cloud_X(fudgeflake, 5)
        group = build_group(fudgeflake.generators)
        rotated = rotate_cloud_points(cloud.points, group)
        assert hausdorff(cloud, rotated) < 1e-10

    def test_cloud_Xstar_matches_enumerated_words(self, six_generators):
        group = build_group(six_generators)
        cloud = cloud_Xstar(ALPHA, six_generators, 4)
        words = enumerate_dzrc(group, 4)
        assert len(words) == count_dzrc(group, 4)
        direct = np.array([eval_dzrc_word(ALPHA, w) for w in words])
        assert hausdorff(cloud, direct) < 1e-10
        assert len(cloud) <= len(words)
        assert np.min(np.abs(cloud.points)) == 0.0

    def test_cloud_grs_matches_enumerated_words(self):
        angle = make_angle(-1, 4)
        cloud = cloud_grs(LEVY_ALPHA, angle, 6)
        words = enumerate_grc(angle, 6)
        assert len(words) == count_grc(angle, 6)
        direct = np.array([eval_grs_word(LEVY_ALPHA, w) for w in words])
        assert hausdorff(cloud, direct) < 1e-10

    def test_grs_zero_angle(self):
        with pytest.raises(InvalidGeneratorSetError):
            cloud_grs(LEVY_ALPHA, make_angle(0, 1), 3)

    def test_expanding_alpha(self, six_generators):
        with pytest.raises(ValueError):
            cloud_Xstar(1.2 + 0j, six_generators, 3)

    def test_cap(self, heighway, tiny_settings):
        with pytest.raises(EnumerationCapExceeded):
            cloud_X(heighway, 3, settings=tiny_settings)

    def test_sampled_needs_count(self, heighway):
        with pytest.raises(ValueError):
            cloud_X(heighway, 5, mode=GenerationMode.SAMPLED)

    def test_sampled_points_are_partial_sums(self, fudgeflake, six_generators):
        """Test sampled clouds are subsets of the exhaustive cloud of equal depth."""
        sampled = cloud_X(fudgeflake, 5, GenerationMode.SAMPLED, samples=300, seed=1)
        assert one_sided_excess(sampled, cloud_X(fudgeflake, 5)) < 1e-10
        star = cloud_Xstar(ALPHA, six_generators, 5, GenerationMode.SAMPLED, samples=300, seed=1)
        assert one_sided_excess(star, cloud_Xstar(ALPHA, six_generators, 5)) < 1e-10

    def test_sampled_deterministic(self):
        first = cloud_grs(LEVY_ALPHA, make_angle(1, 4), 12, GenerationMode.SAMPLED, 200, seed=9)
        second = cloud_grs(LEVY_ALPHA, make_angle(1, 4), 12, GenerationMode.SAMPLED, 200, seed=9)
        np.testing.assert_array_equal(first.points, second.points)


class TestDispatch:
    """Tests for cloud_for_series and series_bound."""

    def test_dispatch_by_kind(self, six_generators):
        levy = get_preset("levy").series_spec()
        assert len(cloud_for_series(levy, 5)) > 0
        star = SeriesSpec.delta_zero(ALPHA, six_generators)
        assert hausdorff(cloud_for_series(star, 3), cloud_Xstar(ALPHA, six_generators, 3)) == 0

    def test_series_bound(self):
        levy = get_preset("levy").series_spec()
        radius = abs(LEVY_ALPHA) / (1 - abs(LEVY_ALPHA))
        assert series_bound(levy) == pytest.approx(radius)
        assert cloud_for_series(levy, 10).radius <= radius + 1e-12

    def test_delta_bound(self):
        spec = IFSSpec(alpha=0.5, generators=make_generator_set([(0, 1), (1, 3)]), constants=(0, 2))
        assert series_bound(SeriesSpec.delta(spec)) == pytest.approx(4.0)
