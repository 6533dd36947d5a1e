"""Registry of named dragons and flakes."""

import logging
import math
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from ..storage.formats import spec_config_to_series
from .errors import RejectedPresetError, UnknownPresetError
from .models import AnglePair, SeriesKind, SeriesSpec, SpecConfig

logger = logging.getLogger(__name__)

_HALF_TURN_I = (0.5, 0.5)          # (1+i)/2
_HALF_TURN_CONJ = (0.5, -0.5)      # (1−i)/2
_FUDGE_ALPHA = (0.5, -math.sqrt(3.0) / 6.0)
_FUDGE_CONJ = (0.5, math.sqrt(3.0) / 6.0)


class Preset(BaseModel):
    """A named spec with a recommended render depth and a short description."""

    model_config = ConfigDict(frozen=True)

    name: str
    config: SpecConfig
    depth: int
    note: str
    rejected_reason: Optional[str] = None

    @property
    def kind(self) -> SeriesKind:
        return self.config.kind

    @property
    def rejected(self) -> bool:
        return self.rejected_reason is not None

    def series_spec(self) -> SeriesSpec:
        """Validated spec for this preset.

        Raises:
            RejectedPresetError: for presets outside the supported family
        """
        if self.rejected:
            raise RejectedPresetError(f"{self.name} is not covered: {self.rejected_reason}")
        return spec_config_to_series(self.config)


def _angles(*pairs) -> List[AnglePair]:
    return [AnglePair(q=0, p=1)] + [AnglePair(q=q, p=p) for q, p in pairs]


def _fudgeflake(name: str, first, second, note: str) -> Preset:
    return Preset(
        name=name,
        config=SpecConfig(
            alpha=_FUDGE_ALPHA,
            angles=_angles(first, second),
            constants=[(0.0, 0.0), _FUDGE_ALPHA, _FUDGE_CONJ],
        ),
        depth=11,
        note=note,
    )


PRESETS: Dict[str, Preset] = {
    p.name: p
    for p in [
        Preset(
            name="heighway",
            config=SpecConfig(
                alpha=_HALF_TURN_I,
                angles=_angles((1, 4)),
                constants=[(0.0, 0.0), (1.0, 0.0)],
            ),
            depth=18,
            note=(
                "Heighway dragon: α=(1+i)/2, θ=π/2, c=(0, 1); "
                "X is a union of 4 Heighway dragons (Edgar 1990)"
            ),
        ),
        Preset(
            name="twindragon",
            config=SpecConfig(
                alpha=_HALF_TURN_I,
                angles=_angles((1, 2)),
                constants=[(0.0, 0.0), (1.0, 0.0)],
            ),
            depth=18,
            note="Twindragon: α=(1+i)/2, θ=π, c=(0, 1) (Edgar 1990)",
        ),
        _fudgeflake(
            "fudgeflake", (1, 6), (-1, 3),
            "Fudgeflake: α=1/2−(√3/6)i, θ=(π/3, −2π/3), c=(0, α, ᾱ); "
            "X is a union of 3 fudgeflakes (Mandelbrot 1982, p.72; Edgar 1990, pp.22-23)",
        ),
        _fudgeflake(
            "fudgeflake-right", (1, 4), (-1, 4),
            "fudgeflake maps with θ=(π/2, −π/2)",
        ),
        _fudgeflake(
            "fudgeflake-sixth", (1, 6), (-1, 6),
            "fudgeflake maps with θ=(π/3, −π/3)",
        ),
        Preset(
            name="paperfold",
            config=SpecConfig(
                alpha=_HALF_TURN_CONJ,
                angles=_angles((-1, 4)),
                constants=[(0.0, 0.0), _HALF_TURN_CONJ],
            ),
            depth=18,
            note=(
                "paper-folding dragon: ψ₀(z)=((1−i)/2)z, ψ₁(z)=((−1−i)/2)z+(1−i)/2 "
                "(Mizutani and Ito 1987)"
            ),
        ),
        Preset(
            name="levy",
            config=SpecConfig(
                alpha=_HALF_TURN_CONJ,
                angles=_angles((1, 4)),
                kind=SeriesKind.GRS,
            ),
            depth=14,
            note=(
                "X_{α,θ} with α=(1−i)/2, θ=π/2: a union of four Lévy dragon curves "
                "(Mizutani and Ito 1987; Kawamura 2002)"
            ),
        ),
        Preset(
            name="tetradragon",
            config=SpecConfig(
                alpha=_HALF_TURN_CONJ,
                angles=_angles((-1, 4)),
                kind=SeriesKind.GRS,
            ),
            depth=14,
            note=(
                "Tetradragon: α=(1−i)/2, θ=−π/2, tiled by four rotated paper-folding dragons "
                "(Mizutani and Ito 1987)"
            ),
        ),
        Preset(
            name="terdragon",
            config=SpecConfig(
                alpha=_FUDGE_ALPHA,
                angles=[AnglePair(q=0, p=1), AnglePair(q=1, p=3), AnglePair(q=0, p=1)],
                constants=[(0.0, 0.0), _FUDGE_ALPHA, _FUDGE_CONJ],
            ),
            depth=0,
            note="Terdragon: fudgeflake maps with θ=(2π/3, 0) (Edgar 1990, p.163)",
            rejected_reason=(
                "its second rotation angle is 0, which duplicates θ₀ in the generator set"
            ),
        ),
    ]
}


def preset_names() -> List[str]:
    return list(PRESETS)


def get_preset(name: str) -> Preset:
    """Look up a preset by name.

    Raises:
        UnknownPresetError: if the name is not registered
    """
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise UnknownPresetError(name, preset_names()) from None


def load_preset_spec(name: str) -> SeriesSpec:
    """get_preset(name).series_spec() with a debug log of the choice."""
    preset = get_preset(name)
    spec = preset.series_spec()
    logger.debug(f"loaded preset {name}", extra={"preset": name})
    return spec


def delta_presets() -> List[Preset]:
    """Accepted presets whose spec is an IFS."""
    return [p for p in PRESETS.values() if not p.rejected and p.kind == SeriesKind.DELTA]
