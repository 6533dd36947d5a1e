"""File and text formats: spec configs, CSV point clouds, word text and report lines.

Config files are JSON objects::

    {
      "alpha": [0.5, 0.5],
      "angles": [{"q": 0, "p": 1}, {"q": 1, "p": 4}],
      "constants": [[0, 0], [1, 0]],
      "kind": "delta"
    }

``constants`` is only read for ``kind = delta``; ``grs`` configs list exactly
the angles {0, θ}.
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, TextIO, Union

import numpy as np
from pydantic import ValidationError

from ..core.angle_group import make_angle, make_generator_set
from ..core.errors import ConfigError, InvalidWordError, RevolvingError
from ..core.models import (
    ZERO,
    AnglePair,
    CodingWord,
    DeltaWord,
    DeltaZeroWord,
    GenerationMode,
    GRWord,
    IFSSpec,
    PointCloud,
    RationalAngle,
    RevolvingGroup,
    SeriesKind,
    SeriesSpec,
    SpecConfig,
    VerificationReport,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

ZERO_TOKEN = "z"
CSV_FORMAT = "%.17g"


# Spec configs

def load_spec_config(path: PathLike) -> SpecConfig:
    """Read and validate a JSON spec config.

    Raises:
        ConfigError: if the file cannot be read, is not JSON or fails validation
    """
    path = Path(path)
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config '{path}': {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config '{path}' is not valid JSON: {e}") from e
    try:
        config = SpecConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"config '{path}' is malformed: {e.errors()[0]['msg']}") from e
    logger.debug(f"loaded {config.kind.value} config from {path}")
    return config


def save_spec_config(config: SpecConfig, path: PathLike) -> None:
    """Write a spec config as indented JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(config.model_dump(mode="json"), f, indent=2)
        f.write("\n")
    logger.info(f"saved config to {path}")


def spec_config_to_series(config: SpecConfig) -> SeriesSpec:
    """Build the validated SeriesSpec a config describes.

    Raises:
        ConfigError: if the config does not describe a valid spec
    """
    try:
        generators = make_generator_set((a.q, a.p) for a in config.angles)
        alpha = config.alpha_complex
        if config.kind == SeriesKind.DELTA:
            ifs = IFSSpec(
                alpha=alpha,
                generators=generators,
                constants=tuple(complex(re, im) for re, im in config.constants),
            )
            return SeriesSpec.delta(ifs)
        if config.kind == SeriesKind.DELTA_ZERO:
            return SeriesSpec.delta_zero(alpha, generators)
        if generators.m != 2:
            raise ConfigError("a grs config lists exactly two angles: 0 and θ")
        return SeriesSpec.grs(alpha, generators.angles[1])
    except ValidationError as e:
        raise ConfigError(f"invalid spec: {e.errors()[0]['msg']}") from e
    except RevolvingError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(str(e)) from e


def series_to_spec_config(spec: SeriesSpec) -> SpecConfig:
    """Inverse of spec_config_to_series."""
    if spec.kind == SeriesKind.DELTA:
        angles = spec.ifs.generators.angles
        constants = [(c.real, c.imag) for c in spec.ifs.constants]
    elif spec.kind == SeriesKind.DELTA_ZERO:
        angles = spec.generators.angles
        constants = []
    else:
        angles = (make_angle(0, 1), spec.angle)
        constants = []
    return SpecConfig(
        alpha=(spec.alpha.real, spec.alpha.imag),
        angles=[AnglePair(q=a.q, p=a.p) for a in angles],
        constants=constants,
        kind=spec.kind,
    )


# Point clouds

def write_cloud_csv(cloud: PointCloud, stream: TextIO) -> None:
    """One ``re,im`` line per point, 17 significant digits."""
    if len(cloud) == 0:
        return
    np.savetxt(
        stream,
        np.column_stack([cloud.points.real, cloud.points.imag]),
        fmt=CSV_FORMAT,
        delimiter=",",
    )


def save_cloud_csv(cloud: PointCloud, path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        write_cloud_csv(cloud, f)
    logger.info(f"wrote {len(cloud)} points to {path}", extra={"points": len(cloud)})


def load_cloud_csv(
    path: PathLike, depth: Optional[int] = None, mode: GenerationMode = GenerationMode.EXHAUSTIVE
) -> PointCloud:
    """Read a cloud written by save_cloud_csv; point order is preserved.

    Raises:
        ConfigError: if the file is not two comma-separated columns
    """
    path = Path(path)
    try:
        data = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except (OSError, ValueError) as e:
        raise ConfigError(f"cannot read point cloud '{path}': {e}") from e
    if data.size == 0:
        points = np.zeros(0, dtype=np.complex128)
    elif data.shape[1] != 2:
        raise ConfigError(f"point cloud '{path}' must have two columns, found {data.shape[1]}")
    else:
        points = data[:, 0] + 1j * data[:, 1]
    return PointCloud(points=points, depth=depth, mode=mode, source=str(path))


# Word text

def _entry_text(entry: Optional[int]) -> str:
    return ZERO_TOKEN if entry is ZERO else str(entry)


def format_word(word: Union[CodingWord, DeltaWord, DeltaZeroWord, GRWord]) -> str:
    """Coding words as a digit string (comma-separated when m > 10), others comma-separated."""
    if isinstance(word, CodingWord):
        sep = "" if word.m <= 10 else ","
        return sep.join(str(d) for d in word.digits)
    if isinstance(word, DeltaWord):
        return ",".join(str(k) for k in word.exponents)
    return ",".join(_entry_text(e) for e in word.entries)


def _tokens(text: str) -> List[str]:
    text = text.strip()
    if not text:
        raise InvalidWordError("empty word")
    return [t.strip() for t in text.split(",")]


def _int_token(token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InvalidWordError(f"'{token}' is not an integer") from None


def parse_coding_word(text: str, m: int) -> CodingWord:
    """``"10212"`` or ``"1,0,2,1,2"``."""
    text = text.strip()
    tokens = _tokens(text) if "," in text else list(text)
    if not tokens:
        raise InvalidWordError("empty word")
    digits = tuple(_int_token(t) for t in tokens)
    try:
        return CodingWord(digits=digits, m=m)
    except ValidationError as e:
        raise InvalidWordError(e.errors()[0]["msg"]) from e


def parse_delta_word(text: str, group: RevolvingGroup) -> DeltaWord:
    """Comma-separated exponents k of e^{2πik/L}, e.g. ``"0,3,5"``."""
    exponents = tuple(_int_token(t) for t in _tokens(text))
    try:
        return DeltaWord(exponents=exponents, group=group)
    except ValidationError as e:
        raise InvalidWordError(e.errors()[0]["msg"]) from e


def _zero_entries(text: str) -> tuple:
    return tuple(
        ZERO if t.lower() == ZERO_TOKEN else _int_token(t) for t in _tokens(text)
    )


def parse_zero_word(text: str, group: RevolvingGroup) -> DeltaZeroWord:
    """Comma-separated exponents with ``z`` for ZERO, e.g. ``"0,3,z,5"``."""
    try:
        return DeltaZeroWord(entries=_zero_entries(text), group=group)
    except ValidationError as e:
        raise InvalidWordError(e.errors()[0]["msg"]) from e


def parse_grs_word(text: str, angle: RationalAngle) -> GRWord:
    """Comma-separated powers of e^{iθ} with ``z`` for ZERO."""
    try:
        return GRWord(entries=_zero_entries(text), angle=angle)
    except ValidationError as e:
        raise InvalidWordError(e.errors()[0]["msg"]) from e


# Reports

def format_report_line(report: VerificationReport) -> str:
    """``claim_id status discrepancy tolerance depth seconds``."""
    return (
        f"{report.claim_id} {report.status} {report.discrepancy:.3e} "
        f"{report.tolerance:.3e} {report.depth} {report.seconds:.3f}"
    )


def save_reports_json(reports: List[VerificationReport], path: PathLike) -> None:
    """Write reports as a JSON array, including the computed pass flag."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump([r.model_dump(mode="json") for r in reports], f, indent=2, default=str)
