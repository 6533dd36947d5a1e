"""Pydantic data models for revolving-fractals."""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)

# Tag for the zero entry of Δ₀ / Δ_θ words. Never confused with exponent 0,
# which denotes the complex number 1.
ZERO = None


def _coerce_complex(value: Any) -> Any:
    """Accept complex numbers, reals, [re, im] pairs and Python complex strings."""
    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    return value


class Grammar(str, Enum):
    """Sequence grammars."""

    GRC = "grc"
    DRC = "drc"
    DZRC = "dzrc"


class SeriesKind(str, Enum):
    """Which sequence family parametrizes a series."""

    DELTA = "delta"
    DELTA_ZERO = "delta_zero"
    GRS = "grs"


class GenerationMode(str, Enum):
    """How a point cloud was produced."""

    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


class IntensityMapping(str, Enum):
    """Hit-count to gray-level mapping."""

    LINEAR = "linear"
    LOG = "log"


class RationalAngle(BaseModel):
    """The angle 2πq/p, reduced and normalized into (−π, π]."""

    model_config = ConfigDict(frozen=True)

    q: int = Field(..., description="Numerator, may be negative")
    p: int = Field(..., ge=1, description="Positive denominator")

    @model_validator(mode="before")
    @classmethod
    def normalize(cls, data: Any) -> Any:
        """Reduce q/p and move it into (−1/2, 1/2]."""
        if isinstance(data, dict):
            q, p = data.get("q"), data.get("p")
            if isinstance(q, int) and isinstance(p, int) and p >= 1:
                g = math.gcd(abs(q), p)
                q, p = q // g, p // g
                q %= p
                if 2 * q > p:
                    q -= p
                if q == 0:
                    p = 1
                data = {**data, "q": q, "p": p}
        return data

    @property
    def is_zero(self) -> bool:
        return self.q == 0

    @property
    def radians(self) -> float:
        return 2.0 * math.pi * self.q / self.p

    def __str__(self) -> str:
        return "0" if self.q == 0 else f"{self.q}/{self.p}"


class GeneratorSet(BaseModel):
    """Ordered angles θ₀ = 0, θ₁, …, θ_{m−1}."""

    model_config = ConfigDict(frozen=True)

    angles: Tuple[RationalAngle, ...] = Field(..., min_length=1)

    @field_validator("angles")
    @classmethod
    def validate_angles(cls, v):
        """θ₀ must be zero and all angles pairwise distinct."""
        if not v[0].is_zero:
            raise ValueError("the first angle of a generator set must be 0")
        if len(set(v)) != len(v):
            raise ValueError("generator set angles must be pairwise distinct")
        return v

    @property
    def m(self) -> int:
        return len(self.angles)

    @property
    def is_degenerate(self) -> bool:
        return self.m == 1

    def __str__(self) -> str:
        return "{" + ", ".join(str(a) for a in self.angles) + "}"


class RevolvingGroup(BaseModel):
    """The cyclic group Δ stored as Z_L with the generator steps a_j."""

    model_config = ConfigDict(frozen=True)

    order: int = Field(..., ge=1, description="L = |Δ|")
    generator_exponents: Tuple[int, ...] = Field(
        ..., description="a_1..a_{m-1}, the exponent step of each nonzero angle"
    )
    generators: GeneratorSet

    @model_validator(mode="after")
    def check_exponents(self):
        if len(self.generator_exponents) != self.generators.m - 1:
            raise ValueError("one generator exponent is required per nonzero angle")
        if any(not 0 <= a < self.order for a in self.generator_exponents):
            raise ValueError("generator exponents must lie in [0, L)")
        return self

    @property
    def m(self) -> int:
        return self.generators.m

    @property
    def step_exponents(self) -> Tuple[int, ...]:
        """Exponent step of every angle, θ₀ included (a_0 = 0)."""
        return (0,) + self.generator_exponents


class GroupElement(BaseModel):
    """e^{2πik/L} as its exponent k."""

    model_config = ConfigDict(frozen=True)

    exponent: int
    order: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_range(self):
        if not 0 <= self.exponent < self.order:
            raise ValueError(f"exponent {self.exponent} outside [0, {self.order})")
        return self


class CodingWord(BaseModel):
    """Finite prefix x₁..x_N of a coding sequence over {0..m−1}."""

    model_config = ConfigDict(frozen=True)

    digits: Tuple[int, ...]
    m: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_digits(self):
        for d in self.digits:
            if not 0 <= d < self.m:
                raise ValueError(f"digit {d} outside [0, {self.m})")
        return self

    def __len__(self) -> int:
        return len(self.digits)


class DeltaWord(BaseModel):
    """Prefix γ₁..γ_N of a Δ-revolving sequence, as group exponents.

    Membership in Δ is enforced here; the DRC itself is checked by
    ``sequences.validate_drc``.
    """

    model_config = ConfigDict(frozen=True)

    exponents: Tuple[int, ...]
    group: RevolvingGroup

    @model_validator(mode="after")
    def check_members(self):
        for k in self.exponents:
            if not 0 <= k < self.group.order:
                raise ValueError(f"exponent {k} is not an element of Δ")
        return self

    @property
    def elements(self) -> List[GroupElement]:
        return [GroupElement(exponent=k, order=self.group.order) for k in self.exponents]

    def __len__(self) -> int:
        return len(self.exponents)


class DeltaZeroWord(BaseModel):
    """Prefix δ₁..δ_N of a Δ₀-revolving sequence; ZERO entries are None."""

    model_config = ConfigDict(frozen=True)

    entries: Tuple[Optional[int], ...]
    group: RevolvingGroup

    @model_validator(mode="after")
    def check_members(self):
        for k in self.entries:
            if k is not ZERO and not 0 <= k < self.group.order:
                raise ValueError(f"entry {k} is not an element of Δ₀")
        return self

    def __len__(self) -> int:
        return len(self.entries)


class GRWord(BaseModel):
    """Prefix of a generalized revolving sequence.

    A nonzero entry e stands for e^{ieθ}, e in [0, p).
    """

    model_config = ConfigDict(frozen=True)

    entries: Tuple[Optional[int], ...]
    angle: RationalAngle

    @model_validator(mode="after")
    def check_members(self):
        if self.angle.is_zero:
            raise ValueError("a generalized revolving sequence needs a nonzero angle")
        for e in self.entries:
            if e is not ZERO and not 0 <= e < self.angle.p:
                raise ValueError(f"entry {e} is not an element of Δ_θ")
        return self

    def __len__(self) -> int:
        return len(self.entries)


class AffineMap(BaseModel):
    """z ↦ ratio·z + offset."""

    model_config = ConfigDict(frozen=True)

    ratio: complex
    offset: complex

    def __call__(self, z: complex) -> complex:
        return self.ratio * z + self.offset


class IFSSpec(BaseModel):
    """(α, S, c₀..c_{m−1}) defining ψ₀(z) = αz + c₀ and ψ_k(z) = αe^{iθ_k}z + c_k."""

    model_config = ConfigDict(frozen=True)

    alpha: complex
    generators: GeneratorSet
    constants: Tuple[complex, ...]

    @field_validator("alpha", mode="before")
    @classmethod
    def coerce_alpha(cls, v):
        return _coerce_complex(v)

    @field_validator("constants", mode="before")
    @classmethod
    def coerce_constants(cls, v):
        return tuple(_coerce_complex(c) for c in v)

    @field_validator("alpha")
    @classmethod
    def check_contraction(cls, v):
        if not abs(v) < 1.0:
            raise ValueError(f"|alpha| must be < 1, got {abs(v)}")
        return v

    @model_validator(mode="after")
    def check_arity(self):
        if len(self.constants) != self.generators.m:
            raise ValueError(
                f"{len(self.constants)} constants given for {self.generators.m} angles"
            )
        return self

    @property
    def m(self) -> int:
        return self.generators.m


class SeriesSpec(BaseModel):
    """Parameters of X_{α,S}, X*_{α,S} or X_{α,θ}."""

    model_config = ConfigDict(frozen=True)

    alpha: complex
    kind: SeriesKind
    ifs: Optional[IFSSpec] = None
    generators: Optional[GeneratorSet] = None
    angle: Optional[RationalAngle] = None

    @field_validator("alpha", mode="before")
    @classmethod
    def coerce_alpha(cls, v):
        return _coerce_complex(v)

    @field_validator("alpha")
    @classmethod
    def check_contraction(cls, v):
        if not abs(v) < 1.0:
            raise ValueError(f"|alpha| must be < 1, got {abs(v)}")
        return v

    @model_validator(mode="after")
    def check_kind(self):
        if self.kind == SeriesKind.DELTA:
            if self.ifs is None:
                raise ValueError("a delta series needs an IFS spec")
            if self.ifs.alpha != self.alpha:
                raise ValueError("series alpha and IFS alpha differ")
        elif self.kind == SeriesKind.DELTA_ZERO:
            if self.generators is None:
                raise ValueError("a delta_zero series needs a generator set")
        elif self.angle is None or self.angle.is_zero:
            raise ValueError("a grs series needs a nonzero revolving angle")
        return self

    @classmethod
    def delta(cls, ifs: IFSSpec) -> "SeriesSpec":
        return cls(alpha=ifs.alpha, kind=SeriesKind.DELTA, ifs=ifs)

    @classmethod
    def delta_zero(cls, alpha: complex, generators: GeneratorSet) -> "SeriesSpec":
        return cls(alpha=alpha, kind=SeriesKind.DELTA_ZERO, generators=generators)

    @classmethod
    def grs(cls, alpha: complex, angle: RationalAngle) -> "SeriesSpec":
        return cls(alpha=alpha, kind=SeriesKind.GRS, angle=angle)


class PointCloud(BaseModel):
    """Finite truncation of an attractor in the complex plane."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    points: np.ndarray
    depth: Optional[int] = None
    mode: GenerationMode = GenerationMode.EXHAUSTIVE
    source: str = ""

    @field_validator("points", mode="before")
    @classmethod
    def as_complex_array(cls, v):
        return np.asarray(v, dtype=np.complex128).reshape(-1)

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def radius(self) -> float:
        """Largest modulus in the cloud."""
        return float(np.abs(self.points).max()) if len(self) else 0.0


class VerificationReport(BaseModel):
    """Outcome of one finite-depth check."""

    claim_id: str
    parameters: Dict[str, str] = Field(default_factory=dict)
    depth: int = Field(..., ge=0)
    tolerance: float = Field(..., ge=0.0)
    discrepancy: float
    seconds: float = Field(default=0.0, ge=0.0)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.discrepancy <= self.tolerance

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


class RenderConfig(BaseModel):
    """Raster geometry, intensity mapping and cloud generation knobs."""

    width: int = Field(default=1024, ge=1)
    height: int = Field(default=1024, ge=1)
    bounds: Optional[Tuple[float, float, float, float]] = Field(
        default=None,
        description="(re_min, re_max, im_min, im_max); None means AUTO",
    )
    mapping: IntensityMapping = IntensityMapping.LOG
    samples: Optional[int] = Field(default=None, ge=1)
    depth: Optional[int] = Field(default=None, ge=1)
    seed: int = 0

    @field_validator("bounds")
    @classmethod
    def check_bounds(cls, v):
        if v is not None:
            re_min, re_max, im_min, im_max = v
            if not (re_min < re_max and im_min < im_max):
                raise ValueError("bounds must satisfy re_min < re_max and im_min < im_max")
        return v


class Raster(BaseModel):
    """Per-pixel hit counts, row 0 at the top (largest imaginary part)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    width: int = Field(..., ge=1)
    height: int = Field(..., ge=1)
    counts: np.ndarray

    @model_validator(mode="after")
    def check_shape(self):
        if self.counts.shape != (self.height, self.width):
            raise ValueError(
                f"counts shape {self.counts.shape} != ({self.height}, {self.width})"
            )
        if (self.counts < 0).any():
            raise ValueError("hit counts must be non-negative")
        return self

    @property
    def total_hits(self) -> int:
        return int(self.counts.sum())

    @property
    def max_hits(self) -> int:
        return int(self.counts.max()) if self.counts.size else 0


class AnglePair(BaseModel):
    """{q, p} entry of a config file."""

    q: int
    p: int = Field(..., ge=1)


class SpecConfig(BaseModel):
    """On-disk form of a spec: alpha, angles, constants and series kind."""

    alpha: Tuple[float, float]
    angles: List[AnglePair] = Field(..., min_length=1)
    constants: List[Tuple[float, float]] = Field(default_factory=list)
    kind: SeriesKind = SeriesKind.DELTA

    @field_validator("angles")
    @classmethod
    def first_angle_zero(cls, v):
        if v[0].q != 0 or v[0].p != 1:
            raise ValueError("the first angle entry must be {q: 0, p: 1}")
        return v

    @property
    def alpha_complex(self) -> complex:
        return complex(self.alpha[0], self.alpha[1])
