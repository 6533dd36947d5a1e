"""Density rasterization of point clouds and grayscale image output."""

import logging
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from PIL import Image

from ..core.models import IntensityMapping, PointCloud, Raster, RenderConfig

logger = logging.getLogger(__name__)

Bounds = Tuple[float, float, float, float]

AUTO_PADDING = 0.05


def auto_bounds(cloud: PointCloud) -> Bounds:
    """Bounding box padded by 5% of its span on each side.

    A zero span (single point, or collinear points) is padded by 0.5 instead.

    Raises:
        ValueError: for an empty cloud
    """
    if len(cloud) == 0:
        raise ValueError("AUTO bounds need a nonempty cloud")
    re, im = cloud.points.real, cloud.points.imag
    bounds = []
    for axis in (re, im):
        low, high = float(axis.min()), float(axis.max())
        span = high - low
        pad = AUTO_PADDING * span if span > 0.0 else 0.5
        bounds.extend([low - pad, high + pad])
    return tuple(bounds)


def _bin(values: np.ndarray, low: float, high: float, cells: int) -> np.ndarray:
    index = np.floor((values - low) / (high - low) * cells).astype(np.int64)
    # the max edge belongs to the last cell
    return np.clip(index, 0, cells - 1)


def rasterize(cloud: PointCloud, config: RenderConfig) -> Raster:
    """Count points per pixel; row 0 is the top edge (largest imaginary part).

    Points outside the bounds are dropped; every other point lands in exactly
    one pixel.
    """
    bounds = config.bounds if config.bounds is not None else auto_bounds(cloud)
    re_min, re_max, im_min, im_max = bounds
    width, height = config.width, config.height

    points = cloud.points
    inside = (
        (points.real >= re_min) & (points.real <= re_max)
        & (points.imag >= im_min) & (points.imag <= im_max)
    )
    points = points[inside]
    cols = _bin(points.real, re_min, re_max, width)
    rows = _bin(-points.imag, -im_max, -im_min, height)
    counts = np.bincount(rows * width + cols, minlength=width * height)
    counts = counts.reshape(height, width).astype(np.int64)

    dropped = len(cloud) - int(inside.sum())
    if dropped:
        logger.debug(f"{dropped} points fell outside the render bounds")
    return Raster(width=width, height=height, counts=counts)


def intensities(raster: Raster, mapping: IntensityMapping = IntensityMapping.LOG) -> np.ndarray:
    """8-bit gray levels, shape (height, width).

    log: floor(255·ln(1+h)/ln(1+max)); linear: floor(255·h/max); all zero when max = 0.
    """
    peak = raster.max_hits
    if peak == 0:
        return np.zeros((raster.height, raster.width), dtype=np.uint8)
    counts = raster.counts.astype(np.float64)
    if IntensityMapping(mapping) == IntensityMapping.LOG:
        scaled = np.log1p(counts) / np.log1p(float(peak))
    else:
        scaled = counts / float(peak)
    return np.clip(np.floor(255.0 * scaled), 0, 255).astype(np.uint8)


def write_ppm(
    raster: Raster, path: Union[str, Path], mapping: IntensityMapping = IntensityMapping.LOG
) -> None:
    """Binary graymap: ``P5\\n<w> <h>\\n255\\n`` then width·height bytes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = f"P5\n{raster.width} {raster.height}\n255\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header)
        f.write(intensities(raster, mapping).tobytes())
    logger.info(f"wrote {raster.width}x{raster.height} image to {path}")


def write_png(
    raster: Raster, path: Union[str, Path], mapping: IntensityMapping = IntensityMapping.LOG
) -> None:
    """Same gray levels as write_ppm, PNG encoded."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(intensities(raster, mapping)).save(path, format="PNG")
    logger.info(f"wrote {raster.width}x{raster.height} image to {path}")


def write_image(
    raster: Raster, path: Union[str, Path], mapping: IntensityMapping = IntensityMapping.LOG
) -> None:
    """PNG for a ``.png`` suffix, PPM otherwise."""
    if Path(path).suffix.lower() == ".png":
        write_png(raster, path, mapping)
    else:
        write_ppm(raster, path, mapping)
