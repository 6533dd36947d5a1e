"""Command-line interface for revolving-fractals.

Angles are fractions of a full turn: ``1/4`` is π/2. argparse reads a leading
minus as an option, so negative angles are written as their positive
equivalent (``3/4`` for −π/2) or attached with ``=`` (``--theta=-1/4``).

Exit codes: 0 success, 1 failed verification or invalid word, 2 usage error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from . import __version__
from .analysis.verify import (
    DEFAULT_TOLERANCE,
    check_corollary,
    check_grs_reduction,
    check_group_order,
    check_kawamura_allen,
    check_main_theorem,
    check_tail_bound,
    format_reports,
    run_suite,
)
from .config.settings import Settings, get_settings
from .core.angle_group import build_group, make_generator_set, parse_angle
from .core.errors import RevolvingError
from .core.ifs import attractor_exhaustive, attractor_sampled, bounding_radius
from .core.models import (
    GenerationMode,
    Grammar,
    IntensityMapping,
    PointCloud,
    RenderConfig,
    SeriesKind,
    SeriesSpec,
)
from .core.presets import PRESETS, get_preset
from .core.sequences import (
    count_dzrc,
    count_drc,
    count_grc,
    enumerate_drc,
    enumerate_dzrc,
    enumerate_grc,
    group_for_angle,
    validate,
)
from .core.series import cloud_for_series, series_bound
from .monitoring.logger import setup_logging
from .render.raster import rasterize, write_image
from .storage.formats import (
    format_word,
    load_spec_config,
    parse_delta_word,
    parse_grs_word,
    parse_zero_word,
    save_cloud_csv,
    save_spec_config,
    series_to_spec_config,
    spec_config_to_series,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(RevolvingError):
    """Raised for flag combinations argparse cannot express."""


def _add_spec_source(parser: argparse.ArgumentParser, required: bool = False) -> None:
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument("--preset", help="Named preset (see 'presets')")
    source.add_argument("--config", help="JSON spec config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revolving-fractals",
        description="Revolving-sequence series, dragon attractors and their verification",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", type=str.upper,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    parser.add_argument("--log-format", choices=["standard", "json", "colored"])
    commands = parser.add_subparsers(dest="command", required=True)

    render = commands.add_parser("render", help="Render a point cloud to a PPM or PNG image")
    _add_spec_source(render, required=True)
    render.add_argument("--depth", type=int, help="Exhaustive depth (default: sampled)")
    render.add_argument("--samples", type=int, help="Sample count for sampled rendering")
    render.add_argument("--size", type=int, help="Image width and height in pixels")
    render.add_argument("--seed", type=int, help="Random seed for sampled rendering")
    render.add_argument("--out", required=True,
                        help="Output image (.ppm or .png), relative to the output directory")
    render.add_argument("--union", action="store_true",
                        help="Render X (all rotated copies) instead of the attractor T")
    render.add_argument("--mapping", choices=[m.value for m in IntensityMapping],
                        default=IntensityMapping.LOG.value)
    render.add_argument("--bounds", type=float, nargs=4,
                        metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    render.add_argument("--csv", help="Also write the point cloud as CSV")

    enum = commands.add_parser("enumerate", help="List every word of a grammar")
    enum.add_argument("--mode", required=True, choices=[g.value for g in Grammar])
    enum.add_argument("--length", type=int, required=True)
    enum.add_argument("--angles", nargs="+", default=["0", "1/4"],
                      help="Generator set, first angle 0 (grc uses the second angle as θ)")
    enum.add_argument("--count", action="store_true", help="Print only the number of words")

    check = commands.add_parser("validate", help="Check one word against a grammar")
    check.add_argument("--mode", required=True, choices=[g.value for g in Grammar])
    check.add_argument("--word", required=True, help="e.g. 0,1,z,2 (z is the zero entry)")
    check.add_argument("--angles", nargs="+", default=["0", "1/4"])

    verify = commands.add_parser("verify", help="Numerically check a decomposition identity")
    verify.add_argument("claim", choices=["main", "corollary", "ka", "group",
                                          "reduction", "tail", "all"])
    _add_spec_source(verify)
    verify.add_argument("--alpha", type=float, nargs=2, metavar=("RE", "IM"))
    verify.add_argument("--angles", nargs="+", help="Generator set, first angle 0")
    verify.add_argument("--theta", help="Revolving angle for ka and reduction")
    verify.add_argument("--depth", type=int, default=8)
    verify.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)

    commands.add_parser("presets", help="List the preset registry")

    info = commands.add_parser("info", help="Print m, |Δ|, contraction ratio and bounding disk")
    _add_spec_source(info, required=True)

    export = commands.add_parser("export", help="Write a preset as a JSON config")
    export.add_argument("--preset", required=True)
    export.add_argument("--out", required=True, help="Config file, relative to the output directory")

    return parser


def _load_series(args: argparse.Namespace) -> SeriesSpec:
    if getattr(args, "preset", None):
        return get_preset(args.preset).series_spec()
    if getattr(args, "config", None):
        return spec_config_to_series(load_spec_config(args.config))
    raise UsageError("give --preset or --config")


def _render_cloud(spec: SeriesSpec, args: argparse.Namespace, settings: Settings) -> PointCloud:
    seed = args.seed if args.seed is not None else settings.default_seed
    if args.depth is not None:
        if spec.kind == SeriesKind.DELTA and not args.union:
            return attractor_exhaustive(spec.ifs, args.depth, settings=settings)
        return cloud_for_series(spec, args.depth, settings=settings)

    samples = args.samples or settings.default_samples
    if spec.kind == SeriesKind.DELTA and not args.union:
        return attractor_sampled(spec.ifs, samples, seed, settings=settings)
    # sampled series clouds are truncated after chaos_burn_in terms
    return cloud_for_series(
        spec, settings.chaos_burn_in, GenerationMode.SAMPLED, samples, seed, settings
    )


def _output_path(path: str, settings: Settings) -> Path:
    """Relative output paths land under ``settings.output_directory``."""
    path = Path(path)
    return path if path.is_absolute() else Path(settings.output_directory) / path


def cmd_render(args: argparse.Namespace, settings: Settings) -> int:
    spec = _load_series(args)
    size = args.size or settings.default_size
    config = RenderConfig(
        width=size,
        height=size,
        bounds=tuple(args.bounds) if args.bounds else None,
        mapping=IntensityMapping(args.mapping),
        samples=args.samples,
        depth=args.depth,
        seed=args.seed if args.seed is not None else settings.default_seed,
    )
    cloud = _render_cloud(spec, args, settings)
    raster = rasterize(cloud, config)
    out = _output_path(args.out, settings)
    write_image(raster, out, config.mapping)
    if args.csv:
        save_cloud_csv(cloud, _output_path(args.csv, settings))
    print(f"{out} points={len(cloud)} hits={raster.total_hits}")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace, settings: Settings) -> int:
    grammar = Grammar(args.mode)
    generators = make_generator_set(args.angles)
    if grammar == Grammar.GRC:
        if generators.m != 2:
            raise UsageError("grc takes exactly two angles: 0 and θ")
        angle = generators.angles[1]
        count = count_grc(angle, args.length)
        words = None if args.count else enumerate_grc(angle, args.length, settings)
    else:
        group = build_group(generators)
        if grammar == Grammar.DRC:
            count = count_drc(group, args.length)
            words = None if args.count else enumerate_drc(group, args.length, settings=settings)
        else:
            count = count_dzrc(group, args.length)
            words = None if args.count else enumerate_dzrc(group, args.length, settings)
    if words is None:
        print(count)
    else:
        for word in words:
            print(format_word(word))
    logger.info(f"{count} {grammar.value} words of length {args.length}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, settings: Settings) -> int:
    grammar = Grammar(args.mode)
    generators = make_generator_set(args.angles)
    if grammar == Grammar.GRC:
        if generators.m != 2:
            raise UsageError("grc takes exactly two angles: 0 and θ")
        word = parse_grs_word(args.word, generators.angles[1])
    elif grammar == Grammar.DRC:
        word = parse_delta_word(args.word, build_group(generators))
    else:
        word = parse_zero_word(args.word, build_group(generators))
    valid = validate(word)
    print("valid" if valid else "invalid")
    return EXIT_OK if valid else EXIT_FAILED


def _verify_alpha(args: argparse.Namespace, spec: Optional[SeriesSpec]) -> complex:
    if args.alpha:
        return complex(args.alpha[0], args.alpha[1])
    if spec is not None:
        return spec.alpha
    raise UsageError("give --alpha RE IM or a spec source")


def _verify_generators(args: argparse.Namespace, spec: Optional[SeriesSpec]):
    if args.angles:
        return make_generator_set(args.angles)
    if spec is not None:
        if spec.kind == SeriesKind.DELTA:
            return spec.ifs.generators
        if spec.kind == SeriesKind.DELTA_ZERO:
            return spec.generators
        return group_for_angle(spec.angle).generators
    raise UsageError("give --angles or a spec source")


def _verify_angle(args: argparse.Namespace, spec: Optional[SeriesSpec]):
    if args.theta:
        return parse_angle(args.theta)
    if spec is not None and spec.kind == SeriesKind.GRS:
        return spec.angle
    raise UsageError("give --theta or a grs spec source")


def _verify_ifs(spec: Optional[SeriesSpec]):
    if spec is None or spec.kind != SeriesKind.DELTA:
        raise UsageError("this check needs a delta spec (--preset or --config)")
    return spec.ifs


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    spec = _load_series(args) if (args.preset or args.config) else None
    if args.claim == "all":
        reports = run_suite(settings)
    elif args.claim == "main":
        reports = [check_main_theorem(_verify_ifs(spec), args.depth, args.tol, settings=settings)]
    elif args.claim == "tail":
        reports = [check_tail_bound(_verify_ifs(spec), args.depth, settings=settings)]
    elif args.claim == "group":
        report = check_group_order(_verify_generators(args, spec))
        print(f"order={report.parameters['order']} closure={report.parameters['closure']}")
        reports = [report]
    elif args.claim == "corollary":
        reports = [check_corollary(
            _verify_alpha(args, spec), _verify_generators(args, spec),
            args.depth, args.tol, settings=settings,
        )]
    elif args.claim == "ka":
        reports = [check_kawamura_allen(
            _verify_alpha(args, spec), _verify_angle(args, spec),
            args.depth, args.tol, settings=settings,
        )]
    else:
        reports = [check_grs_reduction(
            _verify_alpha(args, spec), _verify_angle(args, spec),
            args.depth, args.tol, settings=settings,
        )]
    print(format_reports(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_presets(args: argparse.Namespace, settings: Settings) -> int:
    for preset in PRESETS.values():
        status = f"REJECTED: {preset.rejected_reason}" if preset.rejected else f"depth={preset.depth}"
        print(f"{preset.name:<18} {preset.kind.value:<10} {status}  {preset.note}")
    return EXIT_OK


def cmd_info(args: argparse.Namespace, settings: Settings) -> int:
    spec = _load_series(args)
    if spec.kind == SeriesKind.DELTA:
        generators = spec.ifs.generators
        radius = bounding_radius(spec.ifs)
    elif spec.kind == SeriesKind.DELTA_ZERO:
        generators = spec.generators
        radius = series_bound(spec)
    else:
        generators = group_for_angle(spec.angle).generators
        radius = series_bound(spec)
    group = build_group(generators)
    print(f"kind={spec.kind.value}")
    print(f"S={generators}")
    print(f"m={generators.m}")
    print(f"L={group.order}")
    print(f"alpha={spec.alpha}")
    print(f"ratio={abs(spec.alpha):.17g}")
    print(f"bounding_radius={radius:.17g}")
    return EXIT_OK


def cmd_export(args: argparse.Namespace, settings: Settings) -> int:
    spec = get_preset(args.preset).series_spec()
    out = _output_path(args.out, settings)
    save_spec_config(series_to_spec_config(spec), out)
    print(out)
    return EXIT_OK


COMMANDS = {
    "render": cmd_render,
    "enumerate": cmd_enumerate,
    "validate": cmd_validate,
    "verify": cmd_verify,
    "presets": cmd_presets,
    "info": cmd_info,
    "export": cmd_export,
}


def cli_dispatch(argv: Optional[List[str]] = None, settings: Optional[Settings] = None) -> int:
    """Parse ``argv``, run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (None, 0) else EXIT_USAGE

    settings = settings or get_settings()
    setup_logging(
        log_level=args.log_level or settings.log_level,
        log_file=settings.log_file,
        log_format=args.log_format or settings.log_format,
        enable_file=bool(settings.log_file),
    )
    try:
        return COMMANDS[args.command](args, settings)
    except ValidationError as e:
        print(f"error: {e.errors()[0]['msg']}", file=sys.stderr)
    except RevolvingError as e:
        print(f"error: {e}", file=sys.stderr)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_USAGE


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
