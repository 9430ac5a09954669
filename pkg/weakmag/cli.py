"""
Command-line front end.

    python -m weakmag weak-value --beta 0.01 --phi 3.2e-5
    python -m weakmag spectrum --config configs/reference_setup.toml --b 1e-9 --beta 0.010
    python -m weakmag sweep --config configs/reference_setup.toml --out results/
    python -m weakmag table1 --out results/
    python -m weakmag design --config configs/reference_setup.toml

Exit status: 0 success, 1 computation or I/O error, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from . import serialization
from .analysis import (
    DEFAULT_B_SWEEP,
    TABLE1_BETAS,
    ExperimentSetup,
    recommend_design,
    sensitivity,
    shift_curve,
    spectrum_family,
)
from .config import RunConfig, load_config
from .exceptions import ConfigError, WeakMagError
from .polarization import postselection_probability, weak_value

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_USAGE = 2


def finite_float(text: str) -> float:
    """argparse type for angles and fields: a finite float, else a usage error."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML run configuration")
    common.add_argument("--out", type=Path, help="output directory (overrides output.dir)")
    common.add_argument("--seed", type=int, help="noise seed (overrides seed)")
    common.add_argument("--format", choices=("csv", "json"), help="table/curve output format")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="weakmag",
        description="Weak-value amplified Faraday magnetometry: simulate, fit, sweep, design.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    wv = sub.add_parser("weak-value", parents=[common], help="weak value and postselection probability")
    wv.add_argument("--beta", type=finite_float, required=True, help="pre-selection angle (rad)")
    group = wv.add_mutually_exclusive_group()
    group.add_argument("--phi", type=finite_float, help="total H/V phase (rad), default 0")
    group.add_argument("--b", type=finite_float, help="field (T); phase from the configured Faraday arm")
    wv.set_defaults(handler=cmd_weak_value)

    sp = sub.add_parser("spectrum", parents=[common], help="initial/final spectra and fit report")
    sp.add_argument("--beta", type=finite_float, help="pre-selection angle (rad), default first sweep beta")
    sp.add_argument(
        "--b", type=finite_float, action="append", help="field (T); repeat for a family, default 1e-9"
    )
    sp.set_defaults(handler=cmd_spectrum)

    sw = sub.add_parser("sweep", parents=[common], help="shift curves and sensitivity summary")
    sw.set_defaults(handler=cmd_sweep)

    t1 = sub.add_parser("table1", parents=[common], help="reference sensitivity table sweep")
    t1.set_defaults(handler=cmd_table1)

    de = sub.add_parser("design", parents=[common], help="recommend a pre-selection angle")
    de.set_defaults(handler=cmd_design)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config)
    update: dict = {}
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ConfigError([("--seed", "must be an unsigned 64-bit integer")])
        update["seed"] = args.seed
    output = config.output
    if args.out is not None:
        output = output.model_copy(update={"dir": str(args.out)})
    if args.format is not None:
        output = output.model_copy(update={"format": args.format})
    update["output"] = output
    return config.model_copy(update=update)


def _out_dir(config: RunConfig) -> Path:
    return Path(config.output.dir)


def cmd_weak_value(args: argparse.Namespace, config: RunConfig) -> int:
    phi = 0.0 if args.phi is None else args.phi
    report: dict = {"beta": args.beta}
    if args.b is not None:
        phi = config.build_setup().phase_for_field(args.b)
        report["b_tesla"] = args.b
    wv = weak_value(args.beta, phi)
    report.update(
        phi=phi,
        re=wv.real,
        im=wv.imag,
        postselection_probability=postselection_probability(args.beta, phi),
    )
    print(serialization.dumps(report))
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace, config: RunConfig) -> int:
    setup = config.build_setup()
    beta = config.sweep.betas_rad[0] if args.beta is None else args.beta
    b_values = sorted(args.b) if args.b else [1e-9]
    family = spectrum_family(setup, beta, b_values)

    out = _out_dir(config)
    serialization.write_spectrum_csv(out / "initial_spectrum.csv", family.initial)
    entries = []
    for i, member in enumerate(family.members):
        name = "final_spectrum.csv" if len(family.members) == 1 else f"final_spectrum_{i:02d}.csv"
        serialization.write_spectrum_csv(out / name, member.spectrum)
        entries.append(
            {
                "b_tesla": member.b_tesla,
                "phi_rad": member.phi,
                "file": name,
                "fit": member.fit.to_record(),
                "measured_shift_nm": member.measured_shift_nm,
                "predicted_shift_nm": member.predicted_shift_nm,
            }
        )
    serialization.write_json(
        out / "fit_report.json",
        {"beta_rad": beta, "initial_fit": family.initial_fit.to_record(), "spectra": entries},
    )
    return EXIT_OK


def _run_sweep(
    config: RunConfig, setup: ExperimentSetup, betas, b_values, summary_name: str
) -> None:
    out = _out_dir(config)
    as_json = config.output.format == "json"
    results = []
    for beta in betas:
        curve = shift_curve(setup, beta, b_values)
        results.append(sensitivity(curve))
        stem = f"curve_beta_{serialization.fmt(beta)}"
        if as_json:
            points = [{"B_tesla": b, "shift_nm": s} for b, s in curve.points]
            serialization.write_json(out / f"{stem}.json", {"beta_rad": beta, "points": points})
        else:
            serialization.write_curve_csv(out / f"{stem}.csv", curve)

    if as_json:
        serialization.write_json(out / f"{summary_name}.json", [r.to_record() for r in results])
    else:
        serialization.write_table_csv(out / f"{summary_name}.csv", results)
    for r in results:
        logger.info(
            "beta=%g rad: k=%.4e nm/T, r2=%.6f, P=%.3e",
            r.beta,
            r.k,
            r.r2,
            r.postselection_probability_at_zero_field,
        )


def cmd_sweep(args: argparse.Namespace, config: RunConfig) -> int:
    sweep = config.sweep
    _run_sweep(config, config.build_setup(), sweep.betas_rad, sweep.b_values(), "sensitivity")
    return EXIT_OK


def cmd_table1(args: argparse.Namespace, config: RunConfig) -> int:
    _run_sweep(config, config.build_setup(), TABLE1_BETAS, DEFAULT_B_SWEEP, "table1")
    return EXIT_OK


def cmd_design(args: argparse.Namespace, config: RunConfig) -> int:
    recommendation = recommend_design(
        config.design_constraints(), config.build_setup(), config.beta_search()
    )
    print(serialization.dumps(recommendation.to_record()))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)

    try:
        config = _resolve_config(args)
        return args.handler(args, config)
    except ConfigError as exc:
        print(f"weakmag: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WeakMagError, OSError) as exc:
        print(f"weakmag: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
