from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .closed_form import sample_distribution, singular_points
from .errors import ReggeMomentsError
from .spectral_moments import ModelParams, Route, Variant, available_routes, factorized_moment, moment_scalar
from .xcheck import CHECK_FAMILIES, VerifyConfig, format_reports, report_record, reports_to_frame, run_all

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SERIES_ROUTES = (Route.SERIES_RESCALED, Route.SERIES_UNRESCALED)

# Routes agree to this relative tolerance in the moments table.
ROUTE_AGREEMENT_TOL = {
    Route.SERIES_UNRESCALED: 1e-10,
    Route.INTEGRAL_REP: 1e-8,
    Route.RADIAL_QUADRATURE: 1e-6,
}


class CliConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma: float = Field(1.0, gt=0, allow_inf_nan=False)
    variant: Variant = Variant.ARCSIN
    vsq_min: float = Field(-40.0, allow_inf_nan=False)
    vsq_max: float = Field(40.0, allow_inf_nan=False)
    samples: int = Field(401, ge=2)
    l: int = Field(0, ge=0)
    m: int = Field(0, ge=0)
    n_max: int = Field(3, ge=1)
    output_format: Literal["csv", "json"] = "csv"
    output_path: Optional[Path] = None
    only: Optional[List[str]] = None
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    @field_validator("only")
    @classmethod
    def _known_checks(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is None:
            return value
        unknown = [name for name in value if name not in CHECK_FAMILIES]
        if unknown:
            raise ValueError(f"unknown check name(s): {', '.join(unknown)}")
        return value

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper(cls, value: Any) -> Any:
        return value.upper() if isinstance(value, str) else value

    @model_validator(mode="after")
    def _ordered_range(self) -> "CliConfig":
        if not self.vsq_min < self.vsq_max:
            raise ValueError(f"vsq_min must be below vsq_max, got {self.vsq_min} >= {self.vsq_max}")
        return self

    @property
    def params(self) -> ModelParams:
        return ModelParams(gamma=self.gamma, variant=self.variant)


# ----------------------------------------------------------------------
# Config file and flags
# ----------------------------------------------------------------------

_KEY_ALIASES = {"format": "output_format", "output": "output_path"}


def _canonical_key(key: str) -> str:
    key = key.strip().replace("-", "_")
    return _KEY_ALIASES.get(key, key)


def _split_names(values: Sequence[str]) -> List[str]:
    return [name.strip() for value in values for name in value.split(",") if name.strip()]


def load_config_file(path: Path) -> Dict[str, Any]:
    """
    Read ``key=value`` lines. Blank lines and ``#`` comments are ignored;
    keys may use ``-`` or ``_``.
    """
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    values: Dict[str, Any] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = _canonical_key(key)
        if key not in CliConfig.model_fields:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _split_names([value]) if key == "only" else value.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", type=float, help="Barbero-Immirzi parameter, 0 < gamma < inf")
    common.add_argument("--variant", choices=[v.value for v in Variant])
    common.add_argument("--vsq-min", dest="vsq_min", type=float)
    common.add_argument("--vsq-max", dest="vsq_max", type=float)
    common.add_argument("--samples", type=int)
    common.add_argument("--l", dest="l", type=int, help="highest moment index")
    common.add_argument("--m", dest="m", type=int, help="conjugate index of the factorized moment")
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--format", dest="output_format", choices=["csv", "json"])
    common.add_argument("--output", dest="output_path", type=Path, help="file to write (default: stdout)")
    common.add_argument("--only", action="append", help="check families to run (repeatable, comma-separated)")
    common.add_argument("--config", type=Path, help="key=value file; flags override it")
    common.add_argument("--log-level", dest="log_level")

    parser = argparse.ArgumentParser(
        prog="regge_moments",
        description="Moments and area distribution of the Regge-calculus connection integral.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("distribution", parents=[common], help="sample N(v^2) on a uniform real grid")
    sub.add_parser("moments", parents=[common], help="scalar moments on every route, plus the factorized moment")
    sub.add_parser("singularities", parents=[common], help="list the excluded singular points")
    sub.add_parser("verify", parents=[common], help="run the verification suite")
    return parser


def resolve_config(args: argparse.Namespace) -> CliConfig:
    """Config file first, then every flag that was given."""
    merged: Dict[str, Any] = {}
    if args.config is not None:
        merged.update(load_config_file(args.config))
    for key in CliConfig.model_fields:
        value = getattr(args, key, None)
        if value is None:
            continue
        merged[key] = _split_names(value) if key == "only" else value
    return CliConfig(**merged)


# ----------------------------------------------------------------------
# Emission
# ----------------------------------------------------------------------

def _json_safe(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def emit_table(df: pd.DataFrame, config: CliConfig) -> None:
    """CSV with 17 significant digits, or a JSON list of row records."""
    if config.output_format == "csv":
        text = df.to_csv(index=False, float_format="%.17g", lineterminator="\n")
    else:
        records = [{k: _json_safe(v) for k, v in row.items()} for row in df.to_dict(orient="records")]
        text = json.dumps(records, indent=2) + "\n"
    _write(text, config.output_path)


def _write(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(f"Wrote {path}")


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def distribution_frame(config: CliConfig) -> pd.DataFrame:
    grid = np.linspace(config.vsq_min, config.vsq_max, config.samples)
    samples = sample_distribution(grid, config.gamma, config.variant)
    return pd.DataFrame(
        {
            "vsq": [s.vsq for s in samples],
            "N": [s.n_value for s in samples],
            "scaledN": [s.scaled for s in samples],
        },
        columns=["vsq", "N", "scaledN"],
    )


def cmd_distribution(config: CliConfig) -> int:
    emit_table(distribution_frame(config), config)
    return EXIT_OK


def moments_frame(config: CliConfig) -> pd.DataFrame:
    """
    One row per l = 0..config.l: every route, an agreement flag, and the
    factorized moment with m. A quadrature route that fails leaves NaN in
    its columns and clears the flag; a series route failure propagates.
    """
    p = config.params
    routes = available_routes(p.variant)
    rows: List[Dict[str, Any]] = []
    for l in range(config.l + 1):
        row: Dict[str, Any] = {"l": l}
        ref = None
        agree = True
        for route in routes:
            key = route.value.replace("-", "_")
            try:
                value = moment_scalar(l, p, route).value
            except ReggeMomentsError as exc:
                if route in SERIES_ROUTES:
                    raise
                logger.warning("moment l=%d on route %s failed: %s", l, route.value, exc)
                row[f"{key}_re"] = row[f"{key}_im"] = math.nan
                agree = False
                continue
            row[f"{key}_re"] = value.real
            row[f"{key}_im"] = value.imag
            if ref is None:
                ref = value
            else:
                agree = agree and abs(value - ref) <= ROUTE_AGREEMENT_TOL[route] * abs(ref)
        row["agree"] = agree
        fact = factorized_moment(l, config.m, p)
        row["m"] = config.m
        row["factorized_re"] = fact.real
        row["factorized_im"] = fact.imag
        rows.append(row)
    return pd.DataFrame(rows)


def cmd_moments(config: CliConfig) -> int:
    emit_table(moments_frame(config), config)
    return EXIT_OK


def singularities_frame(config: CliConfig) -> pd.DataFrame:
    points = singular_points(config.gamma, config.n_max)
    return pd.DataFrame(
        {
            "n": [pt.n for pt in points],
            "re": [pt.location.real for pt in points],
            "im": [pt.location.imag for pt in points],
            "order": [pt.order for pt in points],
        },
        columns=["n", "re", "im", "order"],
    )


def cmd_singularities(config: CliConfig) -> int:
    emit_table(singularities_frame(config), config)
    return EXIT_OK


def cmd_verify(config: CliConfig) -> int:
    only = None if config.only is None else tuple(config.only)
    reports = run_all(VerifyConfig(only=only))
    print(format_reports(reports), file=sys.stderr)
    if config.output_format == "json":
        _write(json.dumps([report_record(r) for r in reports], indent=2) + "\n", config.output_path)
    else:
        emit_table(reports_to_frame(reports), config)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


COMMANDS = {
    "distribution": cmd_distribution,
    "moments": cmd_moments,
    "singularities": cmd_singularities,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE

    try:
        config = resolve_config(args)
    except (ValidationError, ValueError, FileNotFoundError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, config.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        return COMMANDS[args.command](config)
    except ReggeMomentsError as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
