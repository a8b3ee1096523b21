"""Validated run configuration for the command line."""

import argparse
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import attrs
from attrs import field, frozen
from attrs.validators import ge, gt, in_, instance_of, lt, optional
from typing_extensions import Self

from mqapprox.approximation.approximant import Interval
from mqapprox.centers import IntegerLattice, JitteredLattice, ScatteredSequence, load_explicit_sequence
from mqapprox.constants import DEFAULT_GRID_POINTS, DEGREE_CAP, DOUBLING_CAP
from mqapprox.expansion import MultiquadricParams

__all__ = [
    "ConfigError",
    "RunConfig",
    "SEQUENCE_KINDS",
]

SEQUENCE_KINDS = ("lattice", "jitter", "file")


class ConfigError(ValueError):
    """Raised when a run configuration is invalid."""

    pass


def _interval(value: Any) -> Interval:
    if isinstance(value, Interval):
        return value
    if isinstance(value, str):
        return Interval.from_text(value)
    a, b = value
    return Interval(Fraction(str(a)), Fraction(str(b)))


def _exponents(value: Any) -> tuple[float, ...]:
    if isinstance(value, str):
        value = [piece for piece in value.split(",") if piece.strip()]
    return tuple(float(p) for p in value)


def _at_least_one(instance: object, attribute: attrs.Attribute, value: tuple[float, ...]) -> None:
    if any(p < 1 for p in value):
        raise ValueError(f"{attribute.name} must all be at least 1, got {value}.")


@frozen(kw_only=True)
class RunConfig:
    """Everything an ``approx`` or ``sweep`` run needs, validated on construction."""

    k: int = field(default=1, validator=[instance_of(int), ge(1)])
    """Multiquadric order."""

    c: Fraction = field(default=Fraction(1), converter=lambda v: Fraction(str(v)), validator=gt(0))
    """Shape parameter."""

    interval: Interval = field(default=Interval(0, 1), converter=_interval)
    """Approximation interval."""

    epsilon: float = field(default=1e-3, converter=float, validator=gt(0))
    """Target sup error."""

    target: str = field(default="exp", validator=instance_of(str))
    """Catalog name or expression in x."""

    sequence: str = field(default="lattice", validator=in_(SEQUENCE_KINDS))
    """Where centers come from."""

    jitter_radius: Fraction = field(
        default=Fraction(1, 4),
        converter=lambda v: Fraction(str(v)),
        validator=[ge(0), lt(Fraction(1, 2))],
    )
    """Offset bound for the jittered lattice."""

    seed: int = field(default=0, validator=[instance_of(int), ge(0)])
    """Seed for the jittered lattice."""

    sequence_path: Path | None = field(default=None, converter=lambda v: None if v is None else Path(v))
    """Text file of points for the explicit sequence."""

    grid_points: int = field(default=DEFAULT_GRID_POINTS, validator=[instance_of(int), ge(2)])
    """Grid size for error measurement."""

    lp_exponents: tuple[float, ...] = field(default=(1.0, 2.0), converter=_exponents, validator=_at_least_one)
    """L^p exponents to report."""

    degree_cap: int = field(default=DEGREE_CAP, validator=[instance_of(int), ge(0)])
    """Largest proxy degree."""

    doubling_cap: int = field(default=DOUBLING_CAP, validator=[instance_of(int), ge(0)])
    """Largest number of doublings of y_min."""

    threads: int = field(default=1, validator=[instance_of(int), ge(1)])
    """Worker threads for grid evaluation."""

    json_out: Path | None = field(default=None, converter=lambda v: None if v is None else Path(v))
    """Where to write the approximant document."""

    csv_out: Path | None = field(default=None, converter=lambda v: None if v is None else Path(v))
    """Where to write the error table."""

    y_min: Fraction | None = field(
        default=None,
        converter=lambda v: None if v is None else Fraction(str(v)),
        validator=optional(gt(0)),
    )
    """Starting smallest center for sweeps; the convergence threshold when omitted."""

    steps: int = field(default=6, validator=[instance_of(int), ge(1)])
    """Number of rows in a sweep."""

    def __attrs_post_init__(self) -> None:
        """Cross-field checks.

        Raises:
            ValueError: If the file sequence has no path.
        """
        if self.sequence == "file" and self.sequence_path is None:
            raise ValueError("sequence 'file' needs sequence_path.")

    @classmethod
    def build(cls, **values: Any) -> Self:
        """Construct, turning any validation failure into a ConfigError.

        Raises:
            ConfigError: If a field is unknown or invalid.
        """
        known = {a.name for a in attrs.fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {unknown}.")
        try:
            return cls(**values)
        except (TypeError, ValueError, ZeroDivisionError) as err:
            raise ConfigError(str(err)) from err

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Self:
        """Take every field present on the namespace, then apply ``args.config`` if one was given.

        Raises:
            ConfigError: If the result is invalid or the config file cannot be read.
        """
        known = {a.name for a in attrs.fields(cls)}
        values = {name: value for name, value in vars(args).items() if name in known and value is not None}
        config_path = getattr(args, "config", None)
        if config_path is not None:
            values.update(_read_document(Path(config_path)))
        return cls.build(**values)

    @property
    def params(self) -> MultiquadricParams:
        """The multiquadric of this run."""
        return MultiquadricParams(k=self.k, c=self.c)

    def scattered_sequence(self) -> ScatteredSequence:
        """Construct the configured center source.

        Raises:
            ConfigError: If the explicit sequence file cannot be read or parsed.
        """
        if self.sequence == "jitter":
            return JitteredLattice(radius=self.jitter_radius, seed=self.seed)
        if self.sequence == "file":
            assert self.sequence_path is not None, "checked on construction"
            try:
                return load_explicit_sequence(self.sequence_path)
            except (OSError, ValueError) as err:
                raise ConfigError(f"Cannot load {self.sequence_path}: {err}") from err
        return IntegerLattice()


def _read_document(path: Path) -> dict[str, Any]:
    try:
        document = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(f"Cannot read config {path}: {err}") from err
    if not isinstance(document, dict):
        raise ConfigError(f"Config {path} must hold a JSON object.")
    return document
