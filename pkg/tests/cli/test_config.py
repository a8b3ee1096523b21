import argparse
import json
from fractions import Fraction
from pathlib import Path

import pytest

from mqapprox.approximation.approximant import Interval
from mqapprox.centers import ExplicitSequence, IntegerLattice, JitteredLattice
from mqapprox.cli.config import ConfigError, RunConfig


def test_defaults():
    config = RunConfig()
    assert config.params.k == 1
    assert config.params.c == 1
    assert config.interval == Interval(0, 1)
    assert config.epsilon == 1e-3
    assert config.lp_exponents == (1.0, 2.0)
    assert config.scattered_sequence() == IntegerLattice()


def test_conversions():
    config = RunConfig.build(c="0.5", interval="-1, 2", lp_exponents="1,4", jitter_radius="1/8", sequence="jitter")
    assert config.c == Fraction(1, 2)
    assert config.interval == Interval(-1, 2)
    assert config.lp_exponents == (1.0, 4.0)
    assert config.scattered_sequence() == JitteredLattice(radius=Fraction(1, 8), seed=0)
    assert RunConfig.build(interval=[0, "1/2"]).interval == Interval(0, Fraction(1, 2))


@pytest.mark.parametrize(
    "values",
    [
        {"epsilon": 0},
        {"k": 0},
        {"c": "-1"},
        {"c": "one"},
        {"interval": "1,0"},
        {"sequence": "primes"},
        {"sequence": "file"},
        {"jitter_radius": "1/2"},
        {"lp_exponents": "0.5"},
        {"grid_points": 1},
        {"threads": 0},
        {"y_min": 0},
        {"colour": "blue"},
    ],
)
def test_invalid_values(values: dict):
    with pytest.raises(ConfigError):
        RunConfig.build(**values)


def test_file_sequence(tmp_path: Path):
    points = tmp_path / "points.txt"
    points.write_text("# centers\n8\n17.5\n\n40\n")
    config = RunConfig.build(sequence="file", sequence_path=str(points))
    seq = config.scattered_sequence()
    assert isinstance(seq, ExplicitSequence)
    assert seq.next_at_least(9) == Fraction(35, 2)

    broken = tmp_path / "broken.txt"
    broken.write_text("8\nsixteen\n")
    with pytest.raises(ConfigError, match="sixteen"):
        RunConfig.build(sequence="file", sequence_path=broken).scattered_sequence()
    with pytest.raises(ConfigError):
        RunConfig.build(sequence="file", sequence_path=tmp_path / "missing.txt").scattered_sequence()


def test_from_args_applies_config_last(tmp_path: Path):
    document = tmp_path / "run.json"
    document.write_text(json.dumps({"epsilon": 0.01, "interval": [-1, 1]}))
    args = argparse.Namespace(k=2, epsilon=1e-6, target=None, config=str(document), command="approx")
    config = RunConfig.from_args(args)
    assert config.k == 2
    assert config.epsilon == 0.01
    assert config.interval == Interval(-1, 1)
    assert config.target == "exp"


def test_from_args_rejects_bad_documents(tmp_path: Path):
    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]")
    with pytest.raises(ConfigError, match="JSON object"):
        RunConfig.from_args(argparse.Namespace(config=str(listing)))
    with pytest.raises(ConfigError, match="Cannot read"):
        RunConfig.from_args(argparse.Namespace(config=str(tmp_path / "absent.json")))
