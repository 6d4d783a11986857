"""Config parsing, validation and round-trips."""

import math

import pytest

from shellgap.config import (config_from_values, default_config, dense_config,
                             load_config, parse_config, write_config)
from shellgap.errors import ConfigError, DomainError

GOOD = """
# comment line
shell.a         = 0.0275
shell.thickness = 0.0017   # full 2h
shell.rho       = 1100.0
shell.E         = 2.2e6
shell.nu        = 0.4997
fluid.rho       = 1.2
fluid.c         = 344.0
lattice.L       = 0.08
"""


def test_parse_good():
    cfg = parse_config(GOOD)
    assert cfg.shell.a == 0.0275
    assert cfg.shell.h == 0.00085  # thickness input is the full 2h
    assert cfg.lattice.L == 0.08


def test_default_filling_fraction():
    cfg = default_config()
    assert cfg.filling_fraction == pytest.approx(
        math.pi * 0.0275 ** 2 / 0.08 ** 2, rel=1e-15)
    assert 0.37 < cfg.filling_fraction < 0.372
    assert cfg.filling_fraction_outer > cfg.filling_fraction


def test_dense_filling_fraction():
    cfg = dense_config()
    assert cfg.filling_fraction == pytest.approx(0.690291, rel=1e-5)


def test_bragg_frequency():
    assert default_config().bragg_frequency == pytest.approx(344.0 / 0.16,
                                                             rel=1e-15)


def test_missing_key():
    with pytest.raises(ConfigError, match="missing"):
        parse_config("shell.a = 0.01")


def test_unknown_key():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config(GOOD + "\nshell.bogus = 1.0")


def test_bad_number():
    with pytest.raises(ConfigError, match="bad number"):
        parse_config(GOOD.replace("0.0275", "zzz"))


def test_bad_line():
    with pytest.raises(ConfigError, match="key = value"):
        parse_config("shell.a 0.01")


def test_overlap_rejected():
    values = default_config().to_dict()
    values["shell.a"] = 0.04  # a >= L/2
    with pytest.raises(DomainError, match="overlap"):
        config_from_values(values)


def test_physical_invalid_maps_to_config_error():
    values = default_config().to_dict()
    values["shell.rho"] = -1.0
    with pytest.raises(ConfigError):
        config_from_values(values)


def test_file_round_trip(tmp_path):
    path = tmp_path / "c.cfg"
    write_config(default_config(), path)
    back = load_config(path)
    assert back.to_dict() == default_config().to_dict()


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.cfg")


def test_shipped_config_files_match_code_defaults():
    import pathlib

    root = pathlib.Path(__file__).resolve().parents[1]
    shipped = load_config(root / "configs" / "default.cfg")
    assert shipped.to_dict() == default_config().to_dict()
    shipped_dense = load_config(root / "configs" / "dense.cfg")
    assert shipped_dense.to_dict() == dense_config().to_dict()
