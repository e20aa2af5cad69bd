"""Tests for string helpers, version stamps and logging setup."""

from __future__ import annotations

import logging

import colorlog
import pytest

from chb_simulator.const import LOGGER
from chb_simulator.utils import (
    package_version,
    run_directory_name,
    setup_logging,
    slugify_name,
    truncate_string,
    version_stamp,
)

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(
    ("name", "slug"),
    [
        ("Darcy sweep", "darcy_sweep"),
        ("  p = 1.5 ", "p_15"),
        ("eps_1.000e-02", "eps_1000e_02"),
        ("---", ""),
    ],
)
def test_slugify_name(name, slug):
    assert slugify_name(name) == slug


def test_run_directory_name():
    assert run_directory_name("Tumor blob") == "tumor_blob"
    assert run_directory_name("Tumor blob", seed=3) == "tumor_blob_seed3"
    assert run_directory_name("!!", seed=0, suffix="n=16") == "run_seed0_n16"


def test_truncate_string():
    assert truncate_string("short", 10) == "short"
    assert truncate_string("a" * 20, 10) == "aaaaaaa..."


def test_version_stamp():
    stamp = version_stamp()
    assert stamp["package"] == "chb_simulator"
    assert stamp["version"] == package_version()
    assert {"python", "numpy", "scipy"} <= set(stamp)


def test_setup_logging_replaces_its_handler():
    try:
        first = setup_logging()
        second = setup_logging(verbose=True)
        handlers = [handler for handler in LOGGER.handlers if handler.get_name() == LOGGER.name]
        assert handlers == [second]
        assert first not in LOGGER.handlers
        assert isinstance(second.formatter, colorlog.ColoredFormatter)
        assert LOGGER.level == logging.DEBUG
    finally:
        for handler in list(LOGGER.handlers):
            if handler.get_name() == LOGGER.name:
                LOGGER.removeHandler(handler)
        LOGGER.setLevel(logging.NOTSET)
