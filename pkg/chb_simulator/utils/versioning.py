"""Version stamp written into every run summary."""

from __future__ import annotations

from functools import cache
import json
from pathlib import Path
import platform
from typing import Any

import numpy as np
import scipy

from chb_simulator.const import DOMAIN

_MANIFEST = Path(__file__).resolve().parent.parent / "manifest.json"


@cache
def package_version() -> str:
    """Version from manifest.json, the single place it is kept."""
    manifest = json.loads(_MANIFEST.read_text(encoding="utf-8"))
    return str(manifest["version"])


def version_stamp() -> dict[str, Any]:
    """Package, interpreter and numerical library versions of this run."""
    return {
        "package": DOMAIN,
        "version": package_version(),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }


__all__ = ["package_version", "version_stamp"]
