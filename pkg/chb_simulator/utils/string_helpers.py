"""String helper utilities for chb_simulator."""

from __future__ import annotations

import re


def slugify_name(name: str) -> str:
    """
    Convert a name to a slug.

    Example:
        >>> slugify_name("Darcy sweep, eps=1e-3")
        'darcy_sweep_eps1e_3'

    """
    slug = re.sub(r"[^\w\s-]", "", name.lower())
    slug = re.sub(r"[-\s]+", "_", slug)
    return slug.strip("_")


def run_directory_name(label: str, seed: int | None = None, suffix: str | None = None) -> str:
    """
    Deterministic directory name of one run.

    Example:
        >>> run_directory_name("Tumor blob", seed=7, suffix="n=16")
        'tumor_blob_seed7_n16'

    """
    parts = [slugify_name(label) or "run"]
    if seed is not None:
        parts.append(f"seed{seed}")
    if suffix:
        parts.append(slugify_name(suffix))
    return "_".join(parts)


def truncate_string(text: str, max_length: int = 255, suffix: str = "...") -> str:
    """
    Shorten a log or summary message to at most max_length characters.

    Solver errors can quote whole arrays in their messages; the run summary
    keeps only the head of them.

    Example:
        >>> truncate_string("phi0 mean outside (-1, 1)", 10)
        'phi0 me...'

    """
    if len(text) <= max_length:
        return text
    return text[: max_length - len(suffix)].rstrip() + suffix
