"""Utils package for chb_simulator."""

from .logging_setup import setup_logging
from .string_helpers import run_directory_name, slugify_name, truncate_string
from .versioning import package_version, version_stamp

__all__ = [
    "package_version",
    "run_directory_name",
    "setup_logging",
    "slugify_name",
    "truncate_string",
    "version_stamp",
]
