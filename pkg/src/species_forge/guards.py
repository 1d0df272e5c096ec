"""Search-space guards.

Every guard can be disabled globally by setting ``SPECIES_FORGE_GUARDS=off``.
"""

import os

from .errors import GuardError

ENUM_MAX_RANK = 6
ENUM_MAX_ENTRY = 4
MAX_PATHS = 10**6
MAX_ISO_VERTICES = 12


def guards_enabled() -> bool:
    return os.environ.get("SPECIES_FORGE_GUARDS", "").strip().lower() not in {"off", "0", "false", "no"}


def check(value, limit, what):
    """Raise :class:`GuardError` if ``value > limit`` and guards are on."""
    if limit is not None and value > limit and guards_enabled():
        raise GuardError(f"{what} = {value} exceeds the limit {limit} "
                         "(raise the limit or set SPECIES_FORGE_GUARDS=off)")
