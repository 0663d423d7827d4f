"""Size budgets for the exact solvers.

Defaults can be overridden with the ``LKLAB_BUDGET`` environment variable,
a comma separated list of ``key=value`` pairs, e.g. ``LKLAB_BUDGET=psi=12,chi=80``.
"""

import os

from .errors import BudgetExceeded, InvalidParameters

DEFAULTS = {
    "alpha": 2000,      # vertices, exact maximum independent set
    "enum": 60,         # vertices, enumeration of maximum independent sets
    "chi": 60,          # vertices, exact chromatic number
    "psi": 15,          # vertices, exact local chromatic number
    "hom_domain": 15,   # vertices of the domain in hom_search
    "hom_codomain": 60, # vertices of the codomain in hom_search
    "nu": 12,           # vertices of G in nu/mu brute force (general K)
}


def _parse(text):
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in DEFAULTS:
            raise InvalidParameters(f"bad LKLAB_BUDGET entry {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise InvalidParameters(f"bad LKLAB_BUDGET value {item!r}") from None
    return out


def limits():
    """Current budget table (defaults merged with the environment override)."""
    table = dict(DEFAULTS)
    table.update(_parse(os.environ.get("LKLAB_BUDGET", "")))
    return table


def limit(key):
    return limits()[key]


def check(key, size, what="instance"):
    cap = limit(key)
    if size > cap:
        raise BudgetExceeded(f"{what} has {size} vertices, {key} budget is {cap}")
