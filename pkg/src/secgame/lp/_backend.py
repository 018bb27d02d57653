"""Tableau backend selection.

The compiled GMP kernel is used when it imports; ``SECGAME_PURE_PYTHON=1``
forces the pure-Python tableau.  Both make identical pivoting decisions.
"""
import os

from . import _simplex_py

OPTIMAL = _simplex_py.OPTIMAL
UNBOUNDED = _simplex_py.UNBOUNDED

_BACKENDS = {"python": _simplex_py.Tableau}

try:
    from . import _simplex_gmp
except ImportError:  # extension not built
    _simplex_gmp = None
else:
    _BACKENDS["gmp"] = _simplex_gmp.Tableau

if os.environ.get("SECGAME_PURE_PYTHON") == "1" or _simplex_gmp is None:
    DEFAULT = "python"
else:
    DEFAULT = "gmp"


def available():
    return sorted(_BACKENDS)


def tableau_class(name=None):
    name = name or DEFAULT
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable LP backend {name!r}") from None
