"""Python access to the cideal library.

Every function returns plain dicts decoded from the library's JSON reports.
Exact quantities arrive as strings ("36/70"); parse them with fractions.Fraction.
"""

import json
from fractions import Fraction

from . import _cideal
from ._cideal import BudgetExceeded, DomainError, schema_version

__all__ = ["BudgetExceeded", "DomainError", "bounds", "exact", "run", "schema_version", "simulate"]


def _c(value):
    return str(Fraction(value))


def exact(u, m, n, c=1):
    return json.loads(_cideal.exact(u, m, n, _c(c)))


def bounds(u, m, n, c=1, eps=0, t=2):
    return json.loads(_cideal.bounds(str(u), m, n, _c(c), _c(eps), _c(t)))


def simulate(u, m, n, c=1, trials=10000, seed=1, workers=1):
    return json.loads(_cideal.simulate(u, m, n, _c(c), trials, seed, workers))


def run(*args):
    """Run the command-line tool in-process. Returns (exit_code, stdout, stderr)."""
    return _cideal.run([str(a) for a in args])
