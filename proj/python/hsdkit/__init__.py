"""Hasse-Schmidt derivations over QQ and GF(p).

Problems, derivations and series use the same JSON layout as the ``hsd``
command line tool; every function accepts either a dict or a JSON string and
returns plain Python data.
"""

import json as _json

from . import _hsdkit
from ._hsdkit import HSDError, InvalidInput, NotABasis, PrecisionExhausted, binom_mod_p, is_prime

__all__ = [
    "HSDError",
    "InvalidInput",
    "NotABasis",
    "PrecisionExhausted",
    "apply_component",
    "binom_mod_p",
    "coefficient_field",
    "decompose",
    "demo_problems",
    "is_prime",
    "run",
    "verify",
]


def _text(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def decompose(problem, max_degree=4):
    """Coefficient table expressing the problem's target through its family."""
    return _json.loads(_hsdkit.decompose(_text(problem), max_degree))


def coefficient_field(problem, degree1_only=False):
    """Joint kernel of the family's components on k[X]/(X)^N."""
    return _json.loads(_hsdkit.kernel(_text(problem), degree1_only))


def verify(problem, seed=None, max_degree=4):
    """Leibniz checks, plus the decomposition identity when a table "C" is present."""
    return _json.loads(_hsdkit.verify(_text(problem), seed, max_degree))


def apply_component(derivation, field, i, series):
    """D_i(f) for an HS derivation given as JSON; field is "QQ" or "GF(p)"."""
    return _json.loads(_hsdkit.apply_component(_text(derivation), field, i, _text(series)))


def demo_problems():
    """The shipped worked example and the GF(2) kernel example."""
    return _json.loads(_hsdkit.demo_problems())


def run(args):
    """Runs the hsd command line in-process; returns (exit_code, stdout, stderr)."""
    return _hsdkit.run(list(args))
