"""Exact cone, toric and blow-up invariant calculations for Fano 4-folds.

Structured arguments and results are plain dicts and lists in the JSON
layouts used by the command-line tool.
"""

import json
from fractions import Fraction

from . import _core
from ._core import Error, HypothesisError, InputError, InternalError, PreconditionError

__all__ = [
    "Error", "InputError", "PreconditionError", "HypothesisError", "InternalError",
    "cone_canonical", "cone_dual", "cone_intersect", "cone_faces",
    "fan_info", "fan_build", "fan_star", "fan_flip_lines",
    "model_tau", "model_adjacent",
    "ledger_run", "invariant_line", "table",
    "h0_cubic_chain", "h0_p2xp2", "double_cover_h0", "antsections_step", "chi_del_pezzo_4fold",
    "registry_list", "registry_check", "registry_check_all", "registry_evaluate",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def cone_canonical(cone):
    return json.loads(_core.cone_canonical(_dump(cone)))


def cone_dual(cone):
    return json.loads(_core.cone_dual(_dump(cone)))


def cone_intersect(a, b):
    return json.loads(_core.cone_intersect(_dump(a), _dump(b)))


def cone_faces(cone, dim=None):
    return json.loads(_core.cone_faces(_dump(cone), -1 if dim is None else dim))


def fan_info(fan):
    return json.loads(_core.fan_info(_dump(fan)))


def fan_build(construction, data_dir=""):
    return json.loads(_core.fan_build(_dump(construction), str(data_dir)))


def fan_star(fan, cone):
    return json.loads(_core.fan_star(_dump(fan), sorted(cone)))


def fan_flip_lines(fan):
    return json.loads(_core.fan_flip_lines(_dump(fan)))


def model_tau(model, gens):
    """Minimal face of Eff containing the generators (names or class vectors)."""
    return json.loads(_core.model_tau(_dump(model), json.dumps(gens)))


def model_adjacent(model, d, e):
    return _core.model_adjacent(_dump(model), d, e)


def ledger_run(chain):
    return json.loads(_core.ledger_run(_dump(chain)))


def invariant_line(chain):
    return _core.invariant_line(_dump(chain))


def table(base, max_s=None, format="json"):
    """Plane chain table; parsed rows for json, text for md and csv."""
    out = _core.table(base, -1 if max_s is None else max_s, format)
    return json.loads(out) if format == "json" else out


h0_cubic_chain = _core.h0_cubic_chain
h0_p2xp2 = _core.h0_p2xp2
double_cover_h0 = _core.double_cover_h0
antsections_step = _core.antsections_step


def chi_del_pezzo_4fold(d, t):
    return Fraction(_core.chi_del_pezzo_4fold(d, t))


def registry_list(data_dir=""):
    return json.loads(_core.registry_list(str(data_dir)))


def registry_check(scenario_id, data_dir=""):
    return json.loads(_core.registry_check(scenario_id, str(data_dir)))


def registry_check_all(data_dir=""):
    return json.loads(_core.registry_check_all(str(data_dir)))


def registry_evaluate(scenario_id, data_dir=""):
    return json.loads(_core.registry_evaluate(scenario_id, str(data_dir)))
