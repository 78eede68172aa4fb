from __future__ import annotations

import functools

from cherednik_howe.coxeter import CoxeterGroup, ParameterFunction, build_root_system, character_table, rep_model
from cherednik_howe.module import KModule


@functools.lru_cache(maxsize=None)
def setting(group: str):
    rs = build_root_system(group)
    g = CoxeterGroup(rs)
    return rs, g, character_table(rs, g)


@functools.lru_cache(maxsize=None)
def module(group: str, c, tau: str = "triv", mutations: tuple = ()) -> KModule:
    """Cached K_c(tau); ``c`` is a string or a tuple of strings, one per orbit."""
    rs, g, t = setting(group)
    values = list(c) if isinstance(c, tuple) else c
    return KModule(rs, ParameterFunction.make(rs, values), rep_model(rs, g, tau, t), g, t, mutations)


def mono(r: int, *exps) -> tuple:
    e = tuple(exps) + (0,) * (r - len(exps))
    return e


def key(exps, t: int = 0, mask: int = 0):
    return (tuple(exps), t, mask)
