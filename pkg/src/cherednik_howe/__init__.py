"""Exact verification of the spo(2|2) Howe duality on K_c(tau) = M_c(tau) (x) exterior forms."""

__version__ = "0.1.0"

from .coxeter import (
    CharacterTable,
    CoxeterGroup,
    ParameterFunction,
    RootSystem,
    assumption_check,
    build_root_system,
    character_table,
    rep_model,
)
from .module import KModule

__all__ = [
    "CharacterTable",
    "CoxeterGroup",
    "KModule",
    "ParameterFunction",
    "RootSystem",
    "assumption_check",
    "build_root_system",
    "character_table",
    "rep_model",
]
