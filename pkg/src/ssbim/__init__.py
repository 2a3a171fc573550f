"""Singular Soergel bimodules: Hecke algebras, parabolic modules and section models.

The heavy objects live in submodules; the names below are the ones most
scripts need.
"""

from .coxeter import ConfigError, CoxeterSystem, ElementId, WindowError
from .hecke import HeckeAlgebra, HeckeElt, LaurentPoly, v
from .parabolic import ParabolicElt, ParabolicModule, TriangularityError
from .realization import Field, MPoly, Realization, RealizationError, cartan_matrix, standard_realization
from .sections import (
    FreenessError,
    PreconditionError,
    SectionModule,
    StabilizationError,
    TruncationError,
    bott_samelson,
    character,
    hom_grk,
    pullback,
    pushforward,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CoxeterSystem",
    "ElementId",
    "Field",
    "FreenessError",
    "HeckeAlgebra",
    "HeckeElt",
    "LaurentPoly",
    "MPoly",
    "ParabolicElt",
    "ParabolicModule",
    "PreconditionError",
    "Realization",
    "RealizationError",
    "SectionModule",
    "StabilizationError",
    "TriangularityError",
    "TruncationError",
    "WindowError",
    "bott_samelson",
    "cartan_matrix",
    "character",
    "hom_grk",
    "pullback",
    "pushforward",
    "standard_realization",
    "v",
]
