"""Exact characteristic polynomials, closed forms and energies of bicyclic graph families.

The toolkit compares the energy of two hexagons joined by a path (``P66``)
with that of two cycles joined by a bridge (``R``), and checks by exhaustive
enumeration that ``P66(n)`` has maximal energy among connected bipartite
bicyclic graphs of small order.
"""
from __future__ import annotations

from .charpoly import (
    charpoly_by_recursion,
    charpoly_direct,
    component_product,
    edge_deletion_recursion,
    matching_count,
)
from .closedform import ClosedFormContext, FCoefficients, make_context
from .energy import (
    ComparisonRecord,
    EnergyResult,
    compare_families,
    energy_coulson_explicit,
    energy_difference,
    energy_eigen,
)
from .errors import (
    CapacityError,
    ConvergenceError,
    NonSymmetricSpectrumError,
    ParameterDomainError,
    UsageError,
)
from .graphs import P66, R, Cycle, Graph, Path, PyloneCycle, build, is_bicyclic, is_bipartite
from .polynomial import IntPoly

__all__ = [
    "CapacityError",
    "ClosedFormContext",
    "ComparisonRecord",
    "ConvergenceError",
    "Cycle",
    "EnergyResult",
    "FCoefficients",
    "Graph",
    "IntPoly",
    "NonSymmetricSpectrumError",
    "P66",
    "ParameterDomainError",
    "Path",
    "PyloneCycle",
    "R",
    "UsageError",
    "build",
    "charpoly_by_recursion",
    "charpoly_direct",
    "compare_families",
    "component_product",
    "edge_deletion_recursion",
    "energy_coulson_explicit",
    "energy_difference",
    "energy_eigen",
    "is_bicyclic",
    "is_bipartite",
    "make_context",
    "matching_count",
]

__version__ = "0.1.0"
