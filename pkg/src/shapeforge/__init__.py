"""Exact combinatorics of RNA abstract shapes and Motzkin lattice paths."""

from . import errors
from .asymptotics import (
    ASYM_TARGETS,
    AsymptoticReport,
    DominantSingularity,
    asym_count,
    asym_level0,
    asym_pi,
    asym_pi_expected,
    convergence_report,
    deflate,
    expected_level0,
    expected_pi_r0,
    find_zeta,
    singular_polynomial,
)
from .counting import ExactCounts
from .paths import (
    LatticePath,
    PathKind,
    PathStats,
    decode1,
    decode2,
    decorate_islands,
    encode1,
    encode2,
    enumerate_paths,
    parse_path,
    path_stats,
)
from .poly import Poly
from .series import (
    IDENTITY_NAMES,
    ISLAND_GF_FORMS,
    CompatibleTable,
    IdentityReport,
    TruncatedSeries,
    compatible_counts,
    expand_island_gf,
    expand_level0_gf,
    expand_motzkin_gf,
    verify_identity,
)
from .structures import (
    ElementReport,
    IslandDiagram,
    PiPrimeShape,
    PiShape,
    PiStats,
    SecondaryStructure,
    analyze_elements,
    generate_island_diagrams,
    parse_structure,
    pi_stats,
    to_island_diagram,
    to_pi,
    to_pi_prime,
)

__version__ = "0.1.0"

__all__ = [
    "ASYM_TARGETS",
    "AsymptoticReport",
    "CompatibleTable",
    "DominantSingularity",
    "ElementReport",
    "ExactCounts",
    "IDENTITY_NAMES",
    "ISLAND_GF_FORMS",
    "IdentityReport",
    "IslandDiagram",
    "LatticePath",
    "PathKind",
    "PathStats",
    "PiPrimeShape",
    "PiShape",
    "PiStats",
    "Poly",
    "SecondaryStructure",
    "TruncatedSeries",
    "analyze_elements",
    "asym_count",
    "asym_level0",
    "asym_pi",
    "asym_pi_expected",
    "compatible_counts",
    "convergence_report",
    "decode1",
    "decode2",
    "decorate_islands",
    "deflate",
    "encode1",
    "encode2",
    "enumerate_paths",
    "errors",
    "expand_island_gf",
    "expand_level0_gf",
    "expand_motzkin_gf",
    "expected_level0",
    "expected_pi_r0",
    "find_zeta",
    "generate_island_diagrams",
    "parse_path",
    "parse_structure",
    "path_stats",
    "pi_stats",
    "singular_polynomial",
    "to_island_diagram",
    "to_pi",
    "to_pi_prime",
    "verify_identity",
]
