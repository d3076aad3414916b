"""Perfect matching complexes of grid and polygonal-tiling graphs: enumeration, discrete Morse pairings and integer homology."""

from .graphs import Graph, GraphError, build_family
from .complexes import SimplicialComplex, perfect_matching_complex, independence_complex
from .homology import reduced_betti, smith_normal_form
from .morse import run_schedule, PairingSchedule

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphError",
    "build_family",
    "SimplicialComplex",
    "perfect_matching_complex",
    "independence_complex",
    "reduced_betti",
    "smith_normal_form",
    "run_schedule",
    "PairingSchedule",
]
