"""Regular graph states: constructions, local-Clifford reductions and rank-width simulation.

The package builds k-regular graphs, rewrites them with local complementation
and vertex deletion, evaluates measurement statistics of the corresponding
graph states after single-qubit rotations, and computes rank (entanglement)
width with a witness decomposition that drives a width-exponential simulator.
"""

from __future__ import annotations

from .complete import probability_complete
from .constructions import ConstructionError, build_double_torus, build_hard_family, build_regular_easy
from .graph import Bipartition, Graph, GraphError, complement, complete_graph, cut_matrix, make_graph
from .kernels import BACKEND
from .rankdp import marginal_probability, probability_via_decomposition, sample_via_chain
from .statevector import LocalRotations, OracleLimitError, probability
from .transform import ReductionCertificate, delete_vertex, duality_reduction, local_complement
from .width import RankDecomposition, cut_rank, entanglement_width, exact_rank_width

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Bipartition",
    "ConstructionError",
    "Graph",
    "GraphError",
    "LocalRotations",
    "OracleLimitError",
    "RankDecomposition",
    "ReductionCertificate",
    "build_double_torus",
    "build_hard_family",
    "build_regular_easy",
    "complement",
    "complete_graph",
    "cut_matrix",
    "cut_rank",
    "delete_vertex",
    "duality_reduction",
    "entanglement_width",
    "exact_rank_width",
    "local_complement",
    "make_graph",
    "marginal_probability",
    "probability",
    "probability_complete",
    "probability_via_decomposition",
    "sample_via_chain",
]
