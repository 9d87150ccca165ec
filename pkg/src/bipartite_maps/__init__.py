"""Regular embeddings of complete bipartite graphs K_{n,n}.

Builds every regular orientable embedding of ``K_{n,n}`` from its isobicyclic
group data, traces the resulting maps, and counts them three ways (closed
formula, explicit construction, brute-force rotation systems).
"""

from .census import census_report, nu_constructive, nu_formula, table1_check
from .errors import BipartiteMapsError
from .labelling import IsoLabelling, enumerate_labellings, labelling_from_triple, triple_from_labelling
from .mapreal import predicted_invariants, realize_map, trace_faces

__version__ = "0.1.0"

__all__ = [
    "BipartiteMapsError",
    "IsoLabelling",
    "census_report",
    "enumerate_labellings",
    "labelling_from_triple",
    "nu_constructive",
    "nu_formula",
    "predicted_invariants",
    "realize_map",
    "table1_check",
    "trace_faces",
    "triple_from_labelling",
]
