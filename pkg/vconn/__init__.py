"""Root package of **vconn**
(vertex connectivity via maxflow reductions, sketches and isolating cuts)

.. include:: ./README.md
"""

__version__ = "0.3.0"

# A parsimonious list of imports for interactive use
from .directed import directed_vertex_connectivity
from .driver import vertex_connectivity
from .graphs import (COMPLETE, DirectedGraph, UndirectedGraph, VertexCut, load_graph,
                     validate_vertex_cut)
from .maxflow import st_vertex_connectivity
from .oracle import oracle_directed, oracle_vertex_connectivity
from .vc_config import RunConfig, rc
