"""m-butterfly representations of knots and links.

A butterfly is a planar map with one antipodally anchored trunk per face;
folding each face along its trunk turns the ball into the 3-sphere and the
trunks into a link.  This package converts between butterflies and bridge
diagrams, applies trunk-reducing moves, and certifies results with a
Kauffman-bracket oracle.
"""

from .codecs import emit_btf, emit_gauss, emit_pd, parse_btf, parse_pd
from .convert import (
    BridgeDiagram,
    bridge_decompose,
    butterfly_to_link,
    link_to_butterfly,
    preprocess_diagram,
)
from .core import (
    ButterflyDiagram,
    Trunk,
    butterfly_isomorphic,
    classify_vertices,
    gamma_graph,
    isomorphism_kind,
    link_components,
    make_rational_butterfly,
    mirror_butterfly,
    smooth_plain_vertices,
)
from .diagram import LinkDiagram
from .moves import (
    MoveRecord,
    eliminate_e_vertices,
    is_simple_trunk,
    reduce_to_bridges,
    trunk_expand,
    trunk_reduce,
)
from .planar_map import PlanarMap, add_edge_in_face, build_map, delete_edge, smooth_bivalent
from .verify import (
    Fingerprint,
    check_gamma_claims,
    fingerprint,
    fingerprints_equal,
    kauffman_bracket,
    quotient_cell_counts,
    validate_butterfly,
)

__version__ = "0.1.0"
