"""Finite simplicial covers, nerves, carriers and exact nerve-theorem checks."""

from .carrier import (
    B_carrier,
    Carrier,
    I_carrier,
    S_carrier,
    canonical_nerve_map,
    carried_map_via_cones,
    compose,
    extend_carried_map,
    identity_carrier,
    invert,
    is_carried,
    is_carried_by_K,
    is_weakly_carried,
    validate_carrier,
)
from .complex import (
    Bary,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    complexes_isomorphic,
    from_facets,
    open_star,
    barycentric_star,
)
from .cover import (
    Cover,
    Mode,
    barycentric_star_cover,
    check_regularity,
    make_cover,
    nerve,
    open_star_cover,
)
from .homology import HomologyProfile, homology, is_quasi_iso
from .homotopy import (
    contiguity_chain,
    contiguous,
    g_close,
    verify_n_nerve_theorem,
    verify_nerve_theorem,
)
from .matrix import IntMatrix, smith_normal_form
from .verdict import Check, MalformedInput, Verdict

__version__ = "0.1.0"
