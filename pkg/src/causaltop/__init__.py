"""Causal sites, framework duality and the co-compact topology, computed exactly at finite scale."""

from .framework import (
    Framework,
    FrameworkMorphism,
    IsomorphismWitness,
    check_morphism,
    double_dual_isomorphism,
    dualize,
    frameworks_isomorphic,
    is_T0,
    quotient,
)
from .minkowski import Cone, MinkVec, causal_le, chron_lt, classify, diamond_contains, eta, in_cone
from .region import (
    Block,
    NullPoint,
    Region,
    from_null,
    region_contains_point,
    region_cutting,
    region_from_diamonds,
    region_intersect,
    region_precedes,
    region_subset,
    region_union,
    to_null,
)
from .region_site import refine_and_enumerate, separate, validate_region_site
from .site import (
    CausalSite,
    find_cutting,
    maximal_centered_families,
    synthesize_topology,
    validate_causal_site,
)
from .topology import (
    FiniteTopology,
    check_fip_compactness,
    de_groot_dual,
    dual_iteration,
    generate_from_closed_subbase,
    is_superconnected,
    is_T1,
    restrict,
    specialization,
)

__version__ = "0.1.0"
