"""Exact tools for real Enriques surfaces: integral lattices with involutions,
(Z/2)^2-actions on quadrics, and the Horikawa model space."""

from .involution import (
    ExtendedInvolution,
    PlaneType,
    RealityVerdict,
    classify_plane,
    delta,
    find_plane_I0w2,
    find_primitive_isotropic,
    make_involution,
    pencil_reality,
    reduce_by_reflections,
)
from .lattice import (
    Isometry,
    Lattice,
    direct_sum,
    discriminant_form,
    discriminant_group,
    enriques_lattice,
    is_even,
    isometry_search,
    max_even_sublattice,
    reflect_root,
    signature,
    standard_lattice,
)
from .quadric import (
    ActionReport,
    QuadricAction,
    Sigma2Action,
    canonical_action,
    classify_action,
    classify_sigma2_action,
    induced_h2_action,
)

__version__ = "0.1.0"

__all__ = [
    "ActionReport",
    "ExtendedInvolution",
    "Isometry",
    "Lattice",
    "PlaneType",
    "QuadricAction",
    "RealityVerdict",
    "Sigma2Action",
    "canonical_action",
    "classify_action",
    "classify_plane",
    "classify_sigma2_action",
    "delta",
    "direct_sum",
    "discriminant_form",
    "discriminant_group",
    "enriques_lattice",
    "find_plane_I0w2",
    "find_primitive_isotropic",
    "induced_h2_action",
    "is_even",
    "isometry_search",
    "make_involution",
    "max_even_sublattice",
    "pencil_reality",
    "reduce_by_reflections",
    "reflect_root",
    "signature",
    "standard_lattice",
]
