"""Oriented chain complexes, prism homotopies, Smith normal form homology and pseudomanifold gluing."""
from __future__ import annotations

__version__ = "0.1.0"

from .chains import (
    Chain,
    NotSubcomplex,
    OrientedClass,
    SimplicialComplex,
    boundary,
    is_cycle_oriented,
    orient_normalize,
    project_to_oriented,
    subcomplex_filter,
)
from .gluing import (
    BoundaryMismatch,
    CobordismData,
    FacePairing,
    FaceSlot,
    GluedComplex,
    GluingError,
    InconsistentAttachment,
    NotACycle,
    build_cobordism,
    check_phi_psi_identity,
    extract_cobordism,
    extract_face_pairing,
    fundamental_cycle,
    glue,
)
from .homology import HomologyGroup, homology, relative_homology, verify_mv_vanishing
from .simplex import Perm, RegionSpec, region_contains
from .smoothing import BumpSpec, SmoothingMap, eta, phi, phi_tilde
from .snf import IntegerMatrix, smith_normal_form

__all__ = [name for name in dir() if not name.startswith("_")]
