"""Symplectic groups over Hermitian matrix algebras and the coordinate
parametrization of maximal framed surface group representations."""

from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    identity,
    is_invertible,
    is_positive,
    is_symmetric,
    is_unitary,
    lift,
    polar_decompose,
    sample,
    scalar,
    sigma,
    sqrt_positive,
    symmetrized_eigenvalues,
    zeros,
)
from .errors import (
    BadPairing,
    CycleClosureFailure,
    DegenerateLine,
    DescriptorMismatch,
    DisconnectedDomain,
    EulerMismatch,
    InvalidSurface,
    MembershipDrift,
    NotAdapted,
    NotInvertible,
    NotMaximal,
    NotPositive,
    NotPositiveQuadruple,
    NotSymplectic,
    NotTransverse,
    NotUnitary,
    SingularDenominator,
    SizeMismatch,
    Sp2HermError,
    Unreachable,
    UnknownGenerator,
)
from .lines import (
    IsotropicLine,
    act,
    canonical_spectrum,
    is_maximal_triple,
    is_transverse,
    normalize_pair,
    normalize_triple,
    quadruple_invariant,
    triple_invariant,
)
from .parametrization import (
    CoordinateVector,
    FramedRepresentation,
    LocalSystem,
    component_label,
    count_components,
    edge_matrix,
    extract,
    holonomy,
    maximality_margin,
    pairing_matrix,
    sample_coordinates,
    synthesize,
    turn_matrix,
    verify_adapted,
    verify_closure,
    verify_equivariance,
    verify_maximal,
)
from .realizations import (
    ClassicalForm,
    classical_form,
    embed_symplectic,
    is_compact_matrix,
    preserves_form,
)
from .surfaces import (
    BUNDLED_SURFACES,
    FundamentalPolygon,
    GammaGraph,
    SurfaceDescriptor,
    build_gamma,
    build_polygon,
    bundled_surface,
    surface_stats,
)
from .symplectic import (
    SymplecticElement,
    TubePoint,
    is_ksp2,
    is_sp2,
    is_sp2_lie,
    mobius_act,
    omega_form,
    sample_ksp2,
    sample_sp2,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
