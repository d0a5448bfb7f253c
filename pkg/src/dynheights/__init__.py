"""dynheights: dynamical degrees, canonical heights, and lattice dynamics.

A workbench for explicit algebraic dynamical systems over the rationals:
exact spectral radii of pullback actions, nef eigenvector pairs with
certified enclosures, Weil heights on products of projective spaces,
Tate-limit canonical heights for Wehler-type surface automorphisms, and the
Chow-ring degree formulas for endomorphisms of projective bundles over
curves.
"""

from .errors import (
    DegenerateFiber,
    DomainError,
    DynheightsError,
    InvalidInput,
    InvariantViolation,
    PreconditionError,
    ResourceLimit,
)
from .exactreal import (
    IntPolynomial,
    Order,
    RationalInterval,
    RealAlgebraicNumber,
    compare,
    compare_with_rational,
    isolate_real_roots,
    kth_root,
    pow_ran,
    refine,
)
from .heights import (
    ExactHeight,
    MultiProjPoint,
    MultiProjSpace,
    divisor_height,
    enumerate_bounded_points,
    factor_heights,
    h_plus,
)
from .lattice import (
    DivisorClass,
    EigenvectorPair,
    PullbackMap,
    RationalCone,
    TopIntersectionForm,
    basis_change_invariance,
    block_product,
    condition_A,
    condition_B,
    eigenvector_pair,
    hilbert_extension,
    leading_eigenvector_in_cone,
    middle_index_ell,
    spectral_radius,
)
from .bbforms import (
    BeauvilleBogomolovForm,
    induced_top_form,
    isometry_check,
    isotropy_and_bigness_report,
    signature,
)
from .systems import (
    MonomialSystem,
    OrbitRecord,
    PowerSystem,
    ProductSystem,
    WehlerSystem,
    iterate_orbit,
    on_surface_check,
    vieta_other_root,
)
from .canonical import (
    alpha_estimate,
    canonical_forward,
    canonical_pair,
    functional_equation_residual,
    ks_report,
    periodicity_test,
    tate_limit,
)
from .bundles import (
    BundleEndoData,
    ChowRing,
    HNType,
    chow_mul,
    degree_identity_check,
    dichotomy_classify,
    intersection_number,
    nef_generators,
    pullback_action,
    slope_stats,
)

__version__ = "0.1.0"
