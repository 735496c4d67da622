"""weyrlab: exact spectral analysis of matrix pencils and linear relations.

Everything runs over Q(i) with arbitrary-precision rational arithmetic, so
subspace identities, spectra, Weyr characteristics, and perturbation bounds
are all checked bit-exactly rather than numerically.
"""

from .errors import (
    ContainmentError,
    DimensionMismatch,
    NoResolventPointError,
    NotRegularError,
    NotResolventPointError,
    ParseError,
    SingularMatrixError,
    WeyrlabError,
    ZeroPolynomialError,
)
from .scalars import (
    INF,
    ExtendedScalar,
    GaussianRational,
    Infinity,
    format_extended,
    format_scalar,
    gr,
    parse_extended,
    parse_scalar,
)
from .linalg import (
    Matrix,
    Subspace,
    column_space,
    contains,
    map_image,
    map_preimage,
    matrix_inverse,
    null_space,
    outer_product,
    quotient_dim,
    rref,
    subspace_intersect,
    subspace_sum,
    unit_vector,
    vector,
)
from .polynomials import (
    Polynomial,
    minor_gcd_poly,
    pencil_det_poly,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
)
from .gaussian_roots import gaussian_rational_roots, gaussian_sqrt
from .relations import LinearRelation, PointSpectrum, WeyrTable
from .pencils import CanonicalSpec, OperatorPencil, SpectrumReport, jordan_block
from .perturbations import (
    PerturbationSpec,
    SuiteConfig,
    TrialResult,
    VerificationReport,
    Violation,
    apply_perturbation,
    matching_representation_distance,
    random_trial,
    relation_distance,
    run_suite,
    weyr_delta_check,
)

__version__ = "0.1.0"
