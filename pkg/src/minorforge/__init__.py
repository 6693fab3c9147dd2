"""Exact realizability of prescribed principal minors for symmetric
matrices over the integers, the rationals, and prime fields, with the full
surrounding toolkit: Rayleigh differences, exact polynomial square roots,
the unimodular-substitution group action, hyperdeterminant orbit equations,
squared-Pluecker membership, and multiaffine determinantal representations.
"""

from .errors import (
    DegenerateOrbitError,
    InputError,
    InternalInconsistencyError,
    MinorForgeError,
    NoRepresentationError,
    RingMismatchError,
    UnsupportedRingError,
)
from .rings import GF, QQ, ZZ, PrimeField, Ring, ring_from_string
from .multipoly import (
    MultiPoly,
    P1Point,
    affine_point,
    divide_exact,
    grid_is_zero,
    infinity_point,
    poly_adjugate,
    poly_det,
    projective_line,
)
from .squares import SquareWitness, discriminant, discriminant_pair, poly_sqrt, rayleigh_delta
from .minor_map import (
    Failure,
    MembershipCertificate,
    MinorVector,
    RescaleResult,
    SymMatrix,
    decide_membership_delta,
    det,
    determinantal_pencil,
    factor_blocks,
    matrix_rank,
    minor_polynomial,
    principal_minors,
    reconstruct,
    sl2_rescale_check,
    vector_from_polynomial,
)
from .group_action import (
    GroupElement,
    SL2Element,
    act_on_minor_vector,
    act_on_poly,
    compose,
    identity_element,
    p1_to_sl2,
    permutation_element,
    sl2_identity,
    translation_element,
)
from .hyperdet import (
    HypdetReport,
    OrbitEquationId,
    decide_membership_hypdet,
    evaluate_orbit_equation,
    evaluation_points,
    f3_conditions,
    f3_search,
    hypdet_222,
    orbit_equation_ids,
)
from .grassmann import (
    DetRep,
    PluckerSquareVector,
    expand_detrep,
    gr2_membership,
    multiaffine_detrep,
    squared_plucker,
    verify_detrep,
)

__version__ = "0.1.0"
