"""Explicit bases for the derivation modules of the cones over the Shi
arrangements of types B and C, with exact certification."""

from .bernoulli import BernoulliKey, Family, UniPoly, bernoulli, homogenize, restrict_z0, rhs, solve_difference
from .derivation import Derivation, apply, basis, euler, phi, phi_grouped, solomon_terao_restriction
from .poly import NotDivisible, Poly, det, elementary_symmetric, exact_divide, substitute
from .rootsystem import Arrangement, LinearForm, defining_poly, positive_roots, shi_cone
from .verifier import (
    Certificate,
    DegreeMismatch,
    MembershipReport,
    Mode,
    NotProportional,
    SaitoCertificate,
    check_membership,
    congruence_check,
    full_verify,
    saito_check,
)

__version__ = "0.1.0"
