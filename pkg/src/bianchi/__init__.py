"""Bounds and exact computations for Swan's number of Bianchi groups."""

from .bounds import BoundsReport, SurdValue, bounds_report, lower_bound, lower_witness, max_proper_divisor, upper_bound, verify_uncovered
from .diophantine import CFState, cf_expand, dirichlet_pair, first_convergent_below
from .jacobsthal import JacobsthalWitness, SievePattern, big_j, little_j, fixed_point_j
from .qfield import AlgInt, Disc, FieldElem, Ideal, bezout_solve, is_coprime, is_principal, is_singular, singular_points
from .swan import FloorFace, Hemisphere, SwanResult, candidate_hemispheres, covers, emit_generators, floor_envelope, height_transform, swan_number

__version__ = "0.1.0"
