"""Exact rational LP, linear algebra and the hull / hemisphere predicates."""
from .config import InputError, PointConfig, format_rat, parse_rat
from .linalg import independent_columns, rank, sparse_rank
from .lp import EQ, GE, GT, LPInputError, LPWitness, lp_feasible, lp_optimize, verify_witness
from .predicates import (
    cones_meet_nontrivially,
    covers_sphere,
    in_conv,
    in_interior,
    in_relint,
    lineality_space,
    members,
    open_hemis_intersect,
    span_rank,
)
