"""Classification of involution quotients of minimal surfaces with p_g = q = 0."""

from .arith import CurveClass, adjunction_degree, blowdown_pushforward, double_cover_pullback, halfbranch_genus, hodge_admissible
from .branch import BranchConfig, component_candidates, enumerate_branch_configs
from .classify import classify
from .enriques import enriques_filter, enriques_possible
from .profile import allowed_k, is_bicanonical_composed, quotient_profile
from .rules import apply_exclusions, builtin_rules

__version__ = "0.1.0"
