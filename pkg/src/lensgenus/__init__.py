"""Genus-minimising simple knots in lens spaces: invariants, classification, sweeps."""

from .classify import (conjecture_check, gm_q_set, match_families, reduce_p,
                       vbar_bridge)
from .errors import InvariantError, NotAUnitError, OutOfScopeError, UsageError
from .invariants import (GbarMode, Triple, big_g, f_profile, gbar, genus,
                         is_genus_minimizing, max_abs_v, v_pair)
from .modmath import inv, rep, sigma
from .params import ParamSet, QType, derive_params
from .structure import (consecutive_v_check, mobile_report, theta, xi_sum,
                        z_decompose)

__version__ = "0.1.0"
