"""Regularized interior point method for smooth nonlinear programs in standard form."""
from .barrier import LOG_BARRIER, BarrierFunction, barrier_eval, barrier_value, compute_z
from .baselines import BaselineConfig, bcl_solve, plain_ip_solve
from .errors import *  # noqa: F401,F403
from .kkt import SigmaState, assemble_kkt, factorize, inertia_corrected_factorize, solve
from .model import (
    GeneralNlp,
    NlpProblem,
    PointEval,
    StandardMap,
    check_derivatives,
    evaluate_point,
    reformulate_to_standard,
)
from .outer import (
    RegipConfig,
    SolveReport,
    Status,
    regip_solve,
    safeguard_dual,
    update_barrier,
    update_penalty,
    update_tolerance,
)
from .problems import ProblemRecord, get_problem, list_problems
from .stationarity import KktResiduals, feasibility_residual, is_eps_kkt, kkt_residuals
from .subsolver import SubproblemSpec, SubResult, SubStatus, merit_value, multiplier_estimate, solve_subproblem

__version__ = "0.1.0"
