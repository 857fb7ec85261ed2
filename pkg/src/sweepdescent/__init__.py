"""Sublevel-set sweeping flows for quasiconvex functions.

Computes geometric and steepest descent curves by catching-up time stepping
of the moving sublevel sets, regularizes quasiconvex functions through
max-convolution with a ball indicator, and verifies the trajectory and
regularization properties the construction relies on.
"""

__version__ = "0.1.0"

from .errors import (BisectionFailure, ConfigError, DegenerateDirection,
                     DegenerateNormal, DomainError, EmptySample, GridTooCoarse,
                     LevelUnderflow, MissingConstants, NonConvergence,
                     OutOfReach, ReverseRefused, SweepDescentError, ThetaGuard)
from .functions import (GaugeFunction, LocalizedFunction, NormFunction,
                        QuasiconvexFunction, SlopeEstimate, TubeFunction,
                        aze_corvellec_check, check_H2_region, get_function,
                        is_critical, limiting_slope, localize, slope,
                        slope_values)
from .geometry import (BallSet, BoundarySample, ConvexSetOracle, CuttingPlaneSet,
                       DilatedSet, FullSpaceSet, IntersectionSet, TwoBallHullSet,
                       dilate, generic_projection_cutting_plane,
                       hausdorff_distance, outward_normal, outward_normals,
                       project_convex, sample_boundary)
from .regularization import (ProxRadiusEstimate, RegularizedFunction,
                             base_point, complement_projection,
                             eval_regularized, prox_radius_estimate,
                             regularize, semigroup_check,
                             slope_inequality_check)
from .sweeping import (FlowMap, SweepingConfig, Trajectory, flow_map,
                       forward_catching_up, forward_catching_up_batch,
                       invert_flow_check, reverse_catching_up,
                       trajectory_to_csv)
from .verification import (CheckResult, DiagnosticsReport,
                           hoffmann_localization_check, membership_U_epsilon,
                           probe_steepest_descent, run_verification_suite,
                           verify_H1_H3, verify_moving_map_lipschitz)
