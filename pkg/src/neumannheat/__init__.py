"""Finite-difference laboratory for the heat equation with Neumann boundary
conditions: explicit Euler schemes in 1D/2D, closed-form spectral analysis of
the discrete Laplacian, steady-state solvers for the singular pure-Neumann
problem, and a convergence-order harness."""

from .errors import (CflViolationError, GridMismatchError,
                     IncompatibleProblemError, InstabilityError,
                     QuadratureError, SeriesTruncationError)
from .grid import (Field1D, Field2D, Grid1D, Grid2D, inner, inner2d, mean,
                   mean2d, norm2d, norm_l2, ones, ones2d, project, project2d)
from .spectral import (NeumannLaplacian1D, amplification_bound_check, cfl_ok,
                       eigenpair, eigenvalue, eigenvector, eta,
                       eta_geometric_sum, heat_kernel_spectrum_sum,
                       resolvent_power_sum)
from .exact import (CosineSeries, Gaussian2DProblem, InitialDatum,
                    SmoothFunction, SteadyState1D, companion_w,
                    cosine_coefficients, cosine_mode, custom_datum,
                    decay_envelope, gaussian_2d, hat_function, poly_bump,
                    steady_1d, trig_poly)
from .consistency import l1, l2, l_delta, split_defect
from .scheme1d import (Checkpoint, DiscreteRHS, NonhomogProblem, RunState,
                       build_rhs, check_compatibility, new_run, run_to,
                       solve_steady_iterative, solve_steady_laplace, step)
from .scheme2d import (Problem2D, Rhs2D, Run2D, apply2d, build_rhs2d, cfl2d,
                       new_run2d, run2d_to, solve_steady_2d)
from .harness import (ErrorRecord, ExperimentConfig, SlopeFit,
                      convolution_bound_check, default_config, emit_csv,
                      epsilon_diagnostics, estimate_slope,
                      quadrature_inequality_check, run_convergence)

__version__ = "0.1.0"
