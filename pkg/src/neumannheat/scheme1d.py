"""Explicit Euler time stepping for the 1D Neumann heat problem, the discrete
right-hand side with its mean correction, and the two steady-state solvers
(long-time iteration and shifted direct solve).

The update is v <- v + dt * (A v + b), with A the matrix-free Neumann stencil
and b assembled so that its discrete mean vanishes exactly for balanced
problems; the constant mode is then conserved and the iteration converges to
the unique steady state with the initial datum's mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from . import _kernels
from .errors import (CflViolationError, IncompatibleProblemError,
                     InstabilityError, QuadratureError)
from .grid import Field1D, Grid1D, mean
from .spectral import NeumannLaplacian1D, cfl_ok

__all__ = [
    "NonhomogProblem", "DiscreteRHS", "RunState", "Checkpoint",
    "new_run", "step", "run_to", "build_rhs", "check_compatibility",
    "solve_steady_iterative", "solve_steady_laplace", "laplace_shift_gap_bound",
    "SteadySolve",
]

# float drift in the constant mode is re-zeroed at this step cadence
ANCHOR_INTERVAL = 4096


@dataclass(frozen=True)
class NonhomogProblem:
    """Source f with its exact integral over [0, L], plus end fluxes.

    ``f_integral`` may be omitted for a quadrature fallback (tolerance 1e-12);
    catalog problems pass the closed form.
    """

    f: Callable
    beta: float
    gamma: float
    L: float
    f_integral: Optional[float] = None

    def source_integral(self) -> float:
        if self.f_integral is not None:
            return self.f_integral
        val, err = integrate.quad(self.f, 0.0, self.L, epsabs=1e-12, limit=200)
        if err > 1e-10:
            raise QuadratureError(f"source integral error estimate {err:.2e}")
        return val


@dataclass(frozen=True)
class DiscreteRHS:
    """Assembled forcing vector b and the uniform correction r folded into it."""

    b: Field1D
    r: float


def check_compatibility(p: NonhomogProblem) -> float:
    """Flux/source balance residual gamma - beta + int_0^L f (zero iff a
    steady state exists)."""
    return p.gamma - p.beta + p.source_integral()


def build_rhs(p: NonhomogProblem, g: Grid1D) -> DiscreteRHS:
    """b = sampled f + end-flux terms + r * 1, with r chosen so that the
    discrete mean of b vanishes exactly when the problem balances:

        r = (int_0^L f - dx * sum_j f(x_j)) / (J * dx)
    """
    x = g.nodes()
    fx = np.asarray(p.f(x), dtype=float)
    if fx.shape != x.shape:
        fx = np.array([float(p.f(xj)) for xj in x])
    r = (p.source_integral() - g.dx * math.fsum(fx)) / (g.J * g.dx)
    b = fx + r
    b[0] -= p.beta / g.dx
    b[-1] += p.gamma / g.dx
    return DiscreteRHS(Field1D(g, b), r)


@dataclass
class RunState:
    """One explicit Euler trajectory; mutated in place by `step`."""

    grid: Grid1D
    dt: float
    n: int
    values: np.ndarray = field(repr=False)
    rhs: Optional[DiscreteRHS] = None
    mean0: float = 0.0

    @property
    def t(self) -> float:
        return self.n * self.dt

    @property
    def field(self) -> Field1D:
        return Field1D(self.grid, self.values.copy())


def new_run(g: Grid1D, dt: float, v0: Field1D, rhs: Optional[DiscreteRHS] = None) -> RunState:
    if v0.grid != g:
        raise ValueError("initial field lives on a different grid")
    if rhs is not None and rhs.b.grid != g:
        raise ValueError("right-hand side lives on a different grid")
    if not cfl_ok(g, dt):
        raise CflViolationError(
            f"dt/dx^2 = {dt / g.dx ** 2:.6g} exceeds 1/2 (J={g.J})")
    vals = v0.values.copy()
    return RunState(g, dt, 0, vals, rhs, math.fsum(vals) / g.J)


def step(st: RunState) -> RunState:
    """One update v <- v + dt*(A v [+ b]); O(J), one buffer swap."""
    c = st.dt / st.grid.dx ** 2
    if st.rhs is None:
        st.values = _kernels.advance_1d(st.values, c, 1)
    else:
        st.values = _kernels.advance_1d_rhs(st.values, c, st.dt * st.rhs.b.values, 1)
    st.n += 1
    return st


def _advance_to(st: RunState, n_target: int) -> None:
    """Advance in blocks, re-zeroing constant-mode float drift at global step
    counts divisible by ANCHOR_INTERVAL (so results do not depend on how a run
    is split into checkpoints)."""
    c = st.dt / st.grid.dx ** 2
    dtb = None if st.rhs is None else st.dt * st.rhs.b.values
    while st.n < n_target:
        boundary = ((st.n // ANCHOR_INTERVAL) + 1) * ANCHOR_INTERVAL
        n_stop = min(n_target, boundary)
        k = n_stop - st.n
        if dtb is None:
            st.values = _kernels.advance_1d(st.values, c, k)
        else:
            st.values = _kernels.advance_1d_rhs(st.values, c, dtb, k)
        st.n = n_stop
        if st.n % ANCHOR_INTERVAL == 0:
            st.values += st.mean0 - math.fsum(st.values) / st.grid.J
    if not np.all(np.isfinite(st.values)):
        raise InstabilityError(f"non-finite values at step {st.n}")


@dataclass(frozen=True)
class Checkpoint:
    t_target: float
    t_realized: float
    n: int
    field: Field1D


def run_to(st: RunState, checkpoints) -> list[Checkpoint]:
    """Record the state at n = round(t/dt) for each target time.

    Targets must be nondecreasing and not behind the current time; the
    realized time n*dt is reported alongside (it differs from the target when
    t is not a step multiple).
    """
    targets = list(checkpoints)
    if not targets:
        raise ValueError("need at least one checkpoint")
    if any(b < a for a, b in zip(targets, targets[1:])):
        raise ValueError("checkpoints must be nondecreasing")
    out = []
    for t in targets:
        n_rec = round(t / st.dt)
        if n_rec < st.n:
            raise ValueError(f"checkpoint t={t} rounds behind the current step {st.n}")
        _advance_to(st, n_rec)
        out.append(Checkpoint(t, st.t, st.n, st.field))
    return out


@dataclass(frozen=True)
class SteadySolve:
    field: Field1D
    iterations: int
    residual: float
    converged: bool


def _residual(g: Grid1D, values: np.ndarray, b: np.ndarray) -> float:
    op = NeumannLaplacian1D(g)
    resid = op.apply(Field1D(g, values)).values + b
    return math.sqrt(math.fsum(resid * resid) / g.J)


def solve_steady_iterative(p: NonhomogProblem, g: Grid1D, dt: float, v0: Field1D,
                           tol: float = 1e-10, max_steps: int = 50_000_000,
                           check_every: int = 64) -> SteadySolve:
    """Run the Euler iteration until the residual ||A v + b|| drops below
    ``tol``; the constant mode stays at the initial datum's mean.

    An unbalanced right-hand side would drift linearly and never converge, so
    it is rejected up front.
    """
    rhs = build_rhs(p, g)
    if abs(mean(rhs.b)) > 1e-10:
        raise IncompatibleProblemError(
            f"discrete mean of b is {mean(rhs.b):.3e}; steady iteration would drift")
    st = new_run(g, dt, v0, rhs)
    res = _residual(g, st.values, rhs.b.values)
    stagnant = 0
    while res > tol and st.n < max_steps:
        _advance_to(st, min(st.n + check_every, max_steps))
        new_res = _residual(g, st.values, rhs.b.values)
        # the residual decays geometrically until the rounding floor; once it
        # stops improving the requested tol is unreachable
        stagnant = stagnant + 1 if new_res > res * (1.0 - 1e-9) else 0
        res = new_res
        if stagnant >= 10:
            break
    return SteadySolve(st.field, st.n, res, res <= tol)


def solve_steady_laplace(p: NonhomogProblem, g: Grid1D, s: float) -> Field1D:
    """Direct solve of the shifted system (s*Id - A) v = b.

    The shift makes the singular Neumann system definite; the solution has
    zero discrete mean and approaches the zero-mean steady state at rate O(s).
    Symmetric tridiagonal elimination without pivoting (the matrix is SPD).
    """
    if not s > 0:
        raise ValueError(f"shift must be positive, got s={s}")
    rhs = build_rhs(p, g)
    if abs(mean(rhs.b)) > 1e-10:
        raise IncompatibleProblemError(
            f"discrete mean of b is {mean(rhs.b):.3e}")
    J = g.J
    inv_dx2 = 1.0 / g.dx ** 2
    diag = np.full(J, s + 2.0 * inv_dx2)
    diag[0] = diag[-1] = s + inv_dx2
    off = -inv_dx2
    # Thomas elimination
    cp = np.empty(J - 1)
    dp = np.empty(J)
    b = rhs.b.values
    dp[0] = diag[0]
    for i in range(1, J):
        cp[i - 1] = off / dp[i - 1]
        dp[i] = diag[i] - off * cp[i - 1]
    y = np.empty(J)
    y[0] = b[0]
    for i in range(1, J):
        y[i] = b[i] - cp[i - 1] * y[i - 1]
    v = np.empty(J)
    v[-1] = y[-1] / dp[-1]
    for i in range(J - 2, -1, -1):
        v[i] = (y[i] - off * v[i + 1]) / dp[i]
    # the kernel direction amplifies the float residue of mean(b) by 1/s;
    # re-anchor it (this perturbs the residual by only s * mean(v) = mean(b))
    v -= math.fsum(v) / J
    return Field1D(g, v)


def laplace_shift_gap_bound(s: float, b_norm: float, L: float) -> float:
    """Uniform-in-J bound s * L^4 / pi^4 * ||b|| on the distance between the
    shifted solve and the zero-mean steady state."""
    return s * L ** 4 / math.pi ** 4 * b_norm
