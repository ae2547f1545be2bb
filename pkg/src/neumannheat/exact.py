"""Exact-solution oracles: cosine-series solutions of the homogeneous Neumann
heat problem, the catalog of initial data used by the convergence studies, and
the closed-form steady states of the 1D and 2D nonhomogeneous problems.

Series are expressed in the orthonormal cosine basis of L^2(0, L) with the
scaled inner product (1/L) * integral:

    c_0(x) = 1,    c_p(x) = sqrt(2) cos(p pi x / L)   (p >= 1)

so u(t, x) = sum_p alpha_p exp(-p^2 pi^2 t / L^2) c_p(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .errors import QuadratureError, SeriesTruncationError

__all__ = [
    "SmoothFunction", "cosine_mode", "polynomial_function",
    "CosineSeries", "InitialDatum",
    "trig_poly", "poly_bump", "hat_function", "custom_datum",
    "cosine_coefficients", "decay_envelope",
    "SteadyState1D", "steady_1d", "companion_w",
    "Gaussian2DProblem", "gaussian_2d",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SmoothFunction:
    """A real function on [0, L] bundled with analytic derivatives.

    ``derivs[k]`` evaluates the k-th derivative; all callables are vectorized
    over numpy arrays.  Finite-difference fallbacks are deliberately not
    provided: consumers that need derivatives (the consistency-defect
    operators) must receive them analytically.
    """

    derivs: tuple = field(repr=False)

    def __call__(self, x):
        return self.derivs[0](np.asarray(x, dtype=float))

    def deriv(self, k: int, x):
        if not 0 <= k <= self.order:
            raise ValueError(f"derivative order {k} not available (max {self.order})")
        return self.derivs[k](np.asarray(x, dtype=float))

    @property
    def order(self) -> int:
        return len(self.derivs) - 1


def cosine_mode(p: int, L: float, amplitude: Optional[float] = None,
                order: int = 5) -> SmoothFunction:
    """amplitude * cos(p pi x / L) with derivatives; default amplitude is the
    orthonormal one (sqrt(2) for p >= 1, 1 for p = 0)."""
    if p < 0:
        raise ValueError("mode index must be nonnegative")
    if amplitude is None:
        amplitude = 1.0 if p == 0 else _SQRT2
    k0 = p * math.pi / L

    def make(k):
        def dk(x):
            x = np.asarray(x, dtype=float)
            if p == 0:
                return np.full_like(x, amplitude) if k == 0 else np.zeros_like(x)
            return amplitude * k0 ** k * np.cos(k0 * x + k * math.pi / 2)
        return dk

    return SmoothFunction(tuple(make(k) for k in range(order + 1)))


def polynomial_function(coeffs, order: int = 5) -> SmoothFunction:
    """Polynomial sum(coeffs[i] * x^i) with analytic derivatives."""
    p = np.polynomial.Polynomial(np.asarray(coeffs, dtype=float))
    ds = [p]
    for _ in range(order):
        ds.append(ds[-1].deriv())
    return SmoothFunction(tuple(ds))


def _mode_sum(weights: np.ndarray, L: float, k: int, x) -> np.ndarray:
    """k-th x-derivative of sum_p weights[p] * c_p(x), dropping dead modes."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros_like(x_arr)
    if k == 0 and len(weights) > 0:
        out += weights[0]
    live = np.nonzero(np.abs(weights[1:]) > 1e-300)[0] + 1
    if live.size:
        kp = live * math.pi / L
        phases = np.cos(np.outer(kp, x_arr) + k * math.pi / 2)
        out += (_SQRT2 * weights[live] * kp ** k) @ phases
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return out[0]
    return out.reshape(np.shape(x))


@dataclass(frozen=True)
class CosineSeries:
    """Coefficients alpha_p of a heat-flow solution in the cosine basis.

    ``coef_bound = (C, q)`` certifies |alpha_p| <= C / p^q for p beyond the
    stored range and enables tail estimates; without it the series is exact
    (all discarded coefficients are zero).  ``exact_at_zero`` evaluates the
    generating datum pointwise, bypassing truncation at t = 0.
    """

    L: float
    alpha: np.ndarray = field(repr=False)
    exact_at_zero: Optional[Callable] = None
    coef_bound: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", np.asarray(self.alpha, dtype=float))
        if self.alpha.ndim != 1 or self.alpha.size == 0:
            raise ValueError("need a nonempty 1D coefficient array")
        if not self.L > 0:
            raise ValueError("L must be positive")

    @property
    def p_max(self) -> int:
        return self.alpha.size - 1

    def rates(self) -> np.ndarray:
        p = np.arange(self.alpha.size)
        return (p * math.pi / self.L) ** 2

    def weights(self, t: float) -> np.ndarray:
        return self.alpha * np.exp(-self.rates() * t)

    def tail_bound(self, t: float, deriv_order: int = 0) -> float:
        """Bound on the dropped modes of the deriv_order-th derivative at time t."""
        if self.coef_bound is None:
            return 0.0
        C, q = self.coef_bound
        k = deriv_order
        P = self.p_max + 1
        scale = _SQRT2 * C * (math.pi / self.L) ** k
        if t == 0.0:
            if k >= q - 1:
                return math.inf
            # sum_{p >= P} p^(k-q) <= P^(k-q) + P^(k-q+1)/(q-k-1)
            return scale * (float(P) ** (k - q) + float(P) ** (k - q + 1) / (q - k - 1))
        # explicit summation of the dominating terms; they decay like exp(-p^2)
        a = (math.pi / self.L) ** 2 * t
        total = 0.0
        for p in range(P, P + 200000):
            term = float(p) ** (k - q) * math.exp(-a * p * p)
            total += term
            if term < 1e-30:
                return scale * total
        return math.inf

    def evaluate(self, t: float, x):
        """u(t, x); exact for finite series, tail below 1e-13 otherwise."""
        if t < 0:
            raise ValueError(f"time must be nonnegative, got t={t}")
        xv = np.asarray(x, dtype=float)
        if np.any(xv < -1e-12) or np.any(xv > self.L + 1e-12):
            raise ValueError("evaluation point outside [0, L]")
        if t == 0.0 and self.exact_at_zero is not None:
            return self.exact_at_zero(xv)
        if self.tail_bound(t) > 1e-13:
            raise SeriesTruncationError(
                f"stored {self.p_max + 1} modes leave tail {self.tail_bound(t):.2e} at t={t}")
        return _mode_sum(self.weights(t), self.L, 0, x)

    def solution(self, t: float, order: int = 5) -> SmoothFunction:
        """The time-t solution as a SmoothFunction with x-derivatives."""
        for k in range(order + 1):
            if self.tail_bound(t, k) > 1e-12:
                raise SeriesTruncationError(
                    f"derivative order {k} not resolved by {self.p_max + 1} modes at t={t}")
        w = self.weights(t)
        L = self.L
        return SmoothFunction(tuple(
            (lambda k: lambda x: _mode_sum(w, L, k, x))(k) for k in range(order + 1)))

    def l2_norm(self, t: float = 0.0) -> float:
        """Continuous L^2(0, L) norm (scaled by 1/L) via Parseval."""
        w = self.weights(t)
        return math.sqrt(math.fsum(w * w))

    @property
    def mean(self) -> float:
        return float(self.alpha[0])


@dataclass(frozen=True)
class InitialDatum:
    """A catalog initial datum: its cosine series, an exact coefficient rule,
    and (when it exists) an analytically differentiable representative.

    ``smooth_compatible`` records whether the datum has the boundary-compatible
    regularity (zero odd derivatives at both ends through fifth order) under
    which the uniform-in-time first-order error bound is proved; the schemes
    run fine either way.
    """

    name: str
    L: float
    series: CosineSeries
    coefficient_fn: Callable = field(repr=False)
    smooth: Optional[SmoothFunction] = field(default=None, repr=False)
    smooth_compatible: bool = True

    def __call__(self, x):
        return self.series.evaluate(0.0, x)


def trig_poly(amplitudes=(1.0, 1.0, 5.0, -1.0, 2.0, 1.0), L: float = 1.0) -> InitialDatum:
    """Finite combination a_0 + sum_{p>=1} a_p cos(p pi x / L).

    The amplitudes multiply plain cosines, so the orthonormal-basis
    coefficients are alpha_0 = a_0 and alpha_p = a_p / sqrt(2).
    """
    a = np.asarray(amplitudes, dtype=float)
    alpha = a.copy()
    alpha[1:] /= _SQRT2

    def coefficient(p: int) -> float:
        return float(alpha[p]) if p < alpha.size else 0.0

    series = CosineSeries(L, alpha)
    return InitialDatum("trigpoly", L, series, coefficient,
                        smooth=series.solution(0.0), smooth_compatible=True)


def poly_bump(L: float = 1.0, p_max: int = 400) -> InitialDatum:
    """The quartic bump x^2 (L - x)^2: smooth, but its Laplacian is not
    flux-free at the ends, so the uniform-bound hypotheses fail."""

    def coefficient(p: int) -> float:
        if p == 0:
            return L ** 4 / 30.0
        if p % 2 == 1:
            return 0.0
        return -24.0 * _SQRT2 * L ** 4 / (p * math.pi) ** 4

    alpha = np.array([coefficient(p) for p in range(p_max + 1)])
    series = CosineSeries(
        L, alpha,
        exact_at_zero=lambda x: x ** 2 * (L - x) ** 2,
        coef_bound=(24.0 * _SQRT2 * L ** 4 / math.pi ** 4, 4.0),
    )
    smooth = polynomial_function([0.0, 0.0, L ** 2, -2.0 * L, 1.0])
    return InitialDatum("polybump", L, series, coefficient,
                        smooth=smooth, smooth_compatible=False)


def hat_function(width: float = 0.02, L: float = 2.0, p_max: int = 600) -> InitialDatum:
    """Compactly supported triangular bump of half-width ``width`` centered at
    L/2; continuous but not differentiable, hypotheses fail."""
    if not 0 < width <= L / 2:
        raise ValueError("hat half-width must lie in (0, L/2]")

    def coefficient(p: int) -> float:
        if p == 0:
            return width / L
        k = p * math.pi / L
        z = k * width / 2.0
        return (_SQRT2 / L) * math.cos(p * math.pi / 2.0) * width * (math.sin(z) / z) ** 2

    alpha = np.array([coefficient(p) for p in range(p_max + 1)])
    series = CosineSeries(
        L, alpha,
        exact_at_zero=lambda x: np.maximum(1.0 - np.abs(L / 2.0 - x) / width, 0.0),
        coef_bound=(4.0 * _SQRT2 * L / (math.pi ** 2 * width), 2.0),
    )
    return InitialDatum("hat", L, series, coefficient,
                        smooth=None, smooth_compatible=False)


def custom_datum(f: Callable, L: float, p_max: int = 128, tol: float = 1e-12,
                 smooth: Optional[SmoothFunction] = None,
                 smooth_compatible: bool = False) -> InitialDatum:
    """Arbitrary datum; coefficients via adaptive quadrature to ``tol``."""

    def coefficient(p: int) -> float:
        if p == 0:
            val, err = integrate.quad(f, 0.0, L, epsabs=tol, limit=200)
            scale = 1.0 / L
        else:
            val, err = integrate.quad(f, 0.0, L, weight="cos", wvar=p * math.pi / L,
                                      epsabs=tol, limit=200)
            scale = _SQRT2 / L
        if err > 10 * tol + 1e-15:
            raise QuadratureError(
                f"coefficient p={p}: estimated error {err:.2e} above tol {tol:.2e}")
        return scale * val

    alpha = np.array([coefficient(p) for p in range(p_max + 1)])
    series = CosineSeries(L, alpha, exact_at_zero=lambda x: np.asarray(f(x), dtype=float))
    return InitialDatum("custom", L, series, coefficient,
                        smooth=smooth, smooth_compatible=smooth_compatible)


def cosine_coefficients(u0: InitialDatum, p_max: int, tol: float = 1e-12) -> CosineSeries:
    """Expansion coefficients alpha_p = (1/L) int u0 c_p, p = 0..p_max.

    Catalog data use their closed-form rules; custom data integrate to ``tol``.
    """
    if p_max < 0:
        raise ValueError("p_max must be nonnegative")
    alpha = np.array([u0.coefficient_fn(p) for p in range(p_max + 1)])
    return CosineSeries(u0.L, alpha, exact_at_zero=u0.series.exact_at_zero,
                        coef_bound=u0.series.coef_bound)


def decay_envelope(u0_norm: float, t: float, L: float) -> float:
    """Upper bound exp(-pi^2 t / L^2) * u0_norm on the distance of the
    solution from its conserved mean."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    return math.exp(-math.pi ** 2 * t / L ** 2) * u0_norm


class SteadyState1D:
    """The piecewise catalog steady problem on [0, 2]:

        f(x)   = 1 for x <= 1/2, 2x beyond;  flux 1/2 at x=0, -15/4 at x=2,
        u(x)   = -(x - 1/2)^2 / 2            on [0, 1/2],
                 -x^3/3 + x/4 - 1/12         on (1/2, 2],

    which balances exactly (gamma - beta + int f = 0) and has mean -193/384.
    """

    L = 2.0
    beta = 0.5
    gamma = -15.0 / 4.0
    breakpoint = 0.5
    source_integral = 17.0 / 4.0
    mean_value = -193.0 / 384.0

    def source(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= self.breakpoint, 1.0, 2.0 * x)

    def solution(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= self.breakpoint,
                        -((x - 0.5) ** 2) / 2.0,
                        -x ** 3 / 3.0 + x / 4.0 - 1.0 / 12.0)

    def solution_deriv(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x <= self.breakpoint, 0.5 - x, 0.25 - x ** 2)


def steady_1d() -> SteadyState1D:
    return SteadyState1D()


def companion_w(beta: float, gamma: float, L: float) -> SmoothFunction:
    """The zero-mean quadratic with prescribed end fluxes:

        w(x) = ((gamma - beta)/(2L)) x^2 + beta x - ((gamma - beta)/6) L - (beta/2) L
    """
    c2 = (gamma - beta) / (2.0 * L)
    c0 = -(gamma - beta) * L / 6.0 - beta * L / 2.0
    return polynomial_function([c0, beta, c2])


@dataclass(frozen=True)
class Gaussian2DProblem:
    """Manufactured 2D steady state exp(-a(x-x0)^2 - b(y-y0)^2) on
    (0,2) x (0,4), with its source and boundary flux data."""

    alpha: float
    beta_g: float
    x0: float
    y0: float
    Lx: float = 2.0
    Ly: float = 4.0

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta_g > 0):
            raise ValueError("Gaussian widths must be positive")

    def u_inf(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.exp(-self.alpha * (x - self.x0) ** 2 - self.beta_g * (y - self.y0) ** 2)

    def f(self, x, y):
        a, b = self.alpha, self.beta_g
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return (2 * a * (1 - 2 * a * (x - self.x0) ** 2)
                + 2 * b * (1 - 2 * b * (y - self.y0) ** 2)) * self.u_inf(x, y)

    def g1(self, x, y):
        """x-derivative of the steady state (flux data on the vertical sides)."""
        x = np.asarray(x, dtype=float)
        return -2 * self.alpha * (x - self.x0) * self.u_inf(x, y)

    def g2(self, x, y):
        """y-derivative of the steady state (flux data on the horizontal sides)."""
        y = np.asarray(y, dtype=float)
        return -2 * self.beta_g * (y - self.y0) * self.u_inf(x, y)


def gaussian_2d(alpha: float, beta_g: float, x0: float, y0: float) -> Gaussian2DProblem:
    return Gaussian2DProblem(alpha, beta_g, x0, y0)
