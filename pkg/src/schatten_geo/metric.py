"""Metric geometry of the unitary group under Schatten p-norms.

Short curves are one-parameter translates u e^{tz}; the rectifiable distance
between unitaries is the p-norm of the principal logarithm of u*v.  This
module provides geodesic segments, discretized curves and their lengths, the
fixed-endpoint minimality experiment, the first-variation identity check,
the convexity profile of the powered distance along a geodesic, and the
uniform-convexity inequalities (Clarkson, weak semi-parallelogram, geodesic
family bound) with their admissibility preconditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .expcalc import f_ad_inverse_apply, g_bound, hessian_H, hessian_Q
from .linalg import (
    as_square,
    exp_skew,
    matrix_from_json,
    matrix_to_json,
    schatten_norm,
    unitary_log,
    _validate_p,
)
from .rng import random_skew, substream

# Chordal segments with eigenphases this close to pi are branch-ambiguous.
PHASE_GUARD = 1e-8


def gauss_legendre_01(nodes: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    return (x + 1) / 2, w / 2


@dataclass
class GeodesicSegment:
    """One-parameter curve t -> base * exp(t * velocity) on an interval."""

    base: np.ndarray
    velocity: np.ndarray
    interval: tuple[float, float] = (0.0, 1.0)
    _phases: np.ndarray = field(init=False, repr=False)
    _frame: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.base = as_square(self.base)
        self.velocity = as_square(self.velocity)
        h = -1j * self.velocity
        self._phases, self._frame = np.linalg.eigh((h + h.conj().T) / 2)

    def point(self, t: float) -> np.ndarray:
        v = self._frame
        return self.base @ ((v * np.exp(1j * t * self._phases)) @ v.conj().T)

    def length(self, p) -> float:
        t0, t1 = self.interval
        return abs(t1 - t0) * schatten_norm(self.velocity, p)


@dataclass
class DiscretizedCurve:
    """Strictly increasing time grid plus matrix samples of equal dimension."""

    times: np.ndarray
    samples: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        if self.times.ndim != 1 or len(self.times) < 2:
            raise ValueError("need at least two time samples")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        if self.samples.ndim != 3 or self.samples.shape[0] != len(self.times):
            raise ValueError("samples must be a stack aligned with times")
        if self.samples.shape[1] != self.samples.shape[2]:
            raise ValueError("samples must be square matrices")

    @property
    def dim(self) -> int:
        return self.samples.shape[1]

    @classmethod
    def from_callable(cls, fn, n_samples: int, t0: float = 0.0, t1: float = 1.0):
        times = np.linspace(t0, t1, n_samples + 1)
        return cls(times, np.array([fn(t) for t in times]))

    def to_json(self) -> dict:
        return {
            "times": [float(t) for t in self.times],
            "samples": [matrix_to_json(s) for s in self.samples],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["times"], np.array([matrix_from_json(s) for s in obj["samples"]]))


def distance_p(u, v, p) -> float:
    """Geodesic distance: the p-norm of the principal logarithm of u*v."""
    u, v = as_square(u), as_square(v)
    return schatten_norm(unitary_log(u.conj().T @ v), p)


def _segment_phases(samples: np.ndarray) -> np.ndarray:
    """Eigenphases of consecutive sample products, shape (N, n).

    Raises if any phase is within PHASE_GUARD of pi: the chordal logarithm
    is branch-ambiguous there and the grid must be refined.
    """
    prods = np.conj(np.swapaxes(samples[:-1], -1, -2)) @ samples[1:]
    phases = np.angle(np.linalg.eigvals(prods))
    if np.max(np.abs(phases), initial=0.0) >= np.pi - PHASE_GUARD:
        raise ValueError(
            "consecutive samples are a half-turn apart (||log|| >= pi); "
            "refine the discretization"
        )
    return phases


def _phase_norms(phases: np.ndarray, p) -> np.ndarray:
    p = _validate_p(p)
    if p == np.inf:
        return np.max(np.abs(phases), axis=-1)
    return np.sum(np.abs(phases) ** p, axis=-1) ** (1.0 / p)


def curve_length(curve: DiscretizedCurve, p) -> float:
    """Chordal-geodesic length of a discretized unitary curve.

    Sums the short-geodesic distances between consecutive samples; second
    order accurate under grid refinement, and a lower bound for the length
    of any smooth curve through the samples.
    """
    return float(np.sum(_phase_norms(_segment_phases(curve.samples), p)))


def discretization_tolerance(n_segments: int) -> float:
    """Length tolerance 10/N^2 of the chordal rule on N segments."""
    return 10.0 / n_segments**2


def minimality_experiment(z, trials: int, amplitude: float, n_samples: int, p,
                          seed: int = 0) -> dict:
    """Compare fixed-endpoint competitors of t -> e^{tz} against its length.

    Competitors are gamma(t) = e^{a(t)} e^{tz} with a(t) = amplitude *
    sin(pi t) * m for random unit-p-norm skew-Hermitian m, so the endpoints
    are pinned exactly.  Reports the minimal excess length over all trials;
    the one-parameter curve is shortest whenever ||z|| <= pi, so the excess
    should not drop below the discretization tolerance.
    """
    z = as_square(z)
    n = z.shape[0]
    z_inf = schatten_norm(z, np.inf)
    if z_inf > np.pi:
        raise ValueError(f"||z|| = {z_inf:.4f} > pi: the segment need not be minimal")
    z_len = schatten_norm(z, p)

    times = np.linspace(0.0, 1.0, n_samples + 1)
    h = -1j * z
    theta_z, v_z = np.linalg.eigh((h + h.conj().T) / 2)
    base = np.einsum("ij,tj,kj->tik", v_z, np.exp(1j * np.outer(times, theta_z)),
                     v_z.conj())

    bumps = amplitude * np.sin(np.pi * times)
    excesses = np.empty(trials)
    for trial in range(trials):
        rng = substream(seed, "minimality", trial)
        m = random_skew(rng, n, norm=1.0, p=p)
        hm = -1j * m
        theta_m, v_m = np.linalg.eigh((hm + hm.conj().T) / 2)
        pert = np.einsum("ij,tj,kj->tik", v_m,
                         np.exp(1j * np.outer(bumps, theta_m)), v_m.conj())
        gamma = pert @ base
        excesses[trial] = float(np.sum(_phase_norms(_segment_phases(gamma), p))) - z_len

    tol = discretization_tolerance(n_samples)
    return {
        "check": "minimality",
        "params": {"n": n, "p": p, "amplitude": amplitude, "n_samples": n_samples,
                   "z_norm_p": z_len, "z_norm_inf": z_inf},
        "worst_gap": float(np.min(excesses)),
        "violations": int(np.sum(excesses < -tol)),
        "trials": trials,
        "seed": seed,
    }


def first_variation_check(family, p, ds: float = 1e-3, dt: float = 1e-4,
                          nodes: int = 64) -> tuple[float, float]:
    """Derivative of the p-energy of a curve family versus its closed form.

    ``family(s, t)`` must return a unitary, smooth in both variables on a
    neighborhood of s = 0, t in [0, 1].  Returns (lhs, rhs) where lhs is the
    centred difference in s of F_p(gamma_s) = int ||d/dt gamma_s||_p^p dt and
    rhs evaluates the boundary-minus-integral expression

        dF/ds = p (-1)^(p/2) [ Tr(v^{p-1} w) |_{t=0}^{t=1}
                               - int_0^1 Tr( d/dt(v^{p-1}) w ) dt ]

    with v = gamma* dgamma/dt and w = gamma* dgamma/ds at s = 0.
    """
    p = _validate_p(p)
    x, wts = gauss_legendre_01(nodes)

    def ddt(s, t, h=dt):
        return (family(s, t + h) - family(s, t - h)) / (2 * h)

    def energy(s):
        vals = [schatten_norm(ddt(s, t), p) ** p for t in x]
        return float(np.dot(wts, vals))

    lhs = (energy(ds) - energy(-ds)) / (2 * ds)

    def v_at(t):
        return family(0.0, t).conj().T @ ddt(0.0, t)

    def w_at(t):
        return family(0.0, t).conj().T @ (family(ds, t) - family(-ds, t)) / (2 * ds)

    def vpow(t):
        return np.linalg.matrix_power(v_at(t), p - 1)

    def boundary_term(t):
        return float(np.trace(vpow(t) @ w_at(t)).real)

    integrand = []
    for t in x:
        dvp = (vpow(t + dt) - vpow(t - dt)) / (2 * dt)
        integrand.append(float(np.trace(dvp @ w_at(t)).real))
    integral = float(np.dot(wts, integrand))

    boundary = boundary_term(1.0) - boundary_term(0.0)
    sign = (-1) ** (p // 2)
    rhs = p * sign * (boundary - integral)
    return lhs, rhs


@dataclass
class ConvexityProfile:
    """Powered-distance profile f(s) = d_p(u, beta(s))^p along a geodesic.

    Carries the closed-form first and second derivatives (Hessian form),
    the curvature radius R_s^2 and its sine lower bound for f'', local
    finite-difference derivatives, and degeneracy / violation flags.
    """

    s_grid: np.ndarray
    f_values: np.ndarray
    f_prime: np.ndarray
    f_second: np.ndarray
    r_squared: np.ndarray
    lower_bounds: np.ndarray
    fd_first: np.ndarray
    fd_second: np.ndarray
    wdot_mismatch: np.ndarray
    degenerate: np.ndarray
    violations: int
    worst_gap: float


def convexity_profile(u, beta: GeodesicSegment, grid: int, p,
                      fd_step: float = 1e-3, tol: float = 1e-6) -> ConvexityProfile:
    """Profile the powered distance from u along the geodesic beta.

    Requires every profiled point to stay inside the geodesic ball of
    p-radius pi/2 around u, and u must not lie on any prolongation of beta
    (the aligned case degenerates to a one-dimensional power profile).
    ``w_dot`` is computed two ways, by inverting the conjugation-average
    identity and by centred differences of the logarithm; the mismatch is
    recorded per grid point.
    """
    p = _validate_p(p)
    u = as_square(u)
    z = beta.velocity
    z_norm = np.linalg.norm(z)
    if z_norm < 1e-14:
        raise ValueError("beta is a constant geodesic; the profile is degenerate")

    w0 = unitary_log(u.conj().T @ beta.point(beta.interval[0]))
    align = np.vdot(z, w0).real / z_norm**2
    if np.linalg.norm(w0 - align * z) <= 1e-10 * (1 + np.linalg.norm(w0)):
        raise ValueError(
            "u lies on a prolongation of beta (aligned case); the profile "
            "reduces to |c + s len(z)|^p and is excluded"
        )

    def w_at(s):
        return unitary_log(u.conj().T @ beta.point(s))

    t0, t1 = beta.interval
    s_grid = np.linspace(t0, t1, grid)
    f_values = np.empty(grid)
    f_prime = np.empty(grid)
    f_second = np.empty(grid)
    r_squared = np.empty(grid)
    lower_bounds = np.empty(grid)
    fd_first = np.empty(grid)
    fd_second = np.empty(grid)
    wdot_mismatch = np.empty(grid)
    degenerate = np.zeros(grid, dtype=bool)
    sign = (-1) ** (p // 2)

    for i, s in enumerate(s_grid):
        w = w_at(s)
        w_norm = schatten_norm(w, p)
        if w_norm >= np.pi / 2:
            raise ValueError(
                f"beta({s:.3f}) is at distance {w_norm:.4f} >= pi/2 from u; the "
                "profile requires the geodesic ball of radius pi/2"
            )
        wdot = f_ad_inverse_apply(w, z)
        h_small = 1e-5
        wdot_fd = (w_at(s + h_small) - w_at(s - h_small)) / (2 * h_small)
        wdot_mismatch[i] = np.linalg.norm(wdot - wdot_fd)

        f_values[i] = w_norm**p
        f_prime[i] = sign * p * float(np.trace(
            np.linalg.matrix_power(w, p - 1) @ wdot).real)
        f_second[i] = hessian_H(w, wdot, z, p)
        r_squared[i] = hessian_Q(w, wdot, p)
        lower_bounds[i] = r_squared[i] * np.sinc(2 * w_norm / np.pi)
        degenerate[i] = r_squared[i] <= 1e-10 * max(1.0, f_values[i])

        f_plus = schatten_norm(w_at(s + fd_step), p) ** p
        f_minus = schatten_norm(w_at(s - fd_step), p) ** p
        fd_first[i] = (f_plus - f_minus) / (2 * fd_step)
        fd_second[i] = (f_plus - 2 * f_values[i] + f_minus) / fd_step**2

    gaps = fd_second - lower_bounds
    violations = int(np.sum(gaps < -tol))
    return ConvexityProfile(s_grid, f_values, f_prime, f_second, r_squared,
                            lower_bounds, fd_first, fd_second, wdot_mismatch,
                            degenerate, violations, float(np.min(gaps)))


def clarkson_check(x, y, p) -> tuple[float, float]:
    """Both sides of 2||x||^p + 2||y||^p <= ||x-y||^p + ||x+y||^p."""
    p = _validate_p(p)
    x, y = as_square(x), as_square(y)
    lhs = 2 * schatten_norm(x, p) ** p + 2 * schatten_norm(y, p) ** p
    rhs = schatten_norm(x - y, p) ** p + schatten_norm(x + y, p) ** p
    return lhs, rhs


def semi_parallelogram_gap(u, gamma: GeodesicSegment, p, r0: float) -> float:
    """Slack of the weak semi-parallelogram law; nonnegative when admissible.

        g(r0)/2 [d^p(u, gamma(0)) + d^p(u, gamma(1))]
            - d^p(u, gamma(1/2)) - L_p(gamma)^p / 2^p

    Requires d_p(u, gamma(t)) < r0 <= pi/4 at t in {0, 1/2, 1}.
    """
    p = _validate_p(p)
    if not 0 < r0 <= np.pi / 4:
        raise ValueError(f"r0 must lie in (0, pi/4], got {r0}")
    t0, t1 = gamma.interval
    pts = [gamma.point(t0), gamma.point((t0 + t1) / 2), gamma.point(t1)]
    d0, dmid, d1 = (distance_p(u, q, p) for q in pts)
    for name, d in (("gamma(0)", d0), ("gamma(1/2)", dmid), ("gamma(1)", d1)):
        if d >= r0:
            raise ValueError(f"d_p(u, {name}) = {d:.4f} >= r0 = {r0:.4f}")
    length = gamma.length(p)
    return (0.5 * g_bound(r0) * (d0**p + d1**p) - dmid**p - length**p / 2**p)


def geodesic_family_bound(u, v, w, p, r0: float, t_points: int = 21,
                          seed: int = 0) -> dict:
    """Compare the geodesic family between two short geodesics from u.

    With alpha, beta the short geodesics from u to v and u to w, and gamma_t
    the short geodesic joining alpha(t) to beta(t), checks

        L_p(gamma_t) <= t g(r0) L_p(gamma)        (gamma joins v to w)

    on a t-grid, plus the reversed-triangle chain
    |d(u,v) - d(u,w)| <= ||x - y||_p <= g(r0) d(v,w) with x = log(u*v),
    y = log(u*w).  Requires v, w in the p-ball of radius r0 <= pi/4 around u.
    """
    p = _validate_p(p)
    if not 0 < r0 <= np.pi / 4:
        raise ValueError(f"r0 must lie in (0, pi/4], got {r0}")
    u, v, w = as_square(u), as_square(v), as_square(w)
    d_uv = distance_p(u, v, p)
    d_uw = distance_p(u, w, p)
    if d_uv >= r0 or d_uw >= r0:
        raise ValueError(
            f"endpoints leave the ball: d(u,v) = {d_uv:.4f}, d(u,w) = {d_uw:.4f}, "
            f"r0 = {r0:.4f}")
    x = unitary_log(u.conj().T @ v)
    y = unitary_log(u.conj().T @ w)
    len_gamma = distance_p(v, w, p)
    growth = g_bound(r0)

    gaps = []
    for t in np.linspace(0.0, 1.0, t_points):
        len_t = schatten_norm(unitary_log(exp_skew(-t * x) @ exp_skew(t * y)), p)
        gaps.append(len_t - t * growth * len_gamma)
    xy_norm = schatten_norm(x - y, p)
    wsp_left = xy_norm - abs(d_uv - d_uw)
    wsp_right = growth * len_gamma - xy_norm

    worst = float(np.max(gaps))
    return {
        "check": "family-bound",
        "params": {"p": p, "r0": r0, "t_points": t_points, "d_uv": d_uv,
                   "d_uw": d_uw, "wsp_left_margin": wsp_left,
                   "wsp_right_margin": wsp_right},
        "worst_gap": worst,
        "violations": int(worst > 1e-10) + int(wsp_left < -1e-10)
                      + int(wsp_right < -1e-10),
        "trials": t_points,
        "seed": seed,
    }
