"""Geometry of the unitary orbit of a Hermitian matrix.

The orbit {u A u* : u unitary} is a homogeneous space; its tangent vectors
at x are commutators {wx - xw : w skew-Hermitian}, measured by the quotient
p-norm: the smallest p-norm among all lifts.  This module builds isotropy
(commutant) algebras, the trace projection onto the commutant, best
p-norm approximants by damped Newton, minimal liftings, isometric and
horizontal lifts of curves, orbit geodesics with their minimality
certificates, an endpoint solver over the isotropy group, the commutator
lower bound with its sharpness witness, the flat-sequence decay
demonstration, and the local cross section of the orbit map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.integrate

from .expcalc import f_ad_inverse_apply, _validate_even_p
from .linalg import (
    SpectralDecomposition,
    as_hermitian,
    as_square,
    exp_skew,
    matrix_from_json,
    matrix_to_json,
    polar_unitary_part,
    schatten_norm,
    spectral_projections,
    unitary_log,
)
from .metric import DiscretizedCurve, curve_length

TANGENT_TOL = 1e-8
LIFT_TOL = 1e-6


class NumericalError(RuntimeError):
    """An iterative solver or integrator failed to reach its tolerance."""


@dataclass
class SkewSubspace:
    """Real-linear subspace of skew-Hermitian matrices, orthonormal basis.

    The basis stack is orthonormal for the real inner product Re Tr(x* y).
    """

    dim_ambient: int
    basis: np.ndarray

    def __post_init__(self):
        self.basis = np.asarray(self.basis, dtype=np.complex128)
        if self.basis.ndim != 3 or self.basis.shape[1:] != (self.dim_ambient,) * 2:
            raise ValueError("basis must be a stack of dim_ambient-square matrices")

    def __len__(self) -> int:
        return self.basis.shape[0]

    def coords(self, x) -> np.ndarray:
        """Coefficients Re Tr(b_k* x)."""
        return np.einsum("kji,ji->k", self.basis.conj(), np.asarray(x)).real

    def from_coords(self, c) -> np.ndarray:
        return np.tensordot(np.asarray(c), self.basis, axes=1)

    def project(self, x) -> np.ndarray:
        """Frobenius-orthogonal projection onto the span."""
        return self.from_coords(self.coords(x))

    def gram(self) -> np.ndarray:
        return np.einsum("kji,lji->kl", self.basis.conj(), self.basis).real


@dataclass
class OrbitSpec:
    """A Hermitian base point, its clustered spectral data and the norm index."""

    A: np.ndarray
    spectral: SpectralDecomposition
    p: int
    tau_cluster: float
    _isotropy: SkewSubspace | None = field(default=None, repr=False)

    @classmethod
    def create(cls, A, p, tau_cluster: float | None = None) -> "OrbitSpec":
        p = _validate_even_p(p)
        A = as_hermitian(A)
        spectral = spectral_projections(A, tau_cluster)
        if tau_cluster is None:
            ev = np.linalg.eigvalsh(A)
            tau_cluster = 1e-8 * float(np.max(np.abs(ev), initial=0.0))
        recon = np.linalg.norm(spectral.reconstruct() - A)
        if recon > 1e-10 * max(1.0, np.linalg.norm(A)):
            raise ValueError(
                f"spectral clustering does not reconstruct the base point "
                f"(residual {recon:.2e}); adjust tau_cluster")
        return cls(A, spectral, p, float(tau_cluster))

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def isotropy(self) -> SkewSubspace:
        if self._isotropy is None:
            self._isotropy = isotropy_algebra(self.spectral)
        return self._isotropy

    def to_json(self) -> dict:
        return {"A": matrix_to_json(self.A), "p": self.p,
                "tau_cluster": self.tau_cluster}

    @classmethod
    def from_json(cls, obj) -> "OrbitSpec":
        return cls.create(matrix_from_json(obj["A"]), int(obj["p"]),
                          obj.get("tau_cluster"))


def isotropy_algebra(spec_or_decomp) -> SkewSubspace:
    """Orthonormal basis of the skew-Hermitian commutant of the base point.

    Block-diagonal with respect to the spectral clusters; the real dimension
    is the sum of the squared multiplicities.
    """
    decomp = spec_or_decomp.spectral if isinstance(spec_or_decomp, OrbitSpec) \
        else spec_or_decomp
    v = decomp.frame
    n = decomp.dim
    basis = []
    for sl in decomp.slices:
        cols = [v[:, j] for j in range(sl.start, sl.stop)]
        for j, cj in enumerate(cols):
            basis.append(1j * np.outer(cj, cj.conj()))
            for ck in cols[j + 1:]:
                ejk = np.outer(cj, ck.conj())
                ekj = np.outer(ck, cj.conj())
                basis.append((ejk - ekj) / np.sqrt(2))
                basis.append(1j * (ejk + ekj) / np.sqrt(2))
    return SkewSubspace(n, np.array(basis))


def trace_projection(spec_or_decomp, x) -> np.ndarray:
    """Trace-orthogonal projection onto the commutant: sum_i p_i x p_i.

    Idempotent, contractive for both the operator and Frobenius norms, and
    modular over commutant factors.
    """
    decomp = spec_or_decomp.spectral if isinstance(spec_or_decomp, OrbitSpec) \
        else spec_or_decomp
    v = decomp.frame
    xt = v.conj().T @ as_square(x) @ v
    out = np.zeros_like(xt)
    for sl in decomp.slices:
        out[sl, sl] = xt[sl, sl]
    return v @ out @ v.conj().T


def _approximant_coords(z, subspace: SkewSubspace, p: int, grad_tol: float,
                        max_iter: int, initial=None) -> np.ndarray:
    """Coefficients of the best p-norm approximant (damped Newton core)."""
    basis = subspace.basis
    if p == 2 or len(subspace) == 0:
        return subspace.coords(z)
    c = subspace.coords(z) if initial is None else np.array(initial, dtype=float)

    sign = (-1) ** (p // 2)
    scale = (1.0 + schatten_norm(z, p)) ** (p - 1)

    def residual(m: np.ndarray) -> np.ndarray:
        mp1 = np.linalg.matrix_power(m, p - 1)
        return -sign * p * np.einsum("ij,kji->k", mp1, basis).real

    def value(cvec: np.ndarray) -> float:
        m = z - subspace.from_coords(cvec)
        ev = np.linalg.eigvalsh(-1j * m)
        return float(np.sum(np.abs(ev) ** p))

    eye = np.eye(z.shape[0], dtype=complex)
    phi = value(c)
    for _ in range(max_iter):
        m = z - subspace.from_coords(c)
        g = residual(m)
        if np.max(np.abs(g)) <= grad_tol * scale:
            return c
        powers = [eye]
        for _k in range(p - 2):
            powers.append(powers[-1] @ m)
        pstack = np.array(powers)
        left = np.matmul(pstack[::-1, None], basis[None, :])
        right = np.matmul(pstack[:, None], basis[None, :])
        hess = sign * p * np.einsum("jkab,jlba->kl", left, right).real
        hess = (hess + hess.T) / 2
        step = None
        mu = 0.0
        for _try in range(6):
            try:
                cand = np.linalg.solve(hess + mu * np.eye(len(subspace)), -g)
            except np.linalg.LinAlgError:
                cand = None
            if cand is not None and np.dot(g, cand) < 0:
                step = cand
                break
            mu = 10 * mu if mu > 0 else 1e-6 * max(1.0, np.trace(hess) / len(subspace))
        if step is None:
            step = -g
        slope = np.dot(g, step)
        if -slope <= 1e-12 * (1 + abs(phi)):
            # Predicted decrease is below evaluation noise: quadratic basin,
            # take the plain Newton step.
            c = c + step
            phi = value(c)
        else:
            t, accepted = 1.0, None
            while t > 1e-14:
                trial = value(c + t * step)
                if trial <= phi + 1e-4 * t * slope:
                    accepted = trial
                    break
                t /= 2
            c = c + t * step
            phi = value(c) if accepted is None else accepted
    raise NumericalError(
        f"best-approximant Newton did not converge: residual gradient norm "
        f"{np.max(np.abs(residual(z - subspace.from_coords(c)))):.3e}")


def best_approximant_Q(z, subspace: SkewSubspace, p, grad_tol: float = 1e-11,
                       max_iter: int = 100) -> np.ndarray:
    """Best p-norm approximant of z inside the subspace.

    The unique minimizer of ||z - y||_p over the span (unique by uniform
    convexity).  For p = 2 this is the Frobenius-orthogonal projection; for
    larger even p a damped Newton iteration on the coefficients is used,
    with the positive-definite p-norm Hessian and an Armijo backtracking
    line search, falling back to the gradient direction when the Hessian
    solve does not produce descent.
    """
    p = _validate_even_p(p)
    z = as_square(z)
    return subspace.from_coords(
        _approximant_coords(z, subspace, p, grad_tol, max_iter))


def _cluster_ids(decomp: SpectralDecomposition) -> np.ndarray:
    ids = np.empty(decomp.dim, dtype=int)
    for k, sl in enumerate(decomp.slices):
        ids[sl] = k
    return ids


def solve_tangent_lift(decomp: SpectralDecomposition, X,
                       tol: float = TANGENT_TOL) -> np.ndarray:
    """One skew-Hermitian solution w of wx - xw = X in the eigenbasis of x.

    Entries within a spectral cluster of X must vanish (below ``tol``,
    relative), otherwise X is not tangent to the orbit; the returned w has
    zero diagonal blocks, i.e. it is already Frobenius-orthogonal to the
    commutant.
    """
    X = as_square(X)
    v = decomp.frame
    xt = v.conj().T @ X @ v
    ids = _cluster_ids(decomp)
    same = ids[:, None] == ids[None, :]
    inside = np.linalg.norm(xt[same])
    if inside > tol * (1.0 + np.linalg.norm(X)):
        raise ValueError(
            f"matrix is not tangent to the orbit: within-cluster residual "
            f"{inside:.3e}")
    vals = decomp.index_values()
    denom = vals[None, :] - vals[:, None]
    wt = np.where(same, 0.0, xt / np.where(same, 1.0, denom))
    w = v @ wt @ v.conj().T
    return (w - w.conj().T) / 2


def minimal_lifting(X, spec: OrbitSpec, p=None, point=None) -> np.ndarray:
    """Smallest-p-norm skew-Hermitian lift of a tangent vector.

    Solves wx - xw = X at the base point (or at ``point``), then removes the
    best approximant in the isotropy algebra; the result z satisfies the
    stationarity condition Tr(z^{p-1} y) = 0 for every isotropy element y
    and realizes the quotient norm of X.
    """
    p = spec.p if p is None else _validate_even_p(p)
    if point is None:
        decomp, iso = spec.spectral, spec.isotropy()
    else:
        decomp = spectral_projections(as_hermitian(point), spec.tau_cluster)
        iso = isotropy_algebra(decomp)
    w = solve_tangent_lift(decomp, X)
    return w - best_approximant_Q(w, iso, p)


def quotient_norm(X, spec: OrbitSpec, p=None, point=None) -> float:
    """Quotient Finsler norm of a tangent vector: p-norm of its minimal lift."""
    p = spec.p if p is None else _validate_even_p(p)
    return schatten_norm(minimal_lifting(X, spec, p, point), p)


@dataclass
class LiftResult:
    """Lifted curve, its generator path and the length/defect bookkeeping."""

    beta: DiscretizedCurve
    z_path: np.ndarray | None
    defect: float
    lengths: dict
    diagnostics: dict

    def to_json(self) -> dict:
        return {
            "defect": self.defect,
            "lengths": self.lengths,
            "diagnostics": self.diagnostics,
            "beta": self.beta.to_json(),
            "z_path": None if self.z_path is None
                      else [matrix_to_json(m) for m in self.z_path],
        }


def _group_curve_functions(curve, fd_step: float):
    """Normalize a group-curve input to (times, u(t), v(t), segment_logs).

    ``v`` is the left-logarithmic derivative u* du/dt.  A DiscretizedCurve is
    interpolated by piecewise geodesics, whose velocity is the constant
    ``segment_logs[k]`` on the k-th segment; a callable gets centred
    differences and ``segment_logs`` is None.
    """
    if isinstance(curve, DiscretizedCurve):
        times = curve.times
        samples = curve.samples
        logs = [unitary_log(samples[k].conj().T @ samples[k + 1])
                / (times[k + 1] - times[k]) for k in range(len(times) - 1)]

        def u_of(t):
            k = min(np.searchsorted(times, t, side="right") - 1, len(times) - 2)
            k = max(k, 0)
            return samples[k] @ exp_skew((t - times[k]) * logs[k])

        def v_of(t):
            k = min(np.searchsorted(times, t, side="right") - 1, len(logs) - 1)
            return logs[max(k, 0)]

        return times, u_of, v_of, logs

    def u_of(t):
        return curve(t)

    def v_of(t):
        du = (curve(t + fd_step) - curve(t - fd_step)) / (2 * fd_step)
        vmat = curve(t).conj().T @ du
        return (vmat - vmat.conj().T) / 2

    return None, u_of, v_of, None


def isometric_lift(curve, spec: OrbitSpec, p=None, n_steps: int = 200,
                   fd_step: float = 1e-6, lift_tol: float = LIFT_TOL) -> LiftResult:
    """Lift the orbit curve of a group curve isometrically.

    Given a piecewise-C1 curve Gamma of unitaries (a callable defined on a
    neighborhood of [0, 1], or a DiscretizedCurve interpolated by piecewise
    geodesics), integrates the isotropy correction z(t) solving

        d/dt e^{z} e^{-z} = -Q(Gamma* dGamma/dt),   z(0) = 0,

    with Q the best p-norm approximant onto the isotropy algebra, by RK4 in
    isotropy coordinates.  The corrected curve beta = Gamma e^{z} projects to
    the same orbit curve gamma = Gamma A Gamma* while its speed drops to the
    quotient norm pointwise, so L_p(beta) equals the orbit length L(gamma)
    and never exceeds L_p(Gamma).

    The reported ``lengths`` are Simpson quadratures on the sample grid:
    ``orbit`` re-derives the quotient norm of dgamma/dt at each moving point
    by an independent tangent solve, ``lift`` integrates the corrected speed,
    ``input`` the speed of Gamma and ``isotropy`` the speed of e^{z} (at most
    twice ``input``).
    """
    p = spec.p if p is None else _validate_even_p(p)
    grid, u_of, v_of, seg_logs = _group_curve_functions(curve, fd_step)
    times = np.linspace(0.0, 1.0, n_steps + 1) if grid is None else grid
    iso = spec.isotropy()
    a_base = spec.A

    q_cache: dict[float, np.ndarray] = {}
    warm = {"coords": None}

    def q_from(vmat: np.ndarray) -> np.ndarray:
        # Warm-started along the curve: consecutive corrections are close.
        coords = _approximant_coords(vmat, iso, p, 1e-11, 100,
                                     initial=warm["coords"])
        warm["coords"] = coords
        return iso.from_coords(coords)

    def q_of(t: float) -> np.ndarray:
        key = float(t)
        if key not in q_cache:
            q_cache[key] = q_from(v_of(key))
        return q_cache[key]

    def check_guard(zmat: np.ndarray) -> np.ndarray:
        if schatten_norm(zmat, p) >= np.pi / 2:
            raise NumericalError(
                "isotropy correction reached p-norm pi/2; subdivide the curve "
                "and lift the pieces separately")
        return zmat

    def flow(coeffs: np.ndarray, qmat: np.ndarray) -> np.ndarray:
        zmat = iso.from_coords(coeffs)
        # u_dot u* = -q requires the gap multipliers of -z, not of z.
        return iso.coords(-f_ad_inverse_apply(-zmat, qmat))

    coeffs = np.zeros(len(iso))
    z_path = [iso.from_coords(coeffs)]
    q_segs = []
    for k in range(len(times) - 1):
        t0, t1 = times[k], times[k + 1]
        h, tm = t1 - t0, (t0 + t1) / 2
        if seg_logs is not None:
            # Piecewise-geodesic input: the velocity, hence the correction
            # source, is constant on the segment.
            q_segs.append(q_from(seg_logs[k]))
            k1 = flow(coeffs, q_segs[k])
            k2 = flow(coeffs + h / 2 * k1, q_segs[k])
            k3 = flow(coeffs + h / 2 * k2, q_segs[k])
            k4 = flow(coeffs + h * k3, q_segs[k])
        else:
            k1 = flow(coeffs, q_of(t0))
            k2 = flow(coeffs + h / 2 * k1, q_of(tm))
            k3 = flow(coeffs + h / 2 * k2, q_of(tm))
            k4 = flow(coeffs + h * k3, q_of(t1))
        coeffs = coeffs + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        z_path.append(check_guard(iso.from_coords(coeffs)))
    z_path = np.array(z_path)

    u_samples = np.array([u_of(t) for t in times])
    beta_samples = np.array([u_samples[k] @ exp_skew(z_path[k])
                             for k in range(len(times))])

    def orbit_speed(t: float) -> float:
        # Independent route: quotient norm of the orbit velocity, from a
        # fresh tangent solve at the moving point.
        gp = u_of(t + fd_step) @ a_base @ u_of(t + fd_step).conj().T
        gm = u_of(t - fd_step) @ a_base @ u_of(t - fd_step).conj().T
        x_dot = as_hermitian((gp - gm) / (2 * fd_step), tol=1e-4)
        point = u_of(t) @ a_base @ u_of(t).conj().T
        return quotient_norm(x_dot, spec, p, point=as_hermitian(point, tol=1e-6))

    if seg_logs is not None:
        # Speeds are constant per segment: the midpoint rule is exact.
        widths = np.diff(times)
        mids = (times[:-1] + times[1:]) / 2
        sp_in = np.array([schatten_norm(v, p) for v in seg_logs])
        sp_beta = np.array([schatten_norm(v - q, p)
                            for v, q in zip(seg_logs, q_segs)])
        sp_iso = np.array([schatten_norm(q, p) for q in q_segs])
        sp_orbit = np.array([orbit_speed(float(t)) for t in mids])
        lengths = {
            "orbit": float(np.dot(widths, sp_orbit)),
            "lift": float(np.dot(widths, sp_beta)),
            "input": float(np.dot(widths, sp_in)),
            "isotropy": float(np.dot(widths, sp_iso)),
        }
        speed_beta = sp_beta
    else:
        speed_in = np.empty(len(times))
        speed_beta = np.empty(len(times))
        speed_iso = np.empty(len(times))
        speed_orbit = np.empty(len(times))
        for k, t in enumerate(times):
            vmat = v_of(float(t))
            qmat = q_of(float(t))
            speed_in[k] = schatten_norm(vmat, p)
            speed_beta[k] = schatten_norm(vmat - qmat, p)
            speed_iso[k] = schatten_norm(qmat, p)
            speed_orbit[k] = orbit_speed(float(t))
        lengths = {
            "orbit": float(scipy.integrate.simpson(speed_orbit, x=times)),
            "lift": float(scipy.integrate.simpson(speed_beta, x=times)),
            "input": float(scipy.integrate.simpson(speed_in, x=times)),
            "isotropy": float(scipy.integrate.simpson(speed_iso, x=times)),
        }

    gamma_samples = u_samples @ a_base @ np.conj(np.swapaxes(u_samples, -1, -2))
    beta_orbit = beta_samples @ a_base @ np.conj(np.swapaxes(beta_samples, -1, -2))
    defect = float(np.max(np.linalg.norm(beta_orbit - gamma_samples, axis=(1, 2))))
    if defect > lift_tol:
        raise NumericalError(f"lift defect {defect:.3e} exceeds {lift_tol:.1e}")

    if seg_logs is None:
        # Corrected speed equals the residual speed pointwise; checkable by
        # finite differences only where the curve is smooth.
        fd_speed = np.empty(len(times) - 2)
        for k in range(1, len(times) - 1):
            bdot = (beta_samples[k + 1] - beta_samples[k - 1]) \
                / (times[k + 1] - times[k - 1])
            fd_speed[k - 1] = abs(schatten_norm(bdot, p) - speed_beta[k])
        mismatch = float(np.max(fd_speed, initial=0.0))
    else:
        mismatch = None

    beta = DiscretizedCurve(times, beta_samples)
    diagnostics = {
        "pointwise_speed_mismatch": mismatch,
        "final_correction_norm": float(schatten_norm(z_path[-1], p)),
        "isotropy_curve_chordal": float(curve_length(
            DiscretizedCurve(times, np.array([exp_skew(z) for z in z_path])), p)),
    }
    return LiftResult(beta, z_path, defect, lengths, diagnostics)


def horizontal_lift_p2(curve, spec: OrbitSpec, n_steps: int = 200,
                       fd_step: float = 1e-6) -> LiftResult:
    """Horizontal (Frobenius-orthogonal) lift of an orbit curve at p = 2.

    ``curve`` is a callable t -> Hermitian orbit point on a neighborhood of
    [0, 1] (a DiscretizedCurve is interpolated linearly, which limits the
    accuracy to the sampling density).  Integrates dGamma/dt = k(t) Gamma
    from Gamma(0) = 1 by RK4 with per-step re-orthonormalization, where k(t)
    is the minimal 2-norm lift of dgamma/dt at gamma(t); the solution lifts
    gamma, stays horizontal, and has 2-length equal to the orbit length.
    """
    if isinstance(curve, DiscretizedCurve):
        tgrid, samples = curve.times, curve.samples

        def gamma_of(t):
            # Linear in the ambient space, extrapolating past the ends so
            # centred differences stay unbiased there.
            k = min(np.searchsorted(tgrid, t, side="right") - 1, len(tgrid) - 2)
            k = max(k, 0)
            lam = (t - tgrid[k]) / (tgrid[k + 1] - tgrid[k])
            return (1 - lam) * samples[k] + lam * samples[k + 1]

        times = tgrid
        # Differenced secants are tangent at midpoints, not nodes, so allow
        # an O(step) mismatch and project it out; accuracy is sampling-bound.
        tangent_tol = max(TANGENT_TOL, float(np.max(np.diff(tgrid))))
    else:
        gamma_of = curve
        times = np.linspace(0.0, 1.0, n_steps + 1)
        tangent_tol = TANGENT_TOL

    kappa_cache: dict[float, np.ndarray] = {}

    def kappa(t: float) -> np.ndarray:
        key = float(t)
        if key not in kappa_cache:
            point = as_hermitian(gamma_of(key), tol=1e-6)
            decomp = spectral_projections(point, spec.tau_cluster)
            dp = (gamma_of(key + fd_step) - gamma_of(key - fd_step)) / (2 * fd_step)
            x_dot = as_hermitian(dp, tol=1e-4)
            kappa_cache[key] = solve_tangent_lift(decomp, x_dot, tol=tangent_tol)
        return kappa_cache[key]

    gam = np.eye(spec.dim, dtype=complex)
    lift_samples = [gam]
    for k in range(len(times) - 1):
        t0, t1 = times[k], times[k + 1]
        h, tm = t1 - t0, (t0 + t1) / 2
        k1 = kappa(t0) @ gam
        k2 = kappa(tm) @ (gam + h / 2 * k1)
        k3 = kappa(tm) @ (gam + h / 2 * k2)
        k4 = kappa(t1) @ (gam + h * k3)
        gam = gam + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        gam = polar_unitary_part(gam)
        lift_samples.append(gam)
    lift_samples = np.array(lift_samples)

    x0 = as_hermitian(gamma_of(float(times[0])), tol=1e-6)
    defect = max(
        float(np.linalg.norm(g @ x0 @ g.conj().T - gamma_of(float(t))))
        for g, t in zip(lift_samples, times))

    speeds = np.array([schatten_norm(kappa(float(t)), 2) for t in times])
    lengths = {
        "orbit": float(scipy.integrate.simpson(speeds, x=times)),
        "lift": float(scipy.integrate.simpson(speeds, x=times)),
        "chordal": curve_length(DiscretizedCurve(times, lift_samples), 2),
    }

    # Left-translated velocities live in the complement at the base point:
    # Gamma* dGamma = Gamma* kappa Gamma and conjugation by Gamma* carries
    # the moving splitting back to gamma(0).
    base_decomp = spectral_projections(x0, spec.tau_cluster)
    horiz = 0.0
    for k in range(2, len(times) - 2):
        # Fourth-order stencil keeps the oracle below the ODE error.
        step = (times[k + 1] - times[k - 1]) / 2
        gdot = (-lift_samples[k + 2] + 8 * lift_samples[k + 1]
                - 8 * lift_samples[k - 1] + lift_samples[k - 2]) / (12 * step)
        vmat = lift_samples[k].conj().T @ gdot
        horiz = max(horiz, float(np.linalg.norm(trace_projection(base_decomp, vmat))))

    beta = DiscretizedCurve(times, lift_samples)
    return LiftResult(beta, None, defect, lengths,
                      {"horizontality_residual": horiz})


@dataclass
class OrbitGeodesic:
    """Orbit curve t -> e^{tz} x e^{-tz} generated by a minimal lift z."""

    base_point: np.ndarray
    generator: np.ndarray
    p: int
    _phases: np.ndarray = field(init=False, repr=False)
    _frame: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.base_point = as_square(self.base_point)
        self.generator = as_square(self.generator)
        h = -1j * self.generator
        self._phases, self._frame = np.linalg.eigh((h + h.conj().T) / 2)

    @property
    def length(self) -> float:
        """Length over [0, 1]: the p-norm of the generator."""
        return schatten_norm(self.generator, self.p)

    @property
    def certified_horizon(self) -> float:
        """Largest T with T * length < pi/4, where minimality is certified."""
        ln = self.length
        return np.inf if ln == 0 else (np.pi / 4) / ln

    def minimal_certified(self, t_max: float = 1.0) -> bool:
        return t_max < self.certified_horizon

    def point(self, t: float) -> np.ndarray:
        v = self._frame
        u = (v * np.exp(1j * t * self._phases)) @ v.conj().T
        return u @ self.base_point @ u.conj().T

    def to_json(self) -> dict:
        return {
            "generator": matrix_to_json(self.generator),
            "base_point": matrix_to_json(self.base_point),
            "p": self.p,
            "length": self.length,
            "certified_horizon": float(self.certified_horizon)
            if np.isfinite(self.certified_horizon) else None,
        }


def orbit_geodesic(x0, X, spec: OrbitSpec, p=None) -> OrbitGeodesic:
    """Orbit geodesic through x0 with initial velocity X, via the minimal lift."""
    p = spec.p if p is None else _validate_even_p(p)
    x0 = as_hermitian(x0)
    z0 = minimal_lifting(X, spec, p, point=None if np.allclose(x0, spec.A) else x0)
    return OrbitGeodesic(x0, z0, p)


def _connecting_unitary(x0, x1, tol: float = 1e-8) -> np.ndarray:
    """Unitary u with u x0 u* = x1, from eigendecompositions in shared order."""
    w0, v0 = np.linalg.eigh(x0)
    w1, v1 = np.linalg.eigh(x1)
    scale = max(1.0, float(np.max(np.abs(w0), initial=0.0)))
    if np.max(np.abs(w0 - w1)) > tol * scale:
        raise ValueError(
            "endpoints are not unitarily equivalent: spectra differ by "
            f"{np.max(np.abs(w0 - w1)):.3e}")
    return v1 @ v0.conj().T


def endpoint_geodesic(x0, x1, spec: OrbitSpec, p=None, grad_tol: float = 1e-10,
                      max_iter: int = 200, seed: int = 0):
    """Shortest orbit curve joining two isospectral Hermitian points.

    Minimizes the powered p-length of log(u1 e^{y}) over the isotropy
    algebra y (a compact, finite-dimensional problem) by damped Newton steps
    in multiplicative coordinates, from several deterministic starts.
    Returns (OrbitGeodesic, info); the geodesic carries its
    minimality certificate (length < pi/4), and ``info`` reports the
    stationarity residual max_y |Tr(z^{p-1} y)|, the endpoint defect and the
    certificate flag.
    """
    from .rng import substream

    p = spec.p if p is None else _validate_even_p(p)
    x0 = as_hermitian(x0)
    x1 = as_hermitian(x1)
    u1 = _connecting_unitary(x0, x1)
    if np.allclose(x0, spec.A, atol=1e-12):
        iso = spec.isotropy()
    else:
        iso = isotropy_algebra(spectral_projections(x0, spec.tau_cluster))
    sign = (-1) ** (p // 2)

    def value(wmat):
        return schatten_norm(unitary_log(wmat), p) ** p

    def gradient(zmat):
        zp1 = np.linalg.matrix_power(zmat, p - 1)
        return sign * p * np.einsum("ij,kji->k", zp1, iso.basis).real

    def minimize_from(wmat):
        phi = value(wmat)
        for it in range(max_iter):
            zmat = unitary_log(wmat)
            g = gradient(zmat)
            scale = (1.0 + schatten_norm(zmat, p)) ** (p - 1)
            if np.max(np.abs(g)) <= grad_tol * scale:
                return wmat, it, True
            zdots = np.array([f_ad_inverse_apply(zmat, b) for b in iso.basis])
            powers = [np.eye(spec.dim, dtype=complex)]
            for _k in range(p - 2):
                powers.append(powers[-1] @ zmat)
            pstack = np.array(powers)
            left = np.matmul(pstack[::-1, None], iso.basis[None, :])
            right = np.matmul(pstack[:, None], zdots[None, :])
            hess = sign * p * np.einsum("jkab,jlba->kl", left, right).real
            hess = (hess + hess.T) / 2
            step, mu = None, 0.0
            for _try in range(8):
                try:
                    cand = np.linalg.solve(hess + mu * np.eye(len(iso)), -g)
                except np.linalg.LinAlgError:
                    cand = None
                if cand is not None and np.dot(g, cand) < 0:
                    step = cand
                    break
                mu = 10 * mu if mu > 0 else 1e-6 * max(1.0, abs(np.trace(hess)) / len(iso))
            if step is None:
                step = -g
            cap = np.linalg.norm(step)
            if cap > 1.0:
                step = step / cap
            t, slope = 1.0, float(np.dot(g, step))
            if -slope <= 1e-12 * (1 + abs(phi)):
                wmat = wmat @ exp_skew(iso.from_coords(step))
            else:
                while t > 1e-14:
                    trial = wmat @ exp_skew(iso.from_coords(t * step))
                    if value(trial) <= phi + 1e-4 * t * slope:
                        break
                    t /= 2
                wmat = wmat @ exp_skew(iso.from_coords(t * step))
            phi = value(wmat)
        return wmat, max_iter, False

    l1 = unitary_log(u1)
    starts = [u1, u1 @ exp_skew(-iso.project(l1))]
    rng = substream(seed, "endpoint-geodesic")
    for _ in range(2):
        starts.append(u1 @ exp_skew(iso.from_coords(
            rng.standard_normal(len(iso)) * 0.5)))

    best = None
    for w0 in starts:
        wmat, iters, ok = minimize_from(w0)
        phi = value(wmat)
        if best is None or phi < best[0]:
            best = (phi, wmat, iters, ok)
    phi, wmat, iters, ok = best
    if not ok:
        zmat = unitary_log(wmat)
        raise NumericalError(
            "endpoint solver did not reach stationarity: residual "
            f"{np.max(np.abs(gradient(zmat))):.3e}")

    z = unitary_log(wmat)
    length = schatten_norm(z, p)
    residual = float(np.max(np.abs(
        np.einsum("ij,kji->k", np.linalg.matrix_power(z, p - 1), iso.basis).real)))
    recon = exp_skew(z) @ x0 @ exp_skew(-z)
    defect = float(np.linalg.norm(recon - x1))
    geo = OrbitGeodesic(x0, z, p)
    info = {
        "length": length,
        "stationarity_residual": residual,
        "endpoint_defect": defect,
        "certified": bool(length < np.pi / 4),
        "iterations": iters,
        "starts": len(starts),
    }
    return geo, info


def commutator_with_base(spec: OrbitSpec, x) -> np.ndarray:
    """The tangent map x -> xA - Ax; scales entry (i, j) of the eigenbasis
    form by lambda_j - lambda_i."""
    return as_square(x) @ spec.A - spec.A @ as_square(x)


def min_gap_constant(spec: OrbitSpec) -> float:
    """Smallest distance between distinct spectral clusters.

    The optimal constant in ||xA - Ax||_2 >= C ||x - P(x)||_2; requires at
    least two clusters (otherwise the commutator map vanishes identically).
    """
    if spec.spectral.n_clusters < 2:
        raise ValueError("base point has a single spectral cluster; the "
                         "commutator map is identically zero")
    return float(np.min(np.diff(spec.spectral.eigenvalues)))


def commutator_bound_check(spec: OrbitSpec, x) -> tuple[float, float]:
    """(||xA - Ax||_2, C ||x - P(x)||_2); the left side dominates."""
    lhs = float(np.linalg.norm(commutator_with_base(spec, x)))
    rhs = min_gap_constant(spec) * float(
        np.linalg.norm(x - trace_projection(spec, x)))
    return lhs, rhs


def sharpness_witness(spec: OrbitSpec) -> np.ndarray:
    """Skew-Hermitian x achieving equality in the commutator lower bound.

    Supported on the eigenvector pair realizing the minimal cluster gap, so
    the commutator scales it by exactly that gap.
    """
    gaps = np.diff(spec.spectral.eigenvalues)
    k = int(np.argmin(gaps))
    va = spec.spectral.frame[:, spec.spectral.slices[k].start]
    vb = spec.spectral.frame[:, spec.spectral.slices[k + 1].start]
    return np.outer(va, vb.conj()) - np.outer(vb, va.conj())


def nonclosedness_demo(eigenvalues) -> dict:
    """Decay row for the rank-one flat sequence against a diagonal base.

    With A = diag(a_1..a_n) (distinct entries) and x = (i/n) * ones, the
    commutant part has 2-norm exactly 1/sqrt(n), the complement
    sqrt(1 - 1/n), and ||xA - Ax||_2^2 <= (2/n) ||A||_2^2, so the ratio
    ||xA - Ax||_2 / ||x - P(x)||_2 decays: no uniform lower bound survives
    as n grows.
    """
    a = np.asarray(eigenvalues, dtype=float)
    n = len(a)
    if n < 2:
        raise ValueError("need at least two eigenvalues")
    if len(np.unique(a)) != n:
        raise ValueError("eigenvalues must be distinct")
    x = 1j * np.ones((n, n)) / n
    px = np.diag(np.diag(x))
    delta = x @ np.diag(a) - np.diag(a) @ x
    p_norm = float(np.linalg.norm(px))
    off_norm = float(np.linalg.norm(x - px))
    delta_norm = float(np.linalg.norm(delta))
    return {
        "n": n,
        "commutant_norm": p_norm,
        "complement_norm": off_norm,
        "commutator_norm": delta_norm,
        "ratio": delta_norm / off_norm,
        "bound": float(np.sqrt(2.0 / n) * np.linalg.norm(a)),
    }


def cross_section(spec: OrbitSpec, u) -> np.ndarray:
    """Local section of the orbit map: b = uAu* -> u Omega(P(u*)).

    Well-defined (independent of the unitary realizing b) and continuous on
    the ball ||b - A||_2 < C_A; outside it P(u*) may become singular.
    """
    u = as_square(u)
    b = u @ spec.A @ u.conj().T
    c = min_gap_constant(spec)
    dev = float(np.linalg.norm(b - spec.A))
    if dev >= c:
        raise ValueError(
            f"orbit point leaves the section ball: ||uAu* - A||_2 = {dev:.4f} "
            f">= C_A = {c:.4f}")
    return u @ polar_unitary_part(trace_projection(spec, u.conj().T))
