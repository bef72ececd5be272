"""Named verification suites driving every quantitative check.

Each suite runs seeded random sweeps against the library's inequalities and
identities and returns CheckRecord rows; a nonzero violation count anywhere
makes the run fail.  The same functions back the CLI ``verify`` command and
the acceptance tests.
"""

from __future__ import annotations

import numpy as np

from .expcalc import (
    dexp,
    dexp_inv,
    f_ad_inverse_apply,
    g_bound,
    hessian_H,
    hessian_Q,
    q_commutator_bound_check,
)
from .linalg import (
    exp_skew,
    polar_unitary_part,
    schatten_norm,
    unitary_eigenphases,
    unitary_log,
)
from .metric import (
    GeodesicSegment,
    clarkson_check,
    convexity_profile,
    distance_p,
    first_variation_check,
    gauss_legendre_01,
    geodesic_family_bound,
    minimality_experiment,
    semi_parallelogram_gap,
)
from .orbit import (
    OrbitSpec,
    best_approximant_Q,
    commutator_bound_check,
    commutator_with_base,
    cross_section,
    endpoint_geodesic,
    horizontal_lift_p2,
    isometric_lift,
    min_gap_constant,
    minimal_lifting,
    nonclosedness_demo,
    orbit_geodesic,
    quotient_norm,
    sharpness_witness,
    solve_tangent_lift,
    trace_projection,
)
from .reporting import CheckRecord, ExperimentConfig
from .rng import complex_gaussian, haar_unitary, random_skew, substream

NORM_EQUIV_CONSTANT = np.sqrt(1 - np.pi**2 / 12)
P_CYCLE = (2, 4, 6)


def _rec(name, worst, violations, samples, seed, **params) -> CheckRecord:
    return CheckRecord(name, float(worst), int(violations), int(samples),
                       seed, params)


def random_base_point(rng, n: int, p: int = 4,
                      allow_degenerate: bool = True) -> OrbitSpec:
    """Random Hermitian base point with well-separated spectral clusters."""
    n_clusters = n
    if allow_degenerate and n >= 3 and rng.uniform() < 0.5:
        n_clusters = rng.integers(2, n)
    vals = np.cumsum(rng.uniform(0.4, 1.2, size=n_clusters))
    mults = np.ones(n_clusters, dtype=int)
    for _ in range(n - n_clusters):
        mults[rng.integers(0, n_clusters)] += 1
    diag = np.repeat(vals, mults)
    v = haar_unitary(rng, n)
    return OrbitSpec.create((v * diag) @ v.conj().T, p)


def random_tangent(rng, spec: OrbitSpec, scale: float = 1.0) -> np.ndarray:
    w = random_skew(rng, spec.dim, norm=scale, p=spec.p)
    return commutator_with_base(spec, w)


# --- norms -------------------------------------------------------------------

def suite_norms(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    trials = cfg.trials or 500
    records = []

    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "norms/invariance", t)
        p = P_CYCLE[t % 3]
        m = complex_gaussian(rng, n)
        u, v = haar_unitary(rng, n), haar_unitary(rng, n)
        ref = schatten_norm(m, p)
        worst = max(worst, abs(schatten_norm(u @ m @ v, p) - ref) / ref)
    records.append(_rec("unitary-invariance", worst, worst > 1e-10, trials, seed, n=n))

    worst = np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "norms/ordering", t)
        p = P_CYCLE[t % 3]
        m = complex_gaussian(rng, n)
        margin = min(schatten_norm(m, p) - schatten_norm(m, np.inf),
                     schatten_norm(m, 2) - schatten_norm(m, p))
        worst = min(worst, margin)
        bad += margin < -1e-12
    records.append(_rec("norm-ordering", worst, bad, trials, seed, n=n))

    worst = -np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "norms/eigenphase", t)
        p = P_CYCLE[t % 3]
        phases, lam, _ = unitary_eigenphases(haar_unitary(rng, n))
        lhs = np.abs(phases) ** p * (1 - phases**2 / 12) ** (p / 2)
        rhs = np.abs(lam - 1) ** p
        gap = float(np.max(lhs - rhs))
        worst = max(worst, gap)
        bad += gap > 1e-12
    records.append(_rec("eigenphase-estimate", worst, bad, trials, seed, n=n))

    worst = np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "norms/equivalence", t)
        p = P_CYCLE[t % 3]
        u, v = haar_unitary(rng, n), haar_unitary(rng, n)
        d = distance_p(u, v, p)
        chord = schatten_norm(u - v, p)
        margin = min(chord - NORM_EQUIV_CONSTANT * d, d - chord)
        worst = min(worst, margin)
        bad += margin < -1e-10
    records.append(_rec("norm-equivalence", worst, bad, trials, seed, n=n,
                        constant=float(NORM_EQUIV_CONSTANT)))

    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "norms/roundtrip", t)
        u = haar_unitary(rng, n)
        worst = max(worst, np.linalg.norm(exp_skew(unitary_log(u)) - u))
        z = random_skew(rng, n, norm=rng.uniform(0.1, np.pi - 0.05), p=np.inf)
        worst = max(worst, np.linalg.norm(unitary_log(exp_skew(z)) - z))
    records.append(_rec("log-exp-roundtrip", worst, worst > 1e-9, trials, seed, n=n))

    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "norms/polar-exp", t)
        u = exp_skew(random_skew(rng, n, norm=rng.uniform(0.1, 3.0), p=np.inf))
        worst = max(worst, np.linalg.norm(polar_unitary_part(u) - u))
    records.append(_rec("polar-exp-consistency", worst, worst > 1e-10, trials, seed))

    return records


# --- dexp --------------------------------------------------------------------

def suite_dexp(cfg: ExperimentConfig) -> list[CheckRecord]:
    import scipy.linalg

    n, seed = cfg.n, cfg.seed
    records = []

    trials = cfg.trials or 200
    h = 1e-5
    worst = 0.0
    bad = 0
    for t in range(trials):
        rng = substream(seed, "dexp/fd", t)
        a = random_skew(rng, n, norm=rng.uniform(0.05, 1.0), p=np.inf)
        b = complex_gaussian(rng, n)
        b *= rng.uniform(0.05, 1.0) / schatten_norm(b, np.inf)
        val = dexp(a, b)
        fd = (scipy.linalg.expm(a + h * b) - scipy.linalg.expm(a - h * b)) / (2 * h)
        err = np.linalg.norm(fd - val) / (1 + np.linalg.norm(val))
        worst = max(worst, err)
        bad += err > 1e-6
    records.append(_rec("dexp-fd", worst, bad, trials, seed, n=n, h=h))

    trials = cfg.trials or 500
    worst = np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "dexp/contraction", t)
        p = P_CYCLE[t % 3]
        a = random_skew(rng, n, norm=rng.uniform(0.1, 3.0), p=np.inf)
        b = complex_gaussian(rng, n)
        margin = schatten_norm(b, p) + 1e-12 - schatten_norm(dexp(a, b), p)
        worst = min(worst, margin)
        bad += margin < 0
    records.append(_rec("dexp-contraction", worst, bad, trials, seed, n=n))

    trials = cfg.trials or 500
    worst = -np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "dexp/inverse-bound", t)
        p = P_CYCLE[t % 3]
        w = random_skew(rng, n, norm=rng.uniform(0.05, np.pi / 2 - 1e-3), p=p)
        b = complex_gaussian(rng, n)
        lhs = schatten_norm(f_ad_inverse_apply(w, b), p)
        bnorm = schatten_norm(b, p)
        for bound in (g_bound(schatten_norm(w, np.inf)) * bnorm,
                      g_bound(schatten_norm(w, p)) * bnorm):
            excess = lhs / (bound * (1 + 1e-8)) - 1
            worst = max(worst, excess)
            bad += excess > 0
    records.append(_rec("f-inverse-bound", worst, bad, trials, seed, n=n))

    trials = cfg.trials or 200
    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "dexp/roundtrip", t)
        a = random_skew(rng, n, norm=rng.uniform(0.1, np.pi - 0.1), p=np.inf)
        b = complex_gaussian(rng, n)
        worst = max(worst, np.linalg.norm(dexp_inv(a, dexp(a, b)) - b))
    records.append(_rec("dexp-roundtrip", worst, worst > 1e-9, trials, seed, n=n))

    trials = min(cfg.trials or 50, 100)
    x, wts = gauss_legendre_01(64)
    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "dexp/integral", t)
        a = random_skew(rng, n, norm=rng.uniform(0.1, 2.0), p=np.inf)
        b = complex_gaussian(rng, n)
        quad = sum(wt * exp_skew((1 - tt) * a) @ b @ exp_skew(tt * a)
                   for tt, wt in zip(x, wts))
        worst = max(worst, np.linalg.norm(quad - dexp(a, b)))
    records.append(_rec("dexp-integral-form", worst, worst > 1e-8, trials, seed, n=n))

    return records


# --- hessian -----------------------------------------------------------------

def _hessian_decomposition(a, b, p: int) -> float:
    """Positive-sum evaluation of the quadratic form, independent route."""
    half = p // 2
    ap = np.linalg.matrix_power(a, half - 1)
    total = p * np.linalg.norm(b @ ap) ** 2
    anti = a @ b + b @ a
    for left in range(half - 1):
        right = half - 2 - left
        term = np.linalg.matrix_power(a, left) @ anti @ np.linalg.matrix_power(a, right)
        total += (p / 2) * np.linalg.norm(term) ** 2
    return float(total)


def suite_hessian(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    trials = cfg.trials or 500
    records = []

    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "hessian/symmetry", t)
        p = P_CYCLE[t % 3]
        a, b, c = (random_skew(rng, n) for _ in range(3))
        scale = 1 + abs(hessian_H(a, b, b, p)) + abs(hessian_H(a, c, c, p))
        worst = max(worst, abs(hessian_H(a, b, c, p) - hessian_H(a, c, b, p)) / scale)
    records.append(_rec("hessian-symmetry", worst, worst > 1e-10, trials, seed, n=n))

    worst = np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "hessian/positivity", t)
        p = P_CYCLE[t % 3]
        a, b = random_skew(rng, n), random_skew(rng, n)
        q = hessian_Q(a, b, p)
        scale = 1 + np.linalg.norm(a) ** (p - 2) * np.linalg.norm(b) ** 2
        worst = min(worst, q / scale)
        bad += q < -1e-10 * scale
    records.append(_rec("hessian-positivity", worst, bad, trials, seed, n=n))

    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "hessian/decomposition", t)
        p = P_CYCLE[t % 3]
        a, b = random_skew(rng, n), random_skew(rng, n)
        q = hessian_Q(a, b, p)
        alt = _hessian_decomposition(a, b, p)
        worst = max(worst, abs(q - alt) / (1 + abs(q)))
    records.append(_rec("hessian-decomposition", worst, worst > 1e-8, trials, seed, n=n))

    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "hessian/bilinearity", t)
        p = P_CYCLE[t % 3]
        a, b1, b2, c = (random_skew(rng, n) for _ in range(4))
        alpha = rng.uniform(-2, 2)
        combo = hessian_H(a, b1 + alpha * b2, c, p)
        split = hessian_H(a, b1, c, p) + alpha * hessian_H(a, b2, c, p)
        worst = max(worst, abs(combo - split) / (1 + abs(combo)))
    records.append(_rec("hessian-bilinearity", worst, worst > 1e-9, trials, seed, n=n))

    worst = -np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "hessian/commutator", t)
        p = P_CYCLE[t % 3]
        a, b = random_skew(rng, n), random_skew(rng, n)
        lhs, rhs = q_commutator_bound_check(a, b, p)
        excess = lhs - rhs * (1 + 1e-10)
        worst = max(worst, excess / (1 + rhs))
        bad += excess > 0
    records.append(_rec("commutator-bound", worst, bad, trials, seed, n=n))

    return records


# --- minimality --------------------------------------------------------------

def suite_minimality(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    records = []

    z_draws = cfg.extras.get("z_draws", cfg.trials or 100)
    per_z = cfg.trials or 100
    steps = cfg.extras.get("steps", 200)
    fixed_amp = cfg.extras.get("amplitude")
    worst = np.inf
    bad = 0
    for t in range(z_draws):
        rng = substream(seed, "minimality/z", t)
        p = (2, 4)[t % 2]
        z = random_skew(rng, n, norm=rng.uniform(0.3, np.pi - 0.1), p=np.inf)
        amp = rng.uniform(0.1, 1.0) if fixed_amp is None else float(fixed_amp)
        rep = minimality_experiment(z, per_z, amp, steps, p, seed=seed + t)
        worst = min(worst, rep["worst_gap"])
        bad += rep["worst_gap"] < -1e-3
    records.append(_rec("minimality-excess", worst, bad, z_draws * per_z, seed,
                        n=n, steps=steps))

    trials = cfg.extras.get("families", min(50, cfg.trials or 50))
    worst = 0.0
    bad = 0
    for t in range(trials):
        rng = substream(seed, "minimality/variation", t)
        p = (2, 4)[t % 2]
        x = random_skew(rng, n, norm=rng.uniform(0.3, 1.5), p=np.inf)
        m1 = random_skew(rng, n, norm=rng.uniform(0.2, 1.0), p=np.inf)
        m2 = random_skew(rng, n, norm=rng.uniform(0.2, 1.0), p=np.inf)

        def family(s, tt, x=x, m1=m1, m2=m2):
            return exp_skew(tt * x + s * (np.sin(np.pi * tt) * m1 + tt * m2))

        lhs, rhs = first_variation_check(family, p)
        err = abs(lhs - rhs) / (1 + abs(lhs))
        worst = max(worst, err)
        bad += err > 1e-4
    records.append(_rec("first-variation", worst, bad, trials, seed, n=n))

    trials = cfg.extras.get("long_generators", min(50, cfg.trials or 50))
    worst = -np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "minimality/long", t)
        p = (2, 4)[t % 2]
        z = random_skew(rng, n, norm=rng.uniform(np.pi + 0.1, 2 * np.pi - 0.2),
                        p=np.inf)
        gap = schatten_norm(unitary_log(exp_skew(z)), p) - schatten_norm(z, p)
        worst = max(worst, gap)
        bad += gap >= -1e-12
    records.append(_rec("long-generator-shortcut", worst, bad, trials, seed, n=n))

    return records


# --- convexity ---------------------------------------------------------------

def _admissible_profile_config(rng, n: int, p):
    u = haar_unitary(rng, n)
    v = random_skew(rng, n, norm=rng.uniform(0.15, 0.6), p=p)
    z = random_skew(rng, n, norm=rng.uniform(0.15, 0.6), p=p)
    beta = GeodesicSegment(u @ exp_skew(v), z)
    return u, beta


def suite_convexity(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    trials = cfg.trials or 100
    grid = cfg.extras.get("grid", 9)
    records = []

    worst_bound = np.inf
    worst_d1 = 0.0
    worst_d2 = 0.0
    worst_mismatch = 0.0
    bad_bound = bad_deriv = 0
    for t in range(trials):
        rng = substream(seed, "convexity/profile", t)
        p = (2, 4, 6)[t % 3]
        u, beta = _admissible_profile_config(rng, n, p)
        prof = convexity_profile(u, beta, grid, p)
        gap = float(np.min(prof.fd_second - prof.lower_bounds))
        worst_bound = min(worst_bound, gap)
        bad_bound += gap < -1e-6
        d1 = float(np.max(np.abs(prof.f_prime - prof.fd_first)
                          / (1 + np.abs(prof.f_prime))))
        d2 = float(np.max(np.abs(prof.f_second - prof.fd_second)
                          / (1 + np.abs(prof.f_second))))
        worst_d1 = max(worst_d1, d1)
        worst_d2 = max(worst_d2, d2)
        bad_deriv += (d1 > 1e-5) + (d2 > 1e-5)
        worst_mismatch = max(worst_mismatch, float(np.max(prof.wdot_mismatch)))
    records.append(_rec("convexity-lower-bound", worst_bound, bad_bound,
                        trials, seed, n=n, grid=grid))
    records.append(_rec("convexity-derivatives", max(worst_d1, worst_d2),
                        bad_deriv, trials, seed, n=n, first=worst_d1,
                        second=worst_d2))
    records.append(_rec("wdot-crosscheck", worst_mismatch,
                        worst_mismatch > 1e-6, trials, seed, n=n))
    return records


# --- clarkson ----------------------------------------------------------------

def suite_clarkson(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    trials = cfg.trials or 1000
    worst = -np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "clarkson", t)
        p = P_CYCLE[t % 3]
        x = complex_gaussian(rng, n)
        y = complex_gaussian(rng, n)
        lhs, rhs = clarkson_check(x, y, p)
        excess = lhs - rhs * (1 + 1e-12)
        worst = max(worst, excess / (1 + rhs))
        bad += excess > 0
    return [_rec("clarkson", worst, bad, trials, seed, n=n)]


# --- semiparallelogram -------------------------------------------------------

def suite_semiparallelogram(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    trials = cfg.trials or 500
    worst = np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "semiparallelogram", t)
        p = P_CYCLE[t % 3]
        r0 = np.pi / 4 if t % 2 else rng.uniform(0.3, np.pi / 4)
        u = haar_unitary(rng, n)
        v = u @ exp_skew(random_skew(rng, n, norm=r0 * rng.uniform(0.05, 0.48), p=p))
        w = u @ exp_skew(random_skew(rng, n, norm=r0 * rng.uniform(0.05, 0.48), p=p))
        gamma = GeodesicSegment(v, unitary_log(v.conj().T @ w))
        gap = semi_parallelogram_gap(u, gamma, p, r0)
        worst = min(worst, gap)
        bad += gap < -1e-10
    return [_rec("semi-parallelogram", worst, bad, trials, seed, n=n)]


# --- family bound ------------------------------------------------------------

def suite_family_bound(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    trials = cfg.trials or 200
    t_points = cfg.extras.get("t_points", 21)
    worst = -np.inf
    worst_wsp = np.inf
    bad = 0
    for t in range(trials):
        rng = substream(seed, "family-bound", t)
        p = (2, 4)[t % 2]
        r0 = np.pi / 4
        u = haar_unitary(rng, n)
        v = u @ exp_skew(random_skew(rng, n, norm=r0 * rng.uniform(0.1, 0.95), p=p))
        w = u @ exp_skew(random_skew(rng, n, norm=r0 * rng.uniform(0.1, 0.95), p=p))
        rep = geodesic_family_bound(u, v, w, p, r0, t_points=t_points, seed=seed)
        worst = max(worst, rep["worst_gap"])
        worst_wsp = min(worst_wsp, rep["params"]["wsp_left_margin"],
                        rep["params"]["wsp_right_margin"])
        bad += rep["violations"]
    cap = g_bound(np.pi / 4)
    return [_rec("family-bound", worst, bad, trials, seed, n=n,
                 t_points=t_points, growth_cap=float(cap),
                 wsp_worst_margin=float(worst_wsp))]


# --- lifts -------------------------------------------------------------------

def _group_curve(rng, n: int, scale: float = 0.8):
    m1 = random_skew(rng, n, norm=scale, p=2)
    m2 = random_skew(rng, n, norm=0.6 * scale, p=2)

    def gamma(t, m1=m1, m2=m2):
        return exp_skew(t * m1 + np.sin(np.pi * t) * m2)

    return gamma


def suite_lifts(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    trials = cfg.trials or 100
    steps = cfg.extras.get("steps", 120)
    records = []

    worst_defect = 0.0
    worst_mono = np.inf
    worst_iso = 0.0
    worst_double = np.inf
    bads = [0, 0, 0, 0]
    for t in range(trials):
        rng = substream(seed, "lifts/isometric", t)
        p = (2, 4)[t % 2]
        spec = random_base_point(rng, n, p)
        curve = _group_curve(rng, n)
        res = isometric_lift(curve, spec, p, n_steps=steps)
        worst_defect = max(worst_defect, res.defect)
        bads[0] += res.defect > 1e-6
        mono = res.lengths["input"] - res.lengths["lift"]
        worst_mono = min(worst_mono, mono)
        bads[1] += mono < -1e-9
        iso_gap = abs(res.lengths["orbit"] - res.lengths["lift"])
        worst_iso = max(worst_iso, iso_gap)
        bads[2] += iso_gap > 1e-5
        dbl = 2 * res.lengths["input"] - res.lengths["isotropy"]
        worst_double = min(worst_double, dbl)
        bads[3] += dbl < -1e-9
    records.append(_rec("lift-defect", worst_defect, bads[0], trials, seed,
                        n=n, steps=steps))
    records.append(_rec("lift-length-monotone", worst_mono, bads[1], trials, seed))
    records.append(_rec("lift-isometry", worst_iso, bads[2], trials, seed))
    records.append(_rec("isotropy-curve-bound", worst_double, bads[3], trials, seed))

    cross_trials = cfg.extras.get("cross_trials", min(20, trials))
    worst_cross = 0.0
    worst_horiz = 0.0
    bad_cross = bad_horiz = 0
    for t in range(cross_trials):
        rng = substream(seed, "lifts/p2-cross", t)
        spec = random_base_point(rng, n, 2)
        curve = _group_curve(rng, n)

        def orbit_curve(tt, curve=curve, a=spec.A):
            g = curve(tt)
            return g @ a @ g.conj().T

        res2 = isometric_lift(curve, spec, 2, n_steps=steps)
        hres = horizontal_lift_p2(orbit_curve, spec, n_steps=steps)
        gap = abs(res2.lengths["lift"] - hres.lengths["lift"])
        worst_cross = max(worst_cross, gap)
        bad_cross += gap > 1e-6
        worst_horiz = max(worst_horiz, hres.diagnostics["horizontality_residual"])
        bad_horiz += hres.diagnostics["horizontality_residual"] > 1e-6
    records.append(_rec("p2-crosscheck", worst_cross, bad_cross,
                        cross_trials, seed, n=n))
    records.append(_rec("horizontality", worst_horiz, bad_horiz,
                        cross_trials, seed, n=n))

    q_trials = cfg.extras.get("q_trials", min(100, trials * 2))
    worst_q = 0.0
    bad_q = 0
    for t in range(q_trials):
        rng = substream(seed, "lifts/q-properties", t)
        p = (2, 4, 6)[t % 3]
        spec = random_base_point(rng, n, p)
        iso = spec.isotropy()
        x = random_skew(rng, n, norm=rng.uniform(0.2, 2.0), p=p)
        qx = best_approximant_Q(x, iso, p)
        resid = x - qx
        err = schatten_norm(best_approximant_Q(resid, iso, p), p)
        lam = rng.uniform(0.1, 3.0)
        err = max(err, schatten_norm(best_approximant_Q(lam * x, iso, p) - lam * qx, p))
        over = schatten_norm(qx, p) - 2 * schatten_norm(x, p)
        err = max(err, over)
        worst_q = max(worst_q, err)
        bad_q += err > 1e-8 * (1 + schatten_norm(x, p))
    records.append(_rec("q-properties", worst_q, bad_q, q_trials, seed, n=n))

    return records


# --- orbit -------------------------------------------------------------------

def suite_orbit(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    records = []

    trials = cfg.trials or 30
    worst_len = 0.0
    worst_res = 0.0
    bad_len = bad_res = 0
    for t in range(trials):
        rng = substream(seed, "orbit/plant", t)
        p = (2, 4, 6)[t % 3]
        spec = random_base_point(rng, n, p)
        iso = spec.isotropy()
        w = random_skew(rng, n, norm=1.0, p=p)
        z0 = w - best_approximant_Q(w, iso, p)
        z0 *= rng.uniform(0.15, 0.9) * (np.pi / 4) / schatten_norm(z0, p)
        x1 = exp_skew(z0) @ spec.A @ exp_skew(-z0)
        geo, info = endpoint_geodesic(spec.A, x1, spec, p, seed=seed + t)
        err = abs(info["length"] - schatten_norm(z0, p))
        worst_len = max(worst_len, err)
        bad_len += err > 1e-5
        worst_res = max(worst_res, info["stationarity_residual"])
        bad_res += info["stationarity_residual"] > 1e-8
    records.append(_rec("plant-recover", worst_len, bad_len, trials, seed, n=n))
    records.append(_rec("stationarity-residual", worst_res, bad_res, trials, seed))

    trials = cfg.trials or 50
    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "orbit/uniqueness", t)
        p = (2, 4)[t % 2]
        spec = random_base_point(rng, n, p)
        iso = spec.isotropy()
        x_tan = random_tangent(rng, spec)
        z1 = minimal_lifting(x_tan, spec, p)
        w2 = solve_tangent_lift(spec.spectral, x_tan) + iso.from_coords(
            rng.standard_normal(len(iso)))
        z2 = w2 - best_approximant_Q(w2, iso, p)
        worst = max(worst, np.linalg.norm(z1 - z2))
    records.append(_rec("lifting-uniqueness", worst, worst > 1e-6, trials, seed, n=n))

    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "orbit/invariance", t)
        p = (2, 4)[t % 2]
        spec = random_base_point(rng, n, p)
        x_tan = random_tangent(rng, spec)
        u = haar_unitary(rng, n)
        base_norm = quotient_norm(x_tan, spec, p)
        moved = quotient_norm(u @ x_tan @ u.conj().T, spec, p,
                              point=u @ spec.A @ u.conj().T)
        worst = max(worst, abs(moved - base_norm) / (1 + base_norm))
    records.append(_rec("quotient-invariance", worst, worst > 1e-8, trials, seed, n=n))

    worst = 0.0
    h = 1e-4
    for t in range(trials):
        rng = substream(seed, "orbit/initial", t)
        p = (2, 4)[t % 2]
        spec = random_base_point(rng, n, p)
        x_tan = random_tangent(rng, spec)
        geo = orbit_geodesic(spec.A, x_tan, spec, p)
        fd = (geo.point(h) - geo.point(-h)) / (2 * h)
        worst = max(worst, np.linalg.norm(fd - x_tan),
                    np.linalg.norm(geo.point(0.0) - spec.A))
    records.append(_rec("orbit-initial-conditions", worst, worst > 1e-6,
                        trials, seed, n=n))

    competitors = cfg.extras.get("competitors", min(20, cfg.trials or 20))
    rng = substream(seed, "orbit/competitor")
    spec = random_base_point(rng, n, 4, allow_degenerate=False)
    iso = spec.isotropy()
    w = random_skew(rng, n, norm=1.0, p=4)
    z0 = w - best_approximant_Q(w, iso, 4)
    z0 *= 0.7 / schatten_norm(z0, 4)
    ref_len = schatten_norm(z0, 4)
    worst = np.inf
    bad = 0
    for t in range(competitors):
        rng_t = substream(seed, "orbit/competitor", t + 1)
        m = random_skew(rng_t, n, norm=rng_t.uniform(0.1, 0.5), p=4)

        def competitor(tt, z0=z0, m=m):
            return exp_skew(tt * z0) @ exp_skew(np.sin(np.pi * tt) * m)

        res = isometric_lift(competitor, spec, 4, n_steps=80)
        excess = res.lengths["lift"] - ref_len
        worst = min(worst, excess)
        bad += excess < -1e-3
    records.append(_rec("orbit-competitor-sweep", worst, bad, competitors,
                        seed, n=n, ref_length=float(ref_len)))

    trials = cfg.trials or 500
    worst = np.inf
    worst_sharp = 0.0
    bad = 0
    rng0 = substream(seed, "orbit/ca-spec")
    spec = random_base_point(rng0, n, 4)
    for t in range(trials):
        rng = substream(seed, "orbit/ca", t)
        x = complex_gaussian(rng, n)
        lhs, rhs = commutator_bound_check(spec, x)
        margin = lhs - rhs * (1 - 1e-10)
        worst = min(worst, margin)
        bad += margin < 0
    witness = sharpness_witness(spec)
    lhs, rhs = commutator_bound_check(spec, witness)
    worst_sharp = abs(lhs - rhs)
    gap = min_gap_constant(spec)
    records.append(_rec("commutator-lower-bound", worst, bad, trials, seed, n=n,
                        c_gap=float(gap), c_gap_squared=float(gap**2)))
    records.append(_rec("commutator-sharpness", worst_sharp,
                        worst_sharp > 1e-12, 1, seed, n=n))

    worst_p = 0.0
    worst_delta = np.inf
    rows = []
    prev_ratio = np.inf
    monotone_bad = 0
    for m in range(2, 65):
        eigs = 1.0 / np.arange(1, m + 1)
        row = nonclosedness_demo(eigs)
        rows.append(row)
        worst_p = max(worst_p, abs(row["commutant_norm"] - 1 / np.sqrt(m)))
        worst_delta = min(worst_delta, row["bound"] - row["commutator_norm"])
        monotone_bad += row["ratio"] > prev_ratio
        prev_ratio = row["ratio"]
    records.append(_rec("nonclosedness-identities", worst_p,
                        (worst_p > 1e-12) + (worst_delta < 0) + monotone_bad,
                        len(rows), seed, delta_margin=float(worst_delta)))

    trials = cfg.trials or 100
    worst = 0.0
    for t in range(trials):
        rng = substream(seed, "orbit/delta-range", t)
        spec_t = random_base_point(rng, n, 4, allow_degenerate=False)
        g = complex_gaussian(rng, n)
        y = (g + g.conj().T) / 2
        y = y - trace_projection(spec_t, y)
        x = solve_tangent_lift(spec_t.spectral, y)
        worst = max(worst,
                    np.linalg.norm(commutator_with_base(spec_t, x) - y),
                    np.linalg.norm(trace_projection(
                        spec_t, commutator_with_base(spec_t, x))))
    records.append(_rec("delta-range-roundtrip", worst, worst > 1e-9,
                        trials, seed, n=n))

    return records


# --- sigma -------------------------------------------------------------------

def suite_sigma(cfg: ExperimentConfig) -> list[CheckRecord]:
    n, seed = cfg.n, cfg.seed
    trials = cfg.trials or 200
    records = []

    def ball_unitary(rng, spec):
        c = min_gap_constant(spec)
        m = random_skew(rng, n, norm=1.0, p=2)
        for scale in 0.4 * c / np.array([1, 2, 4, 8, 16]):
            u = exp_skew(scale * m)
            if np.linalg.norm(u @ spec.A @ u.conj().T - spec.A) < 0.9 * c:
                return u
        return np.eye(n, dtype=complex)

    worst_sec = 0.0
    worst_well = 0.0
    for t in range(trials):
        rng = substream(seed, "sigma/section", t)
        spec = random_base_point(rng, n, 4)
        u = ball_unitary(rng, spec)
        b = u @ spec.A @ u.conj().T
        sig = cross_section(spec, u)
        worst_sec = max(worst_sec,
                        np.linalg.norm(sig @ spec.A @ sig.conj().T - b))
        iso = spec.isotropy()
        v = exp_skew(iso.from_coords(rng.standard_normal(len(iso)) * 0.5))
        sig2 = cross_section(spec, u @ v)
        worst_well = max(worst_well, np.linalg.norm(sig - sig2))
    records.append(_rec("section-property", worst_sec, worst_sec > 1e-9,
                        trials, seed, n=n))
    records.append(_rec("section-well-defined", worst_well, worst_well > 1e-9,
                        trials, seed, n=n))

    trials2 = cfg.trials or 500
    worst = np.inf
    bad = 0
    for t in range(trials2):
        rng = substream(seed, "sigma/contractive", t)
        spec = random_base_point(rng, n, 4)
        x = complex_gaussian(rng, n)
        px = trace_projection(spec, x)
        margin = min(schatten_norm(x, np.inf) - schatten_norm(px, np.inf),
                     np.linalg.norm(x) - np.linalg.norm(px))
        worst = min(worst, margin)
        bad += margin < -1e-10
    records.append(_rec("projection-contractive", worst, bad, trials2, seed, n=n))

    worst = 0.0
    for t in range(min(trials, 100)):
        rng = substream(seed, "sigma/modular", t)
        spec = random_base_point(rng, n, 4)
        iso = spec.isotropy()
        y = exp_skew(iso.from_coords(rng.standard_normal(len(iso))))
        z = exp_skew(iso.from_coords(rng.standard_normal(len(iso))))
        x = complex_gaussian(rng, n)
        err = np.linalg.norm(trace_projection(spec, y @ x @ z)
                             - y @ trace_projection(spec, x) @ z)
        px = trace_projection(spec, x)
        err = max(err, np.linalg.norm(trace_projection(spec, px) - px))
        worst = max(worst, err)
    records.append(_rec("projection-modular", worst, worst > 1e-10,
                        min(trials, 100), seed, n=n))

    rng = substream(seed, "sigma/continuity")
    spec = random_base_point(rng, n, 4)
    m = random_skew(rng, n, norm=0.2 * min_gap_constant(spec), p=2)
    slopes = []
    last_dev = None
    for k in range(1, 19):
        u = exp_skew(m / 2**k)
        orbit_dev = np.linalg.norm(u @ spec.A @ u.conj().T - spec.A)
        sig_dev = np.linalg.norm(cross_section(spec, u) - np.eye(n))
        slopes.append(sig_dev / orbit_dev if orbit_dev > 0 else 0.0)
        last_dev = sig_dev
    records.append(_rec("section-continuity", max(slopes), last_dev > 1e-5,
                        18, seed, n=n, final_deviation=float(last_dev)))

    return records


SUITES = {
    "norms": suite_norms,
    "dexp": suite_dexp,
    "hessian": suite_hessian,
    "minimality": suite_minimality,
    "convexity": suite_convexity,
    "clarkson": suite_clarkson,
    "semiparallelogram": suite_semiparallelogram,
    "family-bound": suite_family_bound,
    "lifts": suite_lifts,
    "orbit": suite_orbit,
    "sigma": suite_sigma,
}


def run_suites(names, cfg: ExperimentConfig) -> list[CheckRecord]:
    records = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; known: {sorted(SUITES)}")
        records.extend(SUITES[name](cfg))
    return records
