"""Acceptance gate: every quantitative criterion at its stated tolerance.

Each test prints one pass/fail line; run with ``pytest -s`` to see them all.
Desk scale throughout: n <= 16, p in {2, 4, 6}.
"""

import numpy as np
import pytest
import scipy.linalg

import schatten_geo as sg
from schatten_geo.metric import GeodesicSegment
from schatten_geo.rng import complex_gaussian, haar_unitary, random_skew, substream
from schatten_geo.suites import random_base_point

SEED = 2026


def announce(num, name, ok, detail):
    print(f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def test_criterion_01_dexp_matches_central_differences():
    h, worst = 1e-5, 0.0
    for t in range(200):
        rng = substream(SEED, "acc/dexp-fd", t)
        a = random_skew(rng, 4, norm=rng.uniform(0.05, 1.0), p=np.inf)
        b = complex_gaussian(rng, 4)
        b *= rng.uniform(0.05, 1.0) / sg.schatten_norm(b, np.inf)
        val = sg.dexp(a, b)
        fd = (scipy.linalg.expm(a + h * b) - scipy.linalg.expm(a - h * b)) / (2 * h)
        worst = max(worst, np.linalg.norm(fd - val) / (1 + np.linalg.norm(val)))
    announce(1, "dexp-central-difference", worst <= 1e-6,
             f"worst rel err {worst:.2e} over 200 draws")


def test_criterion_02_dexp_contraction():
    worst, bad = np.inf, 0
    for t in range(500):
        rng = substream(SEED, "acc/contraction", t)
        p = (2, 4, 6)[t % 3]
        a = random_skew(rng, 4, norm=rng.uniform(0.1, 3.0), p=np.inf)
        b = complex_gaussian(rng, 4)
        margin = sg.schatten_norm(b, p) + 1e-12 - sg.schatten_norm(sg.dexp(a, b), p)
        worst = min(worst, margin)
        bad += margin < 0
    announce(2, "dexp-contraction", bad == 0,
             f"{bad} violations, worst margin {worst:.2e} over 500 trials")


def test_criterion_03_inverse_growth_bound():
    worst, bad = -np.inf, 0
    for t in range(500):
        rng = substream(SEED, "acc/g-bound", t)
        p = (2, 4, 6)[t % 3]
        w = random_skew(rng, 4, norm=rng.uniform(0.05, np.pi / 2 - 1e-3), p=p)
        b = complex_gaussian(rng, 4)
        lhs = sg.schatten_norm(sg.f_ad_inverse_apply(w, b), p)
        rhs = sg.g_bound(sg.schatten_norm(w, np.inf)) * sg.schatten_norm(b, p)
        excess = lhs - rhs * (1 + 1e-8)
        worst = max(worst, excess / (1 + rhs))
        bad += excess > 0
    announce(3, "inverse-growth-bound", bad == 0,
             f"{bad} violations, worst rel excess {worst:.2e} over 500 trials")


def test_criterion_04_norm_equivalence():
    const = np.sqrt(1 - np.pi**2 / 12)
    worst, bad = np.inf, 0
    for t in range(500):
        rng = substream(SEED, "acc/equivalence", t)
        p = (2, 4, 6)[t % 3]
        u, v = haar_unitary(rng, 4), haar_unitary(rng, 4)
        d = sg.distance_p(u, v, p)
        chord = sg.schatten_norm(u - v, p)
        margin = min(chord - const * d, d - chord)
        worst = min(worst, margin)
        bad += margin < -1e-10
    announce(4, "norm-equivalence", bad == 0,
             f"constant {const:.5f}, {bad} violations, worst margin {worst:.2e}")


def test_criterion_05_one_parameter_minimality():
    worst, bad = np.inf, 0
    for t in range(100):
        rng = substream(SEED, "acc/minimality", t)
        p = (2, 4)[t % 2]
        z = random_skew(rng, 4, norm=rng.uniform(0.3, np.pi - 0.1), p=np.inf)
        rep = sg.minimality_experiment(z, 100, rng.uniform(0.1, 1.0), 200, p,
                                       seed=SEED + t)
        worst = min(worst, rep["worst_gap"])
        bad += rep["worst_gap"] < -1e-3
    announce(5, "fixed-endpoint-minimality", bad == 0,
             f"min excess {worst:.2e} over 100 x 100 competitors, N = 200")


def test_criterion_06_first_variation_formula():
    worst, bad = 0.0, 0
    for t in range(50):
        rng = substream(SEED, "acc/variation", t)
        p = (2, 4)[t % 2]
        x = random_skew(rng, 4, norm=rng.uniform(0.3, 1.5), p=np.inf)
        m1 = random_skew(rng, 4, norm=rng.uniform(0.2, 1.0), p=np.inf)
        m2 = random_skew(rng, 4, norm=rng.uniform(0.2, 1.0), p=np.inf)

        def family(s, tt, x=x, m1=m1, m2=m2):
            return sg.exp_skew(tt * x + s * (np.sin(np.pi * tt) * m1 + tt * m2))

        lhs, rhs = sg.first_variation_check(family, p)
        err = abs(lhs - rhs) / (1 + abs(lhs))
        worst = max(worst, err)
        bad += err > 1e-4
    announce(6, "first-variation", bad == 0,
             f"worst rel err {worst:.2e} over 50 families")


def test_criterion_07_convexity_profile():
    worst_gap, worst_d, bad = np.inf, 0.0, 0
    for t in range(100):
        rng = substream(SEED, "acc/convexity", t)
        p = (2, 4, 6)[t % 3]
        u = haar_unitary(rng, 4)
        v = random_skew(rng, 4, norm=rng.uniform(0.15, 0.6), p=p)
        z = random_skew(rng, 4, norm=rng.uniform(0.15, 0.6), p=p)
        beta = GeodesicSegment(u @ sg.exp_skew(v), z)
        prof = sg.convexity_profile(u, beta, 9, p)
        gap = float(np.min(prof.fd_second - prof.lower_bounds))
        worst_gap = min(worst_gap, gap)
        bad += gap < -1e-6
        d1 = np.max(np.abs(prof.f_prime - prof.fd_first)
                    / (1 + np.abs(prof.f_prime)))
        d2 = np.max(np.abs(prof.f_second - prof.fd_second)
                    / (1 + np.abs(prof.f_second)))
        worst_d = max(worst_d, d1, d2)
        bad += (d1 > 1e-5) + (d2 > 1e-5)
    announce(7, "convexity-profile", bad == 0,
             f"min bound gap {worst_gap:.2e}, worst derivative err {worst_d:.2e}")


def test_criterion_08_clarkson_and_semi_parallelogram():
    bad = 0
    for t in range(1000):
        rng = substream(SEED, "acc/clarkson", t)
        p = (2, 4, 6)[t % 3]
        lhs, rhs = sg.clarkson_check(complex_gaussian(rng, 4),
                                     complex_gaussian(rng, 4), p)
        bad += lhs > rhs * (1 + 1e-12)
    worst = np.inf
    for t in range(500):
        rng = substream(SEED, "acc/semipar", t)
        p = (2, 4, 6)[t % 3]
        r0 = np.pi / 4 if t % 2 else rng.uniform(0.3, np.pi / 4)
        u = haar_unitary(rng, 4)
        v = u @ sg.exp_skew(random_skew(rng, 4, norm=r0 * rng.uniform(0.05, 0.48), p=p))
        w = u @ sg.exp_skew(random_skew(rng, 4, norm=r0 * rng.uniform(0.05, 0.48), p=p))
        gamma = GeodesicSegment(v, sg.unitary_log(v.conj().T @ w))
        gap = sg.semi_parallelogram_gap(u, gamma, p, r0)
        worst = min(worst, gap)
        bad += gap < -1e-10
    announce(8, "clarkson+semi-parallelogram", bad == 0,
             f"1000 + 500 admissible instances, worst gap {worst:.2e}")


def test_criterion_09_geodesic_family_bound():
    cap = sg.g_bound(np.pi / 4)
    assert cap == pytest.approx(np.pi / (2 * np.sqrt(2)), abs=1e-14)
    worst, bad = -np.inf, 0
    for t in range(200):
        rng = substream(SEED, "acc/family", t)
        p = (2, 4)[t % 2]
        r0 = np.pi / 4
        u = haar_unitary(rng, 4)
        v = u @ sg.exp_skew(random_skew(rng, 4, norm=r0 * rng.uniform(0.1, 0.95), p=p))
        w = u @ sg.exp_skew(random_skew(rng, 4, norm=r0 * rng.uniform(0.1, 0.95), p=p))
        rep = sg.geodesic_family_bound(u, v, w, p, r0, t_points=21)
        worst = max(worst, rep["worst_gap"])
        bad += int(rep["worst_gap"] > 1e-10)
    announce(9, "geodesic-family-bound", bad == 0,
             f"growth cap {cap:.5f}, worst gap {worst:.2e}, 200 triples x 21 points")


def test_criterion_10_isometric_lifts():
    worst = {"defect": 0.0, "monotone": np.inf, "isometry": 0.0, "double": np.inf}
    bad = 0
    for t in range(100):
        rng = substream(SEED, "acc/lifts", t)
        p = (2, 4)[t % 2]
        spec = random_base_point(rng, 4, p)
        m1 = random_skew(rng, 4, norm=0.8, p=2)
        m2 = random_skew(rng, 4, norm=0.5, p=2)

        def curve(tt, m1=m1, m2=m2):
            return sg.exp_skew(tt * m1 + np.sin(np.pi * tt) * m2)

        res = sg.isometric_lift(curve, spec, p, n_steps=120)
        worst["defect"] = max(worst["defect"], res.defect)
        worst["monotone"] = min(worst["monotone"],
                                res.lengths["input"] - res.lengths["lift"])
        worst["isometry"] = max(worst["isometry"],
                                abs(res.lengths["orbit"] - res.lengths["lift"]))
        worst["double"] = min(worst["double"],
                              2 * res.lengths["input"] - res.lengths["isotropy"])
        bad += (res.defect > 1e-6) + (worst["monotone"] < -1e-9) \
            + (abs(res.lengths["orbit"] - res.lengths["lift"]) > 1e-5) \
            + (worst["double"] < -1e-9)
    cross_worst = 0.0
    for t in range(20):
        rng = substream(SEED, "acc/lifts-cross", t)
        spec = random_base_point(rng, 4, 2)
        m1 = random_skew(rng, 4, norm=0.8, p=2)
        m2 = random_skew(rng, 4, norm=0.5, p=2)

        def curve(tt, m1=m1, m2=m2):
            return sg.exp_skew(tt * m1 + np.sin(np.pi * tt) * m2)

        def orbit_curve(tt, curve=curve, a=spec.A):
            g = curve(tt)
            return g @ a @ g.conj().T

        res = sg.isometric_lift(curve, spec, 2, n_steps=120)
        hres = sg.horizontal_lift_p2(orbit_curve, spec, n_steps=120)
        cross_worst = max(cross_worst,
                          abs(res.lengths["lift"] - hres.lengths["lift"]))
        bad += cross_worst > 1e-6
    announce(10, "isometric-lifts", bad == 0,
             f"defect {worst['defect']:.1e}, isometry gap {worst['isometry']:.1e}, "
             f"p2 crosscheck {cross_worst:.1e} over 100 + 20 curves")


def test_criterion_11_endpoint_geodesics():
    worst_len, worst_res, bad = 0.0, 0.0, 0
    for t in range(30):
        rng = substream(SEED, "acc/endpoint", t)
        p = (2, 4, 6)[t % 3]
        spec = random_base_point(rng, 4, p)
        iso = spec.isotropy()
        w = random_skew(rng, 4, norm=1.0, p=p)
        z0 = w - sg.best_approximant_Q(w, iso, p)
        z0 *= rng.uniform(0.15, 0.9) * (np.pi / 4) / sg.schatten_norm(z0, p)
        x1 = sg.exp_skew(z0) @ spec.A @ sg.exp_skew(-z0)
        geo, info = sg.endpoint_geodesic(spec.A, x1, spec, p, seed=SEED + t)
        err = abs(info["length"] - sg.schatten_norm(z0, p))
        worst_len = max(worst_len, err)
        worst_res = max(worst_res, info["stationarity_residual"])
        bad += (err > 1e-5) + (info["stationarity_residual"] > 1e-8) \
            + (not info["certified"])
    announce(11, "endpoint-geodesics", bad == 0,
             f"worst length err {worst_len:.1e}, stationarity {worst_res:.1e} "
             f"over 30 planted instances")


def test_criterion_12_flat_sequence_and_sharp_constant():
    worst_p, bad = 0.0, 0
    for m in range(2, 65):
        row = sg.nonclosedness_demo(1.0 / np.arange(1, m + 1))
        worst_p = max(worst_p, abs(row["commutant_norm"] - 1 / np.sqrt(m)))
        bad += abs(row["commutant_norm"] - 1 / np.sqrt(m)) > 1e-12
        bad += row["commutator_norm"] ** 2 > row["bound"] ** 2 + 1e-12
    rng = substream(SEED, "acc/sharp")
    spec = random_base_point(rng, 4, 4)
    witness = sg.sharpness_witness(spec)
    lhs, rhs = sg.commutator_bound_check(spec, witness)
    bad += abs(lhs - rhs) > 1e-12
    announce(12, "flat-sequence+sharp-constant", bad == 0,
             f"commutant norm err {worst_p:.1e} (n = 2..64), "
             f"sharpness gap {abs(lhs - rhs):.1e}")
