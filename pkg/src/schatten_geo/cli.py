"""Command-line front end.

Subcommands: verify, geodesic, lift, distance, demo-nonclosed, convexity.
Configuration precedence is CLI flags over a TOML/JSON config file over
defaults; named tolerances are set with ``--tol.<name> <value>``.
Exit codes: 0 ok, 1 check violation, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .linalg import as_hermitian, as_unitary, load_matrix
from .metric import DiscretizedCurve, convexity_profile, distance_p
from .orbit import (
    NumericalError,
    OrbitSpec,
    endpoint_geodesic,
    isometric_lift,
    nonclosedness_demo,
)
from .reporting import ExperimentConfig, Report
from .rng import haar_unitary, substream
from .suites import SUITES, run_suites, _group_curve, _admissible_profile_config

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib


def _extract_tolerances(argv: list[str]) -> tuple[dict, list[str]]:
    """Pull ``--tol.<name> <value>`` / ``--tol.<name>=<value>`` out of argv."""
    tols: dict[str, float] = {}
    rest: list[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg.startswith("--tol."):
            name, eq, val = arg[6:].partition("=")
            if not eq:
                if i + 1 >= len(argv):
                    raise ValueError(f"missing value for --tol.{name}")
                val = argv[i + 1]
                i += 1
            tols[name] = float(val)
        else:
            rest.append(arg)
        i += 1
    return tols, rest


def _load_config(path: str) -> dict:
    with open(path, "rb") as fh:
        if path.endswith(".toml"):
            return tomllib.load(fh)
        return json.load(fh)


def _merge_config(args, tols: dict) -> ExperimentConfig:
    base: dict = {}
    if getattr(args, "config", None):
        base = _load_config(args.config)
    tolerances = dict(base.get("tolerances", {}))
    tolerances.update(tols)
    p = args.p if args.p is not None else base.get("p", 4)
    if isinstance(p, str):
        p = float("inf") if p == "inf" else int(p)
    extras = dict(base.get("extras", {}))
    return ExperimentConfig(
        seed=args.seed if args.seed is not None else base.get("seed", 7),
        n=args.n if args.n is not None else base.get("n", 4),
        p=p,
        trials=args.trials if args.trials is not None else base.get("trials"),
        tolerances=tolerances,
        extras=extras,
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schatten-geo",
        description="Geodesics, distances and lifts for p-Schatten unitary "
                    "groups and Hermitian orbits, with verification suites.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--n", type=int, default=None, help="matrix dimension")
        sp.add_argument("--p", default=None, help="even norm index or 'inf'")
        sp.add_argument("--trials", type=int, default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--config", default=None, help="TOML or JSON config file")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", default="all",
                    help=f"comma-separated suites or 'all'; known: {sorted(SUITES)}")
    common(sp)

    sp = sub.add_parser("geodesic", help="shortest orbit curve between endpoints")
    sp.add_argument("x0", help="Hermitian matrix JSON file (base point)")
    sp.add_argument("x1", help="Hermitian matrix JSON file (target point)")
    sp.add_argument("--spec", default=None, help="OrbitSpec JSON file (p, tau)")
    common(sp)

    sp = sub.add_parser("lift", help="isometric lift of a group/orbit curve")
    sp.add_argument("--spec", default=None, help="OrbitSpec JSON file")
    sp.add_argument("--curve", default=None,
                    help="DiscretizedCurve JSON of unitaries; random if omitted")
    sp.add_argument("--steps", type=int, default=200)
    common(sp)

    sp = sub.add_parser("distance", help="geodesic p-distance between unitaries")
    sp.add_argument("u", help="unitary matrix JSON file")
    sp.add_argument("v", help="unitary matrix JSON file")
    common(sp)

    sp = sub.add_parser("demo-nonclosed",
                        help="decay table for the flat-sequence demonstration")
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=64)
    sp.add_argument("--spacing", choices=("harmonic", "linear"), default="harmonic")
    sp.add_argument("--eigs", default=None,
                    help="explicit comma-separated eigenvalues (single row)")
    common(sp)

    sp = sub.add_parser("convexity", help="convexity profile on a random instance")
    sp.add_argument("--grid", type=int, default=21)
    common(sp)

    return parser


def _cmd_verify(args, cfg: ExperimentConfig) -> int:
    names = sorted(SUITES) if args.suite == "all" else args.suite.split(",")
    start = time.perf_counter()
    records = run_suites(names, cfg)
    report = Report("verify", {**cfg.to_dict(), "suites": names}, records,
                    wall_time=time.perf_counter() - start)
    _emit(report.to_json() if args.format == "json" else report.to_csv(), args.out)
    return report.exit_code


def _cmd_geodesic(args, cfg: ExperimentConfig) -> int:
    x0 = as_hermitian(load_matrix(args.x0), tol=cfg.tol("herm"))
    x1 = as_hermitian(load_matrix(args.x1), tol=cfg.tol("herm"))
    if args.spec:
        with open(args.spec) as fh:
            ref = OrbitSpec.from_json(json.load(fh))
        spec = OrbitSpec.create(x0, ref.p, ref.tau_cluster)
    else:
        spec = OrbitSpec.create(x0, cfg.p)
    geo, info = endpoint_geodesic(x0, x1, spec, seed=cfg.seed)
    payload = {"geodesic": geo.to_json(), **info,
               "certificate": "MINIMAL-CERTIFIED" if info["certified"]
               else "NO-CERTIFICATE"}
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0


def _cmd_lift(args, cfg: ExperimentConfig) -> int:
    rng = substream(cfg.seed, "cli/lift")
    if args.spec:
        with open(args.spec) as fh:
            spec = OrbitSpec.from_json(json.load(fh))
    else:
        v = haar_unitary(rng, cfg.n)
        spec = OrbitSpec.create((v * np.arange(cfg.n)) @ v.conj().T, cfg.p)
    if args.curve:
        with open(args.curve) as fh:
            curve = DiscretizedCurve.from_json(json.load(fh))
    else:
        curve = _group_curve(rng, spec.dim)
    result = isometric_lift(curve, spec, n_steps=args.steps)
    _emit(json.dumps(result.to_json(), indent=2, sort_keys=True), args.out)
    return 0


def _cmd_distance(args, cfg: ExperimentConfig) -> int:
    u = as_unitary(load_matrix(args.u), tol=cfg.tol("unit"))
    v = as_unitary(load_matrix(args.v), tol=cfg.tol("unit"))
    d = distance_p(u, v, cfg.p)
    _emit(json.dumps({"distance": d, "p": cfg.to_dict()["p"]}, sort_keys=True),
          args.out)
    return 0


def _cmd_demo_nonclosed(args, cfg: ExperimentConfig) -> int:
    if args.eigs:
        eig_lists = [[float(x) for x in args.eigs.split(",")]]
    else:
        if args.n_min < 2:
            raise ValueError("n must be at least 2: the commutator map "
                             "vanishes for a single eigenvalue")
        sizes = range(args.n_min, args.n_max + 1)
        if args.spacing == "harmonic":
            eig_lists = [1.0 / np.arange(1, m + 1) for m in sizes]
        else:
            eig_lists = [np.linspace(1.0, 2.0, m) for m in sizes]
    rows = [nonclosedness_demo(e) for e in eig_lists]
    if args.format == "csv":
        lines = ["n,commutant_norm,complement_norm,commutator_norm,ratio"]
        for r in rows:
            lines.append(f"{r['n']},{r['commutant_norm']!r},{r['complement_norm']!r},"
                         f"{r['commutator_norm']!r},{r['ratio']!r}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(json.dumps(rows, indent=2, sort_keys=True), args.out)
    return 0


def _cmd_convexity(args, cfg: ExperimentConfig) -> int:
    rng = substream(cfg.seed, "cli/convexity")
    u, beta = _admissible_profile_config(rng, cfg.n, cfg.p)
    prof = convexity_profile(u, beta, args.grid, cfg.p)
    payload = {
        "s_grid": prof.s_grid.tolist(),
        "f_values": prof.f_values.tolist(),
        "f_prime": prof.f_prime.tolist(),
        "f_second": prof.f_second.tolist(),
        "r_squared": prof.r_squared.tolist(),
        "lower_bounds": prof.lower_bounds.tolist(),
        "degenerate": prof.degenerate.tolist(),
        "violations": prof.violations,
        "worst_gap": prof.worst_gap,
        "config": cfg.to_dict(),
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0 if prof.violations == 0 else 1


_COMMANDS = {
    "verify": _cmd_verify,
    "geodesic": _cmd_geodesic,
    "lift": _cmd_lift,
    "distance": _cmd_distance,
    "demo-nonclosed": _cmd_demo_nonclosed,
    "convexity": _cmd_convexity,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        tols, rest = _extract_tolerances(argv)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser()
    try:
        args = parser.parse_args(rest)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _merge_config(args, tols)
        return _COMMANDS[args.command](args, cfg)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
