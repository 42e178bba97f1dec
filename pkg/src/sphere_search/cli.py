"""Command line front end.

Subcommands: tour (generate and save an inspection tour), verify (coverage
check of a saved curve), sweep (competitive-ratio sweep over random target
hyperplanes, CSV output), cover (hemisphere covers and refutation), and
search (simulate one target hyperplane).

Exit codes: 0 success/pass, 1 verified failure (a witness was found or the
envelope was violated), 2 usage or format error. All randomness is seeded,
and sweep output is byte-identical for identical flags regardless of the
SPHERE_SEARCH_THREADS parallelism cap.
"""

import argparse
import hashlib
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .curvefile import CurveFormatError, read_curve, read_vertices, write_curve
from .geometry import Hyperplane, sample_unit_directions
from .search import build_doubling_strategy, simulate_search
from .tour import build_inspection_tour, tour_length
from .verify import (
    hemispheres_cover,
    hull_contains_on,
    refute_cover,
    sees_all_on,
    simplex_cover,
    sphere_test_points,
)

_ENV_THREADS = "SPHERE_SEARCH_THREADS"


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _thread_count() -> int:
    raw = os.environ.get(_ENV_THREADS, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_tour(args) -> int:
    if args.dim < 2:
        return _fail("--dim must be >= 2")
    if args.scale is not None and args.scale <= 0:
        return _fail("--scale must be positive")
    curve = build_inspection_tour(args.dim, args.scale)
    write_curve(args.out, curve)
    analytic = tour_length(args.dim)
    print(f"wrote {args.out} ({curve.vertices.shape[0]} vertices, dim {args.dim})")
    print(f"length:   {_g17(curve.length)}")
    if args.scale is None:
        print(f"analytic: {_g17(analytic)}")
        print(f"difference: {_g17(abs(curve.length - analytic))}")
    return 0


def cmd_verify(args) -> int:
    if args.samples < 1:
        return _fail("--samples must be >= 1")
    try:
        curve = read_curve(args.curve)
    except CurveFormatError as exc:
        return _fail(str(exc))
    pts = curve.subdivided_points(args.depth)
    rng = np.random.default_rng(args.seed)
    test = sphere_test_points(curve.dim, args.samples, rng, extra=curve.vertices)
    seen = sees_all_on(pts, test)
    hull = hull_contains_on(pts, test)
    print(f"test points: {seen.samples_used}")
    print(f"sees-all:             {'COVERED' if seen.covered else 'UNCOVERED'}")
    print(f"hull-contains-sphere: {'COVERED' if hull.covered else 'UNCOVERED'}")
    print(f"agree: {str(seen.covered == hull.covered).lower()}")
    if not seen.covered or not hull.covered:
        witness = seen.witness if seen.witness is not None else hull.witness
        print("witness: " + " ".join(_g17(x) for x in witness))
        return 1
    return 0


def _sweep_rows(strategy, ell, dim, seed, dirs, rhos, threads):
    bound_slope = 12.0 * ell
    bound_add = 3.0 * ell

    def one(i: int) -> str:
        u = dirs[i]
        rho = rhos[i]
        t = simulate_search(strategy, Hyperplane(u, rho))
        ok = t.traversed_length <= bound_slope * rho + bound_add
        dig = hashlib.sha256(u.tobytes()).hexdigest()[:16]
        return ",".join([
            str(dim), str(seed), _g17(rho), dig, _g17(t.traversed_length),
            str(t.phase), _g17(t.ratio), "true" if ok else "false",
        ])

    n = dirs.shape[0]
    if threads <= 1:
        return [one(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, range(n)))


def cmd_sweep(args) -> int:
    if args.dim < 2:
        return _fail("--dim must be >= 2")
    if args.trials < 1:
        return _fail("--trials must be >= 1")
    if not 0 < args.rho_min <= args.rho_max:
        return _fail("need 0 < --rho-min <= --rho-max")
    rng = np.random.default_rng(args.seed)
    dirs = sample_unit_directions(rng, args.dim, args.trials)
    rhos = np.exp(rng.uniform(np.log(args.rho_min), np.log(args.rho_max),
                              args.trials))
    base = build_inspection_tour(args.dim)
    strategy = build_doubling_strategy(base)
    ell = base.length
    rows = _sweep_rows(strategy, ell, args.dim, args.seed, dirs, rhos,
                       _thread_count())
    header = "dim,seed,rho,direction_hash,traversed_length,phase,ratio,envelope_ok"
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(header + "\n")
        fh.write("\n".join(rows) + "\n")
    ratios = [float(r.split(",")[6]) for r in rows]
    all_ok = all(r.endswith(",true") for r in rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    print(f"max ratio: {max(ratios):.6g}  (bound 12*l = {12 * ell:.6g}, l = {ell:.6g})")
    print(f"envelope: {'PASS' if all_ok else 'FAIL'}")
    return 0 if all_ok else 1


def cmd_cover(args) -> int:
    if args.dim < 1:
        return _fail("--dim must be >= 1")
    if args.samples < 1:
        return _fail("--samples must be >= 1")
    if args.refute is not None:
        try:
            poles = read_vertices(args.refute)
        except CurveFormatError as exc:
            return _fail(str(exc))
        if poles.shape[0] == 0:
            return _fail("pole file holds no poles")
        if poles.shape[1] != args.dim:
            return _fail(f"pole file is dim {poles.shape[1]}, expected {args.dim}")
        witness = refute_cover(poles)
        if witness is None:
            print("no witness found (expected for a covering set)")
            return 0
        worst = float((poles @ witness).max())
        print("witness: " + " ".join(_g17(x) for x in witness))
        print(f"max dot with poles: {_g17(worst)}")
        return 1
    poles = simplex_cover(args.dim)
    print(f"{poles.shape[0]} hemisphere poles for dim {args.dim}:")
    for row in poles:
        print("  " + " ".join(_g17(x) for x in row))
    rng = np.random.default_rng(args.seed)
    report = hemispheres_cover(poles, args.samples, rng)
    print(f"coverage over {report.samples_used} points: "
          f"{'PASS' if report.covered else 'FAIL'}")
    return 0 if report.covered else 1


def cmd_search(args) -> int:
    if args.dim < 2:
        return _fail("--dim must be >= 2")
    try:
        coords = [float(tok) for tok in args.normal.split(",")]
    except ValueError:
        return _fail("--normal must be a comma-separated list of numbers")
    if len(coords) != args.dim:
        return _fail(f"--normal has {len(coords)} coordinates, expected {args.dim}")
    n = np.asarray(coords)
    norm = np.linalg.norm(n)
    if norm == 0.0:
        return _fail("--normal must be nonzero")
    if args.rho < 0:
        return _fail("--rho must be >= 0")
    base = build_inspection_tour(args.dim)
    strategy = build_doubling_strategy(base)
    t = simulate_search(strategy, Hyperplane(n / norm, args.rho))
    ell = base.length
    print(f"traversed length: {_g17(t.traversed_length)}")
    print("hit point: " + " ".join(_g17(x) for x in t.hit_point))
    print(f"phase: {t.phase}")
    print(f"ratio: {_g17(t.ratio)}")
    bound = 12.0 * ell * args.rho + 3.0 * ell
    print(f"envelope bound: {_g17(bound)} "
          f"({'ok' if t.traversed_length <= bound else 'VIOLATED'})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sphere-search",
        description="Sphere inspection tours and competitive hyperplane search.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tour", help="generate an inspection tour and save it")
    t.add_argument("--dim", type=int, required=True)
    t.add_argument("--scale", type=float, default=None,
                   help="vertex distance from origin (default sqrt(dim))")
    t.add_argument("--out", required=True, help="output curve file (JSON)")
    t.set_defaults(func=cmd_tour)

    v = sub.add_parser("verify", help="check that a saved curve inspects the sphere")
    v.add_argument("--curve", required=True)
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--depth", type=int, default=6,
                   help="midpoint subdivision depth per segment")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="competitive-ratio sweep, CSV output")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--rho-min", type=float, required=True)
    s.add_argument("--rho-max", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True, help="output CSV path")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("cover", help="hemisphere covers: exhibit or refute")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--refute", default=None,
                   help="curve/pole file; search for an uncovered point")
    c.add_argument("--samples", type=int, default=100_000)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_cover)

    q = sub.add_parser("search", help="simulate the search for one hyperplane")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--normal", required=True,
                   help="comma-separated normal vector (normalized internally)")
    q.add_argument("--rho", type=float, required=True,
                   help="distance of the hyperplane from the origin")
    q.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
