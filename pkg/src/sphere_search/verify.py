"""Coverage and visibility verification: sees-all checks, convex-hull
containment via the support function, hemisphere covers, and witness search.

Containment and visibility are two routes to the same fact: a vertex set
sees every sphere point exactly when its hull contains the sphere, which in
turn holds exactly when the support function is >= 1 in every direction.
Checks here are sampling-based; sample sets are augmented with the known
worst-case directions (axes and diagonals) so that the structured failure
modes cannot slip between random samples.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import _kernels
from .geometry import (
    EPS_GEO,
    PolylineCurve,
    as_points,
    normalize,
    sample_unit_directions,
    sees_any,
    support_max,
)

# witnesses from refute_cover certify max_i dot(pole_i, x) <= this
REFUTE_TOL = 1e-7

_DIAGONAL_DIM_CAP = 12  # 2**d sign patterns; skip beyond this


@dataclass(frozen=True)
class CoverReport:
    """Outcome of a sampled coverage check.

    witness is an uncovered unit point when covered is False, else None.
    """

    covered: bool
    witness: np.ndarray | None
    samples_used: int


def structured_directions(dim: int, extra=None) -> np.ndarray:
    """Axis, diagonal, and caller-supplied unit directions.

    These are the support-function minimizers of the structured vertex sets
    used throughout; putting them in every sample set makes the known
    near-miss geometries deterministic instead of luck-of-the-draw.
    """
    rows = [np.eye(dim), -np.eye(dim)]
    if dim <= _DIAGONAL_DIM_CAP:
        signs = np.array(list(product((1.0, -1.0), repeat=dim)))
        rows.append(signs / np.sqrt(dim))
    if extra is not None:
        extra = as_points(extra)
        norms = np.linalg.norm(extra, axis=1)
        keep = norms > 0.0
        if keep.any():
            rows.append(extra[keep] / norms[keep, None])
    return np.vstack(rows)


def sphere_test_points(dim: int, samples: int, rng: np.random.Generator,
                       extra=None, structured: bool = True) -> np.ndarray:
    """Deterministically ordered test set: structured directions, then
    `samples` uniform draws."""
    if samples < 1:
        raise ValueError("need samples >= 1")
    random_part = sample_unit_directions(rng, dim, samples)
    if not structured:
        return random_part
    return np.ascontiguousarray(
        np.vstack([structured_directions(dim, extra), random_part])
    )


def sees_all_on(V, points) -> CoverReport:
    """Visibility verdict for an explicit test set, first unseen point wins."""
    V = as_points(V)
    points = as_points(points)
    mask = sees_any(points, V)
    if mask.all():
        return CoverReport(True, None, points.shape[0])
    idx = int(np.argmin(mask))
    return CoverReport(False, points[idx].copy(), points.shape[0])


def hull_contains_on(V, points) -> CoverReport:
    """Support-function verdict on an explicit test set.

    The hull of V contains the sphere iff max_v dot(u, v) >= 1 for every
    unit direction u; a direction with support < 1 is the witness.
    """
    V = as_points(V)
    points = as_points(points)
    sup = support_max(points, V)
    bad = sup < 1.0 - EPS_GEO
    if not bad.any():
        return CoverReport(True, None, points.shape[0])
    idx = int(np.argmax(bad))
    return CoverReport(False, points[idx].copy(), points.shape[0])


def _checked_test_points(V, samples, rng, structured):
    V = as_points(V)
    if V.shape[0] == 0:
        raise ValueError("empty vertex set")
    pts = sphere_test_points(V.shape[1], samples, rng, extra=V,
                             structured=structured)
    return V, pts


def vertex_set_sees_all(V, samples: int, rng: np.random.Generator,
                        structured: bool = True) -> CoverReport:
    """Does some vertex of V see each sampled sphere point?"""
    V, pts = _checked_test_points(V, samples, rng, structured)
    return sees_all_on(V, pts)


def hull_contains_sphere(V, samples: int, rng: np.random.Generator,
                         structured: bool = True) -> CoverReport:
    """Does conv(V) contain the unit sphere, judged on sampled directions?"""
    V, pts = _checked_test_points(V, samples, rng, structured)
    return hull_contains_on(V, pts)


def visibility_hull_agreement(V, samples: int, rng: np.random.Generator,
                              structured: bool = True) -> bool:
    """Run both verdicts on one shared sample set and report agreement.

    The two must always agree; this is a differential check, not a feature.
    """
    V, pts = _checked_test_points(V, samples, rng, structured)
    return sees_all_on(V, pts).covered == hull_contains_on(V, pts).covered


def simplex_cover(dim: int) -> np.ndarray:
    """d+1 unit poles of open hemispheres that cover the sphere.

    The poles point at the vertices of a regular simplex: project the d+1
    standard basis vectors of a (d+1)-space onto the hyperplane orthogonal
    to the all-ones vector, normalize, and rotate that hyperplane onto the
    first d coordinates. Pairwise inner products are -1/d and the poles sum
    to zero, so every unit x has a strictly positive dot with some pole.
    """
    if dim < 1:
        raise ValueError("need dim >= 1")
    m = dim + 1
    proj = np.eye(m) - 1.0 / m
    proj /= np.sqrt(1.0 - 1.0 / m)
    # Householder map sending the all-ones direction to the last axis, so the
    # projected simplex lives in the first `dim` coordinates.
    w = np.full(m, 1.0 / np.sqrt(m))
    u = w - np.eye(m)[m - 1]
    H = np.eye(m) - 2.0 * np.outer(u, u) / (u @ u)
    emb = proj @ H.T
    poles = emb[:, :dim]
    poles /= np.linalg.norm(poles, axis=1)[:, None]
    return np.ascontiguousarray(poles)


def hemispheres_cover(poles, samples: int, rng: np.random.Generator,
                      structured: bool = True) -> CoverReport:
    """Sampled check that open hemispheres with these poles cover the sphere."""
    poles = as_points(poles)
    if poles.shape[0] == 0:
        raise ValueError("empty pole set")
    pts = sphere_test_points(poles.shape[1], samples, rng, extra=poles,
                             structured=structured)
    best = support_max(pts, poles)
    bad = best <= 0.0
    if not bad.any():
        return CoverReport(True, None, pts.shape[0])
    idx = int(np.argmax(bad))
    return CoverReport(False, pts[idx].copy(), pts.shape[0])


def _descent_starts(vecs: np.ndarray, n_starts: int,
                    rng: np.random.Generator) -> np.ndarray:
    d = vecs.shape[1]
    rows = []
    mean = vecs.mean(axis=0)
    if np.linalg.norm(mean) > 0.0:
        rows.append(-mean)
    rows.extend(-vecs)
    # Linear-algebra starts: a null direction of the pole matrix is already
    # orthogonal to every pole, and for a square full-rank system the solve
    # puts every dot at exactly -1 before normalization.
    _, sv, vt = np.linalg.svd(vecs)
    tol = sv.max(initial=0.0) * max(vecs.shape) * np.finfo(np.float64).eps
    null = vt[np.sum(sv > tol):]
    for row in null:
        rows.append(row)
        rows.append(-row)
    try:
        x, *_ = np.linalg.lstsq(vecs, -np.ones(vecs.shape[0]), rcond=None)
        if np.linalg.norm(x) > 0.0:
            rows.append(x)
    except np.linalg.LinAlgError:
        pass
    while len(rows) < n_starts:
        rows.append(rng.standard_normal(d))
    return np.ascontiguousarray(np.vstack(rows))


def refute_cover(poles) -> np.ndarray | None:
    """Find a unit point outside every open hemisphere, if one exists.

    Minimizes max_i dot(pole_i, x) over the unit sphere by multi-start
    projected subgradient descent; with at most d poles in d dimensions the
    minimum is <= 0, so a witness with all dots <= REFUTE_TOL always exists
    and is found. With more poles the descent may bottom out above the
    tolerance, in which case None is returned.
    """
    poles = as_points(poles)
    if poles.shape[0] == 0:
        raise ValueError("empty pole set: every point refutes it")
    rng = np.random.default_rng(20240 + poles.shape[1])
    starts = _descent_starts(poles, 32, rng)
    x, val = _kernels.minimax_descent(
        poles, starts, 0.1, 2000, 1e-12, 50, -1e-4
    )
    if val <= REFUTE_TOL:
        return x
    return None


def find_uncovered_witness(curve: PolylineCurve, samples: int,
                           rng: np.random.Generator,
                           subdivision_depth: int = 6) -> np.ndarray | None:
    """Search for a sphere point the curve does not see.

    Visibility from the curve is approximated by visibility from its vertex
    set after recursive midpoint subdivision; unseen samples are sharpened by
    descending the support function (growing the gap 1 - support) before the
    final visibility re-check.
    """
    pts = curve.subdivided_points(subdivision_depth)
    test = sphere_test_points(curve.dim, samples, rng, extra=curve.vertices)
    seen = sees_any(test, pts)
    if seen.all():
        return None
    unseen_idx = np.nonzero(~seen)[0]
    first = test[unseen_idx[0]]
    sup = support_max(test[unseen_idx], pts)
    deepest = test[unseen_idx[int(np.argmin(sup))]]
    jitter = first + 0.1 * rng.standard_normal((30, curve.dim))
    starts = np.ascontiguousarray(np.vstack([[first], [deepest], jitter]))
    refined, val = _kernels.minimax_descent(pts, starts, 0.1, 200, 1e-12, 50,
                                            -np.inf)
    if val < 1.0 - EPS_GEO and not sees_any(refined[None, :], pts)[0]:
        return refined
    return normalize(first)
