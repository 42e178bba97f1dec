"""Hot numeric kernels with two interchangeable backends.

Every kernel exists twice: a numba ``@njit`` build of the loop implementation
and a vectorized pure-numpy fallback. The active backend is chosen once at
import time from the ``SPHERE_SEARCH_BACKEND`` environment variable:

    unset / "auto"  -> numba when importable, numpy otherwise
    "numba"         -> numba, ImportError if unavailable
    "numpy"         -> pure numpy, numba never imported

Both backends implement identical math; ``benchmarks/bench_kernels.py``
compares them. All kernels expect float64 C-contiguous arrays.
"""

import os

import numpy as np

_ENV_VAR = "SPHERE_SEARCH_BACKEND"


def _resolve_backend() -> str:
    want = os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto"
    if want == "numpy":
        return "numpy"
    if want in ("auto", "numba"):
        try:
            import numba  # noqa: F401
            return "numba"
        except ImportError:
            if want == "numba":
                raise ImportError(
                    f"{_ENV_VAR}=numba requested but numba is not installed"
                )
            return "numpy"
    raise ValueError(f"unrecognized {_ENV_VAR}={want!r} (use auto, numba, or numpy)")


BACKEND = _resolve_backend()


# ---------------------------------------------------------------------------
# loop bodies (compiled under numba; the numpy twins below are vectorized)
# ---------------------------------------------------------------------------

def _sees_any_loops(points, verts, eps):
    # seen(i) iff some vertex v sees sphere point p: the squared norm of the
    # segment v -> p, minimized over parameter t in [0, 1), stays >= 1 - eps.
    n, d = points.shape
    m = verts.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        for j in range(m):
            a = 0.0
            b = 0.0
            c = 0.0
            for k in range(d):
                w = points[i, k] - verts[j, k]
                a += w * w
                b += verts[j, k] * w
                c += verts[j, k] * verts[j, k]
            if a == 0.0:
                gmin = 1.0  # degenerate segment: v coincides with p
            else:
                t = -b / a
                if t <= 0.0:
                    gmin = c
                elif t >= 1.0:
                    gmin = a + 2.0 * b + c
                else:
                    gmin = c - b * b / a
            if gmin >= 1.0 - eps:
                out[i] = True
                break
    return out


def _first_hit_scan_loops(verts, closed, normal, rho, eps):
    # Earliest (segment, parameter) where the polyline meets the hyperplane
    # dot(normal, x) = rho. Per segment the signed gap is linear, so it
    # vanishes at the start, at an interior sign change, or at the end;
    # eps only decides whether an endpoint counts as on-plane.
    nv, d = verts.shape
    f = np.empty(nv)
    for i in range(nv):
        s = 0.0
        for k in range(d):
            s += normal[k] * verts[i, k]
        f[i] = s - rho
    nseg = nv if closed else nv - 1
    for i in range(nseg):
        j = i + 1
        if j == nv:
            j = 0
        fa = f[i]
        fb = f[j]
        if abs(fa) <= eps:
            return i, 0.0
        if fa * fb < 0.0:
            return i, fa / (fa - fb)
        if abs(fb) <= eps:
            return i, 1.0
    return -1, 0.0


def _support_max_loops(dirs, verts):
    n, d = dirs.shape
    m = verts.shape[0]
    out = np.empty(n)
    for i in range(n):
        best = -np.inf
        for j in range(m):
            s = 0.0
            for k in range(d):
                s += dirs[i, k] * verts[j, k]
            if s > best:
                best = s
        out[i] = best
    return out


def _minimax_descent_loops(vecs, starts, step0, max_iter, tol_improve,
                           patience, target):
    # Projected subgradient descent of f(x) = max_j dot(vecs[j], x) over the
    # unit sphere, restarted from each row of `starts`. Tracks the best unit
    # point ever visited; a restart stops when the best value has not improved
    # by tol_improve for `patience` steps, everything stops at `target`.
    k, d = vecs.shape
    best_val = np.inf
    best_x = np.zeros(d)
    x = np.empty(d)
    for s in range(starts.shape[0]):
        nrm = 0.0
        for t in range(d):
            nrm += starts[s, t] * starts[s, t]
        nrm = np.sqrt(nrm)
        if nrm == 0.0:
            continue
        for t in range(d):
            x[t] = starts[s, t] / nrm
        stall = 0
        for it in range(1, max_iter + 1):
            fmax = -np.inf
            jmax = 0
            for j in range(k):
                v = 0.0
                for t in range(d):
                    v += vecs[j, t] * x[t]
                if v > fmax:
                    fmax = v
                    jmax = j
            if fmax < best_val - tol_improve:
                best_val = fmax
                for t in range(d):
                    best_x[t] = x[t]
                stall = 0
            else:
                stall += 1
            if best_val <= target:
                return best_x, best_val
            if stall >= patience:
                break
            step = step0 / np.sqrt(it)
            nrm = 0.0
            for t in range(d):
                x[t] -= step * vecs[jmax, t]
                nrm += x[t] * x[t]
            nrm = np.sqrt(nrm)
            if nrm == 0.0:
                break
            for t in range(d):
                x[t] /= nrm
    return best_x, best_val


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

_CHUNK = 8192


def sees_any_numpy(points, verts, eps):
    n = points.shape[0]
    out = np.empty(n, dtype=np.bool_)
    vv = np.einsum("jk,jk->j", verts, verts)
    for lo in range(0, n, _CHUNK):
        p = points[lo:lo + _CHUNK]
        w = p[:, None, :] - verts[None, :, :]
        a = np.einsum("ijk,ijk->ij", w, w)
        b = np.einsum("jk,ijk->ij", verts, w)
        a_safe = np.where(a == 0.0, 1.0, a)
        t = -b / a_safe
        gmin = np.where(
            t <= 0.0, vv[None, :],
            np.where(t >= 1.0, a + 2.0 * b + vv[None, :], vv[None, :] - b * b / a_safe),
        )
        gmin = np.where(a == 0.0, 1.0, gmin)
        out[lo:lo + _CHUNK] = (gmin >= 1.0 - eps).any(axis=1)
    return out


def first_hit_scan_numpy(verts, closed, normal, rho, eps):
    f = verts @ normal - rho
    fa = f if closed else f[:-1]
    fb = np.roll(f, -1) if closed else f[1:]
    start_on = np.abs(fa) <= eps
    cross = (~start_on) & (fa * fb < 0.0)
    end_on = (~start_on) & (~cross) & (np.abs(fb) <= eps)
    hit = start_on | cross | end_on
    if not hit.any():
        return -1, 0.0
    i = int(np.argmax(hit))
    if start_on[i]:
        return i, 0.0
    if cross[i]:
        return i, float(fa[i] / (fa[i] - fb[i]))
    return i, 1.0


def support_max_numpy(dirs, verts):
    n = dirs.shape[0]
    out = np.empty(n)
    for lo in range(0, n, _CHUNK):
        out[lo:lo + _CHUNK] = (dirs[lo:lo + _CHUNK] @ verts.T).max(axis=1)
    return out


def minimax_descent_numpy(vecs, starts, step0, max_iter, tol_improve,
                          patience, target):
    d = vecs.shape[1]
    best_val = np.inf
    best_x = np.zeros(d)
    for s in range(starts.shape[0]):
        nrm = np.sqrt(starts[s] @ starts[s])
        if nrm == 0.0:
            continue
        x = starts[s] / nrm
        stall = 0
        for it in range(1, max_iter + 1):
            vals = vecs @ x
            jmax = int(np.argmax(vals))
            fmax = vals[jmax]
            if fmax < best_val - tol_improve:
                best_val = fmax
                best_x = x.copy()
                stall = 0
            else:
                stall += 1
            if best_val <= target:
                return best_x, float(best_val)
            if stall >= patience:
                break
            x = x - (step0 / np.sqrt(it)) * vecs[jmax]
            nrm = np.sqrt(x @ x)
            if nrm == 0.0:
                break
            x /= nrm
    return best_x, float(best_val)


# ---------------------------------------------------------------------------
# backend binding
# ---------------------------------------------------------------------------

if BACKEND == "numba":
    from numba import njit

    _jit = njit(cache=True, nogil=True)
    sees_any_numba = _jit(_sees_any_loops)
    first_hit_scan_numba = _jit(_first_hit_scan_loops)
    support_max_numba = _jit(_support_max_loops)
    minimax_descent_numba = _jit(_minimax_descent_loops)

    sees_any = sees_any_numba
    first_hit_scan = first_hit_scan_numba
    support_max = support_max_numba
    minimax_descent = minimax_descent_numba
else:
    sees_any_numba = None
    first_hit_scan_numba = None
    support_max_numba = None
    minimax_descent_numba = None

    sees_any = sees_any_numpy
    first_hit_scan = first_hit_scan_numpy
    support_max = support_max_numpy
    minimax_descent = minimax_descent_numpy
