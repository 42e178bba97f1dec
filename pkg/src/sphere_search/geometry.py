"""Vector, hyperplane, and polyline primitives plus the visibility predicate.

Conventions: points are float64 numpy vectors, unit directions are validated
to EPS_NORM, and all on-surface / on-plane comparisons use EPS_GEO.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels

# unit-norm validation; double precision keeps well below this at d <= 1e4
EPS_NORM = 1e-12
# on-surface / on-hyperplane tolerance
EPS_GEO = 1e-9


def as_vector(x) -> np.ndarray:
    v = np.ascontiguousarray(x, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] < 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.isfinite(v).all():
        raise ValueError("vector has non-finite coordinates")
    return v


def as_points(x) -> np.ndarray:
    """Validate an (n, d) array of row points."""
    p = np.ascontiguousarray(x, dtype=np.float64)
    if p.ndim == 1:
        p = p.reshape(1, -1)
    if p.ndim != 2 or p.shape[1] < 1:
        raise ValueError(f"expected an (n, d) point array, got shape {p.shape}")
    if not np.isfinite(p).all():
        raise ValueError("point array has non-finite coordinates")
    return p


def norm2(v) -> float:
    """Euclidean norm, rejecting non-finite input."""
    return float(np.linalg.norm(as_vector(v)))


def normalize(v) -> np.ndarray:
    v = as_vector(v)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


def is_unit(v, eps: float = EPS_NORM) -> bool:
    return abs(np.linalg.norm(v) - 1.0) <= eps


def require_unit(v, what: str = "direction") -> np.ndarray:
    v = as_vector(v)
    if not is_unit(v):
        raise ValueError(f"{what} is not unit length: |v| = {np.linalg.norm(v)!r}")
    return v


@dataclass(frozen=True)
class Hyperplane:
    """The set {x : dot(normal, x) = offset} with unit normal and offset >= 0.

    Construction canonicalizes: a negative offset flips the normal, and when
    the offset is zero the normal's first nonzero coordinate is made positive,
    so equal hyperplanes compare equal componentwise.
    """

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = require_unit(self.normal, "hyperplane normal").copy()
        rho = float(self.offset)
        if not np.isfinite(rho):
            raise ValueError("hyperplane offset must be finite")
        if rho < 0.0:
            n = -n
            rho = -rho
        elif rho == 0.0:
            nz = np.nonzero(n)[0]
            if nz.size and n[nz[0]] < 0.0:
                n = -n
        n.setflags(write=False)
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", rho)

    @property
    def dim(self) -> int:
        return self.normal.shape[0]

    def signed_gap(self, x) -> float:
        return float(self.normal @ np.asarray(x, dtype=np.float64)) - self.offset

    def contains(self, x, eps: float = EPS_GEO) -> bool:
        return abs(self.signed_gap(x)) <= eps


@dataclass(frozen=True)
class PolylineCurve:
    """An ordered list of vertices, optionally closed by a wrap segment."""

    vertices: np.ndarray
    closed: bool = False
    _seg_lengths: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=np.float64, order="C")  # own copy
        if v.ndim != 2 or v.shape[1] < 1:
            raise ValueError(f"vertices must be an (n, d) array, got shape {v.shape}")
        if not np.isfinite(v).all():
            raise ValueError("curve has non-finite vertices")
        need = 3 if self.closed else 2
        if v.shape[0] < need:
            kind = "closed" if self.closed else "open"
            raise ValueError(f"a {kind} curve needs at least {need} vertices")
        v.setflags(write=False)
        ends = np.vstack([v[1:], v[:1]]) if self.closed else v[1:]
        starts = v if self.closed else v[:-1]
        seg = np.linalg.norm(ends - starts, axis=1)
        seg.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "closed", bool(self.closed))
        object.__setattr__(self, "_seg_lengths", seg)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def num_segments(self) -> int:
        return self._seg_lengths.shape[0]

    def segment_lengths(self) -> np.ndarray:
        return self._seg_lengths

    @property
    def length(self) -> float:
        return float(self._seg_lengths.sum())

    def segment(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        a = self.vertices[i]
        b = self.vertices[(i + 1) % self.vertices.shape[0]]
        return a, b

    def scaled(self, factor: float) -> "PolylineCurve":
        return PolylineCurve(self.vertices * float(factor), self.closed)

    def point_at(self, arc: float) -> np.ndarray:
        """Point at a given arc length from the start vertex."""
        total = self.length
        if not 0.0 <= arc <= total * (1.0 + 1e-12):
            raise ValueError(f"arc {arc} outside [0, {total}]")
        cum = np.concatenate([[0.0], np.cumsum(self._seg_lengths)])
        i = min(int(np.searchsorted(cum, arc, side="right")) - 1, self.num_segments - 1)
        a, b = self.segment(i)
        seg = self._seg_lengths[i]
        t = 0.0 if seg == 0.0 else (arc - cum[i]) / seg
        return a + min(t, 1.0) * (b - a)

    def slice_arc(self, lo: float, hi: float) -> "PolylineCurve":
        """Open sub-curve between two arc positions along the traversal."""
        if not lo < hi:
            raise ValueError("need lo < hi")
        cum = np.concatenate([[0.0], np.cumsum(self._seg_lengths)])
        pts = [self.point_at(lo)]
        inner = np.nonzero((cum > lo) & (cum < hi))[0]
        for idx in inner:
            p = self.vertices[idx % self.vertices.shape[0]]
            if np.linalg.norm(p - pts[-1]) > 0.0:
                pts.append(p)
        end = self.point_at(hi)
        if np.linalg.norm(end - pts[-1]) > 0.0:
            pts.append(end)
        if len(pts) < 2:  # degenerate slice; keep both endpoints
            pts = [self.point_at(lo), end]
        return PolylineCurve(np.asarray(pts), closed=False)

    def prefix(self, arc: float) -> "PolylineCurve":
        """Open prefix of the traversal up to a given arc length."""
        if arc <= 0.0:
            raise ValueError("prefix arc must be positive")
        return self.slice_arc(0.0, min(arc, self.length))

    def chop(self, n: int) -> list["PolylineCurve"]:
        """Split the traversal into n contiguous portions of equal arc length."""
        if n < 1:
            raise ValueError("need n >= 1 portions")
        total = self.length
        cuts = np.linspace(0.0, total, n + 1)
        return [self.slice_arc(cuts[i], cuts[i + 1]) for i in range(n)]

    def subdivided_points(self, depth: int = 0) -> np.ndarray:
        """All vertices plus recursive midpoint subdivision of every segment.

        Depth k places 2**k - 1 extra points per segment; depth 0 returns the
        plain vertex set.
        """
        if depth < 0:
            raise ValueError("depth must be >= 0")
        v = self.vertices
        if depth == 0:
            return np.ascontiguousarray(v)
        pieces = 1 << depth
        ts = np.arange(pieces) / pieces  # start of segment + interior points
        ends = np.vstack([v[1:], v[:1]]) if self.closed else v[1:]
        starts = v if self.closed else v[:-1]
        blocks = starts[:, None, :] + ts[None, :, None] * (ends - starts)[:, None, :]
        pts = blocks.reshape(-1, v.shape[1])
        if not self.closed:
            pts = np.vstack([pts, v[-1:]])
        return np.ascontiguousarray(pts)


def segment_ball_min(p, q) -> float:
    """Minimum of ||(1-t) p + t q||^2 over t in [0, 1).

    The open right endpoint matters: when the squared norm decreases all the
    way to q the infimum equals ||q||^2 and the segment grazes the ball only
    at q.
    """
    p = as_vector(p)
    q = as_vector(q)
    w = q - p
    a = float(w @ w)
    if a == 0.0:
        return float(q @ q)
    b = float(p @ w)
    c = float(p @ p)
    t = -b / a
    if t <= 0.0:
        return c
    if t >= 1.0:
        return a + 2.0 * b + c
    return c - b * b / a


def sees(p, q, eps: float = EPS_GEO) -> bool:
    """Whether point p sees sphere point q.

    True iff the segment from p to q meets the closed unit ball only at q,
    i.e. the squared norm along the segment never drops below 1 - eps before
    reaching q. Tangency counts as seeing. q must be unit length.
    """
    p = as_vector(p)
    q = require_unit(q, "sphere point")
    if p.shape != q.shape:
        raise ValueError("p and q must have equal dimension")
    return segment_ball_min(p, q) >= 1.0 - eps


def sees_any(points, verts, eps: float = EPS_GEO) -> np.ndarray:
    """Vectorized visibility: mask of sphere points seen by >= 1 vertex."""
    pts = as_points(points)
    vs = as_points(verts)
    if pts.shape[1] != vs.shape[1]:
        raise ValueError("points and verts must have equal dimension")
    return _kernels.sees_any(pts, vs, eps)


def first_hit(curve: PolylineCurve, plane: Hyperplane,
              eps: float = EPS_GEO) -> tuple[float, np.ndarray] | None:
    """Earliest intersection of a polyline traversal with a hyperplane.

    Returns (arc_length, point) for the first curve point lying on the plane
    within eps, or None when the curve never meets it.
    """
    if curve.dim != plane.dim:
        raise ValueError("curve and hyperplane must have equal dimension")
    idx, t = _kernels.first_hit_scan(
        curve.vertices, curve.closed, plane.normal, plane.offset, eps
    )
    if idx < 0:
        return None
    seg = curve.segment_lengths()
    arc = float(seg[:idx].sum() + t * seg[idx])
    a, b = curve.segment(idx)
    return arc, a + t * (b - a)


def support_max(dirs, verts) -> np.ndarray:
    """Support function h(u) = max_v dot(u, v) of a vertex set, per direction."""
    ds = as_points(dirs)
    vs = as_points(verts)
    if ds.shape[1] != vs.shape[1]:
        raise ValueError("dirs and verts must have equal dimension")
    return _kernels.support_max(ds, vs)


def sample_unit_directions(rng: np.random.Generator, dim: int, n: int) -> np.ndarray:
    """n isotropic unit vectors: normalized standard normal draws."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    out = rng.standard_normal((n, dim))
    norms = np.linalg.norm(out, axis=1)
    bad = norms < 1e-300
    while bad.any():  # probability ~0 redraw
        out[bad] = rng.standard_normal((int(bad.sum()), dim))
        norms[bad] = np.linalg.norm(out[bad], axis=1)
        bad = norms < 1e-300
    return out / norms[:, None]


def sample_unit_direction(rng: np.random.Generator, dim: int) -> np.ndarray:
    return sample_unit_directions(rng, dim, 1)[0]
