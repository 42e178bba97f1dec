"""Doubling search strategy for finding an unknown hyperplane, built from a
closed curve that inspects the unit sphere, plus the reverse extraction of an
inspecting curve from any competitive search path.

Phase i of the strategy walks from the origin out to the base curve's start
vertex scaled by 2**i, traverses the scaled loop, and returns to the origin.
A loop that inspects the sphere sees both points at distance 2**i along any
normal, so the scaled loop crosses every hyperplane within that distance;
phase i therefore finishes off all targets with offset <= 2**i while
traversing at most 3 * 2**i times the loop length.
"""

from dataclasses import dataclass

import numpy as np

from .geometry import EPS_GEO, Hyperplane, PolylineCurve, first_hit, norm2


@dataclass(frozen=True)
class DoublingStrategy:
    """A closed inspecting base curve with its phase-doubling bookkeeping."""

    base_curve: PolylineCurve
    anchor: np.ndarray
    max_phases: int = 64

    def __post_init__(self):
        if not self.base_curve.closed:
            raise ValueError("the base curve of a doubling strategy must be closed")
        if self.max_phases < 1:
            raise ValueError("need max_phases >= 1")
        anchor = np.asarray(self.anchor, dtype=np.float64)
        if anchor.shape != (self.base_curve.dim,):
            raise ValueError("anchor must be a base-curve vertex")
        if norm2(anchor - self.base_curve.vertices[0]) != 0.0:
            raise ValueError("anchor must equal the base curve's first vertex")
        # a closed inspecting curve always passes within its own length of
        # the hyperplane through the origin normal to the anchor
        if norm2(anchor) > self.base_curve.length:
            raise ValueError("anchor farther from origin than the curve length; "
                             "base cannot inspect the sphere")

    @property
    def base_length(self) -> float:
        return self.base_curve.length

    @property
    def dim(self) -> int:
        return self.base_curve.dim


@dataclass(frozen=True)
class SearchTranscript:
    """One simulated search: what was traversed before hitting the target."""

    target: Hyperplane
    traversed_length: float
    hit_point: np.ndarray
    phase: int
    ratio: float

    def __post_init__(self):
        tol = EPS_GEO * max(1.0, self.target.offset)
        if abs(self.target.signed_gap(self.hit_point)) > tol:
            raise ValueError("hit point does not lie on the target hyperplane")
        if self.traversed_length < self.target.offset - tol:
            raise ValueError("traversed length below the target's distance")


def build_doubling_strategy(base: PolylineCurve,
                            max_phases: int = 64) -> DoublingStrategy:
    """Wrap a closed inspecting curve; its first vertex anchors every phase."""
    if not base.closed:
        raise ValueError("doubling strategies require a closed base curve")
    return DoublingStrategy(base, base.vertices[0].copy(), max_phases)


def phase_path(strategy: DoublingStrategy, phase: int) -> PolylineCurve:
    """The open polyline walked in one phase: out, around the scaled loop, back."""
    if not 0 <= phase < strategy.max_phases:
        raise ValueError(f"phase {phase} outside [0, {strategy.max_phases})")
    s = 2.0 ** phase
    loop = strategy.base_curve.vertices * s
    origin = np.zeros((1, strategy.dim))
    verts = np.vstack([origin, loop, loop[:1], origin])
    return PolylineCurve(verts, closed=False)


def phase_length(strategy: DoublingStrategy, phase: int) -> float:
    return 2.0 ** phase * (2.0 * norm2(strategy.anchor) + strategy.base_length)


def simulate_search(strategy: DoublingStrategy,
                    target: Hyperplane) -> SearchTranscript:
    """Walk phases until the target hyperplane is first touched.

    A target at offset rho is reached no later than the first phase whose
    scale reaches rho; running out of phases means the base curve does not
    inspect the sphere, which is an error in the input.
    """
    if target.dim != strategy.dim:
        raise ValueError("target dimension does not match the strategy")
    if target.offset == 0.0:
        return SearchTranscript(target, 0.0, np.zeros(strategy.dim), 0, 0.0)
    walked = 0.0
    for phase in range(strategy.max_phases):
        path = phase_path(strategy, phase)
        hit = first_hit(path, target)
        if hit is not None:
            arc, point = hit
            traversed = walked + arc
            return SearchTranscript(target, traversed, point, phase,
                                    traversed / target.offset)
        walked += path.length
    raise RuntimeError(
        f"no hit within {strategy.max_phases} phases; the base curve "
        "does not inspect the sphere"
    )


def check_envelope(transcripts, base_length: float) -> bool:
    """All transcripts within traversed <= 12 * len * rho + 3 * len."""
    ell = float(base_length)
    return all(
        t.traversed_length <= 12.0 * ell * t.target.offset + 3.0 * ell
        for t in transcripts
    )


def strategy_path(strategy: DoublingStrategy, phases: int) -> PolylineCurve:
    """Phases 0..phases concatenated into one open polyline from the origin."""
    if not 0 <= phases < strategy.max_phases:
        raise ValueError(f"phases {phases} outside [0, {strategy.max_phases})")
    origin = np.zeros((1, strategy.dim))
    parts = [origin]
    for phase in range(phases + 1):
        loop = strategy.base_curve.vertices * (2.0 ** phase)
        parts.extend([loop, loop[:1], origin])
    return PolylineCurve(np.vstack(parts), closed=False)


def extract_inspection_curve(path: PolylineCurve, c: float, alpha: float,
                             eps: float, directions) -> PolylineCurve:
    """Turn a competitive search path into a short sphere-inspecting curve.

    For each supplied unit direction u the path must cross the hyperplane
    dot(u, x) = alpha / eps; the prefix up to the latest such first crossing,
    rescaled by eps / alpha, then touches the tangent plane at every u and
    hence sees all of them. If the path really is c-competitive with additive
    constant alpha, the result has length at most c + eps.
    """
    if c <= 0.0 or alpha <= 0.0 or eps <= 0.0:
        raise ValueError("c, alpha, eps must all be positive")
    directions = np.asarray(directions, dtype=np.float64)
    if directions.ndim != 2 or directions.shape[0] == 0:
        raise ValueError("need a nonempty (n, d) array of directions")
    if norm2(path.vertices[0]) > EPS_GEO:
        raise ValueError("search path must start at the origin")
    radius = alpha / eps
    t_star = 0.0
    for i, u in enumerate(directions):
        hit = first_hit(path, Hyperplane(u, radius))
        if hit is None:
            raise ValueError(
                f"path never reaches the target family at radius {radius} "
                f"(direction index {i}); it is not competitive at that scale"
            )
        t_star = max(t_star, hit[0])
    return path.prefix(t_star).scaled(eps / alpha)
