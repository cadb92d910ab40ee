"""Enumeration of lattice points near a helix arc and on circles.

The tube query is resolved in two stages: the arc's axis-aligned bounding
box (inflated by the tube radius) is pushed through the inverse basis to
obtain certified integer coefficient bounds, then every candidate in that
box is tested against the true point-to-curve distance.  Correctness of the
coefficient bounds follows from linearity: the extremes of each coefficient
over a box are attained at box corners.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import BudgetExceededError, DomainError
from .geometry import TWO_PI, Helix, Vec3
from .lattice import AffineLattice

DEFAULT_WINDOW_CAP = 64.0 * math.pi
DEFAULT_SAMPLES_PER_PERIOD = 16
DEFAULT_TUBE_BUDGET = 10**8

# Closed-tube membership slack: points at distance within [delta, delta+slack]
# are kept, so exactly-on-curve points survive rounding.
TUBE_BOUNDARY_SLACK = 1e-12

# Safety inflation applied to each coefficient bound before rounding to
# integers, absorbing the rounding of the inverse-basis corner transform.
_COEFF_BOUND_INFLATION = 1e-9

# Candidate count below which slab threading is pointless.
_PARALLEL_THRESHOLD = 4096


@dataclass(frozen=True)
class TubeQuery:
    """Search for lattice points within delta of a helix arc."""

    helix: Helix
    lattice: AffineLattice
    delta: float
    t_min: float
    t_max: float
    samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD
    window_cap: float = DEFAULT_WINDOW_CAP
    budget: int = DEFAULT_TUBE_BUDGET

    def __post_init__(self):
        if not math.isfinite(self.delta) or self.delta < 0.0:
            raise DomainError(f"delta must be non-negative, got {self.delta}")
        if not (math.isfinite(self.t_min) and math.isfinite(self.t_max)):
            raise DomainError("window endpoints must be finite")
        if not self.t_min < self.t_max:
            raise DomainError(f"window is empty: [{self.t_min}, {self.t_max}]")
        if self.t_max - self.t_min > self.window_cap:
            raise DomainError(
                f"window width {self.t_max - self.t_min:.6g} exceeds the cap {self.window_cap:.6g}"
            )
        if self.samples_per_period < 2:
            raise DomainError("samples_per_period must be at least 2")
        if self.budget < 1:
            raise DomainError("budget must be positive")


@dataclass(frozen=True)
class NearPoint:
    """One lattice point found inside a tube query."""

    coeffs: tuple[int, int, int]
    point: Vec3
    t_star: float
    dist: float


def point_to_helix_distance(
    helix: Helix,
    point: Vec3,
    t_min: float,
    t_max: float,
    samples_per_period: int = DEFAULT_SAMPLES_PER_PERIOD,
    window_cap: float = DEFAULT_WINDOW_CAP,
) -> tuple[float, float]:
    """Global minimum of t -> |point - helix(t)| over the closed window.

    The derivative factor g(t) = (point - r(t)) . r'(t) is scanned for sign
    changes on a grid of samples_per_period points per turn and each bracket
    is bisected; window endpoints always compete as candidates.
    Returns (distance, nearest parameter).
    """
    if not (math.isfinite(t_min) and math.isfinite(t_max)) or not t_min < t_max:
        raise DomainError(f"window is empty: [{t_min}, {t_max}]")
    if t_max - t_min > window_cap:
        raise DomainError(f"window width {t_max - t_min:.6g} exceeds the cap {window_cap:.6g}")
    if samples_per_period < 2:
        raise DomainError("samples_per_period must be at least 2")
    return _backend.helix_distance(
        helix.a, helix.b, point.x, point.y, point.z, t_min, t_max, samples_per_period
    )


def _trig_range(lo: float, hi: float, shift: float) -> tuple[float, float]:
    """Range of cos(t + shift) for t in [lo, hi]."""
    vals = [math.cos(lo + shift), math.cos(hi + shift)]
    # peak/trough at t + shift = 2k*pi and (2k+1)*pi
    for target, value in ((0.0, 1.0), (math.pi, -1.0)):
        k = math.ceil((lo + shift - target) / TWO_PI)
        if target + k * TWO_PI <= hi + shift:
            vals.append(value)
    return min(vals), max(vals)


def _arc_bounding_box(helix: Helix, t_min: float, t_max: float) -> tuple[np.ndarray, np.ndarray]:
    cx_lo, cx_hi = _trig_range(t_min, t_max, 0.0)
    # sin t = cos(t - pi/2)
    sy_lo, sy_hi = _trig_range(t_min, t_max, -0.5 * math.pi)
    z0 = helix.b * t_min
    z1 = helix.b * t_max
    lo = np.array([helix.a * cx_lo, helix.a * sy_lo, min(z0, z1)])
    hi = np.array([helix.a * cx_hi, helix.a * sy_hi, max(z0, z1)])
    return lo, hi


def _coefficient_box(
    lattice: AffineLattice, box_lo: np.ndarray, box_hi: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Integer coefficient bounds whose lattice points cover the box."""
    inv = np.linalg.inv(lattice.basis_matrix())
    corners = np.array(
        [
            [box_lo[0], box_lo[1], box_lo[2]],
            [box_lo[0], box_lo[1], box_hi[2]],
            [box_lo[0], box_hi[1], box_lo[2]],
            [box_lo[0], box_hi[1], box_hi[2]],
            [box_hi[0], box_lo[1], box_lo[2]],
            [box_hi[0], box_lo[1], box_hi[2]],
            [box_hi[0], box_hi[1], box_lo[2]],
            [box_hi[0], box_hi[1], box_hi[2]],
        ]
    )
    coeffs = (corners - lattice.v0.as_array()) @ inv
    c_lo = coeffs.min(axis=0)
    c_hi = coeffs.max(axis=0)
    c_lo = c_lo - _COEFF_BOUND_INFLATION * (1.0 + np.abs(c_lo))
    c_hi = c_hi + _COEFF_BOUND_INFLATION * (1.0 + np.abs(c_hi))
    return np.ceil(c_lo).astype(np.int64), np.floor(c_hi).astype(np.int64)


def _split_slabs(lo0: int, hi0: int, parts: int) -> list[tuple[int, int]]:
    total = hi0 - lo0 + 1
    parts = max(1, min(parts, total))
    size = total // parts
    extra = total % parts
    slabs = []
    start = lo0
    for i in range(parts):
        stop = start + size - 1 + (1 if i < extra else 0)
        slabs.append((start, stop))
        start = stop + 1
    return slabs


def enumerate_tube(query: TubeQuery) -> list[NearPoint]:
    """All lattice points within delta of the helix arc, sorted by parameter.

    Completeness: every lattice point inside the inflated arc bounding box
    has its coefficients inside the scanned integer box, and membership is
    decided by the global point-to-curve distance over the window.  Points
    are deduplicated by integer coefficients by construction.
    """
    helix = query.helix
    lattice = query.lattice
    box_lo, box_hi = _arc_bounding_box(helix, query.t_min, query.t_max)
    box_lo -= query.delta
    box_hi += query.delta
    c_lo, c_hi = _coefficient_box(lattice, box_lo, box_hi)
    if np.any(c_lo > c_hi):
        return []
    volume = int(np.prod((c_hi - c_lo + 1).astype(object)))
    if volume > query.budget:
        raise BudgetExceededError(
            f"candidate box {c_lo.tolist()}..{c_hi.tolist()} holds {volume} points "
            f"(budget {query.budget})",
            cost=volume,
            budget=query.budget,
        )

    basis = lattice.basis_matrix()
    origin = lattice.v0.as_array()

    def run(slab: tuple[int, int]):
        lo = np.array([slab[0], c_lo[1], c_lo[2]], dtype=np.int64)
        hi = np.array([slab[1], c_hi[1], c_hi[2]], dtype=np.int64)
        return _backend.tube_filter(
            basis,
            origin,
            helix.a,
            helix.b,
            query.t_min,
            query.t_max,
            query.delta,
            TUBE_BOUNDARY_SLACK,
            lo,
            hi,
            query.samples_per_period,
        )

    workers = _backend.worker_count()
    if workers > 1 and volume >= _PARALLEL_THRESHOLD:
        slabs = _split_slabs(int(c_lo[0]), int(c_hi[0]), workers)
        with ThreadPoolExecutor(max_workers=len(slabs)) as pool:
            parts = list(pool.map(run, slabs))
    else:
        parts = [run((int(c_lo[0]), int(c_hi[0])))]

    points: list[NearPoint] = []
    for coeffs, t_star, dist in parts:
        for row, t, d in zip(coeffs, t_star, dist):
            m, n, p = (int(row[0]), int(row[1]), int(row[2]))
            points.append(
                NearPoint(coeffs=(m, n, p), point=lattice.point(m, n, p), t_star=float(t), dist=float(d))
            )
    points.sort(key=lambda pt: (pt.t_star, pt.coeffs))
    return points


def circle_lattice_points(n: int) -> list[tuple[int, int]]:
    """All integer pairs (x, y) with x^2 + y^2 == n, sorted by angle.

    Exact integer arithmetic throughout (isqrt-based perfect-square tests).
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    found = set()
    for x in range(math.isqrt(n) + 1):
        rem = n - x * x
        y = math.isqrt(rem)
        if y * y != rem:
            continue
        for sx in {x, -x}:
            for sy in {y, -y}:
                found.add((sx, sy))
    return sorted(found, key=lambda p: math.atan2(p[1], p[0]))
