"""Helix geometry: canonical parametrization, rigid motions, and exact
chord/triangle closed forms.

The canonical helix with radius ``a`` and rise ``b`` per radian of turn is
the curve t -> (a cos t, a sin t, b t).  Its curvature and torsion are
kappa = a/(a^2+b^2) and tau = b/(a^2+b^2), and the map (kappa, tau) <->
(a, b) is an involution, so a helix can be specified either way.  Chord
lengths and triangle areas of points on the curve depend only on the
parameter gaps and have closed forms implemented here next to the direct
vector arithmetic they replace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi

# Below this |x| the sin(x)/x quotient is replaced by its series; keeps the
# difference of two near-equal sinc values from losing all its digits.
_SINC_SERIES_CUTOFF = 1e-4


def sinc(x: float) -> float:
    """sin(x)/x, with the series 1 - x^2/6 + x^4/120 near zero."""
    if abs(x) < _SINC_SERIES_CUTOFF:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


@dataclass(frozen=True)
class Vec3:
    """Point or direction in 3-space with finite double components."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise DomainError(f"Vec3 components must be finite, got ({self.x}, {self.y}, {self.z})")

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def distance_to(self, other: "Vec3") -> float:
        return (self - other).norm()

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    @classmethod
    def from_array(cls, arr) -> "Vec3":
        a = np.asarray(arr, dtype=float).reshape(3)
        return cls(float(a[0]), float(a[1]), float(a[2]))

    @classmethod
    def zero(cls) -> "Vec3":
        return cls(0.0, 0.0, 0.0)


def triangle_area(p: Vec3, q: Vec3, r: Vec3) -> float:
    """Area of the triangle pqr via the cross product."""
    return 0.5 * (q - p).cross(r - p).norm()


@dataclass(frozen=True)
class Helix:
    """Constant-curvature, constant-torsion curve in canonical pose.

    Holds both parameter pairs; use the constructors below, which keep the
    round-trip identities kappa = a/(a^2+b^2), tau = b/(a^2+b^2) exact to
    rounding.  Degenerate curves (a == 0: an axis line; b == 0: a circle)
    are representable through :meth:`from_radius_pitch` so the closed forms
    can be exercised on their limiting cases; curvature/torsion input
    requires both strictly positive.
    """

    kappa: float
    tau: float
    a: float
    b: float

    def __post_init__(self):
        for name in ("kappa", "tau", "a", "b"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"helix field {name} must be finite and non-negative, got {v}")
        if self.a == 0.0 and self.b == 0.0:
            raise DomainError("helix needs a positive radius or pitch rate")

    @classmethod
    def from_curvature_torsion(cls, kappa: float, tau: float) -> "Helix":
        if not (math.isfinite(kappa) and math.isfinite(tau)):
            raise DomainError("curvature and torsion must be finite")
        if kappa <= 0.0 or tau <= 0.0:
            raise DomainError(f"curvature and torsion must be positive, got ({kappa}, {tau})")
        s = kappa * kappa + tau * tau
        return cls(kappa=kappa, tau=tau, a=kappa / s, b=tau / s)

    @classmethod
    def from_radius_pitch(cls, a: float, b: float) -> "Helix":
        if not (math.isfinite(a) and math.isfinite(b)) or a < 0.0 or b < 0.0:
            raise DomainError(f"radius and pitch rate must be finite and non-negative, got ({a}, {b})")
        if a == 0.0 and b == 0.0:
            raise DomainError("radius and pitch rate cannot both vanish")
        s = a * a + b * b
        return cls(kappa=a / s, tau=b / s, a=a, b=b)

    @property
    def speed(self) -> float:
        """ds/dt: arclength travelled per unit of canonical parameter."""
        return math.hypot(self.a, self.b)

    def point(self, t: float) -> Vec3:
        if not math.isfinite(t):
            raise DomainError(f"parameter must be finite, got {t}")
        return Vec3(self.a * math.cos(t), self.a * math.sin(t), self.b * t)

    def arclength(self, t0: float, t1: float) -> float:
        """Length of the arc between parameters t0 and t1."""
        return abs(t1 - t0) * self.speed

    def param_from_arclength(self, s: float) -> float:
        return s / self.speed


def helix_from_curvature_torsion(kappa: float, tau: float) -> Helix:
    """Helix with the given positive curvature and torsion."""
    return Helix.from_curvature_torsion(kappa, tau)


def helix_point(helix: Helix, t: float) -> Vec3:
    """Curve point (a cos t, a sin t, b t)."""
    return helix.point(t)


def helix_arclength(helix: Helix, t0: float, t1: float) -> float:
    return helix.arclength(t0, t1)


def chord_length_sq(helix: Helix, gap: float) -> float:
    """Squared chord between curve points a parameter gap apart.

    Equals 4 a^2 sin^2(gap/2) + b^2 gap^2, independent of where the gap is
    placed along the curve.
    """
    if not math.isfinite(gap) or gap <= 0.0:
        raise DomainError(f"gap must be positive and finite, got {gap}")
    s = math.sin(0.5 * gap)
    return 4.0 * helix.a * helix.a * s * s + helix.b * helix.b * gap * gap


@dataclass(frozen=True)
class ArcTriple:
    """Three increasing parameter values t0 < t1 < t2 on one curve."""

    t0: float
    t1: float
    t2: float

    def __post_init__(self):
        for name in ("t0", "t1", "t2"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"arc parameter {name} must be finite")
        if not (self.t0 < self.t1 < self.t2):
            raise DomainError(f"arc parameters must increase strictly: {self.t0}, {self.t1}, {self.t2}")

    @property
    def h1(self) -> float:
        return self.t1 - self.t0

    @property
    def h2(self) -> float:
        return self.t2 - self.t1

    @classmethod
    def from_gaps(cls, t0: float, h1: float, h2: float) -> "ArcTriple":
        return cls(t0, t0 + h1, t0 + h1 + h2)


class AreaTerms(NamedTuple):
    """Squared-area decomposition for three points on a helix.

    t1: circular component (scales with a^4)
    t2: pitch-mismatch component (scales with a^2 b^2, vanishes for h1 == h2)
    t3: cross component (scales with a^2 b^2)
    area_sq: (t1 + t2 + t3) / 4
    """

    t1: float
    t2: float
    t3: float
    area_sq: float


def triangle_area_sq_closed_form(helix: Helix, arc: ArcTriple) -> AreaTerms:
    """Squared area of the triangle of curve points at arc.t0 < arc.t1 < arc.t2.

    All three terms are non-negative for gaps below a full turn, so the
    decomposition also certifies non-collinearity whenever one term is
    positive.
    """
    a, b = helix.a, helix.b
    h1, h2 = arc.h1, arc.h2
    s1 = math.sin(0.5 * h1)
    s2 = math.sin(0.5 * h2)
    s12 = math.sin(0.5 * (h1 + h2))
    q12 = math.sin(0.25 * (h1 + h2))
    a2 = a * a
    b2 = b * b
    t1 = 16.0 * a2 * a2 * s1 * s1 * s2 * s2 * s12 * s12
    d = sinc(0.5 * h2) - sinc(0.5 * h1)
    t2 = a2 * b2 * h1 * h1 * h2 * h2 * d * d
    t3 = 16.0 * a2 * b2 * h1 * h2 * s1 * s2 * q12 * q12
    return AreaTerms(t1, t2, t3, (t1 + t2 + t3) / 4.0)


_ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class RigidMotion:
    """Orientation-preserving isometry x -> R x + c."""

    rotation: np.ndarray
    translation: Vec3

    def __post_init__(self):
        rot = np.array(self.rotation, dtype=float)
        if rot.shape != (3, 3):
            raise DomainError(f"rotation must be 3x3, got shape {rot.shape}")
        dev = np.abs(rot.T @ rot - np.eye(3)).max()
        det = float(np.linalg.det(rot))
        if dev > _ORTHO_TOL or abs(det - 1.0) > _ORTHO_TOL:
            raise DomainError(f"rotation is not special orthogonal (deviation {dev:.3g}, det {det:.12g})")
        rot.setflags(write=False)
        object.__setattr__(self, "rotation", rot)

    def apply(self, p: Vec3) -> Vec3:
        r = self.rotation
        return Vec3(
            r[0, 0] * p.x + r[0, 1] * p.y + r[0, 2] * p.z + self.translation.x,
            r[1, 0] * p.x + r[1, 1] * p.y + r[1, 2] * p.z + self.translation.y,
            r[2, 0] * p.x + r[2, 1] * p.y + r[2, 2] * p.z + self.translation.z,
        )

    def apply_many(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return pts @ self.rotation.T + self.translation.as_array()

    def compose(self, inner: "RigidMotion") -> "RigidMotion":
        """Motion equivalent to applying ``inner`` first, then ``self``."""
        rot = self.rotation @ inner.rotation
        trans = self.apply(inner.translation)
        return RigidMotion(rot, trans)

    def inverse(self) -> "RigidMotion":
        rot = self.rotation.T.copy()
        t = self.translation
        return RigidMotion(rot, Vec3.from_array(-(rot @ t.as_array())))

    @classmethod
    def identity(cls) -> "RigidMotion":
        return cls(np.eye(3), Vec3.zero())


@dataclass(frozen=True)
class GeneralHelix:
    """Helix in arbitrary pose.

    The point at parameter t is

        axis_point + radius cos(t + phase) u + radius sin(t + phase) v
                   + pitch_rate * t * axis_direction

    where (u, v, axis_direction) is the right-handed frame returned by
    :meth:`frame` (u is derived deterministically from the axis, so `phase`
    is meaningful on its own).  Only right-handed helices are representable:
    pitch_rate must be positive.
    """

    axis_point: Vec3
    axis_direction: Vec3
    radius: float
    pitch_rate: float
    phase: float = 0.0

    def __post_init__(self):
        n = self.axis_direction.norm()
        if abs(n - 1.0) > 1e-12:
            raise DomainError(f"axis_direction must be a unit vector (norm {n!r})")
        if not math.isfinite(self.radius) or self.radius <= 0.0:
            raise DomainError(f"radius must be positive, got {self.radius}")
        if not math.isfinite(self.pitch_rate) or self.pitch_rate <= 0.0:
            raise DomainError(f"pitch_rate must be positive, got {self.pitch_rate}")
        if not math.isfinite(self.phase):
            raise DomainError("phase must be finite")

    def frame(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Right-handed orthonormal frame (u, v, w) with w along the axis.

        u points along the standard basis vector least aligned with the
        axis, projected orthogonal to it; v completes the frame.
        """
        w = self.axis_direction.as_array()
        w = w / np.linalg.norm(w)
        k = int(np.argmin(np.abs(w)))
        e = np.zeros(3)
        e[k] = 1.0
        u = e - np.dot(e, w) * w
        u = u / np.linalg.norm(u)
        v = np.cross(w, u)
        return u, v, w

    def point(self, t: float) -> Vec3:
        u, v, w = self.frame()
        ang = t + self.phase
        arr = (
            self.axis_point.as_array()
            + self.radius * math.cos(ang) * u
            + self.radius * math.sin(ang) * v
            + self.pitch_rate * t * w
        )
        return Vec3.from_array(arr)


def canonicalize(g: GeneralHelix) -> tuple[Helix, RigidMotion]:
    """Rigid motion taking a posed helix onto its canonical parametrization.

    Returns (helix, motion) with motion(g.point(t)) == helix.point(t + g.phase)
    for every t; in particular distances and triangle areas of sampled points
    are preserved.
    """
    u, v, w = g.frame()
    frame = np.column_stack([u, v, w])
    rot = frame.T
    offset = g.pitch_rate * g.phase * w - g.axis_point.as_array()
    motion = RigidMotion(rot, Vec3.from_array(rot @ offset))
    return Helix.from_radius_pitch(g.radius, g.pitch_rate), motion
