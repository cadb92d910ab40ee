import numpy as np
import pytest

from helix_lattice.geometry import RigidMotion, Vec3
from helix_lattice.lattice import AffineLattice


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random rotation via QR with a sign fix."""
    a = rng.normal(size=(3, 3))
    q, r = np.linalg.qr(a)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0.0:
        q[:, 0] = -q[:, 0]
    return q


def random_motion(rng: np.random.Generator, shift: float = 5.0) -> RigidMotion:
    return RigidMotion(random_rotation(rng), Vec3.from_array(rng.uniform(-shift, shift, 3)))


def random_lattice(rng: np.random.Generator, lo=-3.0, hi=3.0, min_rel_det=0.05) -> AffineLattice:
    """Random well-conditioned lattice with basis entries in [lo, hi]."""
    while True:
        rows = rng.uniform(lo, hi, size=(3, 3))
        norms = np.linalg.norm(rows, axis=1)
        det = abs(np.linalg.det(rows))
        if norms.min() > 0.3 and det > min_rel_det * norms.prod():
            origin = rng.uniform(-1.0, 1.0, 3)
            return AffineLattice.from_rows(np.vstack([origin, rows]))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0xC0FFEE)
