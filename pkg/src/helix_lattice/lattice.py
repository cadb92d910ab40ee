"""Affine lattices in 3-space and their separation constants.

For a lattice with independent basis v1, v2, v3 the two quantities of
interest are the shortest nonzero vector length (the minimal distance
between distinct lattice points) and a positive lower bound on the area of
any non-collinear lattice triangle.  The latter is obtained from the
shortest vector of the companion lattice spanned by v1 x v2, v2 x v3 and
v1 x v3: every lattice triangle's edge cross product is an integer
combination of those three vectors, so half that lattice's shortest vector
bounds every triangle area from below.  The bound need not be attained by
an actual triangle (not every integer combination arises as a pair of edge
minors), which is why the exhaustive oracle is exposed separately and no
equality is ever asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import BudgetExceededError, DomainError, SingularBasisError
from .geometry import Vec3

_SINGULAR_REL_TOL = 1e-12

# A pair of box combinations counts as collinear when the cross norm is
# below this times the product of the two norms.
_COLLINEAR_REL_TOL = 1e-9

DEFAULT_AREA_BUDGET = 10**8


@dataclass(frozen=True)
class AffineLattice:
    """Affine lattice {v0 + m v1 + n v2 + p v3 : m, n, p integers}."""

    v0: Vec3
    v1: Vec3
    v2: Vec3
    v3: Vec3

    def __post_init__(self):
        det = self.determinant()
        scale = self.v1.norm() * self.v2.norm() * self.v3.norm()
        if abs(det) <= _SINGULAR_REL_TOL * scale:
            raise SingularBasisError(det)

    def determinant(self) -> float:
        return self.v1.dot(self.v2.cross(self.v3))

    def basis_matrix(self) -> np.ndarray:
        """Basis as rows, so coefficients act by row-vector multiplication."""
        return np.array(
            [self.v1.as_tuple(), self.v2.as_tuple(), self.v3.as_tuple()], dtype=float
        )

    def point(self, m: int, n: int, p: int) -> Vec3:
        return self.v0 + m * self.v1 + n * self.v2 + p * self.v3

    @classmethod
    def standard(cls) -> "AffineLattice":
        return cls(
            Vec3.zero(), Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 0.0), Vec3(0.0, 0.0, 1.0)
        )

    @classmethod
    def from_rows(cls, rows) -> "AffineLattice":
        arr = np.asarray(rows, dtype=float).reshape(4, 3)
        return cls(*(Vec3.from_array(r) for r in arr))


def jacobi_eigenvalues(sym, rel_tol: float = 1e-14, max_sweeps: int = 64) -> tuple[float, float, float]:
    """Eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi rotations.

    Self-contained: sweeps the three off-diagonal pivots until the
    off-diagonal mass drops below rel_tol times the Frobenius norm.
    Returns the eigenvalues in ascending order.
    """
    a = np.array(sym, dtype=float)
    if a.shape != (3, 3):
        raise DomainError(f"expected a 3x3 matrix, got shape {a.shape}")
    if np.abs(a - a.T).max() > 1e-12 * max(1.0, np.abs(a).max()):
        raise DomainError("matrix is not symmetric")
    fro = math.sqrt(float((a * a).sum())) or 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * (a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2))
        if off <= rel_tol * fro:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = a[p, q]
            if apq == 0.0:
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(3)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
    lams = sorted(float(a[i, i]) for i in range(3))
    return (lams[0], lams[1], lams[2])


@dataclass(frozen=True)
class GramForm:
    """Matrix of pairwise basis dot products with its eigenvalues."""

    matrix: np.ndarray
    eigenvalues: tuple[float, float, float]

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[0]

    def quadratic(self, m) -> float:
        """m^T G m: squared norm of the integer combination m of the basis."""
        v = np.asarray(m, dtype=float).reshape(3)
        return float(v @ self.matrix @ v)


def gram_form(lattice: AffineLattice) -> GramForm:
    basis = lattice.basis_matrix()
    g = basis @ basis.T
    g = 0.5 * (g + g.T)  # exact symmetry despite rounding
    return GramForm(g, jacobi_eigenvalues(g))


def shortest_vector(lattice: AffineLattice) -> tuple[float, tuple[int, int, int]]:
    """Length and coefficients of the shortest nonzero lattice vector.

    Exhaustive enumeration over the certified coefficient box
    |m_i| <= ceil(best / sqrt(lambda1)); ties broken lexicographically on
    the coefficient triple.
    """
    g = gram_form(lattice)
    best_sq, m = _backend.svp_search(lattice.basis_matrix(), g.lambda1)
    d = math.sqrt(best_sq)
    if d < math.sqrt(g.lambda1) * (1.0 - 1e-9):
        raise AssertionError("shortest vector fell below the eigenvalue floor")
    return d, (int(m[0]), int(m[1]), int(m[2]))


def cross_lattice_basis(lattice: AffineLattice) -> tuple[Vec3, Vec3, Vec3]:
    """The companion basis v1 x v2, v2 x v3, v1 x v3 (always independent)."""
    return (
        lattice.v1.cross(lattice.v2),
        lattice.v2.cross(lattice.v3),
        lattice.v1.cross(lattice.v3),
    )


def min_area_lower_bound(lattice: AffineLattice) -> float:
    """Certified lower bound on the area of any non-collinear lattice triangle.

    Half the shortest nonzero vector of the cross-product companion lattice;
    see the module docstring for why this bounds, but need not equal, the
    true minimal triangle area.
    """
    w1, w2, w3 = cross_lattice_basis(lattice)
    companion = AffineLattice(Vec3.zero(), w1, w2, w3)
    d, _ = shortest_vector(companion)
    return 0.5 * d


def min_triangle_area_exhaustive(
    lattice: AffineLattice, coeff_bound: int, budget: int = DEFAULT_AREA_BUDGET
) -> float:
    """Minimal non-collinear triangle area by exhaustive pair enumeration.

    Considers every triangle whose two edge coefficient triples lie in the
    box |m_i| <= coeff_bound.  Raises BudgetExceededError (never truncates
    silently) when the pair count would exceed the budget.
    """
    if coeff_bound < 1:
        raise DomainError(f"coeff_bound must be at least 1, got {coeff_bound}")
    combos = (2 * coeff_bound + 1) ** 3
    cost = combos * combos
    if cost > budget:
        raise BudgetExceededError(
            f"exhaustive area scan needs {cost} pair evaluations (budget {budget})",
            cost=cost,
            budget=budget,
        )
    min_sq = _backend.pair_cross_min_sq(lattice.basis_matrix(), coeff_bound, _COLLINEAR_REL_TOL)
    if not math.isfinite(min_sq):
        raise AssertionError("no non-collinear pair found; basis should prevent this")
    return 0.5 * math.sqrt(min_sq)


@dataclass(frozen=True)
class LatticeConstants:
    """Separation constants of one lattice.

    d_min: shortest distance between distinct lattice points.
    a_min_lb: certified lower bound on non-collinear triangle areas.
    lambda1: smallest Gram eigenvalue (enumeration cutoff; d_min >= sqrt(lambda1)).
    a_min_exact: minimal triangle area from the exhaustive oracle, if run.
    """

    d_min: float
    d_min_coeffs: tuple[int, int, int]
    a_min_lb: float
    lambda1: float
    a_min_exact: float | None = None


def lattice_constants(
    lattice: AffineLattice,
    exhaustive_bound: int | None = None,
    budget: int = DEFAULT_AREA_BUDGET,
) -> LatticeConstants:
    """Compute all separation constants of a lattice in one call."""
    g = gram_form(lattice)
    d, coeffs = shortest_vector(lattice)
    a_lb = min_area_lower_bound(lattice)
    a_exact = None
    if exhaustive_bound is not None:
        a_exact = min_triangle_area_exhaustive(lattice, exhaustive_bound, budget)
    return LatticeConstants(
        d_min=d, d_min_coeffs=coeffs, a_min_lb=a_lb, lambda1=g.lambda1, a_min_exact=a_exact
    )
