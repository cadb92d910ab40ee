"""Lattice points close to a helix: geometry, constants, enumeration, and
bound verification.

The library is organized along the pipeline:

- :mod:`helix_lattice.geometry` — canonical helix parametrization, rigid
  motions, and the closed-form chord/triangle-area expressions;
- :mod:`helix_lattice.lattice` — affine lattices, Gram forms, shortest
  vectors, and triangle-area floors;
- :mod:`helix_lattice.enumeration` — lattice points inside a tube around a
  helix arc, plus integer points on circles;
- :mod:`helix_lattice.verify` — evaluation and empirical verification of the
  separation bounds;
- :mod:`helix_lattice.cli` — the ``helix-lattice`` command.

Hot kernels run in a compiled extension when it was built at install time,
with a NumPy fallback otherwise (see :func:`helix_lattice.backend_name`).
"""

from ._backend import backend_name
from .enumeration import (
    NearPoint,
    TubeQuery,
    circle_lattice_points,
    enumerate_tube,
    point_to_helix_distance,
)
from .errors import (
    BudgetExceededError,
    DomainError,
    HelixLatticeError,
    PreconditionError,
    SingularBasisError,
)
from .geometry import (
    ArcTriple,
    AreaTerms,
    GeneralHelix,
    Helix,
    RigidMotion,
    Vec3,
    canonicalize,
    chord_length_sq,
    helix_arclength,
    helix_from_curvature_torsion,
    helix_point,
    sinc,
    triangle_area,
    triangle_area_sq_closed_form,
)
from .lattice import (
    AffineLattice,
    GramForm,
    LatticeConstants,
    cross_lattice_basis,
    gram_form,
    jacobi_eigenvalues,
    lattice_constants,
    min_area_lower_bound,
    min_triangle_area_exhaustive,
    shortest_vector,
)
from .verify import (
    BoundReport,
    TheoremId,
    check_area_perturbation,
    check_area_perturbation_single,
    check_bound_chain,
    check_sine_inequalities,
    check_t2_bound,
    chain_constant_facts,
    corollary_applies,
    corollary_chord_bound,
    delta_admissible_max,
    on_helix_bounds,
    triple_separation_bound,
    verify_corollary,
    verify_near_helix,
    verify_on_helix,
    verify_schinzel,
)

__version__ = "0.1.0"

__all__ = [
    "ArcTriple",
    "AreaTerms",
    "AffineLattice",
    "BoundReport",
    "BudgetExceededError",
    "DomainError",
    "GeneralHelix",
    "GramForm",
    "Helix",
    "HelixLatticeError",
    "LatticeConstants",
    "NearPoint",
    "PreconditionError",
    "RigidMotion",
    "SingularBasisError",
    "TheoremId",
    "TubeQuery",
    "Vec3",
    "backend_name",
    "canonicalize",
    "chain_constant_facts",
    "check_area_perturbation",
    "check_area_perturbation_single",
    "check_bound_chain",
    "check_sine_inequalities",
    "check_t2_bound",
    "chord_length_sq",
    "circle_lattice_points",
    "corollary_applies",
    "corollary_chord_bound",
    "cross_lattice_basis",
    "delta_admissible_max",
    "enumerate_tube",
    "gram_form",
    "helix_arclength",
    "helix_from_curvature_torsion",
    "helix_point",
    "jacobi_eigenvalues",
    "lattice_constants",
    "min_area_lower_bound",
    "min_triangle_area_exhaustive",
    "on_helix_bounds",
    "point_to_helix_distance",
    "shortest_vector",
    "sinc",
    "triangle_area",
    "triangle_area_sq_closed_form",
    "triple_separation_bound",
    "verify_corollary",
    "verify_near_helix",
    "verify_on_helix",
    "verify_schinzel",
    "__version__",
]
