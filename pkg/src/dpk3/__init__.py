"""Divisor classes on del Pezzo surfaces, their conic bundles, and the
elliptic fibrations induced on K3 double covers."""

from .enumeration import (
    ClassInventory,
    Kind,
    bisection_classes,
    cone_generators,
    enumerate_conic_classes,
    enumerate_minus_one_classes,
    enumerate_roots,
    is_nef,
    reducible_fiber_pairs,
    symmetry_representatives,
)
from .errors import (
    ClassParseError,
    DimensionError,
    DomainError,
    Dpk3Error,
    InvalidDegreeError,
    InvariantError,
    NoEllipticFibrationError,
    OrbitOverflowError,
    PatternError,
)
from .fibers import (
    FiberConfiguration,
    KodairaType,
    ReducibleCase,
    admissible_types,
    classify_reducible_fiber,
    classify_smooth_fiber,
    enumerate_fiber_configurations,
    invariants_of,
)
from .ns_lattice import GramMatrix, gram_determinant, ns_lattice_of, signature, smith_normal_form
from .picard import DivisorClass, canonical_class, format_class, intersect, parse_class, self_intersection
from .weyl import reflect, simple_roots, weyl_orbit

__version__ = "0.1.0"
