"""Coupled-cell network realization of polynomial vector fields.

Given a polynomial vector field with a cellization, admnet constructs the
network graphs that admit it as an admissible vector field, classifies
them up to isomorphism and ODE-equivalence, enumerates balanced
(synchrony) partitions and chimera patterns, and numerically verifies
flow-invariance of synchrony subspaces.
"""

from .polynomial import (
    ParseError,
    Polynomial,
    PolynomialError,
    compose_permutations,
    parse_polynomial,
)
from .network import (
    BoundExceeded,
    Edge,
    Network,
    NetworkError,
    Partition,
    all_partitions,
    automorphism_group,
    build_network,
    canonical_key,
    is_isomorphic,
    network_from_json,
    network_to_json,
    quotient_network,
)
from .realize import (
    CellGenerator,
    GeneratingAssignment,
    InterchangeStructure,
    RealizationError,
    RealizationReport,
    Step4Variant,
    VectorFieldSpec,
    bar_graph,
    realize_all,
    sigma_size,
    step1_simple,
    step2_interchange_blocks,
    step3_enumerate,
    step4_variants,
    theta,
    validate_generating_assignment,
    verify_admissible,
)
from .odeeq import (
    LinearBasis,
    conjugate_basis,
    linear_admissible_basis,
    ode_equivalent,
    span_equal,
)
from .synchrony import (
    SynchronyLattice,
    classify_chimera,
    enumerate_balanced,
    is_balanced,
    lattice_to_json,
    orbit_partition,
    polydiagonal_basis,
)
from .dynamics import (
    IntegrationError,
    Trajectory,
    VdpParams,
    integrate_rk4,
    polydiagonal_point,
    project_polydiagonal,
    sync_deviation,
    vdp_network_field,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
