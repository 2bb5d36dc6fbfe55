"""Two networks that are not isomorphic yet admit the same dynamics.

A 4-cell field with two interchangeable couplings per cell yields one
step-3 graph with three edge types; coarsening the types in two maximal
ways produces two non-isomorphic graphs whose spaces of linear admissible
maps coincide -- they are ODE-equivalent.
"""

from admnet import (
    VectorFieldSpec,
    is_isomorphic,
    linear_admissible_basis,
    ode_equivalent,
    span_equal,
    step3_enumerate,
    step4_variants,
)
from admnet.polynomial import parse_polynomial

VARS = ["x1", "x2", "x3", "x4"]
field = VectorFieldSpec(
    4,
    ((0,), (1,), (2,), (3,)),
    tuple(
        parse_polynomial(e, VARS)
        for e in ["x1*x2 + x3*x4", "x1*x2*x3*x4", "x3*x4 + x1*x2", "x1*x2*x3*x4"]
    ),
)

(g3,) = step3_enumerate(field)
print("step-3 graph has", g3.n_types, "edge types")

optimized = [v.network for v in step4_variants(g3) if v.optimized]
print("optimized coarsenings:", len(optimized))
for name, g in zip(("A", "B"), optimized):
    print(f"graph {name}:")
    for t in range(g.n_types):
        print(f"  type {t} adjacency:", g.adjacency_matrix(t).tolist())

ga, gb = optimized
print("isomorphic:", is_isomorphic(ga, gb) is not None)
witness = ode_equivalent(ga, gb)
print("ODE-equivalent with witness:", [c + 1 for c in witness])

ba, bb = linear_admissible_basis(ga), linear_admissible_basis(gb)
print("linear admissible span dimensions:", ba.dimension(), bb.dimension())
print("spans equal:", span_equal(ba, bb))
