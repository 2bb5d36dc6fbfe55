"""Realize a 3-cell polynomial field as a simple graph and as a multigraph.

The field

    dx1/dt = x1 + x1^3
    dx2/dt = x2 + x2^2 x3
    dx3/dt = x3 + x1 x2 x3

has a unique simple realization whose edge types all merge into one, and
(with a shared generating function x + y1*y2*y3) a regular multigraph
realization where repeated tails encode the repeated factors.
"""

from admnet import (
    CellGenerator,
    GeneratingAssignment,
    VectorFieldSpec,
    realize_all,
    step1_simple,
    validate_generating_assignment,
    verify_admissible,
)
from admnet.polynomial import parse_polynomial

VARS = ["x1", "x2", "x3"]
field = VectorFieldSpec(
    3,
    ((0,), (1,), (2,)),
    tuple(
        parse_polynomial(e, VARS)
        for e in ["x1 + x1^3", "x2 + x2^2*x3", "x3 + x1*x2*x3"]
    ),
)

print("== simple realization ==")
g1 = step1_simple(field)
print("dependency edges:", [(e.tail + 1, e.head + 1) for e in g1.edges])
report = realize_all(field)
for i, ic in enumerate(report.iso_classes):
    print(
        f"class {i}: {ic.network.n_types} edge type(s), optimized={ic.optimized}, "
        f"admissible={verify_admissible(ic.network, field)}"
    )
print("ODE-equivalence classes:", report.ode_classes)

print()
print("== multigraph realization from a shared generating function ==")
slots = ["x", "y1", "y2", "y3"]
gen = parse_polynomial("x + y1*y2*y3", slots)
assignment = GeneratingAssignment(
    (
        CellGenerator(0, (gen,), (0, 0, 0)),  # y1=y2=y3 = x1
        CellGenerator(1, (gen,), (1, 1, 2)),  # y1=y2 = x2, y3 = x3
        CellGenerator(2, (gen,), (0, 1, 2)),  # y1 = x1, y2 = x2, y3 = x3
    )
)
gm = validate_generating_assignment(field, assignment)
print("multigraph adjacency (row = inputs of each cell):")
for row in gm.total_adjacency():
    print("  ", row.tolist())
print("admissible:", verify_admissible(gm, field, assignment))
