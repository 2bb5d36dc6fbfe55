"""Classify all networks admitting a 6-cell field with paired couplings.

Each cell couples to the product of its two ring predecessors and the
product of its two successors; the two pairs are interchangeable, so
every cell offers a binary choice when its edge types are matched to a
reference cell.  That gives 2^5 = 32 typed graphs, which fall into 8
isomorphism classes, pairwise non-ODE-equivalent.
"""

from admnet import (
    Network,
    Partition,
    canonical_key,
    is_isomorphic,
    realize_all,
    step3_enumerate,
    theta,
    VectorFieldSpec,
)
from admnet.polynomial import parse_polynomial

VARS = [f"x{i}" for i in range(1, 7)]
exprs = []
for i in range(6):
    a, b = (i - 2) % 6 + 1, (i - 1) % 6 + 1
    c, d = (i + 1) % 6 + 1, (i + 2) % 6 + 1
    exprs.append(f"x{i + 1}^2 + x{a}*x{b} + x{c}*x{d}")
field = VectorFieldSpec(
    6, tuple((i,) for i in range(6)), tuple(parse_polynomial(e, VARS) for e in exprs)
)

print("theta (number of typed graphs):", theta(field))
nets = step3_enumerate(field)
print("distinct isomorphism classes:", len({canonical_key(g) for g in nets}))

report = realize_all(field)
print()
print("class | companions | nontrivial synchrony patterns")
for ic in report.iso_classes:
    print(f"  {report.iso_classes.index(ic):>3} | {ic.sigma:>10} | {ic.synchrony_count}")
print("companions sum to theta:", sum(ic.sigma for ic in report.iso_classes))
print("ODE-equivalence classes:", len(report.ode_classes), "(all singletons)")

# the merged-type graph underlying every class is the two-neighbour ring
ring = Network(
    6,
    Partition.top(6),
    [(j % 6, i, 0) for i in range(6) for j in (i - 2, i - 1, i + 1, i + 2)],
)
print("bar graph is the two-neighbour 6-ring:", is_isomorphic(report.bar, ring) is not None)
