"""Synchrony patterns and chimeras of the two-neighbour 6-ring.

Enumerates all balanced partitions (cell colourings whose polydiagonal is
flow-invariant for every admissible vector field), flags chimera patterns
(a synchronized group coexisting with desynchronized singletons), and
shows orbit partitions of chosen automorphisms.
"""

from admnet import (
    Network,
    Partition,
    automorphism_group,
    classify_chimera,
    enumerate_balanced,
    orbit_partition,
    quotient_network,
)
from admnet.cli import export_dot

ring = Network(
    6,
    Partition.top(6),
    [(j % 6, i, 0) for i in range(6) for j in (i - 2, i - 1, i + 1, i + 2)],
)

lat = enumerate_balanced(ring)
print("balanced partitions:", len(lat.patterns))
chimera = set(lat.chimera_indices())
print("chimera patterns:", len(chimera))
for i, p in enumerate(lat.patterns):
    blocks = "|".join("".join(str(c + 1) for c in b) for b in p.blocks if len(b) > 1)
    tag = " chimera" if i in chimera else ""
    kind = "bottom" if p.is_trivial_bottom() else ("top" if p.is_trivial_top() else blocks)
    print(f"  {i:>2}: {kind}{tag}")

print()
print("automorphism group order:", len(automorphism_group(ring)))
rot2 = [2, 3, 4, 5, 0, 1]
print("orbits of the double rotation:", orbit_partition(ring, [rot2]).blocks)

p = orbit_partition(ring, [rot2])
q = quotient_network(ring, p)
print("quotient network adjacency:", q.total_adjacency().tolist())
print()
print("DOT rendering of the quotient:")
print(export_dot(q))
assert all(classify_chimera(lat.patterns[i]) for i in chimera)
