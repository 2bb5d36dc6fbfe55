"""Balanced partitions, synchrony lattices and chimera classification.

A partition of the cells is balanced exactly when its polydiagonal
subspace is invariant under every adjacency matrix of the network (and
its blocks respect the cell classes).  Enumeration is an exhaustive
scan over set partitions, adequate for the small networks handled here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .network import BoundExceeded, Network, NetworkError, Partition, all_partitions

ENUMERATION_CELL_BOUND = 12


def polydiagonal_basis(p: Partition, dims: Sequence[int] | None = None) -> list[list[Fraction]]:
    """Column basis of the subspace where same-block cells are equal.

    One indicator column per (block, within-cell coordinate) pair; with
    scalar cells these are plain block indicator vectors.
    """
    d = list(dims) if dims is not None else [1] * p.n
    if len(d) != p.n:
        raise NetworkError("dims length mismatch")
    offsets = [0]
    for x in d:
        offsets.append(offsets[-1] + x)
    n = offsets[-1]
    cols: list[list[Fraction]] = []
    for b in p.blocks:
        dim = d[b[0]]
        if any(d[c] != dim for c in b):
            raise NetworkError("same-block cells must have equal dimension")
        for k in range(dim):
            col = [Fraction(0)] * n
            for c in b:
                col[offsets[c] + k] = Fraction(1)
            cols.append(col)
    return [[cols[j][i] for j in range(len(cols))] for i in range(n)]


def is_balanced(g: Network, p: Partition) -> bool:
    """True iff every adjacency matrix maps the polydiagonal into itself."""
    if p.n != g.n_cells:
        raise NetworkError("partition does not match the cell count")
    if not p.refines(g.cell_class):
        return False
    for xi in range(g.n_types):
        a = g.adjacency_matrix(xi)
        for b in p.blocks:
            u = np.zeros(g.n_cells, dtype=np.int64)
            u[list(b)] = 1
            image = a @ u
            for blk in p.blocks:
                vals = image[list(blk)]
                if not np.all(vals == vals[0]):
                    return False
    return True


@dataclass(frozen=True)
class SynchronyLattice:
    """All balanced partitions of a network with their refinement order."""

    network: Network
    patterns: tuple[Partition, ...]
    order: tuple[tuple[int, int], ...]  # (i, j) with patterns[i] refining patterns[j]

    def nontrivial(self) -> list[Partition]:
        return [p for p in self.patterns if not (p.is_trivial_bottom() or p.is_trivial_top())]

    def chimera_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.patterns) if classify_chimera(p)]


def enumerate_balanced(g: Network) -> SynchronyLattice:
    """Exhaustive scan over all set partitions of the cells."""
    if g.n_cells > ENUMERATION_CELL_BOUND:
        raise BoundExceeded(
            f"partition scan refused for {g.n_cells} cells (bound {ENUMERATION_CELL_BOUND})"
        )
    patterns = [p for p in all_partitions(g.n_cells) if is_balanced(g, p)]
    patterns.sort(key=lambda p: (len(p.blocks), p.blocks))
    order = tuple(
        (i, j)
        for i, pi in enumerate(patterns)
        for j, pj in enumerate(patterns)
        if i != j and pi.refines(pj)
    )
    return SynchronyLattice(g, tuple(patterns), order)


def orbit_partition(g: Network, generators: list[Sequence[int]]) -> Partition:
    """Orbits of the subgroup generated by automorphism cell permutations."""
    from .network import automorphism_group

    auto_cells = {tuple(w[0]) for w in automorphism_group(g)}
    for gen in generators:
        if tuple(gen) not in auto_cells:
            raise NetworkError(f"generator {list(gen)} is not an automorphism cell permutation")
    parent = list(range(g.n_cells))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in generators:
        for c in range(g.n_cells):
            a, b = find(c), find(gen[c])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for c in range(g.n_cells):
        groups.setdefault(find(c), []).append(c)
    p = Partition(g.n_cells, groups.values())
    assert is_balanced(g, p), "orbit partition of automorphisms must be balanced"
    return p


def classify_chimera(p: Partition) -> bool:
    """A coherent group (block of size >= 2) coexisting with a singleton."""
    sizes = [len(b) for b in p.blocks]
    return any(s >= 2 for s in sizes) and any(s == 1 for s in sizes)


def lattice_to_json(lat: SynchronyLattice) -> dict:
    return {
        "patterns": [[[c + 1 for c in b] for b in p.blocks] for p in lat.patterns],
        "order": [list(pair) for pair in lat.order],
        "chimera": lat.chimera_indices(),
    }
