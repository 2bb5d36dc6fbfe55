"""Coupled-cell network graphs.

A network is a directed multigraph on cells 0..n-1 with an equivalence
relation on cells (the cell classes) and a type id on every edge.  The
compatibility condition (equal-type edges have class-equivalent heads
and class-equivalent tails) is validated at construction.

Isomorphism, automorphisms and canonical keys are computed by exhaustive
search over cell relabelings; all instances of interest here have at
most six cells, and a configurable bound fails loudly beyond that.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

DEFAULT_MAX_CELLS = 10


class NetworkError(ValueError):
    """Raised on malformed networks or violated preconditions."""


class BoundExceeded(NetworkError):
    """Raised when a brute-force search would exceed the cell bound."""


def max_cells_bound() -> int:
    """Brute-force cell bound; ADMNET_MAX_CELLS overrides the default."""
    value = os.environ.get("ADMNET_MAX_CELLS")
    return int(value) if value else DEFAULT_MAX_CELLS


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


class Partition:
    """A partition of {0..n-1} into disjoint blocks, canonically ordered."""

    __slots__ = ("n", "blocks", "_index")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        blocks = [tuple(sorted(set(b))) for b in blocks]
        blocks = [b for b in blocks if b]
        seen: set[int] = set()
        for b in blocks:
            for x in b:
                if not 0 <= x < n:
                    raise NetworkError(f"element {x} out of range for n={n}")
                if x in seen:
                    raise NetworkError(f"element {x} in two blocks")
                seen.add(x)
        if seen != set(range(n)):
            raise NetworkError("blocks do not cover the ground set")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=lambda b: b[0])))
        index = {}
        for i, b in enumerate(self.blocks):
            for x in b:
                index[x] = i
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @staticmethod
    def singletons(n: int) -> "Partition":
        return Partition(n, [[i] for i in range(n)])

    @staticmethod
    def top(n: int) -> "Partition":
        return Partition(n, [list(range(n))])

    @staticmethod
    def from_labels(labels: Sequence) -> "Partition":
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return Partition(len(labels), groups.values())

    def block_of(self, x: int) -> int:
        return self._index[x]

    def same_block(self, a: int, b: int) -> bool:
        return self._index[a] == self._index[b]

    def refines(self, other: "Partition") -> bool:
        """True iff every block of self lies inside a block of other."""
        if self.n != other.n:
            raise NetworkError("ground-set size mismatch")
        return all(len({other.block_of(x) for x in b}) == 1 for b in self.blocks)

    def join(self, other: "Partition") -> "Partition":
        """Coarsest partition refined by both (union-find closure)."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p in (self, other):
            for b in p.blocks:
                for x in b[1:]:
                    parent[find(x)] = find(b[0])
        groups: dict[int, list[int]] = {}
        for x in range(self.n):
            groups.setdefault(find(x), []).append(x)
        return Partition(self.n, groups.values())

    def relabel(self, sigma: Sequence[int]) -> "Partition":
        """Image partition under element relabeling x -> sigma[x]."""
        return Partition(self.n, [[sigma[x] for x in b] for b in self.blocks])

    def is_trivial_bottom(self) -> bool:
        return len(self.blocks) == self.n

    def is_trivial_top(self) -> bool:
        return len(self.blocks) == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __repr__(self) -> str:
        inner = "|".join(",".join(str(x + 1) for x in b) for b in self.blocks)
        return f"Partition({inner})"


def all_partitions(n: int) -> Iterable[Partition]:
    """All set partitions of {0..n-1} via restricted-growth strings."""

    def rec(labels: list[int], k: int):
        if len(labels) == n:
            yield Partition.from_labels(labels)
            return
        for lab in range(k + 1):
            labels.append(lab)
            yield from rec(labels, max(k, lab + 1))
            labels.pop()

    yield from rec([], 0)


# ---------------------------------------------------------------------------
# Networks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    etype: int


@dataclass(frozen=True)
class InputSignature:
    """The typed input multiset of one cell."""

    cell: int
    tails_by_type: dict[int, tuple[int, ...]]  # etype -> sorted tails (with repeats)
    type_counts: dict[int, int]

    def total_valency(self) -> int:
        return sum(self.type_counts.values())


class Network:
    """Immutable coupled-cell network graph."""

    __slots__ = ("n_cells", "cell_class", "edges", "n_types", "_adj")

    def __init__(self, n_cells: int, cell_class: Partition, edges: Iterable):
        if n_cells < 1:
            raise NetworkError("need at least one cell")
        if cell_class.n != n_cells:
            raise NetworkError("cell_class ground set does not match n_cells")
        norm: list[Edge] = []
        for e in edges:
            if isinstance(e, Edge):
                t, h, k = e.tail, e.head, e.etype
            else:
                t, h, k = e
            if not (0 <= t < n_cells and 0 <= h < n_cells):
                raise NetworkError(f"edge endpoint out of range: ({t},{h})")
            norm.append(Edge(t, h, k))
        used = sorted({e.etype for e in norm})
        if used and used != list(range(len(used))):
            raise NetworkError(f"type ids must be contiguous 0..k-1, got {used}")
        # compatibility: equal-type edges have class-equivalent heads and tails
        rep: dict[int, Edge] = {}
        for e in norm:
            r = rep.setdefault(e.etype, e)
            if not (cell_class.same_block(e.head, r.head) and cell_class.same_block(e.tail, r.tail)):
                raise NetworkError(
                    f"compatibility violation: edges {r} and {e} share type "
                    f"{e.etype} but endpoints are not cell-class equivalent"
                )
        object.__setattr__(self, "n_cells", n_cells)
        object.__setattr__(self, "cell_class", cell_class)
        object.__setattr__(self, "edges", tuple(sorted(norm, key=lambda e: (e.etype, e.head, e.tail))))
        object.__setattr__(self, "n_types", len(used))
        object.__setattr__(self, "_adj", {})

    def __setattr__(self, name, value):
        raise AttributeError("Network is immutable")

    # -- basic queries ---------------------------------------------------

    def adjacency_matrix(self, etype: int) -> np.ndarray:
        """(i,j) entry counts the etype-edges from j to i."""
        if not 0 <= etype < self.n_types:
            raise NetworkError(f"unknown edge type {etype}")
        cache = object.__getattribute__(self, "_adj")
        if etype not in cache:
            a = np.zeros((self.n_cells, self.n_cells), dtype=np.int64)
            for e in self.edges:
                if e.etype == etype:
                    a[e.head, e.tail] += 1
            a.setflags(write=False)
            cache[etype] = a
        return cache[etype]

    def adjacency_stack(self) -> list[np.ndarray]:
        return [self.adjacency_matrix(k) for k in range(self.n_types)]

    def total_adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_cells, self.n_cells), dtype=np.int64)
        for m in self.adjacency_stack():
            a = a + m
        return a

    def input_edges(self, c: int) -> list[Edge]:
        if not 0 <= c < self.n_cells:
            raise NetworkError(f"cell {c} out of range")
        return [e for e in self.edges if e.head == c]

    def input_signature(self, c: int) -> InputSignature:
        tails: dict[int, list[int]] = {}
        for e in self.input_edges(c):
            tails.setdefault(e.etype, []).append(e.tail)
        by_type = {k: tuple(sorted(v)) for k, v in tails.items()}
        return InputSignature(c, by_type, {k: len(v) for k, v in by_type.items()})

    def input_equivalent(self, c: int, d: int) -> bool:
        """Same cell class and identical per-type input counts."""
        if not self.cell_class.same_block(c, d):
            return False
        return self.input_signature(c).type_counts == self.input_signature(d).type_counts

    def input_classes(self) -> Partition:
        labels = [
            (self.cell_class.block_of(c), tuple(sorted(self.input_signature(c).type_counts.items())))
            for c in range(self.n_cells)
        ]
        return Partition.from_labels(labels)

    def is_simple(self) -> bool:
        """No loops and no parallel edges (regardless of type)."""
        pairs = [(e.tail, e.head) for e in self.edges]
        return len(pairs) == len(set(pairs)) and all(t != h for t, h in pairs)

    def is_homogeneous(self) -> bool:
        return self.input_classes().is_trivial_top()

    # -- relabeling --------------------------------------------------------

    def relabel(self, sigma: Sequence[int], type_sigma: Sequence[int] | None = None) -> "Network":
        """Network with cell c renamed sigma[c] (and optionally types renamed)."""
        tmap = list(type_sigma) if type_sigma is not None else list(range(self.n_types))
        return Network(
            self.n_cells,
            self.cell_class.relabel(sigma),
            [(sigma[e.tail], sigma[e.head], tmap[e.etype]) for e in self.edges],
        )


def build_network(n_cells: int, cell_class: Partition, edges: Iterable) -> Network:
    """Construct and validate a network (reports compatibility violations)."""
    return Network(n_cells, cell_class, edges)


# ---------------------------------------------------------------------------
# Isomorphism / automorphisms / canonical keys
# ---------------------------------------------------------------------------


def _check_bound(n: int):
    bound = max_cells_bound()
    if n > bound:
        raise BoundExceeded(f"brute-force search refused for {n} cells (bound {bound})")


def _cell_invariant(g: Network, c: int) -> tuple:
    """Isomorphism-invariant cell profile used for search pruning."""
    sig = g.input_signature(c)
    in_counts = tuple(sorted(sig.type_counts.values()))
    out_deg = sum(1 for e in g.edges if e.tail == c)
    return (len(g.cell_class.blocks[g.cell_class.block_of(c)]), in_counts, out_deg)


def _induced_type_map(g1: Network, g2: Network, sigma: Sequence[int]) -> Optional[list[int]]:
    """Type bijection making sigma an isomorphism g1 -> g2, if one exists."""
    if g1.n_types != g2.n_types:
        return None
    targets = {k: g2.adjacency_matrix(k).tobytes() for k in range(g2.n_types)}
    tmap: list[int] = []
    used: set[int] = set()
    for k in range(g1.n_types):
        a = g1.adjacency_matrix(k)
        # relabeled matrix: entry (sigma(i), sigma(j)) = a(i, j)
        moved = np.zeros_like(a)
        for i in range(g1.n_cells):
            for j in range(g1.n_cells):
                moved[sigma[i], sigma[j]] = a[i, j]
        key = moved.tobytes()
        hit = next((t for t, b in targets.items() if t not in used and b == key), None)
        if hit is None:
            return None
        used.add(hit)
        tmap.append(hit)
    return tmap


def _class_respecting_bijections(g1: Network, g2: Network) -> Iterable[list[int]]:
    """Cell bijections mapping g1 cell classes onto g2 cell classes, with
    matching cell invariants (pruning only; correctness checked later)."""
    if g1.n_cells != g2.n_cells:
        return
    inv1 = [_cell_invariant(g1, c) for c in range(g1.n_cells)]
    inv2 = [_cell_invariant(g2, c) for c in range(g2.n_cells)]
    if sorted(inv1) != sorted(inv2):
        return
    blocks1 = sorted(g1.cell_class.blocks, key=lambda b: (len(b), b))
    blocks2 = sorted(g2.cell_class.blocks, key=lambda b: (len(b), b))
    sizes1 = [len(b) for b in blocks1]
    sizes2 = [len(b) for b in blocks2]
    if sizes1 != sizes2:
        return
    # match blocks of equal size in all ways, then cells within blocks
    groups: dict[int, tuple[list, list]] = {}
    for b in blocks1:
        groups.setdefault(len(b), ([], []))[0].append(b)
    for b in blocks2:
        if len(b) not in groups:
            return
        groups[len(b)][1].append(b)

    def block_assignments() -> Iterable[list[tuple]]:
        per_size = []
        for size in sorted(groups):
            lhs, rhs = groups[size]
            if len(lhs) != len(rhs):
                return
            per_size.append([list(zip(lhs, p)) for p in itertools.permutations(rhs)])
        for combo in itertools.product(*per_size):
            yield [pair for part in combo for pair in part]

    for assignment in block_assignments():
        per_block_maps = []
        feasible = True
        for b1, b2 in assignment:
            maps = []
            for perm in itertools.permutations(b2):
                if all(inv1[x] == inv2[y] for x, y in zip(b1, perm)):
                    maps.append(list(zip(b1, perm)))
            if not maps:
                feasible = False
                break
            per_block_maps.append(maps)
        if not feasible:
            continue
        for combo in itertools.product(*per_block_maps):
            sigma = [0] * g1.n_cells
            for part in combo:
                for x, y in part:
                    sigma[x] = y
            yield sigma


def is_isomorphic(g1: Network, g2: Network) -> Optional[tuple[list[int], list[int]]]:
    """Witness (cell bijection, type bijection) or None.

    The cell bijection sends g1 cells to g2 cells; the type bijection sends
    g1 types to g2 types.  Edge types may be permuted: the type relation is
    preserved as a relation, not as labels.
    """
    _check_bound(max(g1.n_cells, g2.n_cells))
    if g1.n_cells != g2.n_cells or g1.n_types != g2.n_types:
        return None
    if len(g1.edges) != len(g2.edges):
        return None
    for sigma in _class_respecting_bijections(g1, g2):
        tmap = _induced_type_map(g1, g2, sigma)
        if tmap is not None:
            return sigma, tmap
    return None


def automorphism_group(g: Network) -> list[tuple[list[int], list[int]]]:
    """All (cell permutation, type permutation) pairs fixing the network."""
    _check_bound(g.n_cells)
    out = []
    for sigma in _class_respecting_bijections(g, g):
        tmap = _induced_type_map(g, g, sigma)
        if tmap is not None:
            out.append((sigma, tmap))
    out.sort(key=lambda w: (w[0], w[1]))
    return out


def canonical_key(g: Network) -> bytes:
    """Byte string equal across isomorphic networks, distinct otherwise.

    Lexicographic minimum over all cell relabelings of the serialized
    (cell-class partition, sorted adjacency matrices) pair; the sort over
    matrices canonicalizes the type labeling.
    """
    _check_bound(g.n_cells)
    n = g.n_cells
    best: bytes | None = None
    stacks = g.adjacency_stack()
    for sigma in itertools.permutations(range(n)):
        classes = g.cell_class.relabel(sigma)
        mats = []
        for a in stacks:
            moved = np.zeros_like(a)
            for i in range(n):
                for j in range(n):
                    moved[sigma[i], sigma[j]] = a[i, j]
            mats.append(moved.tobytes())
        key = repr(classes.blocks).encode() + b"|" + b"|".join(sorted(mats))
        if best is None or key < best:
            best = key
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


def quotient_network(g: Network, p: Partition) -> Network:
    """Network induced on the blocks of a balanced partition.

    Cells are blocks of p; the inputs of a block are the inputs of its
    lowest-indexed representative with tails replaced by their blocks.
    Generally a multigraph.
    """
    from . import synchrony  # local import to avoid a module cycle

    if not synchrony.is_balanced(g, p):
        raise NetworkError("partition is not balanced for the network")
    blocks = p.blocks
    cls = Partition.from_labels([g.cell_class.block_of(b[0]) for b in blocks])
    edges = []
    for bi, b in enumerate(blocks):
        rep = b[0]
        for e in g.input_edges(rep):
            edges.append((p.block_of(e.tail), bi, e.etype))
    # drop unused types and renumber contiguously
    used = sorted({k for _, _, k in edges})
    remap = {k: i for i, k in enumerate(used)}
    edges = [(t, h, remap[k]) for t, h, k in edges]
    return Network(len(blocks), cls, edges)


# ---------------------------------------------------------------------------
# JSON wire format (1-based cell ids)
# ---------------------------------------------------------------------------


def network_to_json(g: Network) -> dict:
    return {
        "cells": g.n_cells,
        "cell_classes": [[c + 1 for c in b] for b in g.cell_class.blocks],
        "edges": [{"tail": e.tail + 1, "head": e.head + 1, "type": e.etype} for e in g.edges],
    }


def network_from_json(data: dict) -> Network:
    n = int(data["cells"])
    classes = Partition(n, [[c - 1 for c in b] for b in data["cell_classes"]])
    edges = [(e["tail"] - 1, e["head"] - 1, int(e["type"])) for e in data["edges"]]
    return Network(n, classes, edges)
