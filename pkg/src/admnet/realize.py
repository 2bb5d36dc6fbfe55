"""The four-step realization of admissible graphs for a polynomial field.

Given a vector field with a cellization, the pipeline constructs:

  step 1  the simple dependency graph (or a multigraph from a supplied
          generating assignment), every edge in its own type;
  step 2  per cell, the maximal partition of the input edges into blocks
          whose variables can be permuted without changing the component,
          plus the collections of setwise-interchangeable blocks;
  step 3  the input classes of cells, and one network per choice of
          collection-preserving block matching of each member onto its
          class reference -- exactly theta(f) networks;
  step 4  the coarsenings of the edge typing that leave the input
          classes unchanged, the coarsest ones flagged as optimized.

All symmetry decisions reduce to exact polynomial identities, so the
output is a decision, not an approximation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .network import (
    Network,
    NetworkError,
    Partition,
    all_partitions,
    automorphism_group,
    canonical_key,
)
from .polynomial import Polynomial


class RealizationError(ValueError):
    """Raised on inconsistent fields, assignments or pipeline inputs."""


# ---------------------------------------------------------------------------
# Vector field specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VectorFieldSpec:
    """A polynomial vector field with a chosen cellization.

    ``cellization`` lists, per cell, the coordinate indices belonging to
    that cell; ``components`` holds one polynomial per coordinate.  The
    optional ``cell_class`` must refine the equal-dimension partition of
    the cells; when omitted a default is derived (see effective_cell_class).
    """

    n: int
    cellization: tuple[tuple[int, ...], ...]
    components: tuple[Polynomial, ...]
    cell_class: Optional[Partition] = None

    def __post_init__(self):
        coords = [c for block in self.cellization for c in block]
        if sorted(coords) != list(range(self.n)):
            raise RealizationError("cellization blocks must partition the coordinates")
        if len(self.components) != self.n:
            raise RealizationError("need one component per coordinate")
        if any(p.nvars != self.n for p in self.components):
            raise RealizationError("components must be polynomials in all coordinates")
        if self.cell_class is not None:
            if self.cell_class.n != self.n_cells:
                raise RealizationError("cell_class must partition the cells")
            dims = self.dims
            for b in self.cell_class.blocks:
                if len({dims[c] for c in b}) != 1:
                    raise RealizationError("cell_class blocks must contain equal-dimension cells")

    @property
    def n_cells(self) -> int:
        return len(self.cellization)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.cellization)

    def coords(self, cell: int) -> tuple[int, ...]:
        return self.cellization[cell]

    def cell_of_coord(self, k: int) -> int:
        for c, block in enumerate(self.cellization):
            if k in block:
                return c
        raise RealizationError(f"coordinate {k} not in any cell")

    def component_tuple(self, cell: int) -> tuple[Polynomial, ...]:
        return tuple(self.components[k] for k in self.coords(cell))

    def dependency_cells(self, cell: int) -> list[int]:
        """Cells (other than ``cell``) some coordinate of f_cell depends on."""
        used: set[int] = set()
        for p in self.component_tuple(cell):
            used.update(p.support())
        owner = {}
        for c, block in enumerate(self.cellization):
            for k in block:
                owner[k] = c
        return sorted({owner[k] for k in used} - {cell})

    def internal_form(self, cell: int) -> tuple[Polynomial, ...]:
        """Components of ``cell`` rewritten over its own coordinates only.

        Only valid for cells with empty input (no outside dependencies).
        """
        block = self.coords(cell)
        dim = len(block)
        mapping = {k: Polynomial.variable(dim, i) for i, k in enumerate(block)}
        return tuple(p.substitute(mapping) for p in self.component_tuple(cell))

    def effective_cell_class(self) -> Partition:
        """Supplied class, or the derived default.

        Default: equal-dimension cells share a class, except that
        empty-input cells whose abstract components differ are split
        apart (they would otherwise be forced input-equivalent with
        unequal generating functions, which no graph can admit).
        """
        if self.cell_class is not None:
            return self.cell_class
        dims = self.dims
        empty = [c for c in range(self.n_cells) if not self.dependency_cells(c)]
        labels: list[tuple] = [(dims[c],) for c in range(self.n_cells)]
        for dim in sorted(set(dims)):
            group = [c for c in empty if dims[c] == dim]
            forms = {}
            for c in group:
                forms.setdefault(self.internal_form(c), []).append(c)
            if len(forms) > 1:
                for idx, cells in enumerate(forms.values()):
                    for c in cells:
                        labels[c] = (dim, "isolated", idx)
        return Partition.from_labels(labels)


# ---------------------------------------------------------------------------
# Generating assignments and abstract cell components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellGenerator:
    """Generating data for one cell: polynomials over slot variables.

    Slot layout: the cell's own coordinates first, then one group of
    tail-cell-dimension variables per input edge; ``tails[i]`` names the
    tail cell of the i-th group.
    """

    cell: int
    polys: tuple[Polynomial, ...]
    tails: tuple[int, ...]


@dataclass(frozen=True)
class GeneratingAssignment:
    """One CellGenerator per cell, in cell order."""

    cells: tuple[CellGenerator, ...]


@dataclass(frozen=True)
class CellComponent:
    """Internal abstract form of one component with its input edges."""

    cell: int
    tails: tuple[int, ...]
    polys: tuple[Polynomial, ...]  # over the slot variables
    dim: int
    tail_dims: tuple[int, ...]

    @property
    def n_slots(self) -> int:
        return self.dim + sum(self.tail_dims)

    def group_offset(self, g: int) -> int:
        """Offset of slot group g (0 = internal, 1.. = edges)."""
        if g == 0:
            return 0
        return self.dim + sum(self.tail_dims[: g - 1])

    def group_dim(self, g: int) -> int:
        return self.dim if g == 0 else self.tail_dims[g - 1]


def _component_from_field(f: VectorFieldSpec, cell: int, tails: Sequence[int]) -> CellComponent:
    dims = f.dims
    tail_dims = tuple(dims[d] for d in tails)
    n_slots = dims[cell] + sum(tail_dims)
    mapping: dict[int, Polynomial] = {}
    for i, k in enumerate(f.coords(cell)):
        mapping[k] = Polynomial.variable(n_slots, i)
    offset = dims[cell]
    for d in tails:
        for i, k in enumerate(f.coords(d)):
            mapping[k] = Polynomial.variable(n_slots, offset + i)
        offset += dims[d]
    polys = tuple(p.substitute(mapping) for p in f.component_tuple(cell))
    return CellComponent(cell, tuple(tails), polys, dims[cell], tail_dims)


def _component_from_generator(f: VectorFieldSpec, gen: CellGenerator) -> CellComponent:
    dims = f.dims
    tail_dims = tuple(dims[d] for d in gen.tails)
    n_slots = dims[gen.cell] + sum(tail_dims)
    if len(gen.polys) != dims[gen.cell]:
        raise RealizationError(f"cell {gen.cell}: generator must have one polynomial per coordinate")
    if any(p.nvars != n_slots for p in gen.polys):
        raise RealizationError(f"cell {gen.cell}: generator polynomials must use {n_slots} slot variables")
    comp = CellComponent(gen.cell, tuple(gen.tails), gen.polys, dims[gen.cell], tail_dims)
    # substitute slots back to coordinates; must reproduce the component exactly
    mapping: dict[int, Polynomial] = {}
    for i, k in enumerate(f.coords(gen.cell)):
        mapping[i] = Polynomial.variable(f.n, k)
    for g, d in enumerate(gen.tails, start=1):
        off = comp.group_offset(g)
        for i, k in enumerate(f.coords(d)):
            mapping[off + i] = Polynomial.variable(f.n, k)
    for p, target_coord in zip(gen.polys, f.coords(gen.cell)):
        if p.substitute(mapping) != f.components[target_coord]:
            raise RealizationError(
                f"cell {gen.cell}: generating function does not reproduce the component"
            )
    # every edge group must be genuinely used
    for g in range(1, len(gen.tails) + 1):
        off, d = comp.group_offset(g), comp.group_dim(g)
        if not any(p.depends_on(off + i) for p in gen.polys for i in range(d)):
            raise RealizationError(
                f"cell {gen.cell}: generator ignores input group {g} (spurious dependency)"
            )
    return comp


# ---------------------------------------------------------------------------
# Step 1
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepOne:
    field_spec: VectorFieldSpec
    network: Network
    components: tuple[CellComponent, ...]
    assignment: Optional[GeneratingAssignment]


def _build_step1(f: VectorFieldSpec, assignment: Optional[GeneratingAssignment]) -> StepOne:
    cls = f.effective_cell_class()
    components: list[CellComponent] = []
    if assignment is None:
        for c in range(f.n_cells):
            components.append(_component_from_field(f, c, f.dependency_cells(c)))
    else:
        if len(assignment.cells) != f.n_cells:
            raise RealizationError("assignment must cover every cell")
        by_cell = {g.cell: g for g in assignment.cells}
        if sorted(by_cell) != list(range(f.n_cells)):
            raise RealizationError("assignment cells must be 0..n_cells-1")
        for c in range(f.n_cells):
            components.append(_component_from_generator(f, by_cell[c]))
    edges = []
    etype = 0
    for comp in components:
        for d in comp.tails:
            edges.append((d, comp.cell, etype))
            etype += 1
    net = Network(f.n_cells, cls, edges)
    return StepOne(f, net, tuple(components), assignment)


def step1_simple(f: VectorFieldSpec) -> Network:
    """Simple dependency graph: edge d -> c iff f_c depends on cell d."""
    return _build_step1(f, None).network


def validate_generating_assignment(f: VectorFieldSpec, a: GeneratingAssignment) -> Network:
    """Multigraph with one edge per generator input group, all types distinct."""
    return _build_step1(f, a).network


# ---------------------------------------------------------------------------
# Step 2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellBlocks:
    """Maximal permutation-invariance blocks of one cell's input edges."""

    cell: int
    blocks: tuple[tuple[int, ...], ...]  # local edge indices, each block sorted
    block_tails: tuple[tuple[int, ...], ...]  # tail cells per block, sorted
    collections: tuple[tuple[int, ...], ...]  # groups of block indices


@dataclass(frozen=True)
class InterchangeStructure:
    cells: tuple[CellBlocks, ...]

    def total_blocks(self) -> int:
        return sum(len(cb.blocks) for cb in self.cells)


def _swap_perm(comp: CellComponent, g1: int, g2: int) -> list[int]:
    perm = list(range(comp.n_slots))
    o1, o2 = comp.group_offset(g1), comp.group_offset(g2)
    d = comp.group_dim(g1)
    for k in range(d):
        perm[o1 + k], perm[o2 + k] = perm[o2 + k], perm[o1 + k]
    return perm


def _invariant_under(comp: CellComponent, perm: Sequence[int]) -> bool:
    return all(p.apply_permutation(perm) == p for p in comp.polys)


def _cell_blocks(comp: CellComponent, cls: Partition) -> CellBlocks:
    m = len(comp.tails)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        for j in range(i + 1, m):
            if find(i) == find(j):
                continue
            if comp.tail_dims[i] != comp.tail_dims[j]:
                continue
            if not cls.same_block(comp.tails[i], comp.tails[j]):
                continue
            if _invariant_under(comp, _swap_perm(comp, i + 1, j + 1)):
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    blocks = tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda b: b[0]))
    block_tails = tuple(tuple(sorted(comp.tails[i] for i in b)) for b in blocks)

    # collections: setwise-interchangeable blocks of equal size
    nb = len(blocks)
    cparent = list(range(nb))

    def cfind(x):
        while cparent[x] != x:
            cparent[x] = cparent[cparent[x]]
            x = cparent[x]
        return x

    for a in range(nb):
        for b in range(a + 1, nb):
            if cfind(a) == cfind(b):
                continue
            if len(blocks[a]) != len(blocks[b]):
                continue
            pairs = list(zip(blocks[a], blocks[b]))
            if any(comp.tail_dims[i] != comp.tail_dims[j] for i, j in pairs):
                continue
            if any(not cls.same_block(comp.tails[i], comp.tails[j]) for i, j in pairs):
                continue
            perm = list(range(comp.n_slots))
            for i, j in pairs:
                o1, o2 = comp.group_offset(i + 1), comp.group_offset(j + 1)
                for k in range(comp.tail_dims[i]):
                    perm[o1 + k], perm[o2 + k] = perm[o2 + k], perm[o1 + k]
            if _invariant_under(comp, perm):
                cparent[cfind(b)] = cfind(a)
    cgroups: dict[int, list[int]] = {}
    for b in range(nb):
        cgroups.setdefault(cfind(b), []).append(b)
    collections = tuple(sorted((tuple(sorted(g)) for g in cgroups.values()), key=lambda g: g[0]))
    return CellBlocks(comp.cell, blocks, block_tails, collections)


def step2_interchange_blocks(
    f: VectorFieldSpec,
    g1: Network,
    assignment: Optional[GeneratingAssignment] = None,
) -> InterchangeStructure:
    """Maximal input blocks and collections per cell.

    ``g1`` must be the step-1 graph of ``f`` (with the same assignment,
    if a multigraph realization is intended).
    """
    s1 = _build_step1(f, assignment)
    mine = sorted((e.tail, e.head) for e in s1.network.edges)
    theirs = sorted((e.tail, e.head) for e in g1.edges)
    if mine != theirs or s1.network.n_cells != g1.n_cells:
        raise RealizationError("g1 is not the step-1 graph of this field/assignment")
    return _structure(s1)


def _structure(s1: StepOne) -> InterchangeStructure:
    cls = s1.network.cell_class
    return InterchangeStructure(tuple(_cell_blocks(comp, cls) for comp in s1.components))


# ---------------------------------------------------------------------------
# Step 3
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InputClass:
    reference: int
    members: tuple[int, ...]  # includes the reference, ascending
    matchings: dict  # member -> list of block matchings (tuples sigma with sigma[b_member] = b_ref)


@dataclass
class Analysis:
    step1: StepOne
    structure: InterchangeStructure
    classes: list[InputClass]


def _matching_perm(
    comp_d: CellComponent,
    blocks_d: CellBlocks,
    comp_c: CellComponent,
    blocks_c: CellBlocks,
    sigma: Sequence[int],
) -> Optional[list[int]]:
    """Slot renaming from d's layout to c's layout under block matching sigma,
    or None if dimensions/classes cannot align."""
    if comp_d.dim != comp_c.dim:
        return None
    perm = [0] * comp_d.n_slots
    for k in range(comp_d.dim):
        perm[k] = k
    for bd, bc in enumerate(sigma):
        ed, ec = blocks_d.blocks[bd], blocks_c.blocks[bc]
        if len(ed) != len(ec):
            return None
        for i, j in zip(ed, ec):
            if comp_d.tail_dims[i] != comp_c.tail_dims[j]:
                return None
            od, oc = comp_d.group_offset(i + 1), comp_c.group_offset(j + 1)
            for k in range(comp_d.tail_dims[i]):
                perm[od + k] = oc + k
    return perm


def _matches_reference(
    comp_d: CellComponent,
    blocks_d: CellBlocks,
    comp_c: CellComponent,
    blocks_c: CellBlocks,
    cls: Partition,
    sigma: Sequence[int],
) -> bool:
    for bd, bc in enumerate(sigma):
        td, tc = blocks_d.block_tails[bd], blocks_c.block_tails[bc]
        if len(td) != len(tc):
            return False
        if not cls.same_block(td[0], tc[0]):
            return False
    perm = _matching_perm(comp_d, blocks_d, comp_c, blocks_c, sigma)
    if perm is None:
        return False
    renamed = tuple(p.apply_permutation(perm) for p in comp_d.polys)
    return renamed == comp_c.polys


def _collection_permutations(blocks_c: CellBlocks) -> list[dict[int, int]]:
    """Block permutations moving blocks only within their collections."""
    per_collection = []
    for coll in blocks_c.collections:
        per_collection.append([dict(zip(coll, p)) for p in itertools.permutations(coll)])
    out = []
    for combo in itertools.product(*per_collection):
        merged: dict[int, int] = {}
        for d in combo:
            merged.update(d)
        out.append(merged)
    return out


def _compute_classes(s1: StepOne, structure: InterchangeStructure) -> list[InputClass]:
    cls = s1.network.cell_class
    comps = s1.components
    blocks = structure.cells
    classes: list[dict] = []
    for d in range(s1.network.n_cells):
        placed = False
        for entry in classes:
            c0 = entry["reference"]
            if not cls.same_block(c0, d):
                continue
            bc, bd = blocks[c0], blocks[d]
            if len(bc.blocks) != len(bd.blocks):
                continue
            # find the lexicographically smallest valid matching, then close
            # under collection-preserving permutations of the reference blocks
            nb = len(bc.blocks)
            base = None
            for sigma in itertools.permutations(range(nb)):
                if _matches_reference(comps[d], bd, comps[c0], bc, cls, sigma):
                    base = sigma
                    break
            if base is None:
                continue
            matchings = sorted(
                tuple(pi[b] for b in base) for pi in _collection_permutations(bc)
            )
            entry["members"].append(d)
            entry["matchings"][d] = matchings
            placed = True
            break
        if not placed:
            nb = len(blocks[d].blocks)
            classes.append(
                {
                    "reference": d,
                    "members": [d],
                    "matchings": {d: [tuple(range(nb))]},
                }
            )
    return [
        InputClass(e["reference"], tuple(e["members"]), e["matchings"]) for e in classes
    ]


def _analyze(f: VectorFieldSpec, assignment: Optional[GeneratingAssignment] = None) -> Analysis:
    s1 = _build_step1(f, assignment)
    structure = _structure(s1)
    classes = _compute_classes(s1, structure)
    return Analysis(s1, structure, classes)


def theta(f: VectorFieldSpec, assignment: Optional[GeneratingAssignment] = None) -> int:
    """Number of distinct step-3 edge-class assignments."""
    analysis = _analyze(f, assignment)
    total = 1
    for q in analysis.classes:
        blocks_ref = analysis.structure.cells[q.reference]
        per_member = 1
        for coll in blocks_ref.collections:
            per_member *= _factorial(len(coll))
        total *= per_member ** (len(q.members) - 1)
    return total


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _step3_networks(analysis: Analysis) -> list[Network]:
    s1 = analysis.step1
    structure = analysis.structure
    classes = analysis.classes
    # global type ids: classes in reference order, blocks of the reference in order
    type_id: dict[tuple[int, int], int] = {}
    for qi, q in enumerate(classes):
        for b in range(len(structure.cells[q.reference].blocks)):
            type_id[(qi, b)] = len(type_id)
    # per-cell local edge -> network (tail, head)
    nets: list[Network] = []
    member_lists = []
    for qi, q in enumerate(classes):
        for d in q.members:
            if d != q.reference:
                member_lists.append((qi, d, q.matchings[d]))
    # reference cells always use the identity matching
    fixed: dict[int, tuple[int, Sequence[int]]] = {}
    for qi, q in enumerate(classes):
        fixed[q.reference] = (qi, q.matchings[q.reference][0])
    for choice in itertools.product(*(m[2] for m in member_lists)):
        per_cell = dict(fixed)
        for (qi, d, _), sigma in zip(member_lists, choice):
            per_cell[d] = (qi, sigma)
        edges = []
        for comp in s1.components:
            qi, sigma = per_cell[comp.cell]
            cb = structure.cells[comp.cell]
            for bi, block in enumerate(cb.blocks):
                t = type_id[(qi, sigma[bi])]
                for local in block:
                    edges.append((comp.tails[local], comp.cell, t))
        # renumber types contiguously in case a class/block combination is unused
        used = sorted({t for _, _, t in edges})
        remap = {t: i for i, t in enumerate(used)}
        edges = [(a, b, remap[t]) for a, b, t in edges]
        nets.append(Network(s1.network.n_cells, s1.network.cell_class, edges))
    return nets


def step3_enumerate(f: VectorFieldSpec, assignment: Optional[GeneratingAssignment] = None) -> list[Network]:
    """All step-3 networks, exactly theta(f) of them, in deterministic order."""
    return _step3_networks(_analyze(f, assignment))


# ---------------------------------------------------------------------------
# Step 4
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Step4Variant:
    network: Network
    type_groups: tuple[tuple[int, ...], ...]
    optimized: bool

    @property
    def is_trivial(self) -> bool:
        return all(len(g) == 1 for g in self.type_groups)


def step4_variants(g3: Network) -> list[Step4Variant]:
    """All coarsenings of the edge typing preserving the input classes.

    A group of types may merge only if no single input set contains two
    of them and all their heads (resp. tails) are cell-class equivalent.
    The coarsest valid coarsenings are flagged optimized.
    """
    k = g3.n_types
    if k > 10:
        raise NetworkError(f"step-4 coarsening search refused for {k} edge types")
    per_cell_types = [
        {e.etype for e in g3.input_edges(c)} for c in range(g3.n_cells)
    ]
    heads = {t: next(e.head for e in g3.edges if e.etype == t) for t in range(k)}
    tails = {t: next(e.tail for e in g3.edges if e.etype == t) for t in range(k)}
    base_classes = g3.input_classes()

    def group_ok(group: Sequence[int]) -> bool:
        gset = set(group)
        if len(gset) > 1:
            for cell_types in per_cell_types:
                if len(gset & cell_types) > 1:
                    return False
            h0, t0 = heads[group[0]], tails[group[0]]
            for t in group[1:]:
                if not g3.cell_class.same_block(heads[t], h0):
                    return False
                if not g3.cell_class.same_block(tails[t], t0):
                    return False
        return True

    variants: list[Step4Variant] = []
    for p in all_partitions(k):
        if not all(group_ok(g) for g in p.blocks):
            continue
        remap = {}
        for gi, g in enumerate(p.blocks):
            for t in g:
                remap[t] = gi
        net = Network(
            g3.n_cells,
            g3.cell_class,
            [(e.tail, e.head, remap[e.etype]) for e in g3.edges],
        )
        if net.input_classes() != base_classes:
            continue
        variants.append(Step4Variant(net, p.blocks, False))
    # flag coarsest: no other valid variant strictly coarsens it
    partitions = [Partition(k, v.type_groups) for v in variants]
    out = []
    for i, v in enumerate(variants):
        coarser_exists = any(
            j != i and partitions[i].refines(partitions[j]) for j in range(len(variants))
        )
        out.append(Step4Variant(v.network, v.type_groups, not coarser_exists))
    return out


# ---------------------------------------------------------------------------
# The bar graph
# ---------------------------------------------------------------------------


def bar_graph(g3: Network, s: InterchangeStructure) -> Network:
    """Merge, per input class, the edge types of each interchange collection.

    Independent of which step-3 network is supplied (the merged classes
    depend only on the generating functions).
    """
    classes = g3.input_classes()
    merge_parent = list(range(g3.n_types))

    def find(x):
        while merge_parent[x] != x:
            merge_parent[x] = merge_parent[merge_parent[x]]
            x = merge_parent[x]
        return x

    for block in classes.blocks:
        c0 = block[0]
        cb = s.cells[c0]
        # match g3's types on I(c0) to the structure's blocks by tail multiset
        by_type: dict[int, list[int]] = {}
        for e in g3.input_edges(c0):
            by_type.setdefault(e.etype, []).append(e.tail)
        type_items = sorted((tuple(sorted(v)), t) for t, v in by_type.items())
        block_items = sorted((cb.block_tails[b], b) for b in range(len(cb.blocks)))
        if [x[0] for x in type_items] != [x[0] for x in block_items]:
            raise RealizationError(
                "interchange structure does not match the network's input blocks"
            )
        block_to_type = {b: t for (_, t), (_, b) in zip(type_items, block_items)}
        for coll in cb.collections:
            t0 = block_to_type[coll[0]]
            for b in coll[1:]:
                a_, b_ = find(t0), find(block_to_type[b])
                if a_ != b_:
                    merge_parent[a_] = b_
    groups = sorted({find(t) for t in range(g3.n_types)})
    remap = {}
    for t in range(g3.n_types):
        remap[t] = groups.index(find(t))
    return Network(
        g3.n_cells, g3.cell_class, [(e.tail, e.head, remap[e.etype]) for e in g3.edges]
    )


# ---------------------------------------------------------------------------
# Admissibility
# ---------------------------------------------------------------------------


def _components_for_network(
    g: Network, f: VectorFieldSpec, a: Optional[GeneratingAssignment]
) -> Optional[list[tuple[CellComponent, list[int]]]]:
    """Per cell: abstract component plus the network edge types aligned with
    its slot groups.  None if the field cannot even satisfy the domain
    condition for ``g``."""
    dims = f.dims
    if g.n_cells != f.n_cells:
        raise RealizationError("network and field disagree on the cell count")
    out = []
    if a is None:
        for c in range(g.n_cells):
            in_edges = g.input_edges(c)
            tails = [e.tail for e in in_edges]
            if len(set(tails)) != len(tails) or c in tails:
                raise RealizationError(
                    "verifying a multigraph or looped network requires a generating assignment"
                )
            allowed = set(f.coords(c))
            for d in tails:
                allowed.update(f.coords(d))
            support = set()
            for p in f.component_tuple(c):
                support.update(p.support())
            if not support <= allowed:
                return None
            comp = _component_from_field(f, c, tails)
            out.append((comp, [e.etype for e in in_edges]))
    else:
        by_cell = {gen.cell: gen for gen in a.cells}
        for c in range(g.n_cells):
            try:
                comp = _component_from_generator(f, by_cell[c])
            except (RealizationError, KeyError):
                return None
            in_edges = g.input_edges(c)
            if sorted(comp.tails) != sorted(e.tail for e in in_edges):
                return None
            # align network edges with generator groups, matching tails
            remaining = list(range(len(in_edges)))
            types = []
            for d in comp.tails:
                idx = next(i for i in remaining if in_edges[i].tail == d)
                remaining.remove(idx)
                types.append(in_edges[idx].etype)
            out.append((comp, types))
    return out


def verify_admissible(
    g: Network, f: VectorFieldSpec, a: Optional[GeneratingAssignment] = None
) -> bool:
    """Exact admissibility test: domain condition plus equivariance under
    every arrow-type preserving bijection between equivalent input sets."""
    data = _components_for_network(g, f, a)
    if data is None:
        return False
    classes = g.input_classes()
    for block in classes.blocks:
        for c in block:
            for d in block:
                if not _equivariant_pair(data[c], data[d]):
                    return False
    return True


def _equivariant_pair(
    item_c: tuple[CellComponent, list[int]], item_d: tuple[CellComponent, list[int]]
) -> bool:
    comp_c, types_c = item_c
    comp_d, types_d = item_d
    if comp_c.dim != comp_d.dim:
        return False
    if sorted(types_c) != sorted(types_d):
        return False
    by_type_c: dict[int, list[int]] = {}
    by_type_d: dict[int, list[int]] = {}
    for i, t in enumerate(types_c):
        by_type_c.setdefault(t, []).append(i)
    for i, t in enumerate(types_d):
        by_type_d.setdefault(t, []).append(i)
    # every arrow-type preserving bijection I(c) -> I(d)
    keys = sorted(by_type_c)
    pools = [list(itertools.permutations(by_type_d[t])) for t in keys]
    for combo in itertools.product(*pools):
        beta: dict[int, int] = {}
        feasible = True
        for t, perm in zip(keys, combo):
            for i, j in zip(by_type_c[t], perm):
                if comp_c.tail_dims[i] != comp_d.tail_dims[j]:
                    feasible = False
                    break
                beta[i] = j
            if not feasible:
                break
        if not feasible:
            return False
        perm_slots = [0] * comp_c.n_slots
        for k in range(comp_c.dim):
            perm_slots[k] = k
        for i, j in beta.items():
            oc, od = comp_c.group_offset(i + 1), comp_d.group_offset(j + 1)
            for k in range(comp_c.tail_dims[i]):
                perm_slots[oc + k] = od + k
        renamed = tuple(p.apply_permutation(perm_slots) for p in comp_c.polys)
        if renamed != comp_d.polys:
            return False
    return True


# ---------------------------------------------------------------------------
# Sigma and the full pipeline
# ---------------------------------------------------------------------------


def _expand_cell_perm(sigma: Sequence[int], dims: Sequence[int]) -> list[int]:
    """Coordinate permutation induced by a cell permutation (blockwise)."""
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    perm = [0] * offsets[-1]
    for c, s in enumerate(sigma):
        if dims[c] != dims[s]:
            raise RealizationError("cell permutation moves cells of unequal dimension")
        for k in range(dims[c]):
            perm[offsets[c] + k] = offsets[s] + k
    return perm


def _commutes_with_field(sigma: Sequence[int], f: VectorFieldSpec) -> bool:
    """f(sigma x) = sigma f(x) as exact polynomials."""
    dims = f.dims
    try:
        pi = _expand_cell_perm(sigma, dims)
    except RealizationError:
        return False
    # pi acts on layout positions (coordinates grouped per cell); translate
    # it into a permutation of the original coordinate indices
    layout = [k for block in f.cellization for k in block]
    coord_perm = [0] * f.n
    for pos, k in enumerate(layout):
        coord_perm[k] = layout[pi[pos]]
    inv_coord = [0] * f.n
    for i, s in enumerate(coord_perm):
        inv_coord[s] = i
    for k in range(f.n):
        if f.components[k].apply_permutation(inv_coord) != f.components[inv_coord[k]]:
            return False
    return True


def _field_symmetries_in(f: VectorFieldSpec, cell_perms: Iterable[Sequence[int]]) -> list[list[int]]:
    return [list(s) for s in cell_perms if _commutes_with_field(s, f)]


def sigma_size(
    g: Network, f: VectorFieldSpec, assignment: Optional[GeneratingAssignment] = None
) -> int:
    """Count of pairwise non-isomorphic admissible relabelings of ``g``.

    Orbit size of ``g`` under the cell permutations of Aut(bar graph)
    commuting with the field, by orbit-stabilizer.
    """
    if not verify_admissible(g, f, assignment):
        raise RealizationError("network is not admissible for the field")
    analysis = _analyze(f, assignment)
    bar = bar_graph(_step3_networks(analysis)[0], analysis.structure)
    aut_cells = {tuple(w[0]) for w in automorphism_group(bar)}
    return _sigma_from_symmetries(g, _field_symmetries_in(f, aut_cells))


def _sigma_from_symmetries(g: Network, symmetries: list[list[int]]) -> int:
    from .network import _induced_type_map  # internal helper

    stab = sum(1 for s in symmetries if _induced_type_map(g, g, s) is not None)
    if stab == 0:
        raise RealizationError("symmetry set does not contain the identity")
    return len(symmetries) // stab


# ---------------------------------------------------------------------------
# Realization report
# ---------------------------------------------------------------------------


@dataclass
class IsoClass:
    network: Network
    sigma: Optional[int]
    optimized: bool
    from_step3: bool
    synchrony_count: int


@dataclass
class RealizationReport:
    theta: int
    iso_classes: list[IsoClass]
    ode_classes: list[list[int]]
    bar: Network
    step3_count: int

    def to_json(self) -> dict:
        from .network import network_to_json

        return {
            "theta": self.theta,
            "iso_classes": [
                {
                    "network": network_to_json(ic.network),
                    "sigma": ic.sigma,
                    "optimized": ic.optimized,
                    "synchrony_count": ic.synchrony_count,
                }
                for ic in self.iso_classes
            ],
            "ode_classes": self.ode_classes,
            "bar_graph": network_to_json(self.bar),
        }


def realize_all(
    f: VectorFieldSpec,
    assignments: Optional[list[GeneratingAssignment]] = None,
) -> RealizationReport:
    """Full pipeline: steps 1-4, dedup up to isomorphism, ODE-equivalence
    grouping, sigma sizes and synchrony counts.

    Every emitted network is asserted admissible for the field.
    """
    from .odeeq import ode_equivalent
    from .synchrony import enumerate_balanced

    runs: list[Optional[GeneratingAssignment]] = (
        [None] if not assignments else list(assignments)
    )
    primary = _analyze(f, runs[0])
    theta_value = theta(f, runs[0])
    bar = bar_graph(_step3_networks(primary)[0], primary.structure)

    seen: dict[bytes, IsoClass] = {}
    order: list[bytes] = []
    step3_total = 0
    symmetries_cache: Optional[list[list[int]]] = None

    for a in runs:
        analysis = primary if a is runs[0] else _analyze(f, a)
        nets3 = _step3_networks(analysis)
        step3_total += len(nets3)
        for g3 in nets3:
            assert verify_admissible(g3, f, a), "step-3 network failed admissibility"
            for variant in step4_variants(g3):
                g4 = variant.network
                assert verify_admissible(g4, f, a), "step-4 network failed admissibility"
                key = canonical_key(g4)
                if key not in seen:
                    sigma_value = None
                    if variant.is_trivial:
                        if symmetries_cache is None:
                            aut_cells = {tuple(w[0]) for w in automorphism_group(bar)}
                            symmetries_cache = _field_symmetries_in(f, aut_cells)
                        sigma_value = _sigma_from_symmetries(g4, symmetries_cache)
                    seen[key] = IsoClass(
                        network=g4,
                        sigma=sigma_value,
                        optimized=variant.optimized,
                        from_step3=variant.is_trivial,
                        synchrony_count=len(enumerate_balanced(g4).nontrivial()),
                    )
                    order.append(key)
                else:
                    ic = seen[key]
                    ic.optimized = ic.optimized or variant.optimized
                    if variant.is_trivial and not ic.from_step3:
                        ic.from_step3 = True
                        if symmetries_cache is None:
                            aut_cells = {tuple(w[0]) for w in automorphism_group(bar)}
                            symmetries_cache = _field_symmetries_in(f, aut_cells)
                        ic.sigma = _sigma_from_symmetries(ic.network, symmetries_cache)

    iso_classes = [seen[k] for k in order]
    # group representatives into ODE-equivalence classes
    m = len(iso_classes)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(m):
        for j in range(i + 1, m):
            if find(i) == find(j):
                continue
            if ode_equivalent(iso_classes[i].network, iso_classes[j].network) is not None:
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    ode_classes = sorted(groups.values())
    return RealizationReport(theta_value, iso_classes, ode_classes, bar, step3_total)
