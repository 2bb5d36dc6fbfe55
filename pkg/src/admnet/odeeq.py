"""Linear admissible vector fields and the ODE-equivalence decision.

The space of linear admissible maps of a network is spanned by one
diagonal indicator per input class and one matrix D_Q * A^xi per
(input class, edge type) pair; two networks are ODE-equivalent exactly
when some input-class-preserving cell bijection conjugates one span
onto the other.  All rank computations are exact over the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .network import BoundExceeded, Network, NetworkError, Partition, is_isomorphic, max_cells_bound

Matrix = list[list[Fraction]]


# ---------------------------------------------------------------------------
# Exact row reduction
# ---------------------------------------------------------------------------


def rref(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form over the rationals; zero rows dropped."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        inv = Fraction(1) / rows[pivot_row][col]
        rows[pivot_row] = [v * inv for v in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return [r for r in rows[:pivot_row] if any(v != 0 for v in r)]


def _in_row_space(basis: list[list[Fraction]], vec: list[Fraction]) -> bool:
    """Membership test against an RREF basis."""
    v = list(vec)
    for row in basis:
        lead = next((i for i, x in enumerate(row) if x != 0), None)
        if lead is not None and v[lead] != 0:
            factor = v[lead]
            v = [a - factor * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# Linear admissible basis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearBasis:
    """Generators of the linear admissible maps of a network.

    ``n`` is the total phase-space dimension (cell dims summed); each
    generator is an n-by-n rational matrix.
    """

    n: int
    generators: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def as_vectors(self) -> list[list[Fraction]]:
        return [[v for row in g for v in row] for g in self.generators]

    def rref_basis(self) -> list[list[Fraction]]:
        return rref(self.as_vectors())

    def dimension(self) -> int:
        return len(self.rref_basis())


def _freeze(m: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(row) for row in m)


def linear_admissible_basis(g: Network, cell_dims: Sequence[int] | None = None) -> LinearBasis:
    """Generator list for the linear admissible maps of ``g``.

    For vector-valued cells each scalar parameter multiplies an identity
    block, so a cell adjacency entry m becomes an m * I_dim block.
    """
    dims = list(cell_dims) if cell_dims is not None else [1] * g.n_cells
    if len(dims) != g.n_cells:
        raise NetworkError("cell_dims length mismatch")
    for b in g.cell_class.blocks:
        if len({dims[c] for c in b}) != 1:
            raise NetworkError("cell-class equivalent cells must have equal dimension")
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    n = offsets[-1]

    def expand(cell_matrix) -> Matrix:
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(g.n_cells):
            for j in range(g.n_cells):
                v = Fraction(int(cell_matrix[i][j]))
                if v != 0:
                    if dims[i] != dims[j]:
                        raise NetworkError("coupling between cells of unequal dimension")
                    for k in range(dims[i]):
                        m[offsets[i] + k][offsets[j] + k] = v
        return m

    classes = g.input_classes()
    gens: list[Matrix] = []
    for block in classes.blocks:
        diag = [[Fraction(1) if (i == j and i in block) else Fraction(0) for j in range(g.n_cells)] for i in range(g.n_cells)]
        gens.append(expand(diag))
        for xi in range(g.n_types):
            a = g.adjacency_matrix(xi)
            m = [[Fraction(int(a[i][j])) if i in block else Fraction(0) for j in range(g.n_cells)] for i in range(g.n_cells)]
            if any(v != 0 for row in m for v in row):
                gens.append(expand(m))
    return LinearBasis(n, tuple(_freeze(m) for m in gens))


def span_equal(b1: LinearBasis, b2: LinearBasis) -> bool:
    """Exact equality of the two matrix spans."""
    if b1.n != b2.n:
        raise NetworkError("dimension mismatch")
    r1 = b1.rref_basis()
    r2 = b2.rref_basis()
    if len(r1) != len(r2):
        return False
    return all(_in_row_space(r1, v) for v in b2.as_vectors()) and all(
        _in_row_space(r2, v) for v in b1.as_vectors()
    )


def conjugate_basis(b: LinearBasis, sigma: Sequence[int], dims: Sequence[int] | None = None) -> LinearBasis:
    """Basis of {P^T M P} where P permutes cells by sigma (blockwise for dims)."""
    d = list(dims) if dims is not None else [1] * len(sigma)
    offsets = [0]
    for x in d:
        offsets.append(offsets[-1] + x)
    n = offsets[-1]
    if n != b.n:
        raise NetworkError("dimension mismatch")
    # coordinate permutation: coordinate k of cell c maps to coordinate k of sigma[c]
    perm = [0] * n
    for c, s in enumerate(sigma):
        for k in range(d[c]):
            perm[offsets[c] + k] = offsets[s] + k
    gens = []
    for gmat in b.generators:
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                v = gmat[i][j]
                if v != 0:
                    m[perm[i]][perm[j]] = v
        gens.append(_freeze(m))
    return LinearBasis(n, tuple(gens))


# ---------------------------------------------------------------------------
# ODE-equivalence
# ---------------------------------------------------------------------------


def _class_profile(g: Network, block: tuple[int, ...]) -> tuple:
    sig = g.input_signature(block[0])
    return (len(block), tuple(sorted(sig.type_counts.values())))


def ode_equivalent(g1: Network, g2: Network) -> Optional[list[int]]:
    """Witness cell bijection realizing ODE-equivalence, or None.

    Homogeneous simple pairs reduce to graph isomorphism; otherwise all
    input-class-preserving bijections are searched with exact span tests.
    The first witness in lexicographic order is returned.
    """
    if g1.n_cells != g2.n_cells:
        return None
    bound = max_cells_bound()
    if g1.n_cells > bound:
        raise BoundExceeded(f"ODE-equivalence search refused for {g1.n_cells} cells (bound {bound})")
    if g1.is_homogeneous() and g2.is_homogeneous() and g1.is_simple() and g2.is_simple():
        witness = is_isomorphic(g1, g2)
        return list(witness[0]) if witness else None

    basis1 = linear_admissible_basis(g1)
    basis2 = linear_admissible_basis(g2)
    if basis1.dimension() != basis2.dimension():
        return None

    classes1 = g1.input_classes().blocks
    classes2 = g2.input_classes().blocks
    if sorted(_class_profile(g1, b) for b in classes1) != sorted(_class_profile(g2, b) for b in classes2):
        return None

    witnesses = []
    # match classes with equal profiles, then cells within classes
    profiles: dict[tuple, tuple[list, list]] = {}
    for b in classes1:
        profiles.setdefault(_class_profile(g1, b), ([], []))[0].append(b)
    for b in classes2:
        key = _class_profile(g2, b)
        if key not in profiles:
            return None
        profiles[key][1].append(b)

    def search() -> Optional[list[int]]:
        per_key = []
        for key in sorted(profiles):
            lhs, rhs = profiles[key]
            if len(lhs) != len(rhs):
                return None
            per_key.append([list(zip(lhs, p)) for p in itertools.permutations(rhs)])
        found: list[list[int]] = []
        for combo in itertools.product(*per_key):
            pairs = [pair for part in combo for pair in part]
            per_block = [
                [list(zip(b1, perm)) for perm in itertools.permutations(b2)] for b1, b2 in pairs
            ]
            for choice in itertools.product(*per_block):
                sigma = [0] * g1.n_cells
                for part in choice:
                    for x, y in part:
                        sigma[x] = y
                if span_equal(basis1, conjugate_basis(basis2, _invert(sigma))):
                    found.append(sigma)
        if not found:
            return None
        return min(found)

    return search()


def _invert(sigma: Sequence[int]) -> list[int]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return inv
