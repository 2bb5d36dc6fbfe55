"""Exact linear algebra and ODE-equivalence of networks."""

import random
from fractions import Fraction

import pytest

from admnet import (
    LinearBasis,
    Network,
    Partition,
    conjugate_basis,
    is_isomorphic,
    linear_admissible_basis,
    ode_equivalent,
    span_equal,
)
from admnet.odeeq import rref
from conftest import random_network, random_relabeling


def test_rref_known_matrix():
    rows = [
        [Fraction(1), Fraction(2), Fraction(3)],
        [Fraction(2), Fraction(4), Fraction(6)],
        [Fraction(0), Fraction(1), Fraction(1)],
    ]
    reduced = rref(rows)
    assert reduced == [
        [Fraction(1), Fraction(0), Fraction(1)],
        [Fraction(0), Fraction(1), Fraction(1)],
    ]


def test_basis_of_single_type_ring():
    g = Network(3, Partition.top(3), [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    b = linear_admissible_basis(g)
    # identity and the adjacency matrix
    assert b.dimension() == 2


def test_span_equal_reflexive_and_order_free():
    g = Network(3, Partition.top(3), [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    b = linear_admissible_basis(g)
    reversed_basis = LinearBasis(b.n, tuple(reversed(b.generators)))
    assert span_equal(b, reversed_basis)


def test_conjugate_by_identity_is_noop():
    g = Network(3, Partition.top(3), [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    b = linear_admissible_basis(g)
    assert span_equal(b, conjugate_basis(b, [0, 1, 2]))


def test_conjugation_moves_entries():
    # single generator E_{01}; conjugating by the swap gives E_{10}
    e01 = ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(0)))
    b = conjugate_basis(LinearBasis(2, (e01,)), [1, 0])
    assert b.generators[0] == ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))


def test_vector_cells_expand_blockwise():
    g = Network(2, Partition.top(2), [(0, 1, 0), (1, 0, 0)])
    b = linear_admissible_basis(g, cell_dims=[2, 2])
    assert b.n == 4
    # scalar parameters multiply identity blocks: same dimension as scalar case
    assert b.dimension() == linear_admissible_basis(g).dimension()


def test_isomorphic_implies_ode_equivalent():
    rng = random.Random(1234)
    for _ in range(50):
        g = random_network(rng, 5)
        h = random_relabeling(rng, g)
        assert is_isomorphic(g, h) is not None
        assert ode_equivalent(g, h) is not None


def test_homogeneous_simple_nonisomorphic_pair_is_not_equivalent():
    near = Network(6, Partition.top(6), [(j % 6, i, 0) for i in range(6) for j in (i - 1, i + 1)])
    both = Network(
        6, Partition.top(6), [(j % 6, i, 0) for i in range(6) for j in (i - 2, i - 1, i + 1, i + 2)]
    )
    assert ode_equivalent(near, both) is None


def test_witness_is_input_class_preserving():
    rng = random.Random(77)
    found = 0
    while found < 10:
        g = random_network(rng, 5)
        h = random_relabeling(rng, g)
        w = ode_equivalent(g, h)
        assert w is not None
        pg, ph = g.input_classes(), h.input_classes()
        for c in range(g.n_cells):
            for d in range(g.n_cells):
                if pg.same_block(c, d):
                    assert ph.same_block(w[c], w[d])
        found += 1


def test_cell_count_mismatch_is_not_equivalent():
    g = Network(2, Partition.top(2), [(0, 1, 0), (1, 0, 0)])
    h = Network(3, Partition.top(3), [(0, 1, 0), (1, 2, 0), (2, 0, 0)])
    assert ode_equivalent(g, h) is None
