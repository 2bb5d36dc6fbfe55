"""Balanced partitions, synchrony lattices and chimera classification."""

from fractions import Fraction

import pytest

from admnet import (
    Network,
    NetworkError,
    Partition,
    classify_chimera,
    enumerate_balanced,
    is_balanced,
    lattice_to_json,
    orbit_partition,
    polydiagonal_basis,
    quotient_network,
)
from admnet.network import BoundExceeded
from conftest import RING6_PATTERNS, pattern_from_expr


def test_trivial_partitions_of_homogeneous_network(ring6):
    assert is_balanced(ring6, Partition.singletons(6))
    assert is_balanced(ring6, Partition.top(6))


def test_unbalanced_partition_detected(ring6):
    assert not is_balanced(ring6, Partition(6, [(0, 1), (2,), (3,), (4,), (5,)]))


def test_balance_requires_cell_class_refinement():
    classes = Partition(2, [(0,), (1,)])
    g = Network(2, classes, [])
    # merging inequivalent cells can never be balanced
    assert not is_balanced(g, Partition.top(2))


def test_ring6_lattice_matches_reference(ring6, ring6_patterns):
    lat = enumerate_balanced(ring6)
    assert len(lat.patterns) == 31
    assert set(lat.nontrivial()) == set(ring6_patterns)


def test_ring6_chimera_flags(ring6, ring6_patterns):
    lat = enumerate_balanced(ring6)
    flagged = {lat.patterns[i] for i in lat.chimera_indices()}
    expected = {pattern_from_expr(e) for e in RING6_PATTERNS[:15]}
    assert flagged == expected


def test_lattice_order_is_refinement(ring6):
    lat = enumerate_balanced(ring6)
    bottom = Partition.singletons(6)
    top = Partition.top(6)
    bi = lat.patterns.index(bottom)
    ti = lat.patterns.index(top)
    for i, p in enumerate(lat.patterns):
        if i != bi:
            assert (bi, i) in lat.order
        if i != ti:
            assert (i, ti) in lat.order
    for i, j in lat.order:
        assert lat.patterns[i].refines(lat.patterns[j])


def test_every_balanced_partition_has_a_quotient(ring6):
    for p in enumerate_balanced(ring6).patterns:
        q = quotient_network(ring6, p)
        assert q.n_cells == len(p.blocks)


def test_enumeration_bound():
    big = Network(13, Partition.top(13), [])
    with pytest.raises(BoundExceeded):
        enumerate_balanced(big)


def test_chimera_classification():
    assert classify_chimera(Partition(4, [(0, 1), (2,), (3,)]))
    assert not classify_chimera(Partition(4, [(0, 1), (2, 3)]))  # no singleton
    assert not classify_chimera(Partition.singletons(4))  # no coherent group
    assert not classify_chimera(Partition.top(4))


def test_orbit_partition_generators(ring6):
    p = orbit_partition(ring6, [[2, 3, 4, 5, 0, 1]])
    assert p == pattern_from_expr("135|246")
    q = orbit_partition(ring6, [[3, 4, 5, 0, 1, 2]])
    assert q == pattern_from_expr("14|25|36")


def test_orbit_partition_rejects_non_automorphism(ring6):
    with pytest.raises(NetworkError):
        orbit_partition(ring6, [[1, 0, 2, 3, 4, 5]])


def test_polydiagonal_basis_dimension():
    p = Partition(3, [(0, 1), (2,)])
    basis = polydiagonal_basis(p, dims=[1, 1, 1])
    cols = list(zip(*basis))
    assert len(cols) == 2
    assert (Fraction(1), Fraction(1), Fraction(0)) in cols
    assert (Fraction(0), Fraction(0), Fraction(1)) in cols


def test_lattice_json_is_one_based(ring6):
    data = lattice_to_json(enumerate_balanced(ring6))
    assert len(data["patterns"]) == 31
    cells = {c for p in data["patterns"] for b in p for c in b}
    assert cells == {1, 2, 3, 4, 5, 6}
    assert len(data["chimera"]) == 15
