"""Implementation of tests for relations and edge colorings"""

# pylint: disable=redefined-outer-name
from itertools import product

import pytest
import numpy as np

from cayleypro import Relation, edge_color, complete_edge_color, complement_relation, cayley_graph, property_report


def all_relations(n):
    """Every relation on the carrier "0", ..., "n-1" """
    carrier = [str(i) for i in range(n)]
    pairs = [(s, t) for s in carrier for t in carrier]
    for mask in product((False, True), repeat=len(pairs)):
        yield Relation([pair for pair, keep in zip(pairs, mask) if keep], carrier=carrier)


def check_coloring(relation, coloring):
    """Assert the coloring is proper and uses exactly the maximal degree of colors"""
    assert coloring.is_proper()
    assert len(coloring.palette) == relation.max_degree
    if len(relation):
        assert len(coloring.used_colors()) == relation.max_degree
        report = property_report(coloring.to_graph())
        assert report["deterministic"] and report["coDeterministic"]


def test_edge_color_example():
    """test_edge_color_example"""
    coloring = edge_color(Relation([("1", "1"), ("1", "2"), ("2", "1")]))
    assert [coloring[pair] for pair in [("1", "1"), ("1", "2"), ("2", "1")]] == ["1", "2", "2"]

@pytest.mark.parametrize('n', [1, 2, 3])
def test_edge_color_exhaustive(n):
    """test_edge_color_exhaustive"""
    for relation in all_relations(n):
        check_coloring(relation, edge_color(relation))

def test_edge_color_random():
    """test_edge_color_random"""
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = rng.integers(1, 9)
        carrier = [str(i) for i in range(n)]
        density = rng.uniform(0.1, 0.9)
        pairs = [(s, t) for s in carrier for t in carrier if rng.uniform() < density]
        relation = Relation(pairs, carrier=carrier)
        check_coloring(relation, edge_color(relation))

def test_edge_color_deterministic_output():
    """test_edge_color_deterministic_output"""
    relation = Relation([("a", "b"), ("b", "c"), ("c", "a"), ("a", "c"), ("b", "a")])
    assert edge_color(relation).color_of == edge_color(Relation(reversed(relation.sorted_pairs))).color_of

def test_edge_color_prefix():
    """test_edge_color_prefix"""
    coloring = edge_color(Relation([("x", "y"), ("x", "z")]), prefix="__c")
    assert coloring.palette == ("__c1", "__c2")

def test_complete_edge_color_quasigroup_complement(q6_table):
    """test_complete_edge_color_quasigroup_complement"""
    complement = complement_relation(cayley_graph(q6_table).restrict_labels({"a"}))
    coloring = complete_edge_color(complement)
    assert coloring.palette == ("1", "2")
    assert coloring.is_complete()
    for vertex in ("a", "b", "c"):
        assert {coloring[(vertex, t)] for t in complement.image(vertex)} == {"1", "2"}
        assert {coloring[(s, vertex)] for s in complement.preimage(vertex)} == {"1", "2"}

@pytest.mark.parametrize('n', [1, 2, 3])
def test_complete_edge_color_exhaustive(n):
    """test_complete_edge_color_exhaustive"""
    for relation in all_relations(n):
        if relation.is_regular():
            coloring = complete_edge_color(relation)
            assert coloring.is_complete()
            assert coloring.is_proper()

def test_complete_edge_color_random_regular():
    """test_complete_edge_color_random_regular"""
    rng = np.random.default_rng(1)
    for _ in range(200):
        n = rng.integers(2, 9)
        shifts = rng.choice(n, size=rng.integers(1, n + 1), replace=False)
        names = [str(i) for i in rng.permutation(n)]
        relation = Relation((names[i], names[(i + shift) % n]) for i in range(n) for shift in shifts)
        coloring = complete_edge_color(relation)
        assert coloring.is_complete() and coloring.is_proper()
        assert len(coloring.palette) == len(shifts)

def test_complete_edge_color_not_regular():
    """test_complete_edge_color_not_regular"""
    with pytest.raises(ValueError):
        complete_edge_color(Relation([("a", "b"), ("a", "c"), ("b", "c"), ("c", "a")]))

def test_edge_color_small_examples():
    """test_edge_color_small_examples"""
    coloring = edge_color(Relation([("1", "2"), ("2", "1")]))
    assert coloring.palette == ("1",)
    assert coloring[("1", "2")] == coloring[("2", "1")] == "1"

    bipartite = Relation([(s, t) for s in ("1", "2") for t in ("3", "4")])
    coloring = edge_color(bipartite)
    assert len(coloring.palette) == 2
    for vertex in ("1", "2"):
        assert {coloring[(vertex, t)] for t in ("3", "4")} == {"1", "2"}
