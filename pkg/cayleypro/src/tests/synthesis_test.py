"""Implementation of tests for operation synthesis and graph completions"""

# pylint: disable=redefined-outer-name
from itertools import combinations

import pytest
import numpy as np

from cayleypro import (Graph, MagmaTable, Labeling, SynthesizedOperation, PreconditionError, BudgetExceededError,
                       path_operation, chain_operation, extended_chain_operation, edge_operation,
                       path_choice_products, left_quasigroup_completion, quasigroup_completion,
                       root_completion_search, root_labeling, property_report, cayley_graph, axiom_check, generates)


@pytest.fixture(scope='module')
def two_cycles():
    """Two disjoint 2-cycles on a single label"""
    return Graph([("0", "a", "1"), ("1", "a", "0"), ("2", "a", "3"), ("3", "a", "2")])


def test_path_operation_cycle(cycle3):
    """test_path_operation_cycle"""
    operation = path_operation(cycle3, "0")
    assert operation.kind == "path"
    assert operation.root == "0"
    assert operation("1", "2") == "0"
    assert operation("2", "2") == "1"
    assert operation.generator_set == ("1",)
    assert operation.labeling == Labeling({"1": "a"})
    assert operation.report["group"]
    assert operation.regenerate() == cycle3

def test_path_operation_even(even):
    """test_path_operation_even"""
    operation = path_operation(even, "p")
    assert operation("q", "q") == "p"
    assert operation("q", "p") == "q"
    assert operation.report.identity == "p"
    assert operation.regenerate() == even

@pytest.mark.parametrize('root, flag', [("v0", "arc-symmetric"), ("v1", "rooted")])
def test_path_operation_preconditions(path3, root, flag):
    """test_path_operation_preconditions"""
    with pytest.raises(PreconditionError) as error:
        path_operation(path3, root)
    assert error.value.flag == flag

def test_path_operation_unknown_root(even):
    """test_path_operation_unknown_root"""
    with pytest.raises(ValueError):
        path_operation(even, "x")

def test_chain_operation_cycle(cycle3):
    """test_chain_operation_cycle"""
    operation = chain_operation(cycle3, "0")
    assert operation.kind == "chain"
    assert operation.table == path_operation(cycle3, "0").table
    assert operation.report["group"]
    assert operation.regenerate() == cycle3

def test_chain_operation_preconditions(path3, two_cycles):
    """test_chain_operation_preconditions"""
    with pytest.raises(PreconditionError) as error:
        chain_operation(path3, "v0")
    assert error.value.flag == "symmetric"
    with pytest.raises(PreconditionError) as error:
        chain_operation(two_cycles, "0")
    assert error.value.flag == "connected"

def test_extended_chain_operation(two_cycles):
    """test_extended_chain_operation"""
    operation = extended_chain_operation(two_cycles)
    assert operation.kind == "extendedChain"
    assert operation.witness["representatives"] == ("0", "2")
    assert operation.root == "0"
    assert operation("1", "2") == "3"
    assert operation("1", "3") == "2"
    assert all(operation(s, s) == "0" for s in "0123")
    assert operation.report["group"]
    assert operation.generator_set == ("1",)
    assert operation.regenerate() == two_cycles

def test_extended_chain_operation_group_errors(two_cycles):
    """test_extended_chain_operation_group_errors"""
    with pytest.raises(ValueError):
        extended_chain_operation(two_cycles, group=MagmaTable.cyclic(2))
    constant = MagmaTable.from_rows(["0", "2"], [["0", "0"], ["0", "0"]])
    with pytest.raises(PreconditionError) as error:
        extended_chain_operation(two_cycles, group=constant)
    assert error.value.flag == "group"

def test_edge_operation_left_quasigroup(lq5_table):
    """test_edge_operation_left_quasigroup"""
    graph = cayley_graph(lq5_table)
    operation = edge_operation(graph, "a")
    assert operation.kind == "edge"
    assert operation.table == lq5_table
    assert operation.report["leftQuasigroup"]
    assert operation.report.identity == "a"
    assert operation.regenerate() == graph

def test_edge_operation_not_one_root(path3):
    """test_edge_operation_not_one_root"""
    with pytest.raises(PreconditionError) as error:
        edge_operation(path3, "v0")
    assert error.value.flag == "1-root"

def test_operation_kind_error(cycle3):
    """test_operation_kind_error"""
    with pytest.raises(ValueError):
        SynthesizedOperation(MagmaTable.cyclic(3), "word", {"root": "0"}, ["1"], None)
    operation = path_operation(cycle3, "0")
    with pytest.raises(ValueError):
        SynthesizedOperation(operation.table, "path", {"root": "0"}, ["1"], None).regenerate()

def test_operation_dict_roundtrip(cycle3, two_cycles):
    """test_operation_dict_roundtrip"""
    for operation in (path_operation(cycle3, "0"), extended_chain_operation(two_cycles)):
        data = operation.to_dict()
        restored = SynthesizedOperation.from_dict(data)
        assert restored.table == operation.table
        assert restored.kind == operation.kind
        assert restored.labeling == operation.labeling
        assert restored.generator_set == operation.generator_set
        assert restored.root == operation.root
    assert data["witness"]["group"]["carrier"] == ["0", "2"]

def test_root_labeling(even, path3):
    """test_root_labeling"""
    assert root_labeling(even, "p") == Labeling({"q": "a", "p": "b"})
    assert root_labeling(even, "p", labels={"a"}) == Labeling({"q": "a"})
    assert root_labeling(path3, "v2") is None
    assert root_labeling(Graph([("x", "a", "y"), ("x", "b", "y")]), "x") is None

def test_path_choice_products():
    """test_path_choice_products"""
    graph = Graph([("x", "a", "y"), ("y", "a", "y"), ("x", "b", "y"), ("y", "b", "x")])
    assert path_choice_products(graph, "x", "y", "y", 1) == {"x", "y"}

def test_path_choice_products_single(even, path3):
    """test_path_choice_products_single"""
    assert path_choice_products(even, "p", "q", "q", 3) == {"p"}
    assert path_choice_products(path3, "v0", "v2", "v1", 2) == {None}

def test_left_quasigroup_completion_two_cycle():
    """test_left_quasigroup_completion_two_cycle"""
    graph = Graph([("0", "1", "1"), ("1", "1", "0")])
    completion = left_quasigroup_completion(graph, "0")
    assert completion == Graph([("0", "1", "1"), ("1", "1", "0"), ("0", "0", "0"), ("1", "0", "1")])
    operation = edge_operation(completion, "0").relabel(root_labeling(graph, "0"))
    assert operation.report["group"]
    assert operation.regenerate() == graph

def test_left_quasigroup_completion_single_label(lq5_table):
    """test_left_quasigroup_completion_single_label"""
    graph = cayley_graph(lq5_table).restrict_labels({"b"})
    completion = left_quasigroup_completion(graph, "a")
    report = property_report(completion)
    assert report["complete"] and report["simple"] and report["deterministic"]
    assert all(("a", s, s) in completion for s in "abc")
    assert ("c", "c", "a") in completion

    operation = edge_operation(completion, "a")
    assert operation.report["leftQuasigroup"]
    assert operation.relabel(root_labeling(graph, "a")).regenerate() == graph

def test_left_quasigroup_completion_precondition(path3):
    """test_left_quasigroup_completion_precondition"""
    with pytest.raises(PreconditionError) as error:
        left_quasigroup_completion(path3, "v0")
    assert error.value.flag == "sourceComplete"

def test_quasigroup_completion_single_label(q6_table):
    """test_quasigroup_completion_single_label"""
    graph = cayley_graph(q6_table).restrict_labels({"a"})
    completion = quasigroup_completion(graph)
    assert completion.labels == ("a", "__c1", "__c2")
    report = property_report(completion)
    for flag in ("complete", "simple", "deterministic", "coDeterministic", "targetComplete"):
        assert report[flag], flag
    assert completion.restrict_labels({"a"}) == graph

    operation = edge_operation(completion, "a")
    assert operation.report["quasigroup"]
    assert operation.relabel(root_labeling(graph, "a")).regenerate() == graph

def test_quasigroup_completion_already_complete(q6_table):
    """test_quasigroup_completion_already_complete"""
    graph = cayley_graph(q6_table)
    assert quasigroup_completion(graph) == graph

def test_quasigroup_completion_label_collisions():
    """test_quasigroup_completion_label_collisions"""
    graph = Graph([("0", "__loop", "1"), ("1", "__loop", "0")])
    completion = quasigroup_completion(graph)
    assert completion.labels == ("__loop", "__loop'")
    assert completion.restrict_labels({"__loop"}) == graph

    graph = Graph([("0", "__c1", "1"), ("1", "__c1", "2"), ("2", "__c1", "0")])
    completion = quasigroup_completion(graph)
    assert completion.labels == ("__c1", "__c'1", "__loop")
    assert property_report(completion)["complete"]
    assert completion.restrict_labels({"__c1"}) == graph

def test_completion_of_completion(cycle3):
    """test_completion_of_completion"""
    completion = quasigroup_completion(cycle3)
    assert quasigroup_completion(completion) == completion
    assert left_quasigroup_completion(completion, "0").vertices == completion.vertices

def test_quasigroup_completion_precondition(path3):
    """test_quasigroup_completion_precondition"""
    with pytest.raises(PreconditionError) as error:
        quasigroup_completion(path3)
    assert error.value.flag == "sourceComplete"

def test_root_completion_search(cycle3, path3):
    """test_root_completion_search"""
    assert root_completion_search(cycle3) is cycle3
    with pytest.warns(RuntimeWarning):
        assert root_completion_search(path3) is None
    assert root_completion_search(Graph([("x", "a", "y"), ("x", "b", "y")])) is None

def test_root_completion_search_budget(path3):
    """test_root_completion_search_budget"""
    with pytest.raises(BudgetExceededError):
        root_completion_search(path3, budget=0)

@pytest.mark.slow
@pytest.mark.parametrize('name, table', MagmaTable.small_groups())
def test_group_operations_roundtrip(name, table):
    """test_group_operations_roundtrip"""
    identity = axiom_check(table).identity
    subsets = [list(table.carrier)] + [[element] for element in table.carrier if generates(table, [element])]
    for subset in subsets:
        graph = cayley_graph(table, subset)
        chain = chain_operation(graph, identity)
        assert chain.table.reindex(table.carrier) == table, name
        assert chain.regenerate() == graph
        path = path_operation(graph, identity)
        assert path.table == chain.table, name

def random_restricted_graph(rng, latin):
    """Cayley graph of a random left-quasigroup (or quasigroup when `latin`) over a random proper subset"""
    n = int(rng.integers(2, 6))
    carrier = [str(i) for i in range(n)]
    if latin:
        row_shift, column_shift = rng.permutation(n), rng.permutation(n)
        names = rng.permutation(n)
        product = names[(row_shift[:, None] + column_shift[None, :]) % n]
    else:
        product = np.array([rng.permutation(n) for _ in range(n)])
    table = MagmaTable(carrier, product)
    subset = rng.choice(carrier, size=int(rng.integers(1, n)), replace=False)
    return cayley_graph(table, Labeling({str(q): f"g{q}" for q in subset}))

@pytest.mark.slow
def test_left_quasigroup_completion_random():
    """test_left_quasigroup_completion_random"""
    rng = np.random.default_rng(2)
    for _ in range(200):
        graph = random_restricted_graph(rng, latin=False)
        root = graph.vertices[0]
        completion = left_quasigroup_completion(graph, root)
        assert property_report(completion)["complete"]
        operation = edge_operation(completion, root).relabel(root_labeling(graph, root))
        assert operation.report["leftQuasigroup"]
        assert operation.regenerate() == graph

@pytest.mark.slow
def test_quasigroup_completion_random():
    """test_quasigroup_completion_random"""
    rng = np.random.default_rng(3)
    for _ in range(200):
        graph = random_restricted_graph(rng, latin=True)
        completion = quasigroup_completion(graph)
        assert completion.restrict_labels(graph.labels) == graph
        root = graph.vertices[0]
        operation = edge_operation(completion, root).relabel(root_labeling(graph, root))
        assert operation.report["quasigroup"]
        assert operation.regenerate() == graph

@pytest.mark.slow
def test_path_choice_independence():
    """test_path_choice_independence"""
    for name, table in MagmaTable.small_groups(max_order=6):
        identity = axiom_check(table).identity
        subsets = [list(pair) for pair in combinations(table.carrier, 2)] + [[element] for element in table.carrier]
        for subset in subsets:
            if not generates(table, subset):
                continue
            graph = cayley_graph(table, subset)
            operation = path_operation(graph, identity)
            for s in graph.vertices:
                for t in graph.vertices:
                    assert path_choice_products(graph, identity, s, t, len(graph.vertices)) == {operation(s, t)}, name
