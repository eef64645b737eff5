"""Implementation of tests for classification and certificates"""

# pylint: disable=redefined-outer-name
import importlib
from itertools import combinations

import pytest

from cayleypro import (Graph, MagmaTable, Certificate, SynthesizedOperation, PreconditionError, CAYLEY_CLASSES,
                       classify, verify_certificate, component_certificates, cayley_graph, axiom_check, generates,
                       path_operation, quasigroup_completion)


LQ5_POSITIVE = ["leftCancellativeMagma", "leftCancellativeMagmaWithIdentity", "leftQuasigroup",
                "leftQuasigroupWithIdentity"]


@pytest.fixture(scope='module')
def even_report(even):
    """Classification of the two-vertex graph"""
    return classify(even)


@pytest.fixture(scope='module')
def cycle3_report(cycle3):
    """Classification of the directed 3-cycle"""
    return classify(cycle3)


def corrupt(operation, s, t, value):
    """Return the operation with the product `s·t` replaced by `value`"""
    table = operation.table
    product = table.product.copy()
    product[table.index[s], table.index[t]] = table.index[value]
    return SynthesizedOperation(MagmaTable(table.carrier, product), operation.kind, operation.witness,
                                operation.generator_set, operation.labeling)


def test_classify_even(even_report):
    """test_classify_even"""
    assert even_report.positive_classes() == list(CAYLEY_CLASSES)
    assert even_report.exit_status() == 0
    for name in CAYLEY_CLASSES:
        certificate = even_report.certificate(name)
        assert certificate.target_class == name
        assert certificate.verified, name

def test_classify_cycle(cycle3, cycle3_report):
    """test_classify_cycle"""
    assert cycle3_report.positive_classes() == list(CAYLEY_CLASSES)
    assert all(cycle3_report.certificate(name).verified for name in CAYLEY_CLASSES)
    certificate = cycle3_report.certificate("quasigroupWithIdentity")
    assert certificate.auxiliary_graph.restrict_labels({"a"}) == cycle3
    assert certificate.operation.report.identity == "0"

def test_classify_left_quasigroup(lq5_table):
    """test_classify_left_quasigroup"""
    report = classify(cayley_graph(lq5_table))
    assert report.positive_classes() == LQ5_POSITIVE
    assert all(report.certificate(name).verified for name in LQ5_POSITIVE)
    assert report.verdicts["quasigroup"].deciding == "targetComplete"
    assert report.verdicts["leftCancellativeMonoidCayley"].deciding == "arcSymmetric"
    assert report.verdicts["groupCayley"].deciding == "coDeterministic"
    assert report.predicates["arcSymmetric"] is False
    assert report.certificate("quasigroup") is None

def test_classify_path(path3):
    """test_classify_path"""
    report = classify(path3)
    assert report.positive_classes() == []
    assert {report[name] for name in CAYLEY_CLASSES} == {"no"}
    assert {verdict.deciding for verdict in report.verdicts.values()} == {"sourceComplete"}
    assert report.predicates == {}
    assert report.exit_status() == 1
    assert "no a-edge leaving v2" in str(report)

def test_classify_budget_undecided(even):
    """test_classify_budget_undecided"""
    report = classify(even, iso_budget=1)
    assert report["leftCancellativeMagma"] == "yes"
    assert report["leftCancellativeMonoidCayley"] == "undecided"
    assert report["groupCayley"] == "undecided"
    assert report.verdicts["leftCancellativeMonoidCayley"].deciding == "arcSymmetric"
    assert report.predicates["arcSymmetric"] is None
    assert report.exit_status() == 0

def test_classify_completion_output():
    """test_classify_completion_output"""
    completion = quasigroup_completion(Graph([("0", "a", "1"), ("1", "a", "0")]))
    assert "__loop" in completion.labels
    report = classify(completion)
    assert report.positive_classes() == list(CAYLEY_CLASSES)
    assert all(report.certificate(name).verified for name in CAYLEY_CLASSES)

def test_classify_unverified_certificate(even, monkeypatch):
    """test_classify_unverified_certificate"""
    monkeypatch.setattr(importlib.import_module("cayleypro.src.classify"), "verify_certificate",
                        lambda graph, certificate: False)
    report = classify(even)
    assert report.positive_classes() == []
    assert {report[name] for name in CAYLEY_CLASSES} == {"undecided"}
    assert report.verdicts["groupCayley"].deciding == "certified"
    assert report.certificate("groupCayley") is None
    assert report.exit_status() == 2

def test_report_to_dict(even_report):
    """test_report_to_dict"""
    data = even_report.to_dict({"groupCayley": "even.groupCayley.json"})
    assert data["verdicts"]["quasigroup"] == "yes"
    assert data["predicates"]["complete"] is True
    assert data["predicates"]["symmetric"] is True
    assert data["classes"]["groupCayley"]["certificatePath"] == "even.groupCayley.json"
    assert data["classes"]["quasigroup"]["certificatePath"] is None
    assert list(data["classes"]["groupCayley"]["conditions"])[0] == "sourceComplete"

def test_report_to_frame(lq5_table):
    """test_report_to_frame"""
    frame = classify(cayley_graph(lq5_table)).to_frame()
    assert list(frame.index) == list(CAYLEY_CLASSES)
    assert frame.loc["leftQuasigroup", "verdict"] == "yes"
    assert frame.loc["quasigroup", "deciding"] == "targetComplete"

def test_verify_certificate_corrupted(cycle3, cycle3_report):
    """test_verify_certificate_corrupted"""
    certificate = cycle3_report.certificate("groupCayley")
    assert verify_certificate(cycle3, certificate)
    broken = Certificate("groupCayley", corrupt(certificate.operation, "2", "1", "1"))
    assert not verify_certificate(cycle3, broken)

def test_verify_certificate_wrong_class(lq5_table):
    """test_verify_certificate_wrong_class"""
    certificate = classify(cayley_graph(lq5_table)).certificate("leftQuasigroup")
    assert not axiom_check(certificate.operation.table)["quasigroup"]
    assert not verify_certificate(cayley_graph(lq5_table), Certificate("quasigroup", certificate.operation))
    assert verify_certificate(cayley_graph(lq5_table), certificate)

def test_verify_certificate_carrier_mismatch(path3, cycle3_report):
    """test_verify_certificate_carrier_mismatch"""
    with pytest.raises(ValueError):
        verify_certificate(path3, cycle3_report.certificate("groupCayley"))

def test_certificate_unknown_class(cycle3_report):
    """test_certificate_unknown_class"""
    with pytest.raises(ValueError):
        Certificate("ringCayley", cycle3_report.certificate("groupCayley").operation)

def test_certificate_file_roundtrip(cycle3, cycle3_report, tmp_path):
    """test_certificate_file_roundtrip"""
    certificate = cycle3_report.certificate("quasigroup")
    path = str(tmp_path / "cycle3.quasigroup.json")
    certificate.dump(path)
    loaded = Certificate.from_file(path)
    assert loaded.target_class == "quasigroup"
    assert loaded.verified
    assert loaded.auxiliary_graph == certificate.auxiliary_graph
    assert loaded.operation.table == certificate.operation.table
    assert verify_certificate(cycle3, loaded)

def test_component_certificates():
    """test_component_certificates"""
    graph = Graph([("0", "a", "1"), ("1", "a", "0"), ("2", "a", "3"), ("3", "a", "2")])
    certificates = component_certificates(graph)
    assert len(certificates) == 2
    assert all(certificate.verified for certificate in certificates)
    assert [certificate.operation.table.carrier for certificate in certificates] == [("0", "1"), ("2", "3")]
    assert verify_certificate(graph.components().component_of("3"), certificates[1])

def test_component_certificates_not_symmetric(path3):
    """test_component_certificates_not_symmetric"""
    with pytest.raises(PreconditionError):
        component_certificates(path3)

@pytest.mark.slow
def test_left_cancellative_tables_classified():
    """test_left_cancellative_tables_classified"""
    n_tables = 0
    for table in MagmaTable.all_tables(3):
        algebra = axiom_check(table)
        if not algebra["leftCancellative"]:
            continue
        n_tables += 1
        report = classify(cayley_graph(table))
        assert report["leftQuasigroup"] == "yes"
        if algebra.identity is not None:
            assert report["leftQuasigroupWithIdentity"] == "yes"
        if algebra["quasigroup"]:
            assert report["quasigroup"] == "yes"
        if algebra["group"]:
            assert report["groupCayley"] == "yes"
            assert report["cancellativeSemigroupCayley"] == "yes"
        for name in report.positive_classes():
            assert report.certificate(name).verified, (name, table)
    assert n_tables == 216

@pytest.mark.slow
@pytest.mark.parametrize('name, table', MagmaTable.small_groups())
def test_group_cayley_graphs_classified(name, table):
    """test_group_cayley_graphs_classified"""
    identity = axiom_check(table).identity
    subsets = [list(subset) for size in (1, 2, 3) for subset in combinations(table.carrier, size)]
    for subset in subsets:
        if not generates(table, subset):
            continue
        report = classify(cayley_graph(table, subset))
        for target_class in ("groupMonoidCayley", "groupCayley", "groupGeneralizedCayley"):
            assert report[target_class] == "yes", (name, subset, target_class)
            assert report.certificate(target_class).verified
        operation = path_operation(report.graph, identity)
        assert operation.table.reindex(table.carrier) == table

@pytest.mark.slow
def test_rooted_group_cayley_graphs_strongly_connected():
    """test_rooted_group_cayley_graphs_strongly_connected"""
    n_rooted = 0
    for _, table in MagmaTable.small_groups(max_order=6):
        for size in (1, 2):
            for subset in combinations(table.carrier, size):
                graph = cayley_graph(table, list(subset))
                copies = graph.union((s + "'", label, t + "'") for s, label, t in graph.edges)
                for candidate in (graph, copies):
                    report = classify(candidate)
                    if report["groupCayley"] == "yes" and report.properties["rooted"]:
                        n_rooted += 1
                        assert report.properties["stronglyConnected"]
                        assert report.properties["coDeterministic"]
    assert n_rooted > 0
