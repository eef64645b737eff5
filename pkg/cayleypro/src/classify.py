"""Implements classification of graphs against the Cayley graph classes with verifiable certificates"""

import logging
import textwrap

import pandas as pd

from .graph import Graph
from .properties import property_report
from .isomorphism import is_arc_symmetric, is_symmetric
from .synthesis import (SynthesizedOperation, path_operation, chain_operation, extended_chain_operation,
                        edge_operation, left_quasigroup_completion, quasigroup_completion, root_completion_search,
                        root_labeling)
from .errors import BudgetExceededError
from .const import CAYLEY_CLASSES, DEFAULT_ISOMORPHISM_BUDGET, DEFAULT_SEARCH_BUDGET
from .utils import dump_json, load_json


logger = logging.getLogger(__name__)

YES, NO, UNDECIDED = "yes", "no", "undecided"
CERTIFIED = "certified"

# Conditions of each class on finite graphs, cheap ones first. Source-completeness is necessary for every class.
CLASS_CONDITIONS = {
    "leftCancellativeMagma": ("sourceComplete", "simple", "deterministic"),
    "leftCancellativeMagmaWithIdentity": ("sourceComplete", "simple", "deterministic", "loopComplete"),
    "leftQuasigroup": ("sourceComplete", "simple", "deterministic"),
    "leftQuasigroupWithIdentity": ("sourceComplete", "simple", "deterministic", "loopComplete"),
    "quasigroup": ("sourceComplete", "targetComplete", "simple", "deterministic", "coDeterministic"),
    "quasigroupWithIdentity": ("sourceComplete", "targetComplete", "simple", "deterministic", "coDeterministic",
                               "loopComplete"),
    "leftCancellativeMonoidCayley": ("sourceComplete", "rooted", "simple", "deterministic", "arcSymmetric"),
    "cancellativeMonoidCayley": ("sourceComplete", "rooted", "simple", "deterministic", "coDeterministic",
                                 "arcSymmetric"),
    "cancellativeSemigroupCayley": ("sourceComplete", "simple", "deterministic", "coDeterministic", "rootable"),
    "groupMonoidCayley": ("sourceComplete", "rooted", "simple", "deterministic", "symmetric"),
    "groupCayley": ("sourceComplete", "connected", "simple", "deterministic", "coDeterministic", "symmetric"),
    "groupGeneralizedCayley": ("sourceComplete", "simple", "deterministic", "coDeterministic", "symmetric"),
}


class Certificate:
    """An operation on the vertices of a graph witnessing its membership in a Cayley graph class.

    Parameters
    ----------
    target_class : str
        One of the class names listed in `CAYLEY_CLASSES`.
    operation : SynthesizedOperation
        The certifying operation with a labeling regenerating the graph.
    auxiliary_graph : Graph, optional
        The completion the operation was synthesized on, if any.
    verified : bool, optional, defaults to False
        Whether :func:`verify_certificate` accepted the certificate.
    """
    def __init__(self, target_class, operation, auxiliary_graph=None, verified=False):
        if target_class not in CAYLEY_CLASSES:
            raise ValueError(f"Unknown class {target_class}")
        self.target_class = target_class
        self.operation = operation
        self.auxiliary_graph = auxiliary_graph
        self.verified = verified

    def __repr__(self):
        return f"Certificate({self.target_class!r}, kind={self.operation.kind!r}, verified={self.verified})"

    def to_dict(self):
        """Serializable representation of the certificate."""
        auxiliary = None
        if self.auxiliary_graph is not None:
            auxiliary = [list(edge) for edge in self.auxiliary_graph.sorted_edges]
        return {"targetClass": self.target_class, "operation": self.operation.to_dict(),
                "auxiliaryGraph": auxiliary, "verified": self.verified}

    @classmethod
    def from_dict(cls, data):
        """Inverse of :func:`~Certificate.to_dict`."""
        auxiliary = data.get("auxiliaryGraph")
        auxiliary = Graph(auxiliary) if auxiliary else None
        return cls(data["targetClass"], SynthesizedOperation.from_dict(data["operation"]), auxiliary,
                   bool(data.get("verified", False)))

    def dump(self, path):
        """Save the certificate as a JSON document."""
        dump_json(self.to_dict(), path)
        return self

    @classmethod
    def from_file(cls, path):
        """Load a certificate saved by :func:`~Certificate.dump`."""
        return cls.from_dict(load_json(path))


class ClassVerdict:
    """Verdict of one class: "yes", "no" or "undecided", the evaluated conditions and the certificate of a "yes".

    Attributes
    ----------
    verdict : str
        Classification result.
    conditions : dict
        Evaluated conditions in evaluation order, mapping to `True`, `False` or `None` for undecided ones. Classes
        whose conditions all hold end with `certified`, set when the certificate was built and verified.
    certificate : Certificate or None
        Certificate of a positive verdict.
    """
    def __init__(self, verdict, conditions, certificate=None):
        self.verdict = verdict
        self.conditions = dict(conditions)
        self.certificate = certificate

    @property
    def deciding(self):
        """str or None: The condition that failed or could not be decided."""
        for name, value in self.conditions.items():
            if value is not True:
                return name
        return None

    def __repr__(self):
        return f"ClassVerdict({self.verdict!r}, deciding={self.deciding!r})"


class ClassificationReport:
    """Verdicts of a graph for every Cayley graph class.

    Attributes
    ----------
    graph : Graph
        The classified graph.
    properties : PropertyReport
        Structural predicates shared by all the classes.
    predicates : dict
        Isomorphism-based predicates that were evaluated: `arcSymmetric`, `symmetric` and `rootable`, `None` when
        undecided within budget.
    verdicts : dict
        Maps each class name to its :class:`ClassVerdict`.
    """
    def __init__(self, graph, properties, predicates, verdicts):
        self.graph = graph
        self.properties = properties
        self.predicates = dict(predicates)
        self.verdicts = dict(verdicts)

    def __getitem__(self, target_class):
        return self.verdicts[target_class].verdict

    def certificate(self, target_class):
        """Certificate of a class, `None` unless its verdict is "yes"."""
        return self.verdicts[target_class].certificate

    def positive_classes(self):
        """Classes with a "yes" verdict in report order."""
        return [name for name in CAYLEY_CLASSES if self[name] == YES]

    def exit_status(self):
        """0 if some class is positive, 2 if none is but some is undecided, 1 otherwise."""
        verdicts = {verdict.verdict for verdict in self.verdicts.values()}
        if YES in verdicts:
            return 0
        return 2 if UNDECIDED in verdicts else 1

    def to_frame(self):
        """Return verdicts as `pandas.DataFrame` indexed by class."""
        rows = [(name, verdict.verdict, verdict.deciding, ", ".join(verdict.conditions))
                for name, verdict in self.verdicts.items()]
        return pd.DataFrame(rows, columns=["class", "verdict", "deciding", "conditions"]).set_index("class")

    def to_dict(self, certificate_paths=None):
        """Serializable report: a flat predicate map, a flat verdict map and a per-class object.

        Parameters
        ----------
        certificate_paths : dict, optional
            Maps classes to paths their certificates were saved to.
        """
        certificate_paths = certificate_paths or {}
        predicates = {name: value for name, value in self.properties.to_dict().items() if name != "witnesses"}
        predicates.update(self.predicates)
        classes = {name: {"verdict": verdict.verdict, "conditions": verdict.conditions,
                          "certificatePath": certificate_paths.get(name)}
                   for name, verdict in self.verdicts.items()}
        return {"predicates": predicates, "witnesses": dict(self.properties.witnesses),
                "verdicts": {name: verdict.verdict for name, verdict in self.verdicts.items()}, "classes": classes}

    def __str__(self):
        msg = f"""
        Number of vertices:        {self.graph.n_vertices}
        Number of edges:           {self.graph.n_edges}
        Positive classes:          {', '.join(self.positive_classes()) or '-'}
        """
        lines = [f"{name + ':':<36}{verdict.verdict}" + (f" ({verdict.deciding})" if verdict.deciding else "")
                 for name, verdict in self.verdicts.items()]
        witnesses = [f"{name}: {text}" for name, text in self.properties.witnesses.items()]
        report = textwrap.dedent(msg).strip() + "\n\n" + "\n".join(lines)
        if witnesses:
            report += "\n\nWitnesses:\n" + "\n".join(witnesses)
        return report

    def info(self):
        """Print the report."""
        print(self)


class _Predicates:
    """Lazily evaluated predicates of a graph, each computed at most once."""
    def __init__(self, graph, iso_budget, search_budget):
        self.graph = graph
        self.iso_budget = iso_budget
        self.search_budget = search_budget
        self.properties = property_report(graph)
        self.evaluated = {}
        self.completion = None

    def __getitem__(self, name):
        if name in self.properties.flags:
            return self.properties[name]
        if name not in self.evaluated:
            self.evaluated[name] = self._evaluate(name)
        return self.evaluated[name]

    def _evaluate(self, name):
        try:
            if name == "arcSymmetric":
                return is_arc_symmetric(self.graph, budget=self.iso_budget)
            if name == "symmetric":
                return is_symmetric(self.graph, budget=self.iso_budget)
            if name == "rootable":
                self.completion = root_completion_search(self.graph, budget=self.search_budget,
                                                         iso_budget=self.iso_budget)
                return self.completion is not None
        except BudgetExceededError as error:
            logger.debug("Predicate %s is undecided: %s", name, error)
            return None
        raise ValueError(f"Unknown predicate {name}")


def _synthesize(graph, target_class, predicates, iso_budget):
    """Build the certificate of a class whose conditions hold."""
    report = predicates.properties
    first = graph.vertices[0]
    if target_class.startswith(("leftCancellativeMagma", "leftQuasigroup")):
        auxiliary = left_quasigroup_completion(graph, first)
        operation = edge_operation(auxiliary, first).relabel(root_labeling(graph, first))
        return Certificate(target_class, operation, auxiliary)
    if target_class.startswith("quasigroup"):
        auxiliary = quasigroup_completion(graph)
        operation = edge_operation(auxiliary, first).relabel(root_labeling(graph, first))
        return Certificate(target_class, operation, auxiliary)
    if target_class in {"leftCancellativeMonoidCayley", "cancellativeMonoidCayley", "groupMonoidCayley"}:
        return Certificate(target_class, path_operation(graph, report.roots[0], budget=iso_budget))
    if target_class == "cancellativeSemigroupCayley":
        completion = predicates.completion
        if completion is graph:
            return Certificate(target_class, path_operation(graph, report.roots[0], budget=iso_budget))
        root = next(vertex for vertex in completion.vertices if not graph.has_vertex(vertex))
        return Certificate(target_class, path_operation(completion, root, budget=iso_budget), completion)
    if target_class == "groupCayley":
        return Certificate(target_class, chain_operation(graph, first, budget=iso_budget))
    return Certificate(target_class, extended_chain_operation(graph, budget=iso_budget))


def _certify(graph, target_class, predicates, iso_budget):
    """Synthesize and verify the certificate of a class whose conditions hold, `None` if that fails."""
    try:
        certificate = _synthesize(graph, target_class, predicates, iso_budget)
    except (ValueError, BudgetExceededError) as error:
        logger.warning("Certificate of %s could not be built: %s", target_class, error)
        return None
    certificate.verified = verify_certificate(graph, certificate)
    if not certificate.verified:
        logger.warning("Certificate of %s failed verification", target_class)
        return None
    return certificate


def classify(graph, iso_budget=DEFAULT_ISOMORPHISM_BUDGET, search_budget=DEFAULT_SEARCH_BUDGET):
    """Decide every Cayley graph class of a graph and certify the positive ones.

    Conditions of each class are evaluated in order, cheap structural flags first and isomorphism-based predicates
    last. The first failing condition gives "no", the first one undecided within budget gives "undecided". Every
    "yes" carries a certificate synthesized by the matching construction and checked by :func:`verify_certificate`.
    A class whose certificate cannot be built or verified is "undecided" with the `certified` condition unset.

    Parameters
    ----------
    graph : Graph
        The graph to classify.
    iso_budget : int, optional
        Node budget of each isomorphism search.
    search_budget : int, optional
        Candidate budget of the root completion search.

    Returns
    -------
    report : ClassificationReport
        Verdicts for all the classes.
    """
    predicates = _Predicates(graph, iso_budget, search_budget)
    verdicts = {}
    for target_class in CAYLEY_CLASSES:
        conditions = {}
        verdict = YES
        for name in CLASS_CONDITIONS[target_class]:
            value = predicates[name]
            conditions[name] = value
            if value is not True:
                verdict = NO if value is False else UNDECIDED
                break

        certificate = None
        if verdict == YES:
            certificate = _certify(graph, target_class, predicates, iso_budget)
            conditions[CERTIFIED] = True if certificate is not None else None
            if certificate is None:
                verdict = UNDECIDED
        verdicts[target_class] = ClassVerdict(verdict, conditions, certificate)
    return ClassificationReport(graph, predicates.properties, predicates.evaluated, verdicts)


def verify_certificate(graph, certificate):
    """Check a certificate against a graph.

    The certificate holds iff the algebraic verdicts of its operation match the target class and the Cayley graph of
    the operation over its labeling equals the graph edge for edge. For root completions the regenerated graph is
    restricted to the vertices of `graph` first.

    Raises
    ------
    ValueError
        If the operation carrier is neither the vertex set of `graph` nor that of a root completion of it.
    """
    operation = certificate.operation
    carrier = set(operation.table.carrier)
    vertices = set(graph.vertices)
    auxiliary = certificate.auxiliary_graph
    extended = auxiliary is not None and set(auxiliary.vertices) > vertices and carrier == set(auxiliary.vertices)
    if carrier != vertices and not extended:
        raise ValueError("Certificate operation carrier differs from the graph vertices")
    if not operation.report.matches(certificate.target_class) or operation.labeling is None:
        return False
    regenerated = operation.regenerate().edges
    if extended:
        regenerated = {edge for edge in regenerated if edge[0] in vertices and edge[2] in vertices}
    return set(regenerated) == set(graph.edges)


def component_certificates(graph, iso_budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Certify every connected component of a generalized group Cayley graph as a group Cayley graph.

    Returns
    -------
    certificates : list of Certificate
        Verified "groupCayley" certificates in component order, each to be checked against its component.

    Raises
    ------
    PreconditionError
        If a component is not connected, deterministic, co-deterministic and symmetric.
    """
    certificates = []
    for component in graph.components().components:
        certificate = Certificate("groupCayley", chain_operation(component, component.vertices[0], budget=iso_budget))
        certificate.verified = verify_certificate(component, certificate)
        certificates.append(certificate)
    return certificates

