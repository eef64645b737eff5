"""Implements operation synthesis from graphs and the graph completions used to certify Cayley graph classes"""

import logging
import warnings
from itertools import product as cartesian_product

import numpy as np
from tqdm.auto import tqdm

from .graph import Graph
from .algebra import MagmaTable, Labeling, axiom_check, cayley_graph
from .properties import property_report, complement_relation
from .coloring import complete_edge_color
from .isomorphism import is_arc_symmetric, is_symmetric
from .errors import PreconditionError, BudgetExceededError
from .const import DEFAULT_ISOMORPHISM_BUDGET, DEFAULT_SEARCH_BUDGET, LOOP_LABEL, COLOR_PREFIX, ROOT_TOKEN
from .utils import fresh_token


logger = logging.getLogger(__name__)


class SynthesizedOperation:
    """A total binary operation on the vertices of a graph, built from its paths, chains or edges.

    Parameters
    ----------
    table : MagmaTable
        The operation, over the vertices of the source graph in length-lexicographic order.
    kind : {"path", "chain", "extendedChain", "edge"}
        Construction that produced the table.
    witness : dict
        `{"root": r}` for rooted constructions, `{"representatives": P, "group": MagmaTable}` for extended chains.
    generator_set : sequence of str
        Vertices `s` with an edge from the root or the group identity of the representatives.
    labeling : Labeling or None
        `s -> a` for the edge `r -a-> s`. `None` when the edges out of the root do not define an injective labeling.

    Attributes
    ----------
    report : AlgebraReport
        Axiom verdicts of `table`.
    """
    KINDS = ("path", "chain", "extendedChain", "edge")

    def __init__(self, table, kind, witness, generator_set, labeling):
        if kind not in self.KINDS:
            raise ValueError(f"Unknown operation kind {kind}")
        self.table = table
        self.kind = kind
        self.witness = dict(witness)
        self.generator_set = tuple(generator_set)
        self.labeling = labeling
        self.report = axiom_check(table)

    @property
    def root(self):
        """str: The root of the construction or the group identity of the representatives."""
        if "root" in self.witness:
            return self.witness["root"]
        return axiom_check(self.witness["group"]).identity

    def __call__(self, s, t):
        return self.table(s, t)

    def __str__(self):
        witness = self.witness.get("root")
        if witness is None:
            witness = "representatives " + ", ".join(self.witness["representatives"])
        else:
            witness = "root " + witness
        labeling = self.labeling.to_text() if self.labeling is not None else "-"
        return f"{self.kind} operation at {witness}\nLabeling: {labeling}\n\n{self.table}"

    def relabel(self, labeling):
        """Return the same operation with another labeling of the generator set."""
        return SynthesizedOperation(self.table, self.kind, self.witness, labeling.domain, labeling)

    def regenerate(self):
        """Return the generalized Cayley graph of the table over the labeled generator set.

        Raises
        ------
        ValueError
            If the operation has no labeling.
        """
        if self.labeling is None:
            raise ValueError("Operation has no labeling to regenerate a graph from")
        return cayley_graph(self.table, self.labeling)

    def to_dict(self):
        """Serializable representation of the operation."""
        witness = dict(self.witness)
        if "group" in witness:
            witness["representatives"] = list(witness["representatives"])
            witness["group"] = _table_to_dict(witness["group"])
        return {
            "kind": self.kind,
            "table": _table_to_dict(self.table),
            "witness": witness,
            "generatorSet": list(self.generator_set),
            "labeling": dict(self.labeling.mapping) if self.labeling is not None else None,
            "report": self.report.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        """Inverse of :func:`~SynthesizedOperation.to_dict`. The report is recomputed."""
        witness = dict(data["witness"])
        if "group" in witness:
            witness["group"] = _table_from_dict(witness["group"])
        labeling = Labeling(data["labeling"]) if data.get("labeling") else None
        return cls(_table_from_dict(data["table"]), data["kind"], witness, data["generatorSet"], labeling)


def _table_to_dict(table):
    return {"carrier": list(table.carrier), "rows": [[table.carrier[j] for j in row] for row in table.product]}


def _table_from_dict(data):
    return MagmaTable.from_rows(data["carrier"], data["rows"])


#------------------------------------------------------------------------#
#                                Helpers                                 #
#------------------------------------------------------------------------#

def _require(condition, flag, message=None):
    if not condition:
        raise PreconditionError(flag, message)


def root_labeling(graph, root, labels=None):
    """Label each successor `s` of `root` by the label of the edge `root -a-> s`.

    Parameters
    ----------
    graph : Graph
        The graph.
    root : str
        The vertex whose outgoing edges define the labeling.
    labels : collection of str, optional
        If given, only edges with these labels are used.

    Returns
    -------
    labeling : Labeling or None
        The labeling, or `None` if some successor is reached by several labels or a label leads to several targets.
    """
    mapping = {}
    used = set()
    for label, target in graph.out_edges(root):
        if labels is not None and label not in labels:
            continue
        if target in mapping or label in used:
            return None
        mapping[target] = label
        used.add(label)
    return Labeling(mapping) if mapping else None


def _word_table(vertices, step):
    """Build a table over `vertices` from `step(s)` returning the row of `s` as a `{t: s·t}` dict."""
    index = {vertex: i for i, vertex in enumerate(vertices)}
    product = np.empty((len(vertices), len(vertices)), dtype=np.int64)
    for s in vertices:
        for t, x in step(s).items():
            product[index[s], index[t]] = index[x]
    return MagmaTable(vertices, product)


def _path_table(graph, root):
    """Table of `s * t`: the end of the replay from `s` of the BFS word leading from `root` to `t`."""
    order, parents = graph.bfs_tree(root)
    _require(len(order) == graph.n_vertices, "rooted", f"Vertex {root!r} is not a root")

    def row(s):
        image = {root: s}
        for t in order[1:]:
            parent, label = parents[t]
            x = graph.successor(image[parent], label)
            if x is None:
                raise ValueError(f"Replay from {s!r} towards {t!r} is stuck, the graph violates a precondition")
            image[t] = x
        return image

    return _word_table(graph.vertices, row)


#------------------------------------------------------------------------#
#                         Operation synthesis                            #
#------------------------------------------------------------------------#

def path_operation(graph, root, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Synthesize the path operation: `s * t` is the end of the replay from `s` of any label word leading from
    `root` to `t`.

    For a rooted, deterministic and arc-symmetric graph this is a left-cancellative monoid with identity `root`,
    cancellative when the graph is co-deterministic. For a simple graph its Cayley graph over the successors of the
    root reproduces the graph.

    Parameters
    ----------
    graph : Graph
        The source graph.
    root : str
        A root of the graph.
    budget : int, optional
        Node budget of the arc-symmetry check.

    Returns
    -------
    operation : SynthesizedOperation
        The path operation.

    Raises
    ------
    PreconditionError
        If `root` is not a root, or the graph is not deterministic or not arc-symmetric.
    BudgetExceededError
        If the arc-symmetry check exceeds `budget`.
    """
    graph.check_vertex(root)
    report = property_report(graph)
    _require(root in report.roots, "rooted", f"Vertex {root!r} is not a root")
    _require(report["deterministic"], "deterministic")
    _require(is_arc_symmetric(graph, budget=budget), "arc-symmetric")
    table = _path_table(graph, root)
    return SynthesizedOperation(table, "path", {"root": root}, graph.successors(root), root_labeling(graph, root))


def chain_operation(graph, root, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Synthesize the chain operation: the path operation of the graph enriched by reversed barred edges.

    For a connected, deterministic, co-deterministic and symmetric graph it is a group with identity `root`.

    Raises
    ------
    PreconditionError
        If the graph is not connected, deterministic, co-deterministic or symmetric.
    BudgetExceededError
        If the symmetry check exceeds `budget`.
    """
    graph.check_vertex(root)
    report = property_report(graph)
    for flag in ("connected", "deterministic", "coDeterministic"):
        _require(report[flag], flag)
    _require(is_symmetric(graph, budget=budget), "symmetric")
    table = _path_table(graph.barred(), root)
    return SynthesizedOperation(table, "chain", {"root": root}, graph.successors(root), root_labeling(graph, root))


def extended_chain_operation(graph, group=None, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Synthesize the extended chain operation over a representative set of the connected components.

    Let `π(s)` be the representative of the component of `s` and `u_s` the BFS chain word from `π(s)` to `s`. Then
    `s * t` is the end of the replay of `u_s u_t` from `π(s)·π(t)`, the product being taken in a group on the
    representatives.

    Parameters
    ----------
    graph : Graph
        A deterministic, co-deterministic and symmetric graph.
    group : MagmaTable, optional
        A group over the representatives. Defaults to the cyclic group adding length-lexicographic ranks.
    budget : int, optional
        Node budget of the symmetry check.

    Returns
    -------
    operation : SynthesizedOperation
        A group operation whose identity is the identity of `group`.

    Raises
    ------
    ValueError
        If the carrier of `group` differs from the representatives.
    PreconditionError
        If the graph violates a condition or `group` is not a group.
    """
    report = property_report(graph)
    for flag in ("deterministic", "coDeterministic"):
        _require(report[flag], flag)
    _require(is_symmetric(graph, budget=budget), "symmetric")

    partition = graph.components()
    representatives = partition.representatives
    if group is None:
        ranks = np.arange(len(representatives))
        group = MagmaTable(representatives, (ranks[:, None] + ranks[None, :]) % len(representatives))
    elif set(group.carrier) != set(representatives) or len(group) != len(representatives):
        raise ValueError(f"Group carrier {list(group.carrier)} differs from representatives {list(representatives)}")
    group_report = axiom_check(group)
    _require(group_report.flags["group"], "group", "Table on the representatives is not a group")

    barred = graph.barred()
    words = {}
    for representative in representatives:
        order, parents = barred.bfs_tree(representative)
        words[representative] = ()
        for vertex in order[1:]:
            parent, label = parents[vertex]
            words[vertex] = words[parent] + (label,)

    def row(s):
        image = {}
        for t in graph.vertices:
            start = group(partition(s), partition(t))
            x = barred.replay(start, words[s] + words[t])
            if x is None:
                raise ValueError(f"Chain replay for {s!r} * {t!r} is stuck, the graph violates a precondition")
            image[t] = x
        return image

    table = _word_table(graph.vertices, row)
    identity = group_report.identity
    witness = {"representatives": representatives, "group": group}
    return SynthesizedOperation(table, "extendedChain", witness, graph.successors(identity),
                                root_labeling(graph, identity))


def edge_operation(graph, root):
    """Synthesize the edge operation: `s × t` is the `a`-successor of `s` where `root -a-> t`.

    For a 1-root of a deterministic, source-complete and simple graph this is a left-cancellative magma with left
    identity `root`. It has `root` as identity when the graph is loop-complete, is a left-quasigroup when the graph is
    complete and a quasigroup when it is also co-deterministic and target-complete.

    Raises
    ------
    PreconditionError
        If `root` is not a 1-root or the graph is not deterministic, source-complete or simple.
    """
    graph.check_vertex(root)
    report = property_report(graph)
    _require(root in report.one_roots, "1-root", f"Vertex {root!r} is not a 1-root")
    for flag in ("deterministic", "sourceComplete", "simple"):
        _require(report[flag], flag)

    labeling = root_labeling(graph, root)
    row = lambda s: {t: graph.successor(s, labeling(t)) for t in graph.vertices}
    table = _word_table(graph.vertices, row)
    return SynthesizedOperation(table, "edge", {"root": root}, graph.vertices, labeling)


def path_choice_products(graph, root, s, t, max_length):
    """Return every end of the replay from `s` of a label word of length at most `max_length` leading from `root`
    to `t`. `None` stands for a stuck replay. A single element means the path operation does not depend on the word
    chosen."""
    graph.check_vertex(root, s, t)
    results = set()
    stack = [(root, ())]
    while stack:
        vertex, word = stack.pop()
        if vertex == t:
            results.add(graph.replay(s, word))
        if len(word) < max_length:
            stack.extend((target, word + (label,)) for label, target in graph.out_edges(vertex))
    return results


#------------------------------------------------------------------------#
#                              Completions                               #
#------------------------------------------------------------------------#

def _add_fresh_loops(graph):
    """Add a loop with a label unused by `graph` on every vertex of a loopless graph."""
    if not graph.is_loopless:
        return graph
    label = fresh_token(LOOP_LABEL, set(graph.labels))
    return graph.union((vertex, label, vertex) for vertex in graph.vertices)


def _fresh_prefix(prefix, labels):
    """Extend `prefix` until no label starts with it."""
    while any(label.startswith(prefix) for label in labels):
        prefix += "'"
    return prefix


def left_quasigroup_completion(graph, root):
    """Complete a graph into a complete, simple, deterministic and source-complete graph labeled by vertices.

    With `ℓ_s = {(a, b) : r -a-> t and s -b-> t}` and `ℓ̄_s` its extension to a permutation of the labels, matching
    unmatched labels in length-lexicographic order, the completion has the edges
    * `s -p-> t` if `r -a-> p` and `s -a-> t` for some label `a`,
    * `s -p-> t` if `r -a-> t` and `s -ℓ̄_s(a)-> p` for some label `a` outside the domain of `ℓ_s`,
    * `s -t-> t` if `t` is a successor of neither `r` nor `s`.
    A loopless graph first gets a loop with a fresh label on every vertex so that the completion is loop-complete.

    The edge operation of the completion at `root` is a left-quasigroup whose Cayley graph over the labeling defined
    by the edges of `graph` out of `root` is `graph` itself.

    Parameters
    ----------
    graph : Graph
        A simple, deterministic and source-complete graph.
    root : str
        A vertex of the graph.

    Returns
    -------
    completion : Graph
        The completion over the vertices of `graph`, with `root -s-> s` for every vertex `s`.

    Raises
    ------
    PreconditionError
        If the graph is not simple, deterministic or source-complete.
    ValueError
        If `root` is unknown.
    """
    graph.check_vertex(root)
    report = property_report(graph)
    for flag in ("simple", "deterministic", "sourceComplete"):
        _require(report[flag], flag)
    work = _add_fresh_loops(graph)
    labels = work.labels
    root_out = {label: work.successor(root, label) for label in labels}
    root_targets = set(root_out.values())

    edges = []
    for s in work.vertices:
        s_out = {label: work.successor(s, label) for label in labels}
        s_targets = set(s_out.values())
        s_label_of = {target: label for label, target in s_out.items()}
        matching = {a: s_label_of[root_out[a]] for a in labels if root_out[a] in s_label_of}
        unmatched_domain = [a for a in labels if a not in matching]
        unmatched_range = [b for b in labels if b not in set(matching.values())]
        permutation = {**matching, **dict(zip(unmatched_domain, unmatched_range))}

        for a in labels:
            edges.append((s, root_out[a], s_out[a]))
        for a in unmatched_domain:
            edges.append((s, s_out[permutation[a]], root_out[a]))
        for t in work.vertices:
            if t not in root_targets and t not in s_targets:
                edges.append((s, t, t))
    return Graph(edges)


def quasigroup_completion(graph):
    """Complete a graph into a complete, simple, deterministic, co-deterministic, source- and target-complete graph
    by coloring its unlabeled complement with fresh labels.

    A loopless graph first gets a loop with a fresh label on every vertex. The complement of the result is a regular
    relation and is colored by :func:`~coloring.complete_edge_color` with "__c1", "__c2", ... The prefix gets
    primes appended while a label of `graph` starts with it. The label-restriction of the completion to the labels of
    `graph` is `graph`.

    Raises
    ------
    PreconditionError
        If the graph is not simple, deterministic, co-deterministic, source-complete or target-complete.
    """
    report = property_report(graph)
    for flag in ("simple", "deterministic", "coDeterministic", "sourceComplete", "targetComplete"):
        _require(report[flag], flag)
    work = _add_fresh_loops(graph)
    complement = complement_relation(work)
    if not len(complement):
        return work
    coloring = complete_edge_color(complement, prefix=_fresh_prefix(COLOR_PREFIX, work.labels))
    return work.union(coloring.triples())


def root_completion_search(graph, budget=DEFAULT_SEARCH_BUDGET, iso_budget=DEFAULT_ISOMORPHISM_BUDGET, bar=False):
    """Search for a completion of `graph` by a fresh root that is rooted at it, simple, deterministic,
    co-deterministic and arc-symmetric.

    A graph that already has these properties is returned as is. Otherwise edges `r -a-> t` from a fresh root `r`
    are enumerated, at most one per label, never into a vertex already entered by an `a`-edge and never two into the
    same vertex. Targets are tried in length-lexicographic order and arc-symmetry is checked last.

    Notes
    -----
    A finite completion that succeeds is strongly connected while the fresh root has no incoming edge, so unrooted
    finite inputs are expected to yield `None`. Such an exhausted search emits a `RuntimeWarning`.

    Parameters
    ----------
    graph : Graph
        The graph to complete.
    budget : int, optional
        Maximal number of candidate completions examined.
    iso_budget : int, optional
        Node budget of each arc-symmetry check.
    bar : bool, optional, defaults to False
        Whether to show the progress bar.

    Returns
    -------
    completion : Graph or None
        The first completion found, `None` if there is none.

    Raises
    ------
    BudgetExceededError
        If more than `budget` candidates are needed.
    """
    report = property_report(graph)
    invariant_flags = ("simple", "deterministic", "coDeterministic")
    if not all(report[flag] for flag in invariant_flags):
        return None
    if report["rooted"] and is_arc_symmetric(graph, budget=iso_budget):
        return graph

    root = fresh_token(ROOT_TOKEN, set(graph.vertices))
    choices = [[target for target in graph.vertices if not graph.predecessors(target, label)] + [None]
               for label in graph.labels]
    n_candidates = int(np.prod([len(targets) for targets in choices]))
    logger.debug("Root completion search over %d candidates", n_candidates)

    nodes = 0
    for targets in tqdm(cartesian_product(*choices), total=n_candidates, desc="Root completion", disable=not bar):
        chosen = [target for target in targets if target is not None]
        if not chosen or len(set(chosen)) != len(chosen):
            continue
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError("Root completion search", budget)
        candidate = graph.union((root, label, target) for label, target in zip(graph.labels, targets)
                                if target is not None)
        if root not in candidate.roots():
            continue
        if is_arc_symmetric(candidate, budget=iso_budget):
            return candidate
    warnings.warn("No root completion found: a finite completion is strongly connected and cannot gain a fresh root",
                  RuntimeWarning)
    return None
