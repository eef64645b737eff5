"""Implements PropertyReport class that decides the structural predicates of a graph in one pass"""

import textwrap

import pandas as pd

from .coloring import Relation
from .const import DEFAULT_COMPLEMENT_CAP


class PropertyReport:
    """Structural predicates of a finite labeled graph.

    Regularity is evaluated on the unlabeled relation `→_G` of the graph. Co-variants refer to its complement
    `V×V − →_G` and are decided by degree counting, so no complement is materialized.

    A report is usually obtained by calling :func:`property_report`.

    Parameters
    ----------
    graph : Graph
        The graph to examine.

    Attributes
    ----------
    graph : Graph
        The examined graph.
    flags : dict
        Maps each name of :attr:`FLAGS` to a bool.
    roots : tuple of str
        Vertices from which every vertex is accessible.
    one_roots : tuple of str
        Vertices having an edge to every vertex.
    degrees : pandas.DataFrame
        Per-vertex `out_degree` and `in_degree` of `→_G` followed by per-label out-degrees `out:<label>`, indexed by
        vertex.
    max_out_degree, max_in_degree, max_degree : int
        `Δ⁺`, `Δ⁻` and `Δ = max(Δ⁺, Δ⁻)`.
    label_count : int
        Number of labels.
    witnesses : dict
        Maps each failed flag to a human-readable counterexample.
    """
    FLAGS = ("simple", "deterministic", "coDeterministic", "sourceComplete", "targetComplete", "complete",
             "loopComplete", "rooted", "stronglyConnected", "connected", "outRegular", "coOutRegular", "regular",
             "coRegular")

    def __init__(self, graph):
        self.graph = graph
        self.witnesses = {}
        vertices = graph.vertices
        labels = graph.labels
        n_vertices = len(vertices)

        simple = self._check_index("simple", "labels",
                                   lambda pair, items: f"{pair[0]} -> {pair[1]} carries labels {', '.join(items)}")
        deterministic = self._check_index("deterministic", "targets",
                                          lambda key, items: f"{key[0]} -{key[1]}-> {' and '.join(items)}")
        co_deterministic = self._check_index("coDeterministic", "sources", self._co_deterministic_witness)

        source_complete = self._check_completeness("sourceComplete", graph.out_labels, "leaving")
        target_complete = self._check_completeness("targetComplete", graph.in_labels, "entering")

        out_degrees = [len(graph.successors(v)) for v in vertices]
        in_degrees = [len(graph.predecessors(v)) for v in vertices]
        self.one_roots = tuple(v for v, degree in zip(vertices, out_degrees) if degree == n_vertices)
        complete = len(self.one_roots) == n_vertices
        if not complete:
            source = next(v for v, degree in zip(vertices, out_degrees) if degree < n_vertices)
            target = next(t for t in vertices if not graph.labels_between(source, t))
            self.witnesses["complete"] = f"no edge from {source} to {target}"

        loop_complete = True
        loop_labels = {(label, source) for source, label, target in graph.sorted_edges if source == target}
        for label in sorted({label for label, _ in loop_labels}, key=labels.index):
            missing = [v for v in vertices if (label, v) not in loop_labels]
            if missing:
                loop_complete = False
                self.witnesses["loopComplete"] = f"{label}-loops exist but {missing[0]} has none"
                break

        self.roots = graph.roots()
        strongly_connected = len(self.roots) == n_vertices
        connected = graph.is_connected()

        out_regular = len(set(out_degrees)) == 1
        regular = len(set(out_degrees) | set(in_degrees)) == 1
        co_out_degrees = [n_vertices - degree for degree in out_degrees]
        co_in_degrees = [n_vertices - degree for degree in in_degrees]
        co_out_regular = len(set(co_out_degrees)) == 1
        co_regular = len(set(co_out_degrees) | set(co_in_degrees)) == 1

        self.flags = {
            "simple": simple,
            "deterministic": deterministic,
            "coDeterministic": co_deterministic,
            "sourceComplete": source_complete,
            "targetComplete": target_complete,
            "complete": complete,
            "loopComplete": loop_complete,
            "rooted": bool(self.roots),
            "stronglyConnected": strongly_connected,
            "connected": connected,
            "outRegular": out_regular,
            "coOutRegular": co_out_regular,
            "regular": regular,
            "coRegular": co_regular,
        }
        if not self.roots:
            self.witnesses["rooted"] = "no vertex reaches every vertex"
        if not strongly_connected:
            unreached = next(v for v in vertices if v not in self.roots)
            self.witnesses["stronglyConnected"] = f"{unreached} does not reach every vertex"
        if not connected:
            self.witnesses["connected"] = f"{len(graph.components())} connected components"

        self.degrees = pd.DataFrame({"out_degree": out_degrees, "in_degree": in_degrees},
                                    index=pd.Index(vertices, name="vertex"))
        for label in labels:
            self.degrees[f"out:{label}"] = [len(graph.successors(v, label)) for v in vertices]
        self.max_out_degree = max(out_degrees)
        self.max_in_degree = max(in_degrees)
        self.max_degree = max(self.max_out_degree, self.max_in_degree)
        self.label_count = len(labels)

    def _check_index(self, flag, index, describe):
        for key, items in self.graph.index_items(index):
            if len(items) > 1:
                self.witnesses[flag] = describe(key, items)
                return False
        return True

    @staticmethod
    def _co_deterministic_witness(key, sources):
        target, label = key
        first, second = sources[:2]
        return (f"{first} -{label}-> {target} and {second} -{label}-> {target} "
                f"({first}·{label} = {second}·{label})")

    def _check_completeness(self, flag, vertex_labels, direction):
        labels = self.graph.labels
        for vertex in self.graph.vertices:
            present = set(vertex_labels(vertex))
            if len(present) != len(labels):
                missing = next(label for label in labels if label not in present)
                self.witnesses[flag] = f"no {missing}-edge {direction} {vertex}"
                return False
        return True

    def __getitem__(self, flag):
        return self.flags[flag]

    def __str__(self):
        flags = "\n".join(f"{name + ':':<27}{value}" for name, value in self.flags.items())
        msg = f"""
        Number of vertices:        {self.graph.n_vertices}
        Number of edges:           {self.graph.n_edges}
        Number of labels:          {self.label_count}
        Roots:                     {', '.join(self.roots) or '-'}
        1-roots:                   {', '.join(self.one_roots) or '-'}
        Max out/in degree:         {self.max_out_degree}/{self.max_in_degree}
        """
        witnesses = "\n".join(f"{name}: {witness}" for name, witness in self.witnesses.items())
        report = textwrap.dedent(msg).strip() + "\n\n" + flags
        if witnesses:
            report += "\n\nWitnesses:\n" + witnesses
        return report

    def info(self):
        """Print the report."""
        print(self)

    def to_dict(self):
        """Flat `key -> value` mapping of the report."""
        return {
            **self.flags,
            "roots": list(self.roots),
            "oneRoots": list(self.one_roots),
            "maxOutDegree": self.max_out_degree,
            "maxInDegree": self.max_in_degree,
            "maxDegree": self.max_degree,
            "labelCount": self.label_count,
            "vertexCount": self.graph.n_vertices,
            "edgeCount": self.graph.n_edges,
            "witnesses": dict(self.witnesses),
        }


def property_report(graph):
    """Compute the :class:`PropertyReport` of a graph."""
    return PropertyReport(graph)


def complement_relation(graph, max_pairs=DEFAULT_COMPLEMENT_CAP):
    """Return the unlabeled complement `{(s, t) : no edge from s to t}` as a relation over the vertices of `graph`.

    Parameters
    ----------
    graph : Graph
        The graph to complement.
    max_pairs : int, optional
        Maximal size of `V×V` allowed to be materialized.

    Raises
    ------
    ValueError
        If `|V|²` exceeds `max_pairs`.
    """
    vertices = graph.vertices
    if len(vertices) ** 2 > max_pairs:
        raise ValueError(f"Complement of a graph with {len(vertices)} vertices exceeds {max_pairs} pairs")
    pairs = [(s, t) for s in vertices for t in vertices if not graph.labels_between(s, t)]
    return Relation(pairs, carrier=vertices)
