"""Implements Graph, MarkedSubgraph and ComponentPartition classes: finite labeled digraphs and their pieces"""

import textwrap
from collections import deque
from functools import cached_property

import networkx as nx

from .utils import (validate_token, sort_llex, llex_key, triple_key, bar, read_text, write_text, parse_triples,
                    parse_marks, dump_triples, dot_document, plot_graph)


class Graph:
    """A finite, non-empty set of labeled directed edges `(source, label, target)`.

    Vertices and labels are opaque text tokens and are derived from the edges, so a graph never has isolated
    vertices. Every container of tokens exposed by the graph is sorted in length-lexicographic order: by token length
    first, then bytewise. A graph is immutable: all methods that change the edge set return a new instance.

    A graph can be created from:
    * an iterable of triples by direct instantiation,
    * a tab-separated document by calling :func:`~Graph.from_text`,
    * a tab-separated file by calling :func:`~Graph.from_file`.

    Examples
    --------
    >>> even = Graph([("p", "a", "q"), ("p", "b", "p"), ("q", "a", "p"), ("q", "b", "q")])
    >>> even.successors("p")
    ('p', 'q')
    >>> even.find_path_label("p", "q")
    ('a',)

    Parameters
    ----------
    edges : iterable of tuples with 3 str
        Labeled edges of the graph. Duplicates collapse into a single edge.

    Attributes
    ----------
    edges : frozenset of tuples with 3 str
        Edges of the graph.
    sorted_edges : tuple of tuples with 3 str
        Edges sorted by `(source, label, target)` in length-lexicographic order.
    vertices : tuple of str
        Sorted vertex set.
    labels : tuple of str
        Sorted label set.

    Raises
    ------
    ValueError
        If the edge set is empty or contains an invalid token.
    """
    def __init__(self, edges):
        edges = frozenset(tuple(edge) for edge in edges)
        if not edges:
            raise ValueError("A graph must contain at least one edge")
        for edge in edges:
            if len(edge) != 3:
                raise ValueError(f"Each edge must be a (source, label, target) triple, got {edge!r}")
            for token in edge:
                validate_token(token)
        self.edges = edges
        self.sorted_edges = tuple(sorted(edges, key=triple_key))

        # Indices by (source, label), (target, label) and (source, target)
        self._targets = {}
        self._sources = {}
        self._between = {}
        self._out = {}
        self._in = {}
        for source, label, target in self.sorted_edges:
            self._targets.setdefault((source, label), []).append(target)
            self._sources.setdefault((target, label), []).append(source)
            self._between.setdefault((source, target), []).append(label)
            self._out.setdefault(source, []).append((label, target))
            self._in.setdefault(target, []).append((label, source))
        self._vertex_set = frozenset(self._out) | frozenset(self._in)
        self.vertices = tuple(sort_llex(self._vertex_set))
        self.labels = tuple(sort_llex({label for _, label, _ in edges}))

    @classmethod
    def from_text(cls, text):
        """Parse a graph from a tab-separated document with one `source TAB label TAB target` edge per line.

        Lines starting with '#' are comments. Labels starting with "~" are reserved for barred labels and are
        rejected.

        Parameters
        ----------
        text : str
            Document contents.

        Returns
        -------
        graph : Graph
            Graph whose edge set equals the parsed triples.

        Raises
        ------
        ValueError
            If the document has no edges, a line has a wrong number of fields or a token is invalid.
        """
        return cls(parse_triples(text))

    @classmethod
    def from_file(cls, path, encoding="UTF-8"):
        """Load a graph from a tab-separated file. See :func:`~Graph.from_text` for the format."""
        return cls.from_text(read_text(path, encoding=encoding))

    def to_text(self):
        """Serialize the graph: one edge per line, sorted by `(source, label, target)`."""
        return dump_triples(self.edges)

    def dump(self, path, encoding="UTF-8"):
        """Save the graph to a tab-separated file."""
        write_text(path, self.to_text(), encoding=encoding)
        return self

    #------------------------------------------------------------------------#
    #                            Dunder methods                              #
    #------------------------------------------------------------------------#

    def __eq__(self, other):
        return isinstance(other, Graph) and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.sorted_edges)

    def __contains__(self, edge):
        return tuple(edge) in self.edges

    def __repr__(self):
        return f"Graph({list(self.sorted_edges)!r})"

    def __str__(self):
        msg = f"""
        Number of vertices:        {self.n_vertices}
        Number of edges:           {self.n_edges}
        Labels:                    {', '.join(self.labels)}
        Loopless:                  {self.is_loopless}
        """
        return textwrap.dedent(msg).strip()

    def info(self):
        """Print graph summary."""
        print(self)

    #------------------------------------------------------------------------#
    #                               Accessors                                #
    #------------------------------------------------------------------------#

    @property
    def n_vertices(self):
        """int: The number of vertices."""
        return len(self.vertices)

    @property
    def n_edges(self):
        """int: The number of edges."""
        return len(self.edges)

    @property
    def is_loopless(self):
        """bool: Whether no edge starts and ends at the same vertex."""
        return all(source != target for source, _, target in self.edges)

    def has_vertex(self, vertex):
        """Check whether `vertex` belongs to the graph."""
        return vertex in self._vertex_set

    def check_vertex(self, *vertices):
        """Raise `ValueError` if any of the `vertices` does not belong to the graph."""
        for vertex in vertices:
            if vertex not in self._vertex_set:
                raise ValueError(f"Unknown vertex {vertex!r}")

    def out_edges(self, vertex):
        """`(label, target)` pairs of the edges leaving `vertex`, sorted."""
        return tuple(self._out.get(vertex, ()))

    def in_edges(self, vertex):
        """`(label, source)` pairs of the edges entering `vertex`, sorted."""
        return tuple(self._in.get(vertex, ()))

    def successors(self, vertex, label=None):
        """Sorted targets of the edges leaving `vertex`, optionally only those labeled `label`."""
        if label is not None:
            return tuple(self._targets.get((vertex, label), ()))
        return tuple(sort_llex({target for _, target in self._out.get(vertex, ())}))

    def predecessors(self, vertex, label=None):
        """Sorted sources of the edges entering `vertex`, optionally only those labeled `label`."""
        if label is not None:
            return tuple(self._sources.get((vertex, label), ()))
        return tuple(sort_llex({source for _, source in self._in.get(vertex, ())}))

    def labels_between(self, source, target):
        """Sorted labels of the edges from `source` to `target`."""
        return tuple(self._between.get((source, target), ()))

    def out_labels(self, vertex):
        """Sorted set of labels leaving `vertex`."""
        return tuple(sort_llex({label for label, _ in self._out.get(vertex, ())}))

    def in_labels(self, vertex):
        """Sorted set of labels entering `vertex`."""
        return tuple(sort_llex({label for label, _ in self._in.get(vertex, ())}))

    def successor(self, vertex, label):
        """Return the unique `label`-successor of `vertex` or `None` if there is none.

        Raises
        ------
        ValueError
            If `vertex` has several `label`-successors.
        """
        targets = self._targets.get((vertex, label), ())
        if len(targets) > 1:
            raise ValueError(f"Vertex {vertex!r} has several {label!r}-successors, the graph is not deterministic")
        return targets[0] if targets else None

    def replay(self, vertex, word):
        """Follow the labels of `word` from `vertex` in a deterministic graph. Return the reached vertex or `None` if
        the walk gets stuck."""
        for label in word:
            vertex = self.successor(vertex, label)
            if vertex is None:
                return None
        return vertex

    def index_items(self, index):
        """Iterate over `(key, values)` of one of the graph indices: "targets" by `(source, label)`, "sources" by
        `(target, label)` or "labels" by `(source, target)`."""
        indices = {"targets": self._targets, "sources": self._sources, "labels": self._between}
        if index not in indices:
            raise ValueError(f"Unknown index {index}, available options are {', '.join(indices)}")
        return indices[index].items()

    #------------------------------------------------------------------------#
    #                            Transformations                             #
    #------------------------------------------------------------------------#

    def inverse(self):
        """Return the graph with every edge reversed."""
        return Graph((target, label, source) for source, label, target in self.edges)

    def restrict_vertices(self, vertices):
        """Return the vertex-restriction: edges with both endpoints in `vertices`.

        Raises
        ------
        ValueError
            If no edge survives the restriction.
        """
        vertices = set(vertices)
        edges = [edge for edge in self.edges if edge[0] in vertices and edge[2] in vertices]
        if not edges:
            raise ValueError("Vertex restriction of the graph is empty")
        return Graph(edges)

    def restrict_labels(self, labels):
        """Return the label-restriction: edges labeled in `labels`.

        Raises
        ------
        ValueError
            If no edge survives the restriction.
        """
        labels = set(labels)
        edges = [edge for edge in self.edges if edge[1] in labels]
        if not edges:
            raise ValueError("Label restriction of the graph is empty")
        return Graph(edges)

    def transform(self, mode, subset=None):
        """Return the inverse, a vertex-restriction or a label-restriction of the graph.

        Parameters
        ----------
        mode : {"inverse", "vertex_restriction", "label_restriction"}
            Transformation to apply.
        subset : iterable of str, optional
            Vertices or labels to keep. Required for restrictions.

        Returns
        -------
        graph : Graph
            Transformed graph.

        Raises
        ------
        ValueError
            If `mode` is unknown, `subset` is missing for a restriction or the result is empty.
        """
        if mode == "inverse":
            return self.inverse()
        if mode not in {"vertex_restriction", "label_restriction"}:
            raise ValueError(f"Unknown transform mode {mode}")
        if subset is None:
            raise ValueError(f"{mode} requires a subset")
        if mode == "vertex_restriction":
            return self.restrict_vertices(subset)
        return self.restrict_labels(subset)

    def union(self, edges):
        """Return the graph with `edges` (a Graph or an iterable of triples) added."""
        if isinstance(edges, Graph):
            edges = edges.edges
        return Graph(self.edges | frozenset(tuple(edge) for edge in edges))

    def barred(self):
        """Return the graph enriched with a reversed edge `t -~a-> s` for every edge `s -a-> t`. Paths of the result
        are the chains of the original graph."""
        return self.union((target, bar(label), source) for source, label, target in self.edges)

    def to_networkx(self):
        """Convert the graph to `networkx.MultiDiGraph` with labels used as edge keys."""
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from((source, target, label, {"label": label}) for source, label, target in self.sorted_edges)
        return graph

    @cached_property
    def _unlabeled(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self._between)
        return graph

    #------------------------------------------------------------------------#
    #                    Accessibility and connectivity                      #
    #------------------------------------------------------------------------#

    def reachable(self, vertex):
        """Set of vertices accessible from `vertex` by a possibly empty path, `vertex` included."""
        self.check_vertex(vertex)
        return nx.descendants(self._unlabeled, vertex) | {vertex}

    def accessible_subgraph(self, vertex):
        """Return the greatest subgraph accessible from `vertex`, marked by `vertex`.

        The edge set is induced by the vertices reachable from `vertex`. It is empty when `vertex` is a sink.

        Raises
        ------
        ValueError
            If `vertex` does not belong to the graph.
        """
        reachable = self.reachable(vertex)
        edges = [edge for edge in self.edges if edge[0] in reachable]
        return MarkedSubgraph(edges, [vertex], parent=self)

    def roots(self):
        """Sorted vertices from which every vertex is accessible."""
        condensed = nx.condensation(self._unlabeled)
        sources = [node for node in condensed if condensed.in_degree(node) == 0]
        if len(sources) != 1:
            return ()
        return tuple(sort_llex(condensed.nodes[sources[0]]["members"]))

    def is_connected(self):
        """Check whether the graph has a single connected component."""
        return nx.is_weakly_connected(self._unlabeled)

    def is_strongly_connected(self):
        """Check whether every vertex is accessible from every vertex."""
        return nx.is_strongly_connected(self._unlabeled)

    def components(self):
        """Split the graph into its connected components. See :class:`ComponentPartition`."""
        return ComponentPartition(self)

    #------------------------------------------------------------------------#
    #                              Path search                               #
    #------------------------------------------------------------------------#

    def bfs_tree(self, source, chains=False):
        """Breadth-first search from `source` visiting outgoing edges in label order, then target order.

        Parameters
        ----------
        source : str
            Start vertex.
        chains : bool, optional, defaults to False
            Whether reversed edges are traversed too, labeled by barred copies of the labels.

        Returns
        -------
        order : list of str
            Reached vertices in visiting order, `source` first.
        parents : dict
            Maps every reached vertex except `source` to `(parent, label)` of the edge it was discovered by.
        """
        self.check_vertex(source)
        order = [source]
        parents = {}
        queue = deque([source])
        while queue:
            vertex = queue.popleft()
            steps = list(self._out.get(vertex, ()))
            if chains:
                steps += [(bar(label), neighbor) for label, neighbor in self._in.get(vertex, ())]
                steps.sort(key=lambda step: (llex_key(step[0]), llex_key(step[1])))
            for label, neighbor in steps:
                if neighbor != source and neighbor not in parents:
                    parents[neighbor] = (vertex, label)
                    order.append(neighbor)
                    queue.append(neighbor)
        return order, parents

    def find_path_label(self, source, target, chains=False):
        """Return a shortest label word of a path (or a chain if `chains` is set) from `source` to `target`.

        Ties are broken by label order. Barred labels of chains are the original labels prefixed with "~".

        Returns
        -------
        word : tuple of str or None
            Labels along the path, an empty tuple when `source == target`, `None` if `target` is unreachable.

        Raises
        ------
        ValueError
            If `source` or `target` does not belong to the graph.
        """
        self.check_vertex(source, target)
        _, parents = self.bfs_tree(source, chains=chains)
        if target != source and target not in parents:
            return None
        word = []
        vertex = target
        while vertex != source:
            vertex, label = parents[vertex]
            word.append(label)
        return tuple(reversed(word))

    def distance(self, source, target):
        """Length of the shortest chain between two vertices or `None` if they lie in different components."""
        word = self.find_path_label(source, target, chains=True)
        return None if word is None else len(word)

    #------------------------------------------------------------------------#
    #                             Visualization                              #
    #------------------------------------------------------------------------#

    def to_dot(self, marks=(), name="G"):
        """Return a DOT document of the graph with `marks` drawn as double circles."""
        return dot_document(self.edges, self.vertices, marks=marks, name=name)

    def plot(self, marks=(), **kwargs):
        """Plot the graph. See :func:`~utils.plot_utils.plot_graph` for the arguments."""
        return plot_graph(self.sorted_edges, self.vertices, marks=marks, **kwargs)


class MarkedSubgraph:
    """A possibly empty edge set together with a non-empty set of marked vertices.

    Marked subgraphs represent accessible cones `G↓s`, which are empty for sinks, and finite balls of suffix graphs
    whose marks are the boundary vertices.

    Parameters
    ----------
    edges : iterable of tuples with 3 str
        Labeled edges, may be empty.
    marks : iterable of str
        Marked vertices. Each must occur in `edges` unless `edges` is empty.
    parent : Graph, optional
        The graph the subgraph was cut from. If given, marks are checked to be its vertices.

    Attributes
    ----------
    edges : frozenset of tuples with 3 str
        Edges of the subgraph.
    marks : frozenset of str
        Marked vertices.
    vertices : tuple of str
        Sorted vertices of the edges, or the marks if there are no edges.
    """
    def __init__(self, edges, marks, parent=None):
        self.edges = frozenset(tuple(edge) for edge in edges)
        self.marks = frozenset(marks)
        if not self.marks:
            raise ValueError("A marked subgraph must have at least one mark")
        if parent is not None:
            parent.check_vertex(*self.marks)
        vertices = {source for source, _, _ in self.edges} | {target for _, _, target in self.edges}
        if self.edges and not self.marks <= vertices:
            raise ValueError("Every mark must be a vertex of the edge set unless the edge set is empty")
        self.vertices = tuple(sort_llex(vertices or self.marks))

    @property
    def is_empty(self):
        """bool: Whether the edge set is empty."""
        return not self.edges

    @property
    def graph(self):
        """Graph or None: The edge set as a graph, `None` when it is empty."""
        return Graph(self.edges) if self.edges else None

    @property
    def sorted_marks(self):
        """tuple of str: Marks in length-lexicographic order."""
        return tuple(sort_llex(self.marks))

    def __eq__(self, other):
        return isinstance(other, MarkedSubgraph) and (self.edges, self.marks) == (other.edges, other.marks)

    def __hash__(self):
        return hash((self.edges, self.marks))

    def __repr__(self):
        return f"MarkedSubgraph({sorted(self.edges, key=triple_key)!r}, marks={list(self.sorted_marks)!r})"

    @classmethod
    def from_text(cls, text):
        """Parse a document written by :func:`~MarkedSubgraph.to_text`. The edge set may be empty.

        Raises
        ------
        ValueError
            If the document has no `# mark` lines or a line is malformed.
        """
        return cls(parse_triples(text, allow_empty=True), parse_marks(text))

    @classmethod
    def from_file(cls, path, encoding="UTF-8"):
        """Load a marked subgraph saved by :func:`~MarkedSubgraph.dump`."""
        return cls.from_text(read_text(path, encoding=encoding))

    def to_text(self):
        """Serialize edges as for :func:`Graph.to_text` followed by one `# mark TAB vertex` comment per mark."""
        return dump_triples(self.edges, comments=[f"mark\t{mark}" for mark in self.sorted_marks])

    def dump(self, path, encoding="UTF-8"):
        """Save the marked subgraph to a tab-separated file."""
        write_text(path, self.to_text(), encoding=encoding)
        return self

    def to_dot(self, name="G"):
        """Return a DOT document with marks drawn as double circles."""
        return dot_document(self.edges, self.vertices, marks=self.marks, name=name)

    def plot(self, **kwargs):
        """Plot the subgraph highlighting its marks."""
        return plot_graph(sorted(self.edges, key=triple_key), self.vertices, marks=self.marks, **kwargs)


class ComponentPartition:
    """Connected components of a graph with a representative set and its canonical mapping.

    The representative of a component is its length-lexicographically least vertex. Components are ordered by their
    representatives. An instance is callable and maps a vertex to its representative.

    Parameters
    ----------
    graph : Graph
        The graph to split.

    Attributes
    ----------
    components : list of Graph
        Connected components, partitioning the edges of the graph.
    representatives : tuple of str
        One vertex per component, in component order.
    canonical_map : dict
        Maps each vertex to the representative of its component.
    """
    def __init__(self, graph):
        parts = []
        for vertices in nx.weakly_connected_components(graph._unlabeled):  # pylint: disable=protected-access
            representative = sort_llex(vertices)[0]
            parts.append((llex_key(representative), representative, vertices))
        parts.sort()

        self.components = []
        self.canonical_map = {}
        for _, representative, vertices in parts:
            self.components.append(Graph(edge for edge in graph.edges if edge[0] in vertices))
            self.canonical_map.update(dict.fromkeys(vertices, representative))
        self.representatives = tuple(representative for _, representative, _ in parts)

    def __len__(self):
        return len(self.components)

    def __call__(self, vertex):
        if vertex not in self.canonical_map:
            raise ValueError(f"Unknown vertex {vertex!r}")
        return self.canonical_map[vertex]

    def component_of(self, vertex):
        """Return the component containing `vertex`."""
        return self.components[self.representatives.index(self(vertex))]


def parse_graph(text):
    """Parse an edge-list document. See :func:`Graph.from_text`."""
    return Graph.from_text(text)
