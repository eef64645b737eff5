"""Implements marked-graph isomorphism search and the vertex- and arc-symmetry predicates"""

import logging
from collections import Counter

from .errors import BudgetExceededError
from .const import DEFAULT_ISOMORPHISM_BUDGET
from .utils import sort_llex, llex_key


logger = logging.getLogger(__name__)


class VertexBijection:
    """A bijection between vertex sets, typically an isomorphism of (marked) graphs.

    The object is callable and maps a vertex of the domain to its image.

    Parameters
    ----------
    forward : dict
        Maps each vertex of the domain to its image.

    Attributes
    ----------
    forward : dict
        Domain to codomain mapping.
    backward : dict
        Codomain to domain mapping.

    Raises
    ------
    ValueError
        If `forward` is not injective.
    """
    def __init__(self, forward):
        self.forward = dict(forward)
        self.backward = {image: vertex for vertex, image in self.forward.items()}
        if len(self.backward) != len(self.forward):
            raise ValueError("Vertex mapping is not injective")

    def __call__(self, vertex):
        return self.forward[vertex]

    def __len__(self):
        return len(self.forward)

    def __eq__(self, other):
        return isinstance(other, VertexBijection) and self.forward == other.forward

    def __repr__(self):
        items = sorted(self.forward.items(), key=lambda item: llex_key(item[0]))
        return "VertexBijection({" + ", ".join(f"{vertex!r}: {image!r}" for vertex, image in items) + "})"

    def inverse(self):
        """The inverse bijection."""
        return VertexBijection(self.backward)

    def then(self, other):
        """Composition applying `self` first and `other` second."""
        return VertexBijection({vertex: other(image) for vertex, image in self.forward.items()})

    def maps_edges(self, edges, image_edges):
        """Check that the bijection sends `edges` exactly onto `image_edges` preserving labels."""
        mapped = {(self(source), label, self(target)) for source, label, target in edges}
        return mapped == set(image_edges)


class _Side:
    """Adjacency of one side of an isomorphism search."""
    def __init__(self, edges, marks):
        self.marks = frozenset(marks)
        self.vertices = tuple(sort_llex({s for s, _, _ in edges} | {t for _, _, t in edges} | self.marks))
        self.between = {}
        self.out = {vertex: [] for vertex in self.vertices}
        self.inc = {vertex: [] for vertex in self.vertices}
        for source, label, target in edges:
            self.between.setdefault((source, target), set()).add(label)
            self.out[source].append((label, target))
            self.inc[target].append((label, source))
        self.between = {pair: frozenset(labels) for pair, labels in self.between.items()}
        self.neighbors = {vertex: {w for _, w in self.out[vertex]} | {w for _, w in self.inc[vertex]}
                          for vertex in self.vertices}
        self.label_counts = Counter(label for _, label, _ in edges)
        self.n_edges = len(edges)

    def labels(self, source, target):
        return self.between.get((source, target), frozenset())


def _refine(side_a, side_b):
    """Iterate per-vertex signatures of `(direction, label, neighbor class)` multisets on both sides jointly.

    Returns two dicts mapping vertices to integer classes or `None` if class histograms of the sides differ.
    """
    def initial(side, vertex):
        return (vertex in side.marks, tuple(sorted(Counter(label for label, _ in side.out[vertex]).items())),
                tuple(sorted(Counter(label for label, _ in side.inc[vertex]).items())),
                tuple(sorted(side.labels(vertex, vertex))))

    def canonize(signatures_a, signatures_b):
        index = {signature: i for i, signature in enumerate(sorted(set(signatures_a.values())
                                                                    | set(signatures_b.values())))}
        colors_a = {vertex: index[signature] for vertex, signature in signatures_a.items()}
        colors_b = {vertex: index[signature] for vertex, signature in signatures_b.items()}
        if Counter(colors_a.values()) != Counter(colors_b.values()):
            return None, None, 0
        return colors_a, colors_b, len(index)

    colors_a, colors_b, n_classes = canonize({v: initial(side_a, v) for v in side_a.vertices},
                                             {v: initial(side_b, v) for v in side_b.vertices})
    while colors_a is not None:
        def signature(side, colors, vertex):
            return (colors[vertex], tuple(sorted((label, colors[w]) for label, w in side.out[vertex])),
                    tuple(sorted((label, colors[w]) for label, w in side.inc[vertex])))

        new_a, new_b, new_n_classes = canonize({v: signature(side_a, colors_a, v) for v in side_a.vertices},
                                               {v: signature(side_b, colors_b, v) for v in side_b.vertices})
        if new_a is None or new_n_classes == n_classes:
            return new_a, new_b
        colors_a, colors_b, n_classes = new_a, new_b, new_n_classes
    return None, None


def _search_order(side, colors):
    """Order vertices so that each one, when possible, is adjacent to an earlier one, starting from small classes."""
    class_sizes = Counter(colors.values())
    key = lambda vertex: (class_sizes[colors[vertex]], llex_key(vertex))
    order = []
    placed = set()
    for start in sorted(side.vertices, key=key):
        if start in placed:
            continue
        frontier = [start]
        placed.add(start)
        while frontier:
            vertex = min(frontier, key=key)
            frontier.remove(vertex)
            order.append(vertex)
            for neighbor in side.neighbors[vertex]:
                if neighbor not in placed:
                    placed.add(neighbor)
                    frontier.append(neighbor)
    return order


def find_isomorphism(edges_a, marks_a, edges_b, marks_b, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Search for a bijection sending edges and marks of one side exactly onto those of the other.

    Vertices are the endpoints of the edges together with the marks. The search backtracks over vertex maps
    restricted to vertices of equal refined signature class.

    Parameters
    ----------
    edges_a, edges_b : collection of tuples with 3 str
        Labeled edges of both sides.
    marks_a, marks_b : collection of str
        Marked vertices of both sides, may be empty.
    budget : int, optional
        Maximal number of tentative vertex assignments.

    Returns
    -------
    bijection : VertexBijection or None
        An isomorphism or `None` if there is none.

    Raises
    ------
    BudgetExceededError
        If the search needs more than `budget` assignments.
    """
    side_a = _Side(edges_a, marks_a)
    side_b = _Side(edges_b, marks_b)
    if (len(side_a.vertices), side_a.n_edges, len(side_a.marks), side_a.label_counts) != \
       (len(side_b.vertices), side_b.n_edges, len(side_b.marks), side_b.label_counts):
        return None
    colors_a, colors_b = _refine(side_a, side_b)
    if colors_a is None:
        return None

    candidates = {}
    for vertex, color in colors_b.items():
        candidates.setdefault(color, []).append(vertex)
    for color_vertices in candidates.values():
        color_vertices.sort(key=llex_key)

    order = _search_order(side_a, colors_a)
    mapping = {}
    reverse = {}
    nodes = 0

    def consistent(vertex, image):
        if side_a.labels(vertex, vertex) != side_b.labels(image, image):
            return False
        for neighbor in side_a.neighbors[vertex]:
            if neighbor in mapping:
                other = mapping[neighbor]
                if side_a.labels(vertex, neighbor) != side_b.labels(image, other) or \
                   side_a.labels(neighbor, vertex) != side_b.labels(other, image):
                    return False
        for neighbor in side_b.neighbors[image]:
            if neighbor in reverse and reverse[neighbor] not in side_a.neighbors[vertex]:
                return False
        return True

    def extend(depth):
        nonlocal nodes
        if depth == len(order):
            return True
        vertex = order[depth]
        for image in candidates[colors_a[vertex]]:
            if image in reverse:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError("Isomorphism search", budget)
            if not consistent(vertex, image):
                continue
            mapping[vertex] = image
            reverse[image] = vertex
            if extend(depth + 1):
                return True
            del mapping[vertex]
            del reverse[image]
        return False

    found = extend(0)
    logger.debug("Isomorphism search on %d vertices used %d nodes", len(order), nodes)
    return VertexBijection(mapping) if found else None


def marked_isomorphic(a, b, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Search for an isomorphism of marked subgraphs sending marks of `a` onto marks of `b`.

    Two subgraphs with empty edge sets are isomorphic iff they have the same number of marks. An empty subgraph is
    never isomorphic to a non-empty one.

    Parameters
    ----------
    a, b : MarkedSubgraph
        Subgraphs to compare.
    budget : int, optional
        Node budget of the search.

    Returns
    -------
    bijection : VertexBijection or None
        A mark-respecting isomorphism or `None`.

    Raises
    ------
    BudgetExceededError
        If the search exceeds `budget`.
    """
    if a.is_empty or b.is_empty:
        if a.is_empty and b.is_empty and len(a.marks) == len(b.marks):
            return VertexBijection(zip(a.sorted_marks, b.sorted_marks))
        return None
    return find_isomorphism(a.edges, a.marks, b.edges, b.marks, budget=budget)


def vertex_isomorphic(graph, s, t, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Check whether some automorphism of `graph` maps `s` to `t`.

    Raises
    ------
    ValueError
        If `s` or `t` is not a vertex of `graph`.
    BudgetExceededError
        If the search exceeds `budget`.
    """
    graph.check_vertex(s, t)
    if s == t:
        return True
    return find_isomorphism(graph.edges, {s}, graph.edges, {t}, budget=budget) is not None


def accessible_isomorphic(graph, s, t, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Check whether the cone accessible from `s` is isomorphic to the cone accessible from `t` by an isomorphism
    mapping `s` to `t`.

    Raises
    ------
    ValueError
        If `s` or `t` is not a vertex of `graph`.
    BudgetExceededError
        If the search exceeds `budget`.
    """
    graph.check_vertex(s, t)
    if s == t:
        return True
    return marked_isomorphic(graph.accessible_subgraph(s), graph.accessible_subgraph(t), budget=budget) is not None


def _cone_invariant(cone):
    return len(cone.edges), len(cone.vertices), tuple(sorted(Counter(label for _, label, _ in cone.edges).items()))


def is_arc_symmetric(graph, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Check whether all the vertices of `graph` are pairwise accessible-isomorphic.

    For a rooted graph only the root against its direct successors is checked. Otherwise cones are first compared by
    edge count, vertex count and label multiset, then every vertex is compared with the least one.

    Raises
    ------
    BudgetExceededError
        If any pairwise search exceeds `budget`.
    """
    roots = graph.roots()
    if roots:
        root = roots[0]
        return all(accessible_isomorphic(graph, root, s, budget=budget) for s in graph.successors(root))

    cones = [graph.accessible_subgraph(vertex) for vertex in graph.vertices]
    if len({_cone_invariant(cone) for cone in cones}) > 1:
        return False
    return all(marked_isomorphic(cones[0], cone, budget=budget) is not None for cone in cones[1:])


def is_symmetric(graph, budget=DEFAULT_ISOMORPHISM_BUDGET):
    """Check whether all the vertices of `graph` are pairwise isomorphic under automorphisms of the whole graph.

    The graph is split into connected components that must be pairwise isomorphic. Inside each component a fixed
    vertex is compared with its neighbors only.

    Raises
    ------
    BudgetExceededError
        If any search exceeds `budget`.
    """
    components = graph.components().components
    first = components[0]
    for component in components[1:]:
        if find_isomorphism(first.edges, (), component.edges, (), budget=budget) is None:
            return False
    for component in components:
        vertex = component.vertices[0]
        neighbors = set(component.successors(vertex)) | set(component.predecessors(vertex))
        if not all(vertex_isomorphic(component, vertex, neighbor, budget=budget) for neighbor in neighbors):
            return False
    return True
