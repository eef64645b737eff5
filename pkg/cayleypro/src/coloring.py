"""Implements Relation and EdgeColoring classes and the edge-coloring algorithm for finite binary relations"""

from .graph import Graph
from .utils import sort_llex, llex_key


class Relation:
    """A finite binary relation on a carrier set.

    Parameters
    ----------
    pairs : iterable of tuples with 2 str
        Pairs `(s, t)` of the relation.
    carrier : iterable of str, optional
        Carrier set, may exceed the support of `pairs`. Defaults to the support.

    Attributes
    ----------
    pairs : frozenset of tuples with 2 str
        Pairs of the relation.
    sorted_pairs : tuple of tuples with 2 str
        Pairs sorted by `(s, t)` in length-lexicographic order.
    carrier : tuple of str
        Sorted carrier set.

    Raises
    ------
    ValueError
        If a pair element does not belong to the carrier.
    """
    def __init__(self, pairs, carrier=None):
        self.pairs = frozenset(tuple(pair) for pair in pairs)
        support = {s for s, _ in self.pairs} | {t for _, t in self.pairs}
        carrier = support if carrier is None else set(carrier)
        if not support <= carrier:
            raise ValueError(f"Pairs use elements outside of the carrier: {sort_llex(support - carrier)}")
        self.carrier = tuple(sort_llex(carrier))
        self.sorted_pairs = tuple(sorted(self.pairs, key=lambda pair: (llex_key(pair[0]), llex_key(pair[1]))))
        self._image = {}
        self._preimage = {}
        for s, t in self.sorted_pairs:
            self._image.setdefault(s, []).append(t)
            self._preimage.setdefault(t, []).append(s)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.sorted_pairs)

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def __eq__(self, other):
        return isinstance(other, Relation) and (self.pairs, self.carrier) == (other.pairs, other.carrier)

    def __hash__(self):
        return hash((self.pairs, self.carrier))

    def __repr__(self):
        return f"Relation({list(self.sorted_pairs)!r}, carrier={list(self.carrier)!r})"

    def image(self, s):
        """Elements related to `s`."""
        return tuple(self._image.get(s, ()))

    def preimage(self, t):
        """Elements `t` is related from."""
        return tuple(self._preimage.get(t, ()))

    def inverse(self):
        """The inverse relation over the same carrier."""
        return Relation(((t, s) for s, t in self.pairs), carrier=self.carrier)

    @property
    def max_out_degree(self):
        """int: Maximal `|R(s)|`."""
        return max((len(image) for image in self._image.values()), default=0)

    @property
    def max_in_degree(self):
        """int: Maximal `|R⁻¹(t)|`."""
        return max((len(preimage) for preimage in self._preimage.values()), default=0)

    @property
    def max_degree(self):
        """int: Maximum of the out- and in-degrees."""
        return max(self.max_out_degree, self.max_in_degree)

    def is_regular(self):
        """Check whether every carrier element has out-degree and in-degree equal to the maximal degree."""
        delta = self.max_degree
        return all(len(self.image(s)) == delta and len(self.preimage(s)) == delta for s in self.carrier)


class EdgeColoring:
    """A coloring of the pairs of a relation such that no two pairs sharing a source or sharing a target have the
    same color.

    Attributes
    ----------
    relation : Relation
        The colored relation.
    color_of : dict
        Maps each pair to its color.
    palette : tuple of str
        Ordered colors available to the coloring.
    """
    def __init__(self, relation, color_of, palette):
        self.relation = relation
        self.color_of = dict(color_of)
        self.palette = tuple(palette)

    def __getitem__(self, pair):
        return self.color_of[tuple(pair)]

    def __len__(self):
        return len(self.color_of)

    def triples(self):
        """The colored relation as `(s, color, t)` triples in pair order."""
        return [(s, self.color_of[(s, t)], t) for s, t in self.relation.sorted_pairs]

    def to_graph(self):
        """The colored relation as a graph. Raises `ValueError` for an empty relation."""
        return Graph(self.triples())

    def used_colors(self):
        """Colors assigned to at least one pair, in palette order."""
        used = set(self.color_of.values())
        return tuple(color for color in self.palette if color in used)

    def is_proper(self):
        """Check that the colored relation is deterministic and co-deterministic and every pair is colored."""
        if set(self.color_of) != set(self.relation.pairs):
            return False
        out_colors = {(s, color) for s, color, _ in self.triples()}
        in_colors = {(t, color) for _, color, t in self.triples()}
        return len(out_colors) == len(in_colors) == len(self.color_of)

    def is_complete(self):
        """Check that every carrier element has one outgoing and one incoming pair of each palette color."""
        out_colors = {(s, color) for s, color, _ in self.triples()}
        in_colors = {(t, color) for _, color, t in self.triples()}
        expected = {(s, color) for s in self.relation.carrier for color in self.palette}
        return out_colors == expected and in_colors == expected


def _swap_alternating_chain(start, color_a, color_b, out_color, in_color, color_of):
    """Swap colors `a` and `b` along the maximal chain `start -a-> t1 <-b- s2 -a-> t2 <-b- ...`.

    Source and target occurrences of a vertex are distinct positions of the chain. Each position is visited at most
    once.
    """
    chain = []
    visited = {("source", start)}
    source = start
    while True:
        target = out_color.get(source, {}).get(color_a)
        if target is None:
            break
        if ("target", target) in visited:
            raise RuntimeError(f"Alternating chain from {start!r} revisits target {target!r}")
        visited.add(("target", target))
        chain.append((source, target, color_a))

        source = in_color.get(target, {}).get(color_b)
        if source is None:
            break
        if ("source", source) in visited:
            raise RuntimeError(f"Alternating chain from {start!r} revisits source {source!r}")
        visited.add(("source", source))
        chain.append((source, target, color_b))

    for source, target, color in chain:
        del out_color[source][color]
        del in_color[target][color]
    for source, target, color in chain:
        swapped = color_b if color == color_a else color_a
        out_color[source][swapped] = target
        in_color[target][swapped] = source
        color_of[(source, target)] = swapped
    return visited


def edge_color(relation, prefix=""):
    """Color a finite relation with exactly `Δ_R` colors so that the colored relation is deterministic and
    co-deterministic.

    Pairs are inserted in `(s, t)` length-lexicographic order. A pair gets the least color free both at `s` and at
    `t`. If no such color exists, take the least `a` used at `s` but free at `t` and the least `b` used at `t` but
    free at `s`, swap `a` and `b` along the alternating chain starting at `s` with an `a`-pair and color the new pair
    with `a`.

    Parameters
    ----------
    relation : Relation
        The relation to color.
    prefix : str, optional, defaults to ""
        Prefix of the color tokens "1", "2", ... e.g. "__c" to avoid collisions with graph labels.

    Returns
    -------
    coloring : EdgeColoring
        A proper coloring with palette of size `Δ_R`.

    Examples
    --------
    >>> coloring = edge_color(Relation([("1", "1"), ("1", "2"), ("2", "1")]))
    >>> [coloring[pair] for pair in [("1", "1"), ("1", "2"), ("2", "1")]]
    ['1', '2', '2']
    """
    delta = relation.max_degree
    colors = range(1, delta + 1)
    out_color = {}
    in_color = {}
    color_of = {}
    for s, t in relation.sorted_pairs:
        out_s = out_color.setdefault(s, {})
        in_t = in_color.setdefault(t, {})
        free = [color for color in colors if color not in out_s and color not in in_t]
        if free:
            color = free[0]
        else:
            color_a = min(set(out_s) - set(in_t))
            color_b = min(set(in_t) - set(out_s))
            visited = _swap_alternating_chain(s, color_a, color_b, out_color, in_color, color_of)
            if ("target", t) in visited:
                raise RuntimeError(f"Alternating chain from {s!r} reached the target {t!r} of the inserted pair")
            color = color_a
        color_of[(s, t)] = color
        out_s[color] = t
        in_t[color] = s

    palette = [prefix + str(color) for color in colors]
    return EdgeColoring(relation, {pair: palette[color - 1] for pair, color in color_of.items()}, palette)


def complete_edge_color(relation, prefix=""):
    """Color a regular relation so that the colored relation is also source-complete and target-complete.

    Parameters
    ----------
    relation : Relation
        A relation whose carrier elements all have out-degree and in-degree `Δ_R`.
    prefix : str, optional, defaults to ""
        Prefix of the color tokens.

    Returns
    -------
    coloring : EdgeColoring
        A proper coloring in which every carrier element has every color once outgoing and once incoming.

    Raises
    ------
    ValueError
        If the relation is not regular.
    """
    if not relation.is_regular():
        delta = relation.max_degree
        offender = next(s for s in relation.carrier
                        if len(relation.image(s)) != delta or len(relation.preimage(s)) != delta)
        raise ValueError(f"Relation is not regular: {offender!r} has out-degree {len(relation.image(offender))} and "
                         f"in-degree {len(relation.preimage(offender))}, expected {delta}")
    coloring = edge_color(relation, prefix=prefix)
    if not coloring.is_complete():
        raise RuntimeError("Coloring of a regular relation is not source- and target-complete")
    return coloring
