"""Implements RewritingSystem class and finite balls of the suffix graphs of labeled word rewriting systems"""

import logging
import warnings
from collections import Counter
from itertools import chain

from .graph import MarkedSubgraph
from .properties import property_report
from .errors import BudgetExceededError
from .const import DEFAULT_BALL_CAP, EMPTY_WORD, RESERVED_PREFIX
from .utils import sort_llex, llex_key, triple_key, read_text, write_text, parse_triples, dump_triples


logger = logging.getLogger(__name__)


def _to_token(word):
    return word if word else EMPTY_WORD


def _from_token(token):
    return "" if token == EMPTY_WORD else token


def _rule_key(rule):
    return triple_key((_to_token(rule[0]), rule[1], _to_token(rule[2])))


def _step_key(step):
    return llex_key(step[0]), llex_key(_to_token(step[1]))


class RewritingSystem:
    """A finite set of labeled rules `u -a-> v` over words of single-character letters.

    The suffix graph of the system has the edges `wu -a-> wv` for every rule `(u, a, v)` and every word `w`. Words are
    plain strings, the empty word is written as "_" in files and vertex names.

    A system can be created from:
    * an iterable of `(lhs, label, rhs)` triples by direct instantiation,
    * a tab-separated document by calling :func:`~RewritingSystem.from_text`,
    * a tab-separated file by calling :func:`~RewritingSystem.from_file`.

    Examples
    --------
    >>> rws = RewritingSystem([("0", "a", "a0"), ("0", "c", "1"), ("1", "c", "0")])
    >>> rws.successors("b0")
    [('a', 'ba0'), ('c', 'b1')]

    Parameters
    ----------
    rules : iterable of tuples with 3 str
        Rules `(lhs, label, rhs)`. Both words may be empty, given either as "" or "_".
    alphabet : iterable of str, optional
        Letters of the system. Defaults to the letters occurring in the rules.

    Attributes
    ----------
    rules : tuple of tuples with 3 str
        Rules in the length-lexicographic order of their serialized form, with empty words stored as "".
    alphabet : tuple of str
        Sorted letters.
    labels : tuple of str
        Sorted rule labels.

    Raises
    ------
    ValueError
        If there are no rules, a word uses the reserved "_" letter or a letter outside `alphabet`.
    """
    def __init__(self, rules, alphabet=None):
        rules = {(_from_token(lhs), label, _from_token(rhs)) for lhs, label, rhs in rules}
        if not rules:
            raise ValueError("A rewriting system must contain at least one rule")
        letters = set(chain.from_iterable(lhs + rhs for lhs, _, rhs in rules))
        if RESERVED_PREFIX in letters:
            raise ValueError(f"Letter {RESERVED_PREFIX!r} is reserved for the empty word")
        if alphabet is not None:
            alphabet = set(alphabet)
            if any(len(letter) != 1 for letter in alphabet):
                raise ValueError("Letters must be single characters")
            if not letters <= alphabet:
                raise ValueError(f"Rules use letters outside the alphabet: {sort_llex(letters - alphabet)}")
            letters = alphabet
        self.rules = tuple(sorted(rules, key=_rule_key))
        self.alphabet = tuple(sort_llex(letters))
        self.labels = tuple(sort_llex({label for _, label, _ in rules}))

    @classmethod
    def from_text(cls, text):
        """Parse a system from a document with one `lhs TAB label TAB rhs` rule per line, "_" being the empty word.

        Raises
        ------
        ValueError
            If the document has no rules or a line is malformed.
        """
        try:
            rules = parse_triples(text, middle_kind="label")
        except ValueError as error:
            raise ValueError(f"Malformed rewriting system: {error}") from error
        return cls(rules)

    @classmethod
    def from_file(cls, path, encoding="UTF-8"):
        """Load a system from a tab-separated file. See :func:`~RewritingSystem.from_text` for the format."""
        return cls.from_text(read_text(path, encoding=encoding))

    def to_text(self):
        """Serialize the rules, one per line."""
        return dump_triples((_to_token(lhs), label, _to_token(rhs)) for lhs, label, rhs in self.rules)

    def dump(self, path, encoding="UTF-8"):
        """Save the system to a tab-separated file."""
        write_text(path, self.to_text(), encoding=encoding)
        return self

    def __len__(self):
        return len(self.rules)

    def __repr__(self):
        return f"RewritingSystem({len(self)} rules over {''.join(self.alphabet)!r})"

    def check_word(self, word):
        """Return `word` with "_" read as the empty word.

        Raises
        ------
        ValueError
            If the word uses letters outside the alphabet.
        """
        word = _from_token(word)
        unknown = set(word) - set(self.alphabet)
        if unknown:
            raise ValueError(f"Word {word!r} uses letters outside the alphabet: {sort_llex(unknown)}")
        return word

    def successors(self, word):
        """Sorted `(label, word')` pairs with `word -label-> word'` in the suffix graph."""
        steps = {(label, word[:len(word) - len(lhs)] + rhs) for lhs, label, rhs in self.rules if word.endswith(lhs)}
        return sorted(steps, key=_step_key)

    def predecessors(self, word):
        """Sorted `(label, word')` pairs with `word' -label-> word` in the suffix graph."""
        steps = {(label, word[:len(word) - len(rhs)] + lhs) for lhs, label, rhs in self.rules if word.endswith(rhs)}
        return sorted(steps, key=_step_key)


def parse_rws(text):
    """Parse a rewriting system document. See :func:`RewritingSystem.from_text`."""
    return RewritingSystem.from_text(text)


def suffix_successors(rws, word):
    """One-step suffix rewritings of `word` as sorted `(label, word')` pairs."""
    return rws.successors(rws.check_word(word))


def suffix_predecessors(rws, word):
    """Words rewriting to `word` in one suffix step as sorted `(label, word')` pairs."""
    return rws.predecessors(rws.check_word(word))


def ball_distances(rws, start, radius, cap=DEFAULT_BALL_CAP):
    """Breadth-first search over suffix rewriting steps in both directions.

    Returns
    -------
    distances : dict
        Maps every word at chain distance at most `radius` from `start` to its distance.

    Raises
    ------
    ValueError
        If `radius` is negative or `start` uses unknown letters.
    BudgetExceededError
        If more than `cap` words are discovered.
    """
    if radius < 0:
        raise ValueError(f"Radius must be non-negative, got {radius}")
    start = rws.check_word(start)
    distances = {start: 0}
    frontier = [start]
    for distance in range(1, radius + 1):
        next_frontier = []
        for word in frontier:
            for _, neighbor in chain(rws.successors(word), rws.predecessors(word)):
                if neighbor in distances:
                    continue
                distances[neighbor] = distance
                next_frontier.append(neighbor)
                if len(distances) > cap:
                    raise BudgetExceededError("Suffix ball", cap)
        if not next_frontier:
            break
        frontier = next_frontier
    logger.debug("Suffix ball of radius %d around %r has %d words", radius, start, len(distances))
    return distances


def suffix_ball(rws, start, radius, cap=DEFAULT_BALL_CAP):
    """Cut the ball of chain radius `radius` around `start` out of the suffix graph of `rws`.

    The ball contains every suffix graph edge between discovered words, loops included. Its marks are the boundary
    words at distance exactly `radius`, where source- or target-completeness may fail because of the truncation. A
    ball exhausting a finite component before reaching `radius` has no boundary and is marked by `start` instead.

    Parameters
    ----------
    rws : RewritingSystem
        The system.
    start : str
        Center word, "_" or "" for the empty word.
    radius : int
        Non-negative radius.
    cap : int, optional
        Maximal number of words in the ball.

    Returns
    -------
    ball : MarkedSubgraph
        The ball with words as vertices, the empty word written as "_".

    Raises
    ------
    ValueError
        If `radius` is negative or `start` uses unknown letters.
    BudgetExceededError
        If the ball has more than `cap` words.
    """
    distances = ball_distances(rws, start, radius, cap=cap)
    edges = [(_to_token(word), label, _to_token(target)) for word in distances
             for label, target in rws.successors(word) if target in distances]
    marks = [_to_token(word) for word, distance in distances.items() if distance == radius]
    if not marks:
        marks = [_to_token(rws.check_word(start))]
    return MarkedSubgraph(edges, marks)


def check_interior_stability(rws, start, radius, cap=DEFAULT_BALL_CAP):
    """Check that every interior word of a ball has in the ball exactly its edges in the whole suffix graph.

    Interior words are those at distance less than `radius`. Their full neighborhoods are recomputed by one more
    expansion step and compared with the edges of the ball.
    """
    ball = suffix_ball(rws, start, radius, cap=cap)
    distances = ball_distances(rws, start, radius, cap=cap)
    for word, distance in distances.items():
        if distance == radius:
            continue
        token = _to_token(word)
        outgoing = {(label, _to_token(target)) for source, label, target in ball.edges if source == token}
        incoming = {(label, _to_token(source)) for source, label, target in ball.edges if target == token}
        expected_out = {(label, _to_token(target)) for label, target in rws.successors(word)}
        expected_in = {(label, _to_token(source)) for label, source in rws.predecessors(word)}
        if outgoing != expected_out or incoming != expected_in:
            logger.debug("Interior word %r of the ball is unstable", token)
            return False
    return True


def interior_flags(rws, start, radius, cap=DEFAULT_BALL_CAP):
    """Evaluate local structural flags of the suffix graph on the interior words of a ball.

    Returns
    -------
    flags : dict
        `simple`, `deterministic`, `coDeterministic`, `sourceComplete` and `targetComplete` restricted to interior
        words and the labels of the system. Every flag holds vacuously for a ball without interior.
    """
    distances = ball_distances(rws, start, radius, cap=cap)
    labels = set(rws.labels)
    flags = dict.fromkeys(("simple", "deterministic", "coDeterministic", "sourceComplete", "targetComplete"), True)
    for word, distance in distances.items():
        if distance == radius:
            continue
        outgoing = rws.successors(word)
        incoming = rws.predecessors(word)
        out_labels = Counter(label for label, _ in outgoing)
        in_labels = Counter(label for label, _ in incoming)
        targets = Counter(target for _, target in outgoing)
        flags["simple"] &= all(count == 1 for count in targets.values())
        flags["deterministic"] &= all(count == 1 for count in out_labels.values())
        flags["coDeterministic"] &= all(count == 1 for count in in_labels.values())
        flags["sourceComplete"] &= set(out_labels) == labels
        flags["targetComplete"] &= set(in_labels) == labels
    return flags


def ball_property_report(ball):
    """Compute the :class:`PropertyReport` of a ball. The report is advisory since boundary words may lack edges
    the whole suffix graph has."""
    if ball.is_empty:
        raise ValueError("The ball has no edges")
    warnings.warn("Property report of a truncated suffix ball is advisory: boundary words may fail completeness",
                  RuntimeWarning)
    return property_report(ball.graph)
