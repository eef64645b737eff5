"""Implements MagmaTable, Labeling and AlgebraReport classes and the operations on finite magmas"""

import textwrap
from itertools import product as cartesian_product, permutations

import numpy as np
import pandas as pd

from .graph import Graph
from .errors import PreconditionError
from .const import IDENTITY_TOKEN
from .utils import (validate_token, fresh_token, sort_llex, iter_content_lines, read_text, write_text,
                    find_nonassociative_triple, find_row_collision, find_column_collision, left_identity_mask,
                    right_identity_mask, find_inverses, close_subset)


class MagmaTable:
    """A finite magma: a carrier set with a total binary operation given by its Cayley table.

    Elements are text tokens. The product is stored as an integer array of carrier indices: `product[i, j]` is the
    index of `carrier[i]·carrier[j]`. The object is callable: `table(p, q)` returns `p·q`.

    A table can be created from:
    * an ordered carrier and an integer array by direct instantiation,
    * a text document by calling :func:`~MagmaTable.from_text`,
    * a file by calling :func:`~MagmaTable.from_file`,
    * a Python callable by calling :func:`~MagmaTable.from_function`,
    * one of the group constructors: :func:`~MagmaTable.cyclic`, :func:`~MagmaTable.dihedral`,
      :func:`~MagmaTable.quaternion`, :func:`~MagmaTable.symmetric` and :func:`~MagmaTable.direct_product`.

    Examples
    --------
    >>> table = MagmaTable.from_text("a b c\\na b c\\nb a c\\nc b a")
    >>> table("b", "b")
    'a'

    Parameters
    ----------
    carrier : sequence of str
        Ordered, duplicate-free, non-empty carrier.
    product : 2d array-like of ints
        Indices of products, of shape `(len(carrier), len(carrier))`.

    Attributes
    ----------
    carrier : tuple of str
        Ordered carrier.
    product : 2d np.ndarray of int64
        Product table in carrier indices.
    index : dict
        Maps each element to its position in the carrier.

    Raises
    ------
    ValueError
        If the carrier is empty, has duplicates or invalid tokens, or the product is not closed over the carrier.
    """
    def __init__(self, carrier, product):
        self.carrier = tuple(validate_token(element, kind="element") for element in carrier)
        if not self.carrier:
            raise ValueError("Carrier must be non-empty")
        self.index = {element: i for i, element in enumerate(self.carrier)}
        if len(self.index) != len(self.carrier):
            duplicate = next(element for element in self.carrier if self.carrier.count(element) > 1)
            raise ValueError(f"Duplicate carrier element {duplicate!r}")
        n = len(self.carrier)
        self.product = np.array(product, dtype=np.int64)
        if self.product.shape != (n, n):
            raise ValueError(f"Product table must have shape {(n, n)}, got {self.product.shape}")
        if ((self.product < 0) | (self.product >= n)).any():
            raise ValueError("Product table is not closed over the carrier")

    @classmethod
    def from_rows(cls, carrier, rows):
        """Create a table from rows of element tokens, `rows[i][j]` being `carrier[i]·carrier[j]`."""
        carrier = tuple(carrier)
        index = {element: i for i, element in enumerate(carrier)}
        unknown = [cell for row in rows for cell in row if cell not in index]
        if unknown:
            raise ValueError(f"Unknown element {unknown[0]!r} in a table cell")
        return cls(carrier, [[index[cell] for cell in row] for row in rows])

    @classmethod
    def from_text(cls, text):
        """Parse a table document.

        The first line lists the carrier separated by spaces. The next `|carrier|` lines give the rows of the
        elements in carrier order, each row listing `p·q` for `q` in carrier order. A row may start with a `p:`
        prefix naming its element. Lines starting with '#' are comments.

        Raises
        ------
        ValueError
            If the carrier has duplicates, the numbers of rows or columns are wrong, a row prefix does not match its
            element or a cell holds an unknown element.
        """
        lines = [line.split() for _, line in iter_content_lines(text)]
        if not lines:
            raise ValueError("The document contains no table")
        carrier, rows = lines[0], lines[1:]
        if len(set(carrier)) != len(carrier):
            raise ValueError("Duplicate carrier element in the header")
        if len(rows) != len(carrier):
            raise ValueError(f"Expected {len(carrier)} rows, got {len(rows)}")
        cleaned_rows = []
        for element, row in zip(carrier, rows):
            if len(row) == len(carrier) + 1 and row[0].endswith(":"):
                if row[0] != element + ":":
                    raise ValueError(f"Row prefix {row[0]!r} does not match element {element!r}")
                row = row[1:]
            if len(row) != len(carrier):
                raise ValueError(f"Row of {element!r} has {len(row)} columns, expected {len(carrier)}")
            cleaned_rows.append(row)
        return cls.from_rows(carrier, cleaned_rows)

    @classmethod
    def from_file(cls, path, encoding="UTF-8"):
        """Load a table from a file. See :func:`~MagmaTable.from_text` for the format."""
        return cls.from_text(read_text(path, encoding=encoding))

    @classmethod
    def from_function(cls, carrier, func):
        """Create a table by evaluating `func(p, q)` for all pairs of carrier elements."""
        carrier = tuple(carrier)
        return cls.from_rows(carrier, [[func(p, q) for q in carrier] for p in carrier])

    def to_text(self):
        """Serialize the table in the format read by :func:`~MagmaTable.from_text`."""
        lines = [" ".join(self.carrier)]
        lines += [" ".join(self.carrier[j] for j in row) for row in self.product]
        return "\n".join(lines) + "\n"

    def dump(self, path, encoding="UTF-8"):
        """Save the table to a file."""
        write_text(path, self.to_text(), encoding=encoding)
        return self

    def to_frame(self):
        """Return the Cayley table as `pandas.DataFrame` indexed by left factors with right factors as columns."""
        cells = np.array(self.carrier, dtype=object)[self.product]
        return pd.DataFrame(cells, index=pd.Index(self.carrier, name="·"), columns=list(self.carrier))

    #------------------------------------------------------------------------#
    #                           Group constructors                           #
    #------------------------------------------------------------------------#

    @classmethod
    def cyclic(cls, order):
        """Addition modulo `order` over elements "0", "1", ..., "order-1"."""
        indices = np.arange(order)
        return cls([str(i) for i in indices], (indices[:, None] + indices[None, :]) % order)

    @classmethod
    def dihedral(cls, n):
        """Symmetries of a regular `n`-gon: rotations "r0".."r{n-1}" and reflections "s0".."s{n-1}" (`s_k = s·r^k`).
        """
        elements = [(flip, k) for flip in (0, 1) for k in range(n)]
        names = {(flip, k): ("s" if flip else "r") + str(k) for flip, k in elements}

        # s^f1 r^k1 · s^f2 r^k2 = s^(f1+f2) r^(k2 ± k1), since r^k s = s r^-k
        def multiply(x, y):
            (flip_x, k_x), (flip_y, k_y) = x, y
            rotation = (k_y - k_x if flip_y else k_y + k_x) % n
            return (flip_x ^ flip_y, rotation)

        return cls.from_rows([names[x] for x in elements],
                             [[names[multiply(x, y)] for y in elements] for x in elements])

    @classmethod
    def quaternion(cls):
        """The quaternion group over "1", "-1", "i", "-i", "j", "-j", "k", "-k"."""
        units = {("1", u): (1, u) for u in "1ijk"}
        units.update({(u, "1"): (1, u) for u in "ijk"})
        units.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                      ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                      ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
        elements = [(sign, unit) for unit in "1ijk" for sign in (1, -1)]
        name = lambda x: ("" if x[0] == 1 else "-") + x[1]

        def multiply(x, y):
            sign, unit = units[(x[1], y[1])]
            return (sign * x[0] * y[0], unit)

        return cls.from_rows([name(x) for x in elements], [[name(multiply(x, y)) for y in elements] for x in elements])

    @classmethod
    def symmetric(cls, n):
        """Permutations of `n` points under composition. Elements are images of `0..n-1` written as digit strings,
        `p·q` applies `q` first."""
        elements = list(permutations(range(n)))
        name = lambda perm: "".join(str(i) for i in perm)
        return cls.from_rows([name(p) for p in elements],
                             [[name(tuple(p[q[i]] for i in range(n))) for q in elements] for p in elements])

    @classmethod
    def direct_product(cls, left, right):
        """Componentwise product of two tables over elements "(p,q)"."""
        pairs = [(p, q) for p in range(len(left)) for q in range(len(right))]
        name = lambda pair: f"({left.carrier[pair[0]]},{right.carrier[pair[1]]})"
        position = {pair: i for i, pair in enumerate(pairs)}
        product = [[position[(left.product[x[0], y[0]], right.product[x[1], y[1]])] for y in pairs] for x in pairs]
        return cls([name(pair) for pair in pairs], product)

    @classmethod
    def small_groups(cls, max_order=8):
        """All groups of order at most `max_order` (at most 8) up to isomorphism, as a list of `(name, table)`."""
        if max_order > 8:
            raise ValueError("Groups are only listed up to order 8")
        groups = [(f"Z{n}", cls.cyclic(n)) for n in range(1, max_order + 1)]
        z2 = cls.cyclic(2)
        extra = [(4, "Z2xZ2", lambda: cls.direct_product(z2, z2)), (6, "S3", lambda: cls.symmetric(3)),
                 (8, "Z2xZ4", lambda: cls.direct_product(z2, cls.cyclic(4))),
                 (8, "Z2xZ2xZ2", lambda: cls.direct_product(z2, cls.direct_product(z2, z2))),
                 (8, "D4", lambda: cls.dihedral(4)), (8, "Q8", cls.quaternion)]
        groups += [(name, make()) for order, name, make in extra if order <= max_order]
        return sorted(groups, key=lambda item: len(item[1]))

    @classmethod
    def all_tables(cls, order, carrier=None):
        """Generate every binary operation on a carrier of size `order`, `order ** (order ** 2)` tables in total.
        The default carrier is "a", "b", "c", ..."""
        carrier = tuple(carrier) if carrier is not None else tuple("abcdefghij"[:order])
        for cells in cartesian_product(range(order), repeat=order * order):
            yield cls(carrier, np.array(cells).reshape(order, order))

    #------------------------------------------------------------------------#
    #                            Dunder methods                              #
    #------------------------------------------------------------------------#

    def __call__(self, p, q):
        return self.carrier[self.product[self.index[p], self.index[q]]]

    def __len__(self):
        return len(self.carrier)

    def __eq__(self, other):
        return (isinstance(other, MagmaTable) and self.carrier == other.carrier
                and np.array_equal(self.product, other.product))

    def __hash__(self):
        return hash((self.carrier, self.product.tobytes()))

    def __repr__(self):
        return f"MagmaTable({list(self.carrier)!r}, {self.product.tolist()!r})"

    def __str__(self):
        return self.to_frame().to_string()

    def check_elements(self, elements):
        """Raise `ValueError` if any of `elements` is not in the carrier and return their indices."""
        unknown = [element for element in elements if element not in self.index]
        if unknown:
            raise ValueError(f"Unknown element {unknown[0]!r}")
        return [self.index[element] for element in elements]

    def reindex(self, carrier):
        """Return the same magma with its carrier listed in another order."""
        positions = self.check_elements(carrier)
        if sorted(positions) != list(range(len(self))):
            raise ValueError("New carrier order must be a permutation of the carrier")
        inverse = np.empty(len(self), dtype=np.int64)
        inverse[positions] = np.arange(len(self))
        return MagmaTable(carrier, inverse[self.product[np.ix_(positions, positions)]])


class Labeling:
    """An injective mapping from a non-empty subset `Q` of a carrier to edge labels.

    The object is callable and returns the label of an element.

    Parameters
    ----------
    mapping : dict or iterable of pairs
        Maps each element of `Q` to its label.

    Attributes
    ----------
    mapping : dict
        Element to label mapping.
    domain : tuple of str
        Sorted domain `Q`.

    Raises
    ------
    ValueError
        If the mapping is empty, not injective or uses invalid tokens.
    """
    def __init__(self, mapping):
        self.mapping = dict(mapping)
        if not self.mapping:
            raise ValueError("Labeling domain must be non-empty")
        for element, label in self.mapping.items():
            validate_token(element, kind="element")
            validate_token(label, kind="label")
        if len(set(self.mapping.values())) != len(self.mapping):
            raise ValueError("Labeling is not injective")
        self.domain = tuple(sort_llex(self.mapping))

    @classmethod
    def identity(cls, elements):
        """Label each element by itself."""
        return cls({element: element for element in elements})

    @classmethod
    def from_text(cls, text):
        """Parse a comma-separated list of `element=label` items."""
        items = [item.strip() for item in text.split(",") if item.strip()]
        pairs = []
        for item in items:
            element, sep, label = item.partition("=")
            if not sep:
                raise ValueError(f"Labeling item {item!r} must have the form element=label")
            pairs.append((element.strip(), label.strip()))
        if len(dict(pairs)) != len(pairs):
            raise ValueError("Labeling lists an element twice")
        return cls(pairs)

    def __call__(self, element):
        return self.mapping[element]

    def __len__(self):
        return len(self.mapping)

    def __eq__(self, other):
        return isinstance(other, Labeling) and self.mapping == other.mapping

    def __repr__(self):
        return "Labeling({" + ", ".join(f"{q!r}: {self.mapping[q]!r}" for q in self.domain) + "})"

    def to_text(self):
        """Inverse of :func:`~Labeling.from_text`."""
        return ",".join(f"{q}={self.mapping[q]}" for q in self.domain)

    @property
    def labels(self):
        """tuple of str: Labels in domain order."""
        return tuple(self.mapping[q] for q in self.domain)

    def element_of(self, label):
        """Return the element labeled `label`."""
        for element, element_label in self.mapping.items():
            if element_label == label:
                return element
        raise ValueError(f"No element is labeled {label!r}")


class AlgebraReport:
    """Axiom verdicts of a finite magma, all obtained by brute force.

    Attributes
    ----------
    table : MagmaTable
        The examined table.
    flags : dict
        `associative`, `leftCancellative`, `rightCancellative`, `cancellative`, `leftQuasigroup`, `quasigroup` and the
        class ladder `magma`, `semigroup`, `monoid`, `group`.
    left_identities, right_identities : tuple of str
        Elements `e` with `e·x = x` (resp. `x·e = x`) for all `x`.
    identity : str or None
        Two-sided identity if one exists.
    inverses : dict or None
        Maps elements having a two-sided inverse to one of them, `None` without identity.
    witnesses : dict
        Counterexamples for failed flags.
    """
    FLAGS = ("associative", "leftCancellative", "rightCancellative", "cancellative", "leftQuasigroup", "quasigroup",
             "magma", "semigroup", "monoid", "group")

    # Conditions a table must satisfy for each graph class it may certify
    CLASS_CONDITIONS = {
        "leftCancellativeMagma": ("leftCancellative",),
        "leftCancellativeMagmaWithIdentity": ("leftCancellative", "identity"),
        "leftQuasigroup": ("leftQuasigroup",),
        "leftQuasigroupWithIdentity": ("leftQuasigroup", "identity"),
        "quasigroup": ("quasigroup",),
        "quasigroupWithIdentity": ("quasigroup", "identity"),
        "leftCancellativeMonoidCayley": ("monoid", "leftCancellative"),
        "cancellativeMonoidCayley": ("monoid", "cancellative"),
        "cancellativeSemigroupCayley": ("semigroup", "cancellative"),
        "groupMonoidCayley": ("group",),
        "groupCayley": ("group",),
        "groupGeneralizedCayley": ("group",),
    }

    def __init__(self, table):
        self.table = table
        self.witnesses = {}
        carrier = table.carrier
        product = table.product

        p, q, s = find_nonassociative_triple(product)
        associative = p < 0
        if not associative:
            p, q, s = carrier[p], carrier[q], carrier[s]
            self.witnesses["associative"] = f"{p}·({q}·{s}) = {table(p, table(q, s))} and " \
                                            f"({p}·{q})·{s} = {table(table(p, q), s)}"

        p, q1, q2 = find_row_collision(product)
        left_cancellative = p < 0
        if not left_cancellative:
            p, q1, q2 = carrier[p], carrier[q1], carrier[q2]
            self.witnesses["leftCancellative"] = f"{p}·{q1} = {p}·{q2} = {table(p, q1)}"

        q, p1, p2 = find_column_collision(product)
        right_cancellative = q < 0
        if not right_cancellative:
            q, p1, p2 = carrier[q], carrier[p1], carrier[p2]
            self.witnesses["rightCancellative"] = f"{p1}·{q} = {p2}·{q} = {table(p1, q)}"

        self.left_identities = tuple(np.array(carrier, dtype=object)[left_identity_mask(product)])
        self.right_identities = tuple(np.array(carrier, dtype=object)[right_identity_mask(product)])
        identities = [e for e in self.left_identities if e in self.right_identities]
        self.identity = identities[0] if identities else None

        self.inverses = None
        all_invertible = False
        if self.identity is not None:
            inverses = find_inverses(product, table.index[self.identity])
            self.inverses = {carrier[i]: carrier[j] for i, j in enumerate(inverses) if j >= 0}
            all_invertible = len(self.inverses) == len(carrier)
            if not all_invertible:
                missing = next(element for element in carrier if element not in self.inverses)
                self.witnesses["group"] = f"{missing} has no inverse"
        elif associative:
            self.witnesses["monoid"] = "no two-sided identity"

        # Rows of a finite table are permutations iff they are injective
        self.flags = {
            "associative": associative,
            "leftCancellative": left_cancellative,
            "rightCancellative": right_cancellative,
            "cancellative": left_cancellative and right_cancellative,
            "leftQuasigroup": left_cancellative,
            "quasigroup": left_cancellative and right_cancellative,
            "magma": True,
            "semigroup": associative,
            "monoid": associative and self.identity is not None,
            "group": associative and all_invertible,
        }

    def __getitem__(self, flag):
        if flag == "identity":
            return self.identity is not None
        return self.flags[flag]

    def matches(self, target_class):
        """Check whether the table satisfies the algebraic conditions of a graph class or a ladder class."""
        if target_class in self.flags:
            return self.flags[target_class]
        if target_class not in self.CLASS_CONDITIONS:
            raise ValueError(f"Unknown class {target_class}")
        return all(self[condition] for condition in self.CLASS_CONDITIONS[target_class])

    def __str__(self):
        flags = "\n".join(f"{name + ':':<27}{value}" for name, value in self.flags.items())
        msg = f"""
        Order:                     {len(self.table)}
        Identity:                  {self.identity if self.identity is not None else '-'}
        Left identities:           {', '.join(self.left_identities) or '-'}
        Right identities:          {', '.join(self.right_identities) or '-'}
        """
        report = textwrap.dedent(msg).strip() + "\n\n" + flags
        if self.witnesses:
            report += "\n\nWitnesses:\n" + "\n".join(f"{name}: {text}" for name, text in self.witnesses.items())
        return report

    def info(self):
        """Print the report."""
        print(self)

    def to_dict(self):
        """Flat `key -> value` mapping of the report."""
        return {**self.flags, "identity": self.identity, "leftIdentities": list(self.left_identities),
                "rightIdentities": list(self.right_identities), "inverses": self.inverses,
                "witnesses": dict(self.witnesses)}


def parse_table(text):
    """Parse a magma table document. See :func:`MagmaTable.from_text`."""
    return MagmaTable.from_text(text)


def axiom_check(table):
    """Compute the :class:`AlgebraReport` of a table."""
    return AlgebraReport(table)


def closure(table, elements, mode="monoid"):
    """Return the least subset containing `elements` closed under the product.

    Parameters
    ----------
    table : MagmaTable
        The magma.
    elements : iterable of str
        Generators.
    mode : {"monoid", "semigroup", "group"}, optional, defaults to "monoid"
        - "semigroup": close the generators only, an empty generator set gives an empty set,
        - "monoid": add the identity, which is required to exist,
        - "group": add the identity and the inverses of the generators, the table must be a group.

    Returns
    -------
    subset : frozenset of str
        The generated subset.

    Raises
    ------
    ValueError
        If `mode` is unknown or an element is not in the carrier.
    PreconditionError
        If the table has no identity in "monoid" mode or is not a group in "group" mode.
    """
    elements = list(elements)
    mask = np.zeros(len(table), dtype=np.bool_)
    mask[table.check_elements(elements)] = True
    if mode not in {"monoid", "semigroup", "group"}:
        raise ValueError(f"Unknown closure mode {mode}")
    if mode != "semigroup":
        report = axiom_check(table)
        if report.identity is None:
            raise PreconditionError("identity", "Monoid closure requires a table with an identity")
        if mode == "group":
            if not report.flags["group"]:
                raise PreconditionError("group", "Group closure requires a group table")
            mask[table.check_elements([report.inverses[element] for element in elements])] = True
        mask[table.index[report.identity]] = True
    close_subset(table.product, mask)
    return frozenset(np.array(table.carrier, dtype=object)[mask])


def generates(table, elements, mode="monoid"):
    """Check whether `elements` generate the whole carrier in the given closure mode."""
    return len(closure(table, elements, mode=mode)) == len(table)


def cayley_graph(table, labeling=None):
    """Build the generalized Cayley graph `{p -[q]-> p·q : p in carrier, q in domain}`.

    Parameters
    ----------
    table : MagmaTable
        The magma.
    labeling : Labeling or iterable of str, optional
        Labeling of the generator subset. An iterable of elements is labeled by identity. Defaults to the identity
        labeling of the whole carrier.

    Returns
    -------
    graph : Graph
        Generalized Cayley graph.

    Raises
    ------
    ValueError
        If the generator subset is empty or not contained in the carrier.
    """
    if labeling is None:
        labeling = Labeling.identity(table.carrier)
    elif not isinstance(labeling, Labeling):
        labeling = Labeling.identity(list(labeling))
    generators = labeling.domain
    table.check_elements(generators)
    return Graph((p, labeling(q), table(p, q)) for p in table.carrier for q in generators)


def monoid_completion(table):
    """Return `table` if it has an identity, otherwise its extension by a fresh two-sided identity.

    The fresh element is "1" followed by apostrophes until it is not in the carrier. When the table is cancellative
    the completion is checked to stay cancellative.

    Raises
    ------
    PreconditionError
        If the table is not associative.
    """
    report = axiom_check(table)
    if not report.flags["associative"]:
        raise PreconditionError("associative", f"Monoid completion requires a semigroup: "
                                               f"{report.witnesses['associative']}")
    if report.identity is not None:
        return table
    identity = fresh_token(IDENTITY_TOKEN, set(table.carrier))
    n = len(table)
    product = np.empty((n + 1, n + 1), dtype=np.int64)
    product[:n, :n] = table.product
    product[n, :] = np.arange(n + 1)
    product[:, n] = np.arange(n + 1)
    completion = MagmaTable(table.carrier + (identity,), product)
    if report.flags["cancellative"] and not axiom_check(completion).flags["cancellative"]:
        raise RuntimeError("Monoid completion of a cancellative semigroup is not cancellative")
    return completion
