"""Implements fixtures shared by the tests: small graphs, tables and rewriting systems and their files"""

import os

import pytest

from cayleypro import Graph, MagmaTable, RewritingSystem


EVEN_TEXT = "p\ta\tq\np\tb\tp\nq\ta\tp\nq\tb\tq\n"
LQ5_TEXT = "a b c\na b c\nb a c\nc b a\n"
Q6_TEXT = "a b c\na c b\nc b a\nb a c\n"
RULES_TEXT = "0\ta\ta0\n1\ta\ta1\n0\tb\tb0\n1\tb\tb1\n0\tc\t1\n1\tc\t0\n"


@pytest.fixture(scope='package')
def even():
    """The two-vertex graph {p -a-> q, p -b-> p, q -a-> p, q -b-> q}"""
    return Graph.from_text(EVEN_TEXT)


@pytest.fixture(scope='package')
def cycle3():
    """Directed 3-cycle with a single label"""
    return Graph([("0", "a", "1"), ("1", "a", "2"), ("2", "a", "0")])


@pytest.fixture(scope='package')
def path3():
    """Directed path on 3 vertices"""
    return Graph([("v0", "a", "v1"), ("v1", "a", "v2")])


@pytest.fixture(scope='package')
def lq5_table():
    """Left-quasigroup table that is neither associative nor right-cancellative"""
    return MagmaTable.from_text(LQ5_TEXT)


@pytest.fixture(scope='package')
def q6_table():
    """Non-associative quasigroup table"""
    return MagmaTable.from_text(Q6_TEXT)


@pytest.fixture(scope='package')
def right_zero():
    """Two-element semigroup with x·y = y"""
    return MagmaTable.from_rows(["a", "b"], [["a", "b"], ["a", "b"]])


@pytest.fixture(scope='package')
def rules():
    """Rewriting system whose suffix graph is simple, deterministic and co-deterministic but not target-complete"""
    return RewritingSystem.from_text(RULES_TEXT)


@pytest.fixture(scope='package')
def fixture_files(tmp_path_factory, cycle3, path3):
    """Write graph, table and rules fixtures to files and return their paths by name"""
    base = tmp_path_factory.mktemp("fixtures")
    contents = {
        "even.tsv": EVEN_TEXT,
        "cycle3.tsv": cycle3.to_text(),
        "path3.tsv": path3.to_text(),
        "lq5.tbl": LQ5_TEXT,
        "q6.tbl": Q6_TEXT,
        "rules.rws": RULES_TEXT,
    }
    paths = {}
    for name, text in contents.items():
        path = os.path.join(base, name)
        with open(path, "w", encoding="UTF-8") as file:
            file.write(text)
        paths[name] = path
    return paths
