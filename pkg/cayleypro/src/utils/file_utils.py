"""Implements functions to load and dump data in the package's text formats"""

import os
import json

from .general_utils import validate_token, triple_key


def read_text(path, encoding="UTF-8"):
    """Read the whole text file."""
    with open(path, encoding=encoding) as file:
        return file.read()


def write_text(path, text, encoding="UTF-8"):
    """Write `text` to `path` with LF line endings, creating parent directories if needed."""
    os.makedirs(os.path.abspath(os.path.dirname(path)), exist_ok=True)
    with open(path, "w", encoding=encoding, newline="\n") as file:
        file.write(text)


def iter_content_lines(text):
    """Yield `(line_number, line)` for every line of `text` that is neither empty nor a '#' comment."""
    for i, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        yield i, line


def parse_triples(text, middle_kind="label", reserved_middle=False, allow_empty=False):
    """Parse tab-separated `first TAB middle TAB last` lines, used both for graph edges and rewriting rules.

    Parameters
    ----------
    text : str
        Document contents. Lines starting with '#' are comments.
    middle_kind : str, optional, defaults to "label"
        Name of the middle field used in error messages.
    reserved_middle : bool, optional, defaults to False
        Whether the middle field may start with the bar prefix.
    allow_empty : bool, optional, defaults to False
        Whether a document without triples is accepted.

    Returns
    -------
    triples : list of tuples with 3 str
        Parsed triples in document order, duplicates kept.

    Raises
    ------
    ValueError
        If a line does not have exactly 3 fields or contains an invalid token.
        If no triples were found and `allow_empty` is `False`.
    """
    triples = []
    for i, line in iter_content_lines(text):
        fields = line.split("\t")
        if len(fields) != 3:
            raise ValueError(f"Line {i}: expected 3 tab-separated fields, got {len(fields)}")
        try:
            first = validate_token(fields[0], kind="source")
            middle = validate_token(fields[1], kind=middle_kind, allow_reserved=reserved_middle)
            last = validate_token(fields[2], kind="target")
        except ValueError as error:
            raise ValueError(f"Line {i}: {error}") from error
        triples.append((first, middle, last))
    if not triples and not allow_empty:
        raise ValueError("The document contains no edges")
    return triples


def parse_marks(text):
    """Return vertices listed on `# mark TAB vertex` comment lines in document order."""
    marks = []
    for line in text.split("\n"):
        fields = line.rstrip("\r").split("\t")
        if len(fields) == 2 and fields[0].strip() == "# mark":
            marks.append(validate_token(fields[1], kind="mark"))
    return marks


def dump_triples(triples, comments=()):
    """Serialize triples as tab-separated lines sorted in length-lexicographic order. `comments` are appended as
    '#'-prefixed lines."""
    lines = ["\t".join(triple) for triple in sorted(set(triples), key=triple_key)]
    lines += ["# " + comment for comment in comments]
    return "".join(line + "\n" for line in lines)


def _dot_quote(token):
    return '"' + token.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_document(triples, vertices, marks=(), name="G"):
    """Build a DOT digraph. Labels are stored as edge attributes and marked vertices are drawn as double circles."""
    marks = set(marks)
    lines = [f"digraph {_dot_quote(name)} {{"]
    for vertex in vertices:
        shape = "doublecircle" if vertex in marks else "circle"
        lines.append(f"  {_dot_quote(vertex)} [shape={shape}];")
    for source, label, target in sorted(triples, key=triple_key):
        lines.append(f"  {_dot_quote(source)} -> {_dot_quote(target)} [label={_dot_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_json(obj, path=None):
    """Dump `obj` as sorted, indented JSON. Write it to `path` if given and return the text."""
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if path is not None:
        write_text(path, text)
    return text


def load_json(path, encoding="UTF-8"):
    """Load a JSON document from `path`."""
    with open(path, encoding=encoding) as file:
        return json.load(file)
