"""Miscellaneous general utility functions"""

from ..const import BAR_PREFIX


def llex_key(token):
    """Sort key for length-lexicographic order: token length first, then bytewise comparison of UTF-8 encodings."""
    encoded = token.encode("utf-8")
    return len(encoded), encoded


def sort_llex(tokens):
    """Return a list of `tokens` sorted in length-lexicographic order."""
    return sorted(tokens, key=llex_key)


def triple_key(triple):
    """Sort key for labeled edges and rewriting rules: length-lexicographic on each of the three fields."""
    return tuple(llex_key(item) for item in triple)


def validate_token(token, kind="token", allow_reserved=True):
    """Check that `token` may be written to a tab-separated file and return it unchanged.

    Parameters
    ----------
    token : str
        A vertex, label or element name.
    kind : str, optional, defaults to "token"
        Name of the token kind used in error messages.
    allow_reserved : bool, optional, defaults to True
        Whether tokens starting with the bar prefix are accepted. File parsers forbid them for labels so that barred
        copies never collide with user labels.

    Raises
    ------
    ValueError
        If the token is not a non-empty string, contains a tab, a line break or starts with "#".
        If `allow_reserved` is `False` and the token starts with the bar prefix.
    """
    if not isinstance(token, str) or not token:
        raise ValueError(f"{kind} must be a non-empty string, got {token!r}")
    if any(char in token for char in "\t\n\r"):
        raise ValueError(f"{kind} {token!r} contains a tab or a line break")
    if token.startswith("#"):
        raise ValueError(f"{kind} {token!r} starts with the comment character '#'")
    if not allow_reserved and token.startswith(BAR_PREFIX):
        raise ValueError(f"{kind} {token!r} starts with the reserved bar prefix {BAR_PREFIX!r}")
    return token


def fresh_token(base, taken, suffix="'"):
    """Append `suffix` to `base` until the result is not in `taken`."""
    token = base
    while token in taken:
        token += suffix
    return token


def bar(label):
    """Return the barred copy of a label used for reversed edges of chains."""
    return BAR_PREFIX + label
