"""Reversible escaping for delimiter characters in line-based formats.

Each escaped character becomes the literal 6-char sequence \\uXXXX. The
backslash itself is escaped first on encode and restored last on decode,
which keeps the mapping bijective for arbitrary input text.
"""


def _seq(ch: str) -> str:
    return "\\u%04X" % ord(ch)


def escape(text: str, delimiters: str) -> str:
    out = text.replace("\\", _seq("\\"))
    for ch in delimiters:
        out = out.replace(ch, _seq(ch))
    return out


def unescape(text: str, delimiters: str) -> str:
    out = text
    for ch in delimiters:
        out = out.replace(_seq(ch), ch)
    return out.replace(_seq("\\"), "\\")
