"""Text and JSON formats for matrices and graphs.

Matrix text::

    # optional comments
    2 2
    0 1
    1/2 0.5

The first non-comment line is ``ROWS COLS``; each entry is an integer, an
``a/b`` rational or a decimal, parsed exactly.  A pattern grid is ``ROWS``
lines of ``*`` (positive) and ``0`` characters.  A graph file has ``n`` on
its first line and one ``u v`` edge per following line (``u u`` is a loop).

JSON output uses the versioned schema tag :data:`SCHEMA`; rationals are
emitted as ``{"num": "...", "den": "..."}`` so no precision is lost.
"""

from __future__ import annotations

import json
import re
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path

from .core import IndexSet, NonnegMatrix, Partition, PatternMatrix, StochasticMatrix, to_fraction
from .errors import ParseError
from .graphs import Graph

__all__ = [
    "SCHEMA",
    "parse_matrix",
    "emit_matrix",
    "parse_pattern",
    "emit_pattern",
    "parse_any",
    "read_matrix",
    "parse_graph",
    "emit_graph",
    "read_graph",
    "to_jsonable",
    "dumps",
    "matrix_from_json",
]

SCHEMA = "posmat/1"

_HEADER = re.compile(r"^\d+\s+\d+$")


def _lines(text: str) -> list[tuple[int, str]]:
    """Non-blank lines with comments stripped, paired with 1-based line numbers."""
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def parse_matrix(text: str) -> NonnegMatrix:
    """Parse the matrix text format into a :class:`NonnegMatrix`.

    A matrix whose rows all sum to 1 is returned as a
    :class:`StochasticMatrix`.
    """
    lines = _lines(text)
    if not lines:
        raise ParseError("empty matrix text")
    no, header = lines[0]
    if not _HEADER.match(header):
        raise ParseError(f"line {no}: expected 'ROWS COLS', got {header!r}")
    nrows, ncols = map(int, header.split())
    if nrows < 1 or ncols < 1:
        raise ParseError(f"line {no}: dimensions must be positive, got {nrows}x{ncols}")
    body = lines[1:]
    if len(body) != nrows:
        raise ParseError(f"expected {nrows} rows, found {len(body)}")
    rows = []
    for no, line in body:
        tokens = line.split()
        if len(tokens) != ncols:
            raise ParseError(f"line {no}: expected {ncols} entries, found {len(tokens)}")
        row = []
        for t in tokens:
            try:
                x = to_fraction(t)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"line {no}: bad entry {t!r}") from exc
            if x < 0:
                raise ParseError(f"line {no}: negative entry {t!r}")
            row.append(x)
        rows.append(row)
    M = NonnegMatrix(rows)
    if M.is_stochastic():
        return StochasticMatrix(rows)
    return M


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def emit_matrix(M) -> str:
    """Render a matrix in the text format; patterns are written as 0/1 entries."""
    if isinstance(M, PatternMatrix):
        M = NonnegMatrix(M.to_lists())
    lines = [f"{M.nrows} {M.ncols}"]
    lines += [" ".join(_fmt(x) for x in r) for r in M.rows]
    return "\n".join(lines) + "\n"


def parse_pattern(text: str) -> PatternMatrix:
    """Parse a ``*``/``0`` grid.  Whitespace inside a row is ignored."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty pattern grid")
    rows = []
    for no, line in lines:
        chars = line.replace(" ", "").replace("\t", "")
        bad = set(chars) - {"*", "0"}
        if bad:
            raise ParseError(f"line {no}: unexpected characters {''.join(sorted(bad))!r} in pattern grid")
        rows.append([c == "*" for c in chars])
    if len({len(r) for r in rows}) != 1:
        raise ParseError("pattern grid rows have different lengths")
    return PatternMatrix(rows)


def emit_pattern(P) -> str:
    """Render the zero pattern as a ``*``/``0`` grid."""
    if not isinstance(P, PatternMatrix):
        P = P.pattern
    return str(P) + "\n"


def parse_any(text: str, pattern: bool = False):
    """Parse matrix text, or a pattern grid when forced or when there is no header."""
    if pattern:
        return parse_pattern(text)
    lines = _lines(text)
    if lines and _HEADER.match(lines[0][1]):
        return parse_matrix(text)
    return parse_pattern(text)


def read_matrix(path, pattern: bool = False):
    """Read a matrix file (``-`` is not special here; callers handle stdin)."""
    return parse_any(Path(path).read_text(), pattern)


def parse_graph(text: str) -> Graph:
    """Parse the graph format: ``n`` then one ``u v`` edge per line."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty graph text")
    no, head = lines[0]
    if not head.isdigit():
        raise ParseError(f"line {no}: expected the vertex count, got {head!r}")
    n = int(head)
    edges = []
    for no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"line {no}: expected 'u v', got {line!r}")
        u, v = map(int, parts)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"line {no}: vertex outside 1..{n}")
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def emit_graph(G: Graph) -> str:
    lines = [str(G.n)] + [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def to_jsonable(obj):
    """Convert library values to plain JSON types.

    Fractions become ``{"num", "den"}`` string pairs, index sets become
    sorted 1-based lists and matrices become nested lists.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, float):
        return obj
    if isinstance(obj, IndexSet):
        return list(obj.members)
    if isinstance(obj, Partition):
        return [list(b.members) for b in obj.blocks]
    if isinstance(obj, PatternMatrix):
        return obj.to_lists()
    if isinstance(obj, NonnegMatrix):
        return [[to_jsonable(x) for x in r] for r in obj.rows]
    if isinstance(obj, Graph):
        return {"n": obj.n, "edges": [list(e) for e in obj.sorted_edges()]}
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(x) for x in items]
    raise TypeError(f"cannot convert {type(obj).__name__} to JSON")


def dumps(command: str, result) -> str:
    """Serialise a command result under the versioned schema, deterministically."""
    doc = {"schema": SCHEMA, "command": command, "result": to_jsonable(result)}
    return json.dumps(doc, sort_keys=True, indent=2)


def matrix_from_json(data) -> NonnegMatrix:
    """Inverse of :func:`to_jsonable` for a numeric matrix."""
    def entry(x):
        if isinstance(x, dict):
            return Fraction(int(x["num"]), int(x["den"]))
        return to_fraction(x)

    return NonnegMatrix([[entry(x) for x in r] for r in data])
