"""Reading and writing graphs: graph6, plain edge lists, DOT and JSON."""

from __future__ import annotations

import os
from typing import Any

from .errors import ContractError, GraphParseError
from .graph import MAX_VERTICES, Graph

_HEADER = b">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def write_graph6(g: Graph) -> bytes:
    """graph6 encoding (no header, no trailing newline)."""
    out = bytearray(_encode_n(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def parse_graph6(text: bytes | str) -> Graph:
    """Decode one graph6 record.

    An optional ``>>graph6<<`` header and surrounding whitespace are
    accepted. Offsets in errors count bytes from the start of ``text``.
    """
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    start = len(data) - len(data.lstrip())
    data = data.strip()
    if data.startswith(_HEADER):
        start += len(_HEADER)
        data = data[len(_HEADER):]
    if not data:
        raise GraphParseError("empty graph6 input", offset=start)
    if data[0] in (ord(":"), ord("&")):
        raise GraphParseError("sparse6/digraph6 input is not graph6", offset=start)
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise GraphParseError(f"byte {c!r} outside the graph6 range 63..126", offset=start + i)

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphParseError("truncated long-form vertex count", offset=start + len(data))
        n, pos = 0, 8
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
    else:
        if len(data) < 4:
            raise GraphParseError("truncated vertex count", offset=start + len(data))
        n, pos = 0, 4
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
    if n > MAX_VERTICES:
        raise GraphParseError(f"vertex count {n} exceeds the library cap {MAX_VERTICES}", offset=start)

    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise GraphParseError(f"bit vector truncated: expected {need} bytes, found {len(body)}",
                              offset=start + len(data))
    if len(body) > need:
        raise GraphParseError("trailing bytes after the bit vector", offset=start + pos + need)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph.from_rows(rows)


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first content line, then one ``u v`` pair per line.

    Blank lines and ``#`` comments are ignored; duplicate edges collapse.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise GraphParseError(f"non-integer token in {line!r}", line=lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise GraphParseError("first line must hold the vertex count", line=lineno)
            n = values[0]
            if n > MAX_VERTICES:
                raise GraphParseError(f"vertex count {n} exceeds {MAX_VERTICES}", line=lineno)
            continue
        if len(values) != 2:
            raise GraphParseError("expected two endpoints", line=lineno)
        u, v = values
        for x in (u, v):
            if not 0 <= x < n:
                raise GraphParseError(f"endpoint {x} outside 0..{n - 1}", line=lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", line=lineno)
        edges.append((u, v))
    if n is None:
        raise GraphParseError("missing vertex count", line=1)
    return Graph(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph, name: str = "G", labels: dict[int, str] | None = None) -> str:
    out = [f"graph {name} {{"]
    for v in range(g.n):
        if labels and v in labels:
            out.append(f'  {v} [label="{labels[v]}"];')
        else:
            out.append(f"  {v};")
    out.extend(f"  {u} -- {v};" for u, v in g.edges())
    out.append("}")
    return "\n".join(out) + "\n"


def graph_to_json(g: Graph) -> dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_json(data: Any) -> Graph:
    """Accepts ``{"n", "edges"}``, a graph6 string, or a generator spec string."""
    if isinstance(data, dict):
        return Graph(int(data["n"]), [(int(u), int(v)) for u, v in data.get("edges", [])])
    if isinstance(data, str):
        return load_graph(data)
    raise ContractError(f"cannot interpret {data!r} as a graph")


def detect_format(text: str) -> str:
    """``"edges"`` when the first content line is a bare integer, else ``"graph6"``."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return "edges" if line.isdigit() else "graph6"
    return "edges"


def read_graph(text: str, fmt: str | None = None) -> Graph:
    fmt = fmt or detect_format(text)
    if fmt == "graph6":
        return parse_graph6(text.strip().splitlines()[0] if text.strip() else text)
    if fmt == "edges":
        return parse_edge_list(text)
    raise ContractError(f"unknown graph format {fmt!r}")


def load_graph(source: str, fmt: str | None = None) -> Graph:
    """Load from a file path, or else treat ``source`` as a generator spec
    (``family:params``) or a literal graph6 string."""
    if os.path.exists(source):
        with open(source, encoding="ascii") as fh:
            return read_graph(fh.read(), fmt)
    if os.sep in source or os.path.splitext(source)[1] in (".g6", ".txt", ".edges", ".el"):
        raise ContractError(f"no such graph file: {source}")
    if ":" in source:
        from .generators import generate, parse_generator_spec

        return generate(parse_generator_spec(source))
    return parse_graph6(source)
