"""graph6 (short form) and a multigraph edge-list dialect ``"n; u-v u-v ..."``."""

from __future__ import annotations

import re
import sys
from typing import IO, Iterable, Iterator

from .errors import FormatError, GraphError
from .graph import MultiGraph

GRAPH6_MAX_N = 62
_HEADER = ">>graph6<<"


def parse_graph6(line: str | bytes) -> MultiGraph:
    data = line.encode("ascii") if isinstance(line, str) else bytes(line)
    data = data.rstrip(b"\r\n")
    if data.startswith(_HEADER.encode()):
        data = data[len(_HEADER):]
    if not data:
        raise FormatError("empty graph6 record", 0)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b!r} outside 63..126", i)
    n = data[0] - 63
    if n > GRAPH6_MAX_N:
        raise FormatError("long-form graph6 headers (n > 62) are not supported", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[1:]
    if len(body) < need:
        raise FormatError(f"truncated bit stream: {len(body)} of {need} data bytes", len(data))
    if len(body) > need:
        raise FormatError(f"{len(body) - need} trailing bytes after the bit stream", 1 + need)
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((u, v))
            k += 1
    if need:
        pad = 6 * need - nbits
        if (body[-1] - 63) & ((1 << pad) - 1):
            raise FormatError("nonzero padding bits", len(data) - 1)
    return MultiGraph(n, edges)


def write_graph6(g: MultiGraph) -> str:
    if not g.is_simple:
        raise GraphError("graph6 cannot carry parallel edges; use the edge-list dialect")
    n = g.n
    if n > GRAPH6_MAX_N:
        raise GraphError(f"graph6 short form supports n <= {GRAPH6_MAX_N}")
    bits = [int(g.has_edge(u, v)) for v in range(1, n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + n)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


_PAIR = re.compile(r"^(\d+)-(\d+)$")


def parse_multi_edge_list(line: str) -> MultiGraph:
    head, sep, rest = line.strip().partition(";")
    if not sep:
        raise FormatError("missing ';' after the vertex count")
    try:
        n = int(head.strip())
    except ValueError:
        raise FormatError(f"bad vertex count {head.strip()!r}", 0) from None
    edges = []
    for tok in rest.split():
        m = _PAIR.match(tok)
        if not m:
            raise FormatError(f"bad edge token {tok!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    for u, v in edges:
        if u >= n or v >= n:
            raise GraphError(f"vertex index in {u}-{v} is >= n = {n}")
    return MultiGraph(n, edges)


def write_multi_edge_list(g: MultiGraph) -> str:
    toks = " ".join(f"{u}-{v}" for u, v in g.edges())
    return f"{g.n}; {toks}".rstrip()


def write_graph(g: MultiGraph) -> str:
    """graph6 when possible, edge-list dialect otherwise."""
    if g.is_simple and g.n <= GRAPH6_MAX_N:
        return write_graph6(g)
    return write_multi_edge_list(g)


def parse_graph(line: str) -> MultiGraph:
    """Either format, told apart by the ';' of the edge-list dialect."""
    if ";" in line:
        return parse_multi_edge_list(line)
    return parse_graph6(line.strip())


def iter_records(lines: Iterable[str]) -> Iterator[str]:
    for raw in lines:
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield s


def read_graphs(source: str | IO[str] | None = None) -> Iterator[MultiGraph]:
    """Graphs from a path, an open text stream, or stdin (``None`` or ``"-"``)."""
    if source is None or source == "-":
        yield from (parse_graph(s) for s in iter_records(sys.stdin))
    elif isinstance(source, str):
        with open(source, encoding="ascii") as fh:
            yield from (parse_graph(s) for s in iter_records(fh))
    else:
        yield from (parse_graph(s) for s in iter_records(source))
