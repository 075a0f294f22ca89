"""graph6 encoding (header-free) and graph6 line files."""

import logging
import sys
from typing import Iterable

from src.errors import GraphError
from src.graph_core import Graph, build

logger = logging.getLogger(__name__)

HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))
    return "~~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (30, 24, 18, 12, 6, 0))


def _decode_order(data: bytes) -> tuple[int, int]:
    """Return (n, number of bytes consumed)."""
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        chunk, start = data[2:8], 2
    else:
        chunk, start = data[1:4], 1
    n = 0
    for byte in chunk:
        n = (n << 6) | (byte - 63)
    return n, start + len(chunk)


def encode(g: Graph) -> str:
    """Upper triangle of the adjacency matrix, column by column, 6 bits per char."""
    bits = []
    masks = g.masks
    for j in range(1, g.n):
        for i in range(j):
            bits.append(masks[i] >> j & 1)
    bits.extend([0] * (-len(bits) % 6))
    chars = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        chars.append(chr(value + 63))
    return _encode_order(g.n) + "".join(chars)


def decode(text: str) -> Graph:
    line = text.strip()
    if line.startswith(HEADER):
        line = line[len(HEADER):]
    data = line.encode("ascii")
    if not data or any(b < 63 or b > 126 for b in data):
        raise GraphError(f"not a graph6 string: {text!r}")
    n, offset = _decode_order(data)
    expected = (n * (n - 1) // 2 + 5) // 6
    body = data[offset:]
    if len(body) != expected:
        raise GraphError(f"graph6 string for n={n} needs {expected} data bytes, got {len(body)}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return build(n, edges)


def read_graph6(path: str) -> list[Graph]:
    """Read one graph per line from a file, or stdin when path is '-'."""
    if path == "-":
        lines = sys.stdin.read().splitlines()
    else:
        with open(path, "r", encoding="ascii") as f:
            lines = f.read().splitlines()
    graphs = [decode(line) for line in lines if line.strip()]
    logger.info("Read %d graphs from %s", len(graphs), "stdin" if path == "-" else path)
    return graphs


def write_graph6(graphs: Iterable[Graph], path: str):
    text = "".join(encode(g) + "\n" for g in graphs)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as f:
            f.write(text)
