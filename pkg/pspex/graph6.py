"""graph6 codec.

Decoding validates the text itself so errors carry a byte offset, then
hands the bytes to networkx.
"""
from __future__ import annotations

import networkx as nx

from .config import MAX_VERTICES
from .errors import Graph6Error
from .graph import Graph

HEADER = '>>graph6<<'


def encode(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode('ascii').rstrip('\n')


def _order(data: bytes):
    """Return (n, offset of the first adjacency byte)."""
    if not data:
        raise Graph6Error(0, 'empty input')
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 4:
        raise Graph6Error(len(data), 'truncated vertex count')
    if data[1] == 126:
        if len(data) < 8:
            raise Graph6Error(len(data), 'truncated vertex count')
        digits, start = data[2:8], 8
    else:
        digits, start = data[1:4], 4
    n = 0
    for d in digits:
        n = (n << 6) | (d - 63)
    return n, start


def decode(text: str) -> Graph:
    raw = text.strip()
    start = len(HEADER) if raw.startswith(HEADER) else 0
    try:
        data = raw[start:].encode('ascii')
    except UnicodeEncodeError as e:
        raise Graph6Error(start + e.start, 'non-ASCII character') from None
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(start + i, f'character {chr(b)!r} outside 63..126')
    n, body = _order(data)
    if not 1 <= n <= MAX_VERTICES:
        raise Graph6Error(start, f'vertex count {n} outside 1..{MAX_VERTICES}')
    bits = n * (n - 1) // 2
    need = (bits + 5) // 6
    got = len(data) - body
    if got < need:
        raise Graph6Error(start + len(data), f'expected {need} adjacency bytes, got {got}')
    if got > need:
        raise Graph6Error(start + body + need, 'trailing bytes after adjacency data')
    pad = need * 6 - bits
    if pad and (data[-1] - 63) & ((1 << pad) - 1):
        raise Graph6Error(start + len(data) - 1, 'nonzero padding bits')
    return Graph.from_networkx(nx.from_graph6_bytes(data))
