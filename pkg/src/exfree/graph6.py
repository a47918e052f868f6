"""graph6 text encoding: parse and emit, strict and byte-exact.

The format packs the upper triangle of the adjacency matrix in column order
(for each column j, rows i < j) into 6-bit groups, each printed as the
character chr(value + 63). The vertex count is a 1-, 4-, or 8-character
prefix depending on size. An optional ">>graph6<<" header is accepted on
parse and never emitted.
"""

from __future__ import annotations

from .errors import GraphFormatError
from .graphs import Graph

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise GraphFormatError("vertex count must be nonnegative")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return chr(126) + chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphFormatError(f"vertex count {n} too large for graph6")


def _decode_n(text: str) -> tuple[int, str]:
    if not text:
        raise GraphFormatError("empty graph6 string")
    for ch in text:
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r}")
    if text[0] != chr(126):
        return ord(text[0]) - 63, text[1:]
    if len(text) >= 2 and text[1] != chr(126):
        if len(text) < 4:
            raise GraphFormatError("truncated graph6 vertex count")
        n = 0
        for ch in text[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        return n, text[4:]
    if len(text) < 8:
        raise GraphFormatError("truncated graph6 vertex count")
    n = 0
    for ch in text[2:8]:
        n = (n << 6) | (ord(ch) - 63)
    return n, text[8:]


def to_graph6(g: Graph) -> str:
    out = [_encode_n(g.n)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | ((col >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        acc <<= 6 - nbits
        out.append(chr(acc + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    if text.startswith(_HEADER):
        text = text[len(_HEADER):]
    text = text.strip()
    if not text:
        raise GraphFormatError("empty graph6 string")
    n, body = _decode_n(text)
    nbits = n * (n - 1) // 2
    expected_chars = (nbits + 5) // 6
    if len(body) != expected_chars:
        raise GraphFormatError(
            f"graph6 body has {len(body)} characters, expected {expected_chars} for n={n}"
        )
    adj = [0] * n
    bit_index = 0
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val <= 63:
            raise GraphFormatError(f"invalid graph6 character {ch!r}")
        for k in range(5, -1, -1):
            if bit_index >= nbits:
                if (val >> k) & 1:
                    raise GraphFormatError("nonzero padding bits in graph6 body")
                continue
            if (val >> k) & 1:
                i, j = _bit_position(bit_index)
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            bit_index += 1
    return Graph(n, tuple(adj))


def _bit_position(index: int) -> tuple[int, int]:
    """Map a flat upper-triangle bit index (column order) to (row, column)."""
    j = 1
    while index >= j:
        index -= j
        j += 1
    return index, j
