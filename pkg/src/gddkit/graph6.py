"""Header-less graph6 encoding and decoding.

Format: N(n) followed by the upper triangle of the adjacency matrix in
column order (x_{0,1}, x_{0,2}, x_{1,2}, x_{0,3}, ...), packed into
6-bit groups (zero-padded) offset by 63. N(n) is chr(n + 63) for
n <= 62 and '~' plus three 6-bit bytes (big-endian) for n <= 258047;
larger graphs are out of scope.
"""

from __future__ import annotations

from .graph import Graph


def encode(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        raise ValueError("graph too large for this encoder")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return head + "".join(chars)


def decode(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<") :]
    if not text:
        raise ValueError("empty graph6 string")
    if text[0] == "~":
        if len(text) < 4 or text[1] == "~":
            raise ValueError("unsupported graph6 size header")
        n = 0
        for ch in text[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = text[4:]
    else:
        n = ord(text[0]) - 63
        body = text[1:]
    if n < 0:
        raise ValueError("bad graph6 vertex count")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)}, expected {need}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ValueError("graph6 character out of range")
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Graph(n, rows)
