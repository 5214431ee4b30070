"""Immutable simple undirected graphs with graph6 text interchange.

Vertices are always 0..n-1.  Adjacency is kept as one integer bitmask per
vertex, which makes the set-intersection inner loops of the search code
cheap (``rows[u] & rows[v]`` is the common neighborhood).  All operations
return new graphs; nothing here mutates shared state, so graph values are
safe to share across threads and processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class Graph6Error(ValueError):
    """Malformed graph6 input.  ``offset`` is the byte position at fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True, slots=True)
class Graph:
    """A simple undirected graph on vertices 0..n-1.

    ``rows[u]`` has bit ``v`` set iff u ~ v.  The relation is symmetric and
    irreflexive; the constructor checks both.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.rows) != self.n:
            raise ValueError("rows length must equal vertex count")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {u} references vertices outside 0..{self.n - 1}")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
            for v in _bits(row):
                if not self.rows[v] >> u & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.rows), default=0)

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.rows), default=0)

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, g6={emit_graph6(self)!r})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# graph6 interchange
#
# Size: byte n+63 for 0 <= n <= 62; '~' then 3 bytes for n < 2^18; '~~' then
# 6 bytes for n < 2^36.  Then the upper triangle read column by column
# (pairs (0,1),(0,2),(1,2),(0,3),...) packed into 6-bit groups, each group
# value +63, zero-padded at the end.
# ---------------------------------------------------------------------------

def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line into a Graph.

    Raises :class:`Graph6Error` (with the failing byte offset) on malformed
    length bytes, bad characters, trailing garbage, or nonzero padding.
    """
    if text.endswith("\n"):
        text = text[:-1]
    try:
        data = text.encode("ascii")
    except UnicodeEncodeError as exc:
        raise Graph6Error("non-ASCII byte in graph6 input", exc.start) from None
    if not data:
        raise Graph6Error("empty graph6 input", 0)
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {byte} outside graph6 range 63..126", off)

    pos = 0
    if data[0] != 126:
        n = data[0] - 63
        pos = 1
    elif len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte size prefix", len(data))
        n = 0
        for off in range(1, 4):
            n = n << 6 | (data[off] - 63)
        if n <= 62:
            raise Graph6Error("over-long size encoding", 0)
        pos = 4
    else:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size prefix", len(data))
        n = 0
        for off in range(2, 8):
            n = n << 6 | (data[off] - 63)
        if n < 1 << 18:
            raise Graph6Error("over-long size encoding", 0)
        pos = 8

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6Error(f"need {nbytes} adjacency bytes, found {len(data) - pos}", len(data))
    if len(data) - pos > nbytes:
        raise Graph6Error("trailing garbage after adjacency bytes", pos + nbytes)

    rows = [0] * n
    bit = 0
    pairs = _column_major_pairs(n)
    for off in range(pos, pos + nbytes):
        group = data[off] - 63
        for shift in (5, 4, 3, 2, 1, 0):
            if bit < nbits:
                if group >> shift & 1:
                    i, j = next(pairs)
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                else:
                    next(pairs)
                bit += 1
            elif group >> shift & 1:
                raise Graph6Error("nonzero padding bit", off)
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    """Encode a Graph as one graph6 line (no trailing newline).

    Inverse of :func:`parse_graph6` including the vertex labeling.
    """
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n < 1 << 18:
        head = [126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)]
    elif n < 1 << 36:
        head = [126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)]
    else:
        raise ValueError(f"n={n} exceeds the supported graph6 size range")

    out = list(head)
    group = 0
    filled = 0
    for i, j in _column_major_pairs(n):
        group = group << 1 | (g.rows[i] >> j & 1)
        filled += 1
        if filled == 6:
            out.append(group + 63)
            group, filled = 0, 0
    if filled:
        out.append((group << (6 - filled)) + 63)
    return bytes(out).decode("ascii")


def _column_major_pairs(n: int) -> Iterator[tuple[int, int]]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


# ---------------------------------------------------------------------------
# Basic operations
# ---------------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((full ^ row ^ (1 << u)) for u, row in enumerate(g.rows)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabeled 0..|S|-1 in sorted order."""
    sel = sorted(set(vertices))
    for v in sel:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(sel)}
    rows = [0] * len(sel)
    for v in sel:
        row = 0
        for u in _bits(g.rows[v]):
            if u in index:
                row |= 1 << index[u]
        rows[index[v]] = row
    return Graph(len(sel), tuple(rows))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    rows = list(g1.rows) + [row << g1.n for row in g2.rows]
    return Graph(g1.n + g2.n, tuple(rows))


def degree_sequence(g: Graph) -> list[int]:
    """Degrees in nondecreasing order (length n, sums to twice the edge count)."""
    return sorted(row.bit_count() for row in g.rows)


def has_consecutive_degrees(g: Graph) -> bool:
    """True iff every integer between the minimum and maximum degree occurs."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    present = {row.bit_count() for row in g.rows}
    return all(d in present for d in range(min(present), max(present) + 1))


# ---------------------------------------------------------------------------
# Metrics used by constructors and the verification suites
# ---------------------------------------------------------------------------

def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= g.rows[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def _bfs_dist(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    seen = 1 << source
    frontier = seen
    d = 0
    while frontier:
        d += 1
        reach = 0
        for v in _bits(frontier):
            reach |= g.rows[v]
        frontier = reach & ~seen
        seen |= frontier
        for v in _bits(frontier):
            dist[v] = d
    return dist


def diameter(g: Graph) -> int | float:
    """Largest pairwise distance; ``inf`` for disconnected graphs."""
    worst = 0
    for v in range(g.n):
        dist = _bfs_dist(g, v)
        if -1 in dist:
            return float("inf")
        worst = max(worst, max(dist))
    return worst


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; ``inf`` for forests."""
    best = float("inf")
    for src in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[src] = 0
        queue = [src]
        while queue:
            nxt = []
            for u in queue:
                for w in _bits(g.rows[u]):
                    if dist[w] == -1:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif w != parent[u]:
                        best = min(best, dist[u] + dist[w] + 1)
            queue = nxt
    return best


def common_neighbor_count(g: Graph, u: int, v: int) -> int:
    return (g.rows[u] & g.rows[v]).bit_count()
