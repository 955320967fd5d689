"""Core graph representation: bitmask adjacency, metrics, parsing.

Vertices are integers 0..n-1 with n <= 64, so every vertex set fits in a
single Python int used as a bit vector.  All objects here are immutable and
all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
from typing import Iterable, Iterator

MAX_VERTICES = 64


class ParseError(ValueError):
    """Malformed graph input (bad line, index out of range, loop, dupe)."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 (no loops, no multi-edges).

    ``adj[v]`` is the open neighbourhood of ``v`` as a bitmask.
    """

    n: int
    adj: tuple[int, ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise ParseError(f"vertex count must be positive, got {n}")
        if n > MAX_VERTICES:
            raise ParseError(f"vertex count {n} exceeds limit {MAX_VERTICES}")
        adj = [0] * n
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ParseError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ParseError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def closed_adj(self, v: int) -> int:
        return self.adj[v] | 1 << v

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the list mapping new index -> old vertex."""
        keep = sorted(set(vertices))
        if not keep:
            raise ValueError("empty vertex set")
        pos = {v: i for i, v in enumerate(keep)}
        edges = [
            (pos[u], pos[v])
            for u in keep
            for v in bits(self.adj[u])
            if u < v and v in pos
        ]
        return Graph.from_edges(len(keep), edges), keep

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"no edge ({u}, {v})")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v or self.has_edge(u, v):
            raise ValueError(f"cannot add edge ({u}, {v})")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))


def closed_neighborhood(g: Graph, s: int) -> int:
    """N[s]: the set s together with every vertex adjacent to it."""
    out = s
    for v in bits(s):
        out |= g.adj[v]
    return out


def connected(g: Graph) -> bool:
    reached = 1
    frontier = 1
    while frontier:
        grown = closed_neighborhood(g, reached)
        frontier = grown & ~reached
        reached = grown
    return reached == g.full_mask


@dataclass(frozen=True)
class DistMatrix:
    """All-pairs shortest path distances; ``inf`` (= n) between components."""

    n: int
    dist: tuple[tuple[int, ...], ...]

    @property
    def inf(self) -> int:
        return self.n

    def eccentricity(self, v: int) -> int:
        return max(self.dist[v])

    def sphere_masks(self, v: int) -> list[int]:
        """Masks of vertices at each exact distance 0..ecc(v) from ``v``.

        Unreachable vertices are not covered (they sit at the inf sentinel).
        """
        row = self.dist[v]
        ecc = max(d for d in row if d < self.n)
        out = [0] * (ecc + 1)
        for u, d in enumerate(row):
            if d <= ecc:
                out[d] |= 1 << u
        return out


def distance_matrix(g: Graph) -> DistMatrix:
    """BFS-exact distances; entries between components get the sentinel n."""
    inf = g.n
    rows = []
    for s in range(g.n):
        row = [inf] * g.n
        row[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            du = row[u]
            for w in bits(g.adj[u]):
                if row[w] == inf:
                    row[w] = du + 1
                    q.append(w)
        rows.append(tuple(row))
    return DistMatrix(g.n, tuple(rows))


@dataclass(frozen=True)
class GraphStats:
    connected: bool
    diameter: int | None
    min_degree: int
    max_degree: int
    degree_sequence: tuple[int, ...]


def graph_stats(g: Graph) -> GraphStats:
    degs = g.degrees()
    conn = connected(g)
    diameter = None
    if conn:
        dm = distance_matrix(g)
        diameter = max(max(row) for row in dm.dist)
    return GraphStats(
        connected=conn,
        diameter=diameter,
        min_degree=min(degs),
        max_degree=max(degs),
        degree_sequence=tuple(sorted(degs, reverse=True)),
    )


# -- edge-list format ---------------------------------------------------------
#
# line 1: vertex count n; then one "u v" per line with 0 <= u < v < n;
# '#' starts a comment.

def parse_edge_list(text: str) -> Graph:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"bad vertex count line: {lines[0]!r}") from None
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"bad edge line: {line!r}") from None
        if not u < v:
            raise ParseError(f"edge line must satisfy u < v: {line!r}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- graph6 format ------------------------------------------------------------
#
# Standard ASCII encoding for graphs on up to 62 vertices: N(n) followed by
# the upper triangle x(0,1),x(0,2),x(1,2),x(0,3),... packed 6 bits per byte,
# each byte offset by 63.

def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 input")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise ParseError("graph6 byte out of range")
    n = data[0]
    if n == 63:
        raise ParseError("graph6 inputs with n > 62 are not supported")
    rest = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(rest) < need:
        raise ParseError("graph6 input truncated")
    if len(rest) > need:
        raise ParseError("trailing bytes in graph6 input")
    bitstream = []
    for b in rest:
        bitstream.extend((b >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bitstream[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(max(n, 1), edges)


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ParseError("graph6 output supports at most 62 vertices")
    out = [chr(g.n + 63)]
    bitstream = []
    for v in range(1, g.n):
        for u in range(v):
            bitstream.append(1 if g.has_edge(u, v) else 0)
    while len(bitstream) % 6:
        bitstream.append(0)
    for i in range(0, len(bitstream), 6):
        byte = 0
        for bit in bitstream[i:i + 6]:
            byte = byte << 1 | bit
        out.append(chr(byte + 63))
    return "".join(out)


def parse_graph(text: str, fmt: str = "edge-list") -> Graph:
    if fmt == "edge-list":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ParseError(f"unknown format {fmt!r}")
