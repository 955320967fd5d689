"""Constructors for named graphs, random cubic graphs, and small-graph
enumeration.

Canonical labelings are frozen: certificates and tests reference vertex
indices, so the labeling of every named graph is part of the public contract
and documented on its constructor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph, MAX_VERTICES


class InvalidParameter(ValueError):
    """Named-graph parameter outside its documented range."""


class RejectionLimit(RuntimeError):
    """Pairing-model retry budget exhausted without a simple graph."""


class TooLarge(ValueError):
    """Exhaustive enumeration requested beyond its size cap."""


def path(k: int) -> Graph:
    """Path with k vertices 0-1-...-(k-1)."""
    if k < 1:
        raise InvalidParameter("path needs k >= 1")
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle(n: int) -> Graph:
    """Cycle 0-1-...-(n-1)-0."""
    if n < 3:
        raise InvalidParameter("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter("complete needs n >= 1")
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts 0..a-1 and a..a+b-1."""
    if a < 1 or b < 1:
        raise InvalidParameter("complete_bipartite needs a, b >= 1")
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def star(m: int) -> Graph:
    """K_{1,m}: centre 0, leaves 1..m."""
    if m < 1:
        raise InvalidParameter("star needs m >= 1")
    return Graph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def k2_join_e3() -> Graph:
    """Edge {0,1} joined completely to the independent set {2,3,4}."""
    return Graph.from_edges(
        5, [(0, 1)] + [(u, v) for u in (0, 1) for v in (2, 3, 4)]
    )


def k33_minus() -> Graph:
    """K_{3,3} on parts {0,1,2} / {3,4,5} minus the edge 0-3.

    Vertices 0 and 3 are the unique pair at distance 3.
    """
    edges = [(u, v) for u in (0, 1, 2) for v in (3, 4, 5) if (u, v) != (0, 3)]
    return Graph.from_edges(6, edges)


def double_net() -> Graph:
    """Triangle {0,1,2} with two pendant leaves per corner.

    Leaves of 0 are {3,4}, of 1 are {5,6}, of 2 are {7,8}.
    """
    edges = [(0, 1), (0, 2), (1, 2)]
    edges += [(0, 3), (0, 4), (1, 5), (1, 6), (2, 7), (2, 8)]
    return Graph.from_edges(9, edges)


def rooted_double_net() -> Graph:
    """Double-net plus a root 9 adjacent to both leaves {3,4} of corner 0."""
    g = double_net()
    return Graph.from_edges(10, g.edges() + [(3, 9), (4, 9)])


def sunlet(n: int) -> Graph:
    """Cycle 0..n-1 with pendant leaf n+i attached to cycle vertex i."""
    if n < 3:
        raise InvalidParameter("sunlet needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph.from_edges(2 * n, edges)


def sunlet_chorded(n: int) -> Graph:
    """Sunlet plus a chord between the leaves of the adjacent cycle
    vertices 0 and 1 (one reading of "an edge between two adjacent edges")."""
    g = sunlet(n)
    return g.add_edge(n, n + 1)


def diamond() -> Graph:
    """K4 minus one edge: girdle {0,1} (degree 3), tips {2,3} (degree 2)."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def kite() -> Graph:
    """Diamond with a pendant vertex 4 on tip 2."""
    return Graph.from_edges(5, diamond().edges() + [(2, 4)])


def dart() -> Graph:
    """Diamond with a pendant vertex 4 on girdle vertex 0."""
    return Graph.from_edges(5, diamond().edges() + [(0, 4)])


def double_dart() -> Graph:
    """Dart with its girdle edge 0-1 subdivided by the new vertex 5."""
    edges = [e for e in dart().edges() if e != (0, 1)]
    return Graph.from_edges(6, edges + [(0, 5), (1, 5)])


def bull() -> Graph:
    """Triangle {0,1,2} with pendant horns 3 on 0 and 4 on 1."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)])


def watch() -> Graph:
    """C4 0-1-2-3 with pendants 4 on 0 and 5 on 2 (opposite corners)."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (2, 5)])


def diamond_ring(n: int) -> Graph:
    """Cycle of n diamonds sharing tip vertices.

    Tips are the cycle positions 0..n-1 (degree 4); the diamond replacing
    cycle edge (i, i+1) has girdle pair {n+2i, n+2i+1} (degree 3).  The
    original cycle edges are not present.
    """
    if n < 3:
        raise InvalidParameter("diamond_ring needs n >= 3")
    edges = []
    for i in range(n):
        j = (i + 1) % n
        g1, g2 = n + 2 * i, n + 2 * i + 1
        edges += [(g1, g2)]
        edges += [(i, g1), (i, g2), (j, g1), (j, g2)]
    return Graph.from_edges(3 * n, [(min(u, v), max(u, v)) for u, v in edges])


def petersen() -> Graph:
    """Outer cycle 0..4, inner pentagram 5..9, spokes i-(i+5)."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, [(min(u, v), max(u, v)) for u, v in edges])


# The pretzel: 50 vertices, 84 edges, assembled from five 4-vertex diamond
# blocks, ten 3-vertex triangle blocks, eight chain-link edge pairs and
# thirteen extra edges.  Frozen labeling:
#   0      hub (the unique degree-7 vertex)
#   1      hub's girdle partner in the central diamond
#   2, 3   central diamond tips (left / right)
#   4..15  right-bottom triangle chain, blocks (apex, base, base);
#          bases 5,6 attach to the hub, apex 13 is the right junction
#   16..27 left-bottom triangle chain; bases 17,18 attach to the hub,
#          apex 25 is the left junction
#   28..31 right diamond: junction tip 28, girdle 29,30, tip 31 (to 3)
#   32..35 left diamond: junction tip 32, girdle 33,34, tip 35 (to 2)
#   36..42 right-top arm: junction 36, triangle base 37,38, diamond tip 39,
#          girdle 40,41, bridge end 42
#   43..49 left-top arm: bridge end 43, triangle base 44,45, diamond tip 46,
#          girdle 47,48, junction 49
#   junction triangles {13,28,36} and {25,32,49}; bridge edge 42-43.
# The two vertices at the hub's eccentricity 9 are exactly 42 and 43.
PRETZEL_EDGES = (
    (0, 1), (0, 2), (0, 3), (0, 5), (0, 6), (0, 17), (0, 18),
    (1, 2), (1, 3), (2, 35), (3, 31), (4, 5), (4, 6), (4, 8),
    (4, 9), (5, 6), (7, 8), (7, 9), (7, 11), (7, 12), (8, 9),
    (10, 11), (10, 12), (10, 14), (10, 15), (11, 12), (13, 14), (13, 15),
    (13, 28), (13, 36), (14, 15), (16, 17), (16, 18), (16, 20), (16, 21),
    (17, 18), (19, 20), (19, 21), (19, 23), (19, 24), (20, 21), (22, 23),
    (22, 24), (22, 26), (22, 27), (23, 24), (25, 26), (25, 27), (25, 32),
    (25, 49), (26, 27), (28, 29), (28, 30), (28, 36), (29, 30), (29, 31),
    (30, 31), (32, 33), (32, 34), (32, 49), (33, 34), (33, 35), (34, 35),
    (36, 37), (36, 38), (37, 38), (37, 39), (38, 39), (39, 40), (39, 41),
    (40, 41), (40, 42), (41, 42), (42, 43), (43, 44), (43, 45), (44, 45),
    (44, 46), (45, 46), (46, 47), (46, 48), (47, 48), (47, 49), (48, 49),
)

PRETZEL_HUB = 0


def pretzel() -> Graph:
    """The 50-vertex pretzel (see PRETZEL_EDGES for the frozen labeling)."""
    return Graph.from_edges(50, list(PRETZEL_EDGES))


@dataclass(frozen=True)
class NamedGraphSpec:
    """A named constructor plus its integer parameters, e.g. sunlet:6."""

    name: str
    params: tuple[int, ...] = ()


# name -> (constructor, number of int parameters)
NAMED_GRAPHS = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "star": (star, 1),
    "k2_join_e3": (k2_join_e3, 0),
    "k33_minus": (k33_minus, 0),
    "double_net": (double_net, 0),
    "rooted_double_net": (rooted_double_net, 0),
    "sunlet": (sunlet, 1),
    "sunlet_chorded": (sunlet_chorded, 1),
    "diamond": (diamond, 0),
    "kite": (kite, 0),
    "dart": (dart, 0),
    "double_dart": (double_dart, 0),
    "bull": (bull, 0),
    "watch": (watch, 0),
    "diamond_ring": (diamond_ring, 1),
    "pretzel": (pretzel, 0),
    "petersen": (petersen, 0),
}


def make_named(spec: NamedGraphSpec) -> Graph:
    if spec.name not in NAMED_GRAPHS:
        raise InvalidParameter(f"unknown graph name {spec.name!r}")
    ctor, arity = NAMED_GRAPHS[spec.name]
    if len(spec.params) != arity:
        raise InvalidParameter(
            f"{spec.name} takes {arity} parameter(s), got {len(spec.params)}"
        )
    return ctor(*spec.params)


def parse_named_spec(text: str) -> NamedGraphSpec:
    """Parse "name" or "name:p" or "name:p,q" spec strings."""
    name, _, rest = text.partition(":")
    name = name.strip()
    params: tuple[int, ...] = ()
    if rest:
        try:
            params = tuple(int(p) for p in rest.split(","))
        except ValueError:
            raise InvalidParameter(f"bad parameters in spec {text!r}") from None
    return NamedGraphSpec(name, params)


def random_cubic(n: int, seed: int, max_tries: int = 1000) -> Graph:
    """Random simple 3-regular graph via the pairing model.

    Three half-edges per vertex are matched uniformly at random; matchings
    producing loops or parallel edges are rejected and resampled.
    Deterministic for a fixed seed.
    """
    if n < 4 or n % 2:
        raise InvalidParameter("random_cubic needs even n >= 4")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, 3 * n, 2):
            u, v = points[i], points[i + 1]
            if u == v:
                ok = False
                break
            key = (u, v) if u < v else (v, u)
            if key in edges:
                ok = False
                break
            edges.add(key)
        if ok:
            return Graph.from_edges(n, sorted(edges))
    raise RejectionLimit(f"no simple pairing found in {max_tries} tries")


ENUMERATION_LIMIT = 7


def enumerate_graphs(n: int, connected_only: bool = False):
    """Yield every labeled simple graph on n vertices exactly once.

    Edge masks run 0..2^C(n,2)-1 with bit k standing for the k-th pair in
    lexicographic (u, v) order, u < v.
    """
    from .graph import connected as is_connected

    if n < 1:
        raise InvalidParameter("enumerate_graphs needs n >= 1")
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration capped at n <= {ENUMERATION_LIMIT}")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        g = Graph.from_edges(n, edges)
        if connected_only and not is_connected(g):
            continue
        yield g
