"""Subgraph and induced-subgraph containment by backtracking search.

Patterns are small (at most 10 vertices), so a generic degree-pruned
backtracking matcher is enough; no pattern-specific code.
"""

from __future__ import annotations

from .graph import Graph, bits, popcount

PATTERN_LIMIT = 10


class PatternTooLarge(ValueError):
    """Pattern exceeds the backtracking search budget."""


def _search_order(pattern: Graph) -> list[int]:
    """Order pattern vertices: highest degree first, then graft on
    neighbours of already-placed vertices to keep the partial map connected
    where possible."""
    degs = pattern.degrees()
    order = [max(range(pattern.n), key=lambda v: (degs[v], -v))]
    placed = {order[0]}
    while len(order) < pattern.n:
        best = None
        best_key = None
        for v in range(pattern.n):
            if v in placed:
                continue
            attached = popcount(pattern.adj[v] & sum(1 << u for u in placed))
            key = (attached, degs[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    return order


def contains(host: Graph, pattern: Graph, mode: str = "subgraph"):
    """Find an injective embedding of ``pattern`` into ``host``.

    mode "subgraph": pattern edges map to host edges.
    mode "induced": pattern non-edges must also map to host non-edges.

    Returns the embedding as a tuple (pattern vertex i -> host vertex
    embedding[i]) or None if there is no containment of the requested mode.
    """
    if mode not in ("subgraph", "induced"):
        raise ValueError(f"unknown containment mode {mode!r}")
    if pattern.n > PATTERN_LIMIT:
        raise PatternTooLarge(
            f"pattern has {pattern.n} vertices, limit is {PATTERN_LIMIT}"
        )
    if pattern.n > host.n:
        return None
    induced = mode == "induced"
    order = _search_order(pattern)
    host_deg = host.degrees()
    pat_deg = pattern.degrees()
    assign = [-1] * pattern.n
    used = 0

    def extend(depth: int):
        nonlocal used
        if depth == len(order):
            return tuple(assign)
        pv = order[depth]
        need_adj = 0
        need_non = 0
        for prev in order[:depth]:
            if pattern.has_edge(pv, prev):
                need_adj |= 1 << assign[prev]
            elif induced:
                need_non |= 1 << assign[prev]
        for hv in range(host.n):
            hb = 1 << hv
            if used & hb or host_deg[hv] < pat_deg[pv]:
                continue
            if need_adj & ~host.adj[hv]:
                continue
            if induced and host.adj[hv] & need_non:
                continue
            assign[pv] = hv
            used |= hb
            found = extend(depth + 1)
            if found is not None:
                return found
            used ^= hb
            assign[pv] = -1
        return None

    return extend(0)


def enumerate_diamonds(g: Graph):
    """Yield every diamond subgraph of ``g`` as (girdle pair, tip pair).

    A diamond is K4 minus one edge; its girdle is the adjacent degree-3
    pair, its tips the two common neighbours.  Tip pairs that happen to be
    adjacent in ``g`` are still diamonds (the host may carry extra edges).
    """
    for u in range(g.n):
        for v in bits(g.adj[u]):
            if v <= u:
                continue
            common = list(bits(g.adj[u] & g.adj[v]))
            for i in range(len(common)):
                for j in range(i + 1, len(common)):
                    yield (u, v), (common[i], common[j])
