"""Polynomial-time structural locatability rules and the variance calculus.

The rule set is sound but deliberately incomplete: non-locatability rules
fire on witnessed obstructions (forbidden subgraphs and degree-condition
hideouts), locatability rules on recognized safe families.  Everything else
is Unknown.  On diameter-2 graphs the rules are complete.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .graph import Graph, bits, connected, distance_matrix, mask_of, popcount
from .subgraph import contains, enumerate_diamonds
from . import generators
from .colouring import k_colourable
from .solver import Disconnected, Verdict, solve


class EmptySet(ValueError):
    """Variance of the empty target set is undefined."""


@dataclass(frozen=True)
class VarianceReport:
    """Distance variance data for a target set H inside a host graph.

    ``distance_sets[v]`` collects the distinct distances from v into H; the
    distance variance is the largest such count, the choice variance its
    gap to |H|.  A positive choice variance guarantees the robber a
    non-singleton reply when confined to H.
    """

    target: int
    distance_sets: tuple[tuple[int, ...], ...]
    distance_variance: int
    choice_variance: int
    argmax_vertex: int


def variance(g: Graph, H: int) -> VarianceReport:
    if not H:
        raise EmptySet("variance needs a nonempty target set")
    if not connected(g):
        raise Disconnected("variance is defined over a connected host")
    dm = distance_matrix(g)
    members = list(bits(H))
    sets = []
    best_v, best = 0, -1
    for v in range(g.n):
        row = dm.dist[v]
        ds = tuple(sorted({row[u] for u in members}))
        sets.append(ds)
        if len(ds) > best:
            best_v, best = v, len(ds)
    return VarianceReport(
        target=H,
        distance_sets=tuple(sets),
        distance_variance=best,
        choice_variance=popcount(H) - best,
        argmax_vertex=best_v,
    )


def diamond_condition(h: Graph) -> bool:
    """Every diamond subgraph of h has both girdle vertices of degree >= 4
    or both tip vertices of degree >= 4 (vacuously true without diamonds)."""
    degs = h.degrees()
    for (g1, g2), (t1, t2) in enumerate_diamonds(h):
        if degs[g1] >= 4 and degs[g2] >= 4:
            continue
        if degs[t1] >= 4 and degs[t2] >= 4:
            continue
        return False
    return True


def hideout_check(h: Graph) -> str | None:
    """Degree-based hideout tests: "MinDeg4", "MinDeg3Diamond" or None.

    A positive answer means every graph containing h as a subgraph is
    non-locatable.
    """
    delta = min(h.degrees())
    if delta >= 4:
        return "MinDeg4"
    if delta >= 3 and diamond_condition(h):
        return "MinDeg3Diamond"
    return None


def k_core_mask(g: Graph, k: int) -> int:
    """Vertices of the maximal subgraph with minimum degree >= k."""
    alive = g.full_mask
    while alive:
        drop = 0
        for v in bits(alive):
            if popcount(g.adj[v] & alive) < k:
                drop |= 1 << v
        if not drop:
            break
        alive &= ~drop
    return alive


@dataclass(frozen=True)
class ClassifierVerdict:
    outcome: str  # "NonLocatable" | "Locatable" | "Unknown"
    rule: str | None = None
    witness: tuple[int, ...] | None = None
    note: str | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "outcome": self.outcome,
                "rule": self.rule,
                "witness": list(self.witness) if self.witness is not None else None,
                "note": self.note,
            }
        )


def _find_induced_sunlet(g: Graph, k: int):
    """Induced k-sunlet search: an induced k-cycle whose every vertex keeps
    a private leaf, the 2k chosen vertices inducing exactly the sunlet.

    Returns (cycle vertices..., leaves...) or None.  Separate from the
    generic matcher because the pattern exceeds its size cap.
    """
    if 2 * k > g.n:
        return None

    for cyc in _induced_cycles(g, k):
        cyc_mask = mask_of(cyc)
        cands = []
        feasible = True
        for c in cyc:
            # leaf sees exactly its own cycle vertex among the cycle
            options = [
                v
                for v in bits(g.adj[c] & ~cyc_mask)
                if g.adj[v] & cyc_mask == 1 << c
            ]
            if not options:
                feasible = False
                break
            cands.append(options)
        if not feasible:
            continue
        chosen: list[int] = []

        def pick(i: int) -> bool:
            if i == k:
                return True
            for v in cands[i]:
                if v in chosen:
                    continue
                if any(g.has_edge(v, w) for w in chosen):
                    continue
                chosen.append(v)
                if pick(i + 1):
                    return True
                chosen.pop()
            return False

        if pick(0):
            return tuple(cyc) + tuple(chosen)
    return None


def _induced_cycles(g: Graph, k: int):
    """Yield each induced k-cycle once: least vertex first, lesser of its
    two cycle neighbours second."""
    for start in range(g.n):
        path = [start]
        used = {start}

        def extend():
            last = path[-1]
            if len(path) == k - 1:
                for v in bits(g.adj[last]):
                    # closing vertex: adjacent to both ends, chord-free
                    if v <= start or v in used or not g.has_edge(v, start):
                        continue
                    if any(g.has_edge(v, w) for w in path[1:-1]):
                        continue
                    if path[1] < v:
                        yield tuple(path) + (v,)
                return
            for v in bits(g.adj[last]):
                if v <= start or v in used:
                    continue
                # middle vertex: no chord to any earlier cycle vertex
                if any(g.has_edge(v, w) for w in path[:-1]):
                    continue
                path.append(v)
                used.add(v)
                yield from extend()
                path.pop()
                used.remove(v)

        yield from extend()


_PATTERN_RULES = (
    ("N1", "complete:4", lambda: generators.complete(4)),
    ("N2", "cycle:5", lambda: generators.cycle(5)),
    ("N3", "k2_join_e3", generators.k2_join_e3),
    ("N4", "k33_minus", generators.k33_minus),
)


def classify(g: Graph) -> ClassifierVerdict:
    """Structural verdict by a fixed rule cascade, first hit wins.

    Non-locatability first (N1-N4 forbidden subgraphs, N5 induced sunlets
    up to 8, N6 degree-condition hideouts on the graph and its 3-/4-cores),
    then locatable families (trees, cycles, complete bipartite K_{1,m} and
    K_{2,m}, universal-vertex graphs, and diameter-2 graphs once every
    obstruction is ruled out).
    """
    if not connected(g):
        raise Disconnected("classify requires a connected graph")
    n = g.n

    for rule, name, pattern in _PATTERN_RULES:
        emb = contains(g, pattern(), "subgraph")
        if emb is not None:
            return ClassifierVerdict("NonLocatable", rule, emb, note=name)

    for k in range(5, 9):
        emb = _find_induced_sunlet(g, k)
        if emb is not None:
            return ClassifierVerdict(
                "NonLocatable", "N5", emb, note=f"induced sunlet:{k}"
            )

    for core_k, where in ((None, "graph"), (3, "3-core"), (4, "4-core")):
        cand_mask = g.full_mask if core_k is None else k_core_mask(g, core_k)
        if not cand_mask:
            continue
        sub, keep = g.subgraph(bits(cand_mask))
        kind = hideout_check(sub)
        if kind is not None:
            return ClassifierVerdict(
                "NonLocatable", "N6", tuple(keep), note=f"{kind} on {where}"
            )

    degs = g.degrees()
    m = g.edge_count()
    if m == n - 1:
        return ClassifierVerdict("Locatable", "L1", note="tree")
    if n >= 4 and n != 5 and all(d == 2 for d in degs):
        return ClassifierVerdict("Locatable", "L2", note="cycle")
    if _is_k2m(g) or _is_star(g):
        return ClassifierVerdict("Locatable", "L3", note="complete bipartite")
    # C5 / K4 / K2+E3 were already excluded by N1-N3 above
    if max(degs) == n - 1:
        return ClassifierVerdict("Locatable", "L4", note="universal vertex")
    dm = distance_matrix(g)
    if max(max(row) for row in dm.dist) <= 2:
        return ClassifierVerdict("Locatable", "L5", note="diameter <= 2")
    return ClassifierVerdict("Unknown")


def _is_star(g: Graph) -> bool:
    if g.n < 2:
        return False
    degs = sorted(g.degrees())
    return degs[-1] == g.n - 1 and all(d == 1 for d in degs[:-1])


def _is_k2m(g: Graph) -> bool:
    n = g.n
    if n < 3:
        return False
    m = n - 2
    hubs = [v for v in range(n) if g.degree(v) == m]
    for i, u in enumerate(hubs):
        for v in hubs[i + 1:]:
            if g.has_edge(u, v):
                continue
            pair = (1 << u) | (1 << v)
            if all(
                w in (u, v) or g.adj[w] == pair for w in range(n)
            ):
                return True
    return False


def colourability_bound_check(g: Graph, budget: int | None = None) -> str:
    """Differential assertion: a locatable graph must be 4-colourable."""
    kwargs = {} if budget is None else {"budget": budget}
    result = solve(g, **kwargs)
    if result.verdict is Verdict.LOCATABLE and k_colourable(g, 4) is None:
        return "violation"
    return "ok"
