"""Exact graph colouring by DSATUR-ordered backtracking.

Symmetry breaking: the first branched vertex is fixed to colour 0 and new
colours are introduced in increasing order, so permuting colour classes never
revisits an assignment.
"""

from __future__ import annotations

from .graph import Graph, bits, popcount

DEFAULT_COLOUR_BUDGET = 20_000_000


class ColouringBudgetExceeded(RuntimeError):
    """Backtracking node limit hit before the search space was exhausted."""


def is_proper(g: Graph, colouring) -> bool:
    return all(colouring[u] != colouring[v] for u, v in g.edges())


def k_colourable(g: Graph, k: int, budget: int = DEFAULT_COLOUR_BUDGET):
    """Return a proper colouring with at most ``k`` colours, or None.

    Exhaustive: None means no such colouring exists.  Branches on the
    uncoloured vertex with the most distinctly coloured neighbours
    (saturation), tie-broken by degree then index.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.n
    colour = [-1] * n
    # neighbour_colours[v] = bitmask of colours used on v's neighbours
    neighbour_colours = [0] * n
    degs = g.degrees()
    nodes = 0

    def pick() -> int:
        best = -1
        best_key = None
        for v in range(n):
            if colour[v] >= 0:
                continue
            key = (popcount(neighbour_colours[v]), degs[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def assign(depth: int, used: int) -> bool:
        nonlocal nodes
        if depth == n:
            return True
        nodes += 1
        if nodes > budget:
            raise ColouringBudgetExceeded(f"node budget {budget} exhausted")
        v = pick()
        limit = min(k, used + 1)
        for c in range(limit):
            if neighbour_colours[v] >> c & 1:
                continue
            colour[v] = c
            touched = []
            dead = False
            for w in bits(g.adj[v]):
                if colour[w] < 0 and not neighbour_colours[w] >> c & 1:
                    neighbour_colours[w] |= 1 << c
                    touched.append(w)
                    # w has no colour left under the current palette bound
                    if popcount(neighbour_colours[w]) >= k:
                        dead = True
            if not dead and assign(depth + 1, max(used, c + 1)):
                return True
            for w in touched:
                neighbour_colours[w] ^= 1 << c
            colour[v] = -1
        return False

    if assign(0, 0):
        return tuple(colour)
    return None


def greedy_clique(g: Graph) -> list[int]:
    """Greedy clique: repeatedly add the highest-degree compatible vertex."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    clique: list[int] = []
    cmask = 0
    for v in order:
        if g.adj[v] & cmask == cmask:
            clique.append(v)
            cmask |= 1 << v
    return clique


def greedy_colouring(g: Graph) -> tuple[int, ...]:
    """First-fit colouring in descending degree order (an upper bound)."""
    colour = [-1] * g.n
    for v in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        taken = 0
        for w in bits(g.adj[v]):
            if colour[w] >= 0:
                taken |= 1 << colour[w]
        c = 0
        while taken >> c & 1:
            c += 1
        colour[v] = c
    return tuple(colour)


def chromatic_number(g: Graph, budget: int = DEFAULT_COLOUR_BUDGET) -> int:
    """Least k admitting a proper k-colouring."""
    lower = max(1, len(greedy_clique(g)))
    upper = max(greedy_colouring(g)) + 1
    for k in range(lower, upper + 1):
        if k_colourable(g, k, budget=budget) is not None:
            return k
    raise AssertionError("greedy colouring bound was not attained")
