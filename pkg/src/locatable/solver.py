"""Exact locatability decisions for the distance-probe pursuit game.

The game state is the belief set L: the vertices the robber could currently
occupy given every probe answer so far.  A probe at p with declared distance
d shrinks L to the consistent set C = L n S_d(p); if C is a single vertex the
robber is located, otherwise he moves and the next belief is M = N[C] \\ {p}
(the probed vertex is barred, staying still is allowed).

The cop wins from L if some probe p makes every distance reply either
locating or a transition into a belief the cop already wins; the robber wins
on everything outside this least fixed point, because the graph of beliefs
is finite and cycles default to the robber ("bounded time" winning).  The
solver expands the reachable belief graph forward from full uncertainty,
then labels it backward in rounds; the round in which a belief is labeled is
exactly the worst-case number of probes needed from it.

Two engines share these semantics: a plain-Python one for small graphs and a
numpy batch engine for large state spaces.  Both are deterministic (probes
and distances ascending, beliefs in insertion order) and produce identical
results.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .graph import (
    Graph,
    DistMatrix,
    bits,
    connected,
    closed_neighborhood,
    distance_matrix,
    mask_of,
    popcount,
)
from .certificates import CopNode, CopStrategyTree, RobberCertificate

DEFAULT_BUDGET = 5_000_000
# secondary memory guard for the numpy engine (branch records, not beliefs)
DEFAULT_BRANCH_CAP = 200_000_000
PYTHON_ENGINE_MAX_N = 16

UNKNOWN, COP, ROBBER = 0, 1, 2


class Disconnected(ValueError):
    """The solver requires a connected graph (probe answers stay finite)."""


class NotLocatable(RuntimeError):
    """Cop strategy extraction needs a Locatable solve result."""


class NotNonLocatable(RuntimeError):
    """Robber certificate extraction needs a NonLocatable solve result."""


class Verdict(enum.Enum):
    LOCATABLE = "Locatable"
    NON_LOCATABLE = "NonLocatable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ProbeOutcome:
    """One probe/answer branch: consistent set C and successor belief M."""

    probe: int
    distance: int
    consistent: int
    successor: int

    @property
    def terminal(self) -> bool:
        return popcount(self.consistent) == 1


def response_distances(g: Graph, L: int, p: int, dm: DistMatrix | None = None) -> list[int]:
    """Distances the robber may truthfully declare from belief L at probe p."""
    if dm is None:
        dm = distance_matrix(g)
    return [d for d, s in enumerate(dm.sphere_masks(p)) if L & s]


def belief_update(
    g: Graph, L: int, p: int, d: int, dm: DistMatrix | None = None
) -> ProbeOutcome | None:
    """Apply one probe/answer round; None when d is inconsistent with L."""
    if dm is None:
        dm = distance_matrix(g)
    spheres = dm.sphere_masks(p)
    sphere = spheres[d] if d < len(spheres) else 0
    C = L & sphere
    if not C:
        return None
    M = closed_neighborhood(g, C) & ~(1 << p)
    return ProbeOutcome(probe=p, distance=d, consistent=C, successor=M)


@dataclass
class SolveResult:
    """Outcome of a solve: verdict, labeled belief graph, capture time.

    ``masks`` lists every distinct belief encountered, in insertion order;
    index 0 is the initial full-uncertainty belief.  ``label``/``win_time``
    run parallel to it.  ``explored`` counts distinct beliefs, ``expanded``
    how many of them had all probe branches generated.  ``exhausted`` is set
    when the node budget stopped the expansion; only then can the verdict be
    Inconclusive.
    """

    verdict: Verdict
    capture_time: int | None
    explored: int
    expanded: int
    exhausted: bool
    masks: list[int]
    label: list[int]
    win_time: list[int]
    _index: dict[int, int] | None = field(default=None, repr=False)

    def index(self) -> dict[int, int]:
        if self._index is None:
            self._index = {m: i for i, m in enumerate(self.masks)}
        return self._index

    def label_of(self, mask: int):
        """("CopWin", t) / ("RobberWin", None) / None for unlabeled."""
        i = self.index().get(mask)
        if i is None or self.label[i] == UNKNOWN:
            return None
        if self.label[i] == COP:
            return ("CopWin", self.win_time[i])
        return ("RobberWin", None)

    def labels(self) -> dict[int, tuple]:
        """Materialize the full belief -> label map (small graphs only)."""
        out = {}
        for i, m in enumerate(self.masks):
            if self.label[i] == COP:
                out[m] = ("CopWin", self.win_time[i])
            elif self.label[i] == ROBBER:
                out[m] = ("RobberWin", None)
        return out

    def report(self) -> str:
        lines = [
            f"verdict: {self.verdict.value}",
            f"capture_time: {self.capture_time if self.capture_time is not None else '-'}",
            f"explored: {self.explored}",
            f"expanded: {self.expanded}",
            f"budget_exhausted: {'yes' if self.exhausted else 'no'}",
        ]
        return "\n".join(lines)


def _neighbourhood_tables(g: Graph) -> list[list[int]]:
    """Byte-indexed closed-neighbourhood union tables: N[C] in 8 lookups."""
    nbytes = (g.n + 7) // 8
    tables = []
    for bi in range(nbytes):
        tbl = [0] * 256
        base = bi * 8
        for byte in range(1, 256):
            low = byte & -byte
            v = base + low.bit_length() - 1
            rest = tbl[byte ^ low]
            tbl[byte] = (rest | g.closed_adj(v)) if v < g.n else rest
        tables.append(tbl)
    return tables


def _expand_python(g: Graph, dm: DistMatrix, budget: int):
    """Forward expansion; returns (masks, index, branches, allterm, exhausted).

    branches[i][p] = tuple of successor belief indices for the non-locating
    answers to probe p from belief masks[i]; allterm[i] marks beliefs where
    some probe locates on every answer.
    """
    n = g.n
    full = g.full_mask
    spheres = [dm.sphere_masks(p) for p in range(n)]
    tables = _neighbourhood_tables(g)
    nbytes = len(tables)

    masks = [full]
    index = {full: 0}
    branches: list[list[tuple[int, ...]]] = []
    allterm: list[bool] = []
    pos = 0
    while pos < len(masks):
        if len(masks) >= budget:
            break
        L = masks[pos]
        row = []
        any_allterm = False
        for p in range(n):
            notp = full ^ (1 << p)
            succs = []
            for sphere in spheres[p]:
                C = L & sphere
                if not C:
                    continue
                if C & (C - 1) == 0:
                    continue  # locating answer
                M = 0
                rest = C
                for bi in range(nbytes):
                    M |= tables[bi][rest & 255]
                    rest >>= 8
                M &= notp
                j = index.get(M)
                if j is None:
                    j = len(masks)
                    index[M] = j
                    masks.append(M)
                succs.append(j)
            if not succs:
                any_allterm = True
            row.append(tuple(succs))
        branches.append(row)
        allterm.append(any_allterm)
        pos += 1
    return masks, index, branches, allterm, pos < len(masks)


def _label_python(masks, branches, allterm, exhausted, subset_dominance):
    """Backward labeling in rounds; round r labels exactly the beliefs the
    cop wins in r probes (Jacobi iteration, so the round number is the
    worst-case capture count)."""
    total = len(masks)
    expanded = len(branches)
    label = [UNKNOWN] * total
    win_time = [0] * total
    rnd = 0
    while True:
        rnd += 1
        newly = []
        for i in range(expanded):
            if label[i] != UNKNOWN:
                continue
            if allterm[i]:
                newly.append(i)
                continue
            won = False
            for succs in branches[i]:
                if succs and all(label[j] == COP for j in succs):
                    won = True
                    break
            if not won and subset_dominance:
                L = masks[i]
                won = any(
                    label[k] == COP and L & ~masks[k] == 0 for k in range(total)
                )
            if won:
                newly.append(i)
        if not newly:
            break
        for i in newly:
            label[i] = COP
            win_time[i] = rnd
    if not exhausted:
        for i in range(total):
            if label[i] == UNKNOWN:
                label[i] = ROBBER
    return label, win_time


def _solve_small(g, dm, budget, subset_dominance):
    masks, index, branches, allterm, exhausted = _expand_python(g, dm, budget)
    label, win_time = _label_python(masks, branches, allterm, exhausted, subset_dominance)
    return masks, index, label, win_time, len(branches), exhausted


def _solve_big(g, dm, budget, branch_cap):
    """Numpy batch engine: same semantics as the Python engine, built for
    millions of beliefs.  Branch records are CSR-packed per (belief, probe)
    so the labeling rounds are vectorized reduceat sweeps."""
    import numpy as np

    n = g.n
    full = g.full_mask
    depth = max(len(dm.sphere_masks(p)) for p in range(n))
    sphere = np.zeros((n, depth), dtype=np.uint64)
    for p in range(n):
        for d, s in enumerate(dm.sphere_masks(p)):
            sphere[p, d] = s
    notp = np.array([full ^ (1 << p) for p in range(n)], dtype=np.uint64)
    tables = np.zeros((8, 256), dtype=np.uint64)
    pytables = _neighbourhood_tables(g)
    for bi, tbl in enumerate(pytables):
        tables[bi, :] = tbl

    masks: list[int] = [full]
    index = {full: 0}
    allterm_rows: list[np.ndarray] = []
    succ_chunks: list[np.ndarray] = []
    count_chunks: list[np.ndarray] = []
    row_belief_chunks: list[np.ndarray] = []
    total_branches = 0
    pos = 0
    batch_size = 4096
    exhausted = False
    while pos < len(masks):
        if len(masks) >= budget or total_branches >= branch_cap:
            exhausted = True
            break
        take = min(batch_size, len(masks) - pos, max(budget - len(masks), 1))
        batch = np.array(masks[pos:pos + take], dtype=np.uint64)
        C = batch[:, None, None] & sphere[None, :, :]
        counts = np.bitwise_count(C)
        nonterm = counts >= 2
        M = np.zeros_like(C)
        shifted = C.copy()
        for bi in range(8):
            M |= tables[bi][(shifted & np.uint64(255)).astype(np.intp)]
            shifted >>= np.uint64(8)
        M &= notp[None, :, None]

        flat_sel = nonterm.reshape(-1)
        cand = M.reshape(-1)[flat_sel]
        uniq, first_pos, inverse = np.unique(
            cand, return_index=True, return_inverse=True
        )
        uniq_idx = np.empty(len(uniq), dtype=np.int64)
        fresh = []
        for k, m in enumerate(uniq.tolist()):
            j = index.get(m)
            if j is None:
                fresh.append((int(first_pos[k]), k, m))
            else:
                uniq_idx[k] = j
        for _, k, m in sorted(fresh):
            j = len(masks)
            index[m] = j
            masks.append(m)
            uniq_idx[k] = j
        succ = uniq_idx[inverse].astype(np.int64)

        per_probe = nonterm.sum(axis=2, dtype=np.int64)  # (take, n)
        batch_allterm = (per_probe == 0).any(axis=1)
        allterm_rows.append(batch_allterm)
        keep = ~batch_allterm
        if keep.any():
            # branches of all-terminal beliefs are dropped from the CSR:
            # those beliefs are CopWin(1) outright and never re-evaluated
            per_row = per_probe.sum(axis=1)
            starts = np.zeros(len(per_row) + 1, dtype=np.int64)
            np.cumsum(per_row, out=starts[1:])
            sel = np.zeros(len(succ), dtype=bool)
            for r in np.flatnonzero(keep):
                sel[starts[r]:starts[r + 1]] = True
            succ_chunks.append(succ[sel])
            count_chunks.append(per_probe[keep].reshape(-1))
            row_belief_chunks.append(np.flatnonzero(keep) + pos)
            total_branches += int(sel.sum())
        pos += take

    expanded = pos
    total = len(masks)
    label = np.zeros(total, dtype=np.int8)
    win_time = np.zeros(total, dtype=np.int32)

    allterm = (
        np.concatenate(allterm_rows) if allterm_rows else np.zeros(0, dtype=bool)
    )
    label[:expanded][allterm] = COP
    win_time[:expanded][allterm] = 1

    if row_belief_chunks:
        succ = np.concatenate(succ_chunks)
        probe_counts = np.concatenate(count_chunks)
        row_belief = np.concatenate(row_belief_chunks)
        probe_starts = np.zeros(len(probe_counts), dtype=np.int64)
        np.cumsum(probe_counts[:-1], out=probe_starts[1:])
        undecided = np.ones(len(row_belief), dtype=bool)
        rnd = 1
        while undecided.any():
            rnd += 1
            ok = label[succ] == COP
            probe_ok = np.logical_and.reduceat(ok, probe_starts)
            row_ok = probe_ok.reshape(-1, n).any(axis=1)
            newly = row_ok & undecided
            if not newly.any():
                break
            won = row_belief[newly]
            label[won] = COP
            win_time[won] = rnd
            undecided &= ~newly

    if not exhausted:
        label[label == UNKNOWN] = ROBBER
    return (
        masks,
        index,
        label.tolist(),
        win_time.tolist(),
        expanded,
        exhausted,
    )


def solve(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    subset_dominance: bool = False,
    engine: str = "auto",
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> SolveResult:
    """Decide locatability of the connected graph ``g``.

    ``budget`` caps the number of distinct beliefs tracked; hitting it gives
    an Inconclusive verdict (never a wrong one).  ``subset_dominance``
    enables an optional verdict-preserving labeling shortcut (beliefs
    contained in a cop-win belief are cop wins); it is off by default and
    only supported by the Python engine.
    """
    if not connected(g):
        raise Disconnected("solve requires a connected graph")
    if engine not in ("auto", "python", "numpy"):
        raise ValueError(f"unknown engine {engine!r}")
    if g.n == 1:
        return SolveResult(
            verdict=Verdict.LOCATABLE,
            capture_time=0,
            explored=1,
            expanded=1,
            exhausted=False,
            masks=[1],
            label=[COP],
            win_time=[0],
        )
    if engine == "auto":
        engine = "python" if g.n <= PYTHON_ENGINE_MAX_N or subset_dominance else "numpy"
    if subset_dominance and engine != "python":
        raise ValueError("subset_dominance is only supported by the python engine")

    dm = distance_matrix(g)
    if engine == "python":
        masks, index, label, win_time, expanded, exhausted = _solve_small(
            g, dm, budget, subset_dominance
        )
    else:
        masks, index, label, win_time, expanded, exhausted = _solve_big(
            g, dm, budget, branch_cap
        )

    if label[0] == COP:
        verdict = Verdict.LOCATABLE
        capture = win_time[0]
    elif exhausted:
        verdict = Verdict.INCONCLUSIVE
        capture = None
    else:
        verdict = Verdict.NON_LOCATABLE
        capture = None
    return SolveResult(
        verdict=verdict,
        capture_time=capture,
        explored=len(masks),
        expanded=expanded,
        exhausted=exhausted,
        masks=masks,
        label=label,
        win_time=win_time,
        _index=index,
    )


def extract_cop_strategy(g: Graph, result: SolveResult) -> CopStrategyTree:
    """Turn a Locatable result into a checkable adaptive probing tree.

    At each belief the probe minimizing the worst-case remaining capture
    time is chosen (ties to the lowest vertex); children are keyed by the
    declared distance, with locating answers as leaves.
    """
    if result.verdict is not Verdict.LOCATABLE:
        raise NotLocatable("cop strategy requires a Locatable result")
    if g.n == 1:
        return CopStrategyTree(root=None)
    dm = distance_matrix(g)
    index = result.index()
    label, win_time = result.label, result.win_time

    def build(mask: int) -> CopNode:
        best = None
        for p in range(g.n):
            worst = 0
            good = True
            outcomes = []
            for d in response_distances(g, mask, p, dm):
                out = belief_update(g, mask, p, d, dm)
                outcomes.append(out)
                if out.terminal:
                    continue
                j = index.get(out.successor)
                if j is None or label[j] != COP:
                    good = False
                    break
                worst = max(worst, win_time[j])
            if good and (best is None or 1 + worst < best[0]):
                best = (1 + worst, p, outcomes)
        cost, p, outcomes = best
        children = {}
        for out in outcomes:
            children[out.distance] = None if out.terminal else build(out.successor)
        return CopNode(belief=mask, probe=p, children=children)

    return CopStrategyTree(root=build(g.full_mask))


def extract_robber_certificate(g: Graph, result: SolveResult) -> RobberCertificate:
    """The family of all reachable robber-win beliefs; closed under play by
    construction of the fixed point, so it verifies independently."""
    if result.verdict is not Verdict.NON_LOCATABLE:
        raise NotNonLocatable("robber certificate requires a NonLocatable result")
    family = [m for i, m in enumerate(result.masks) if result.label[i] == ROBBER]
    return RobberCertificate(family=tuple(family))


def adversarial_response(
    g: Graph, L: int, p: int, result: SolveResult | None = None
) -> int:
    """Distance an omniscient robber declares to the probe at p.

    With a solved game, the least distance whose successor is a robber win;
    otherwise (or when every branch loses) a greedy heuristic: keep the
    consistent set large, break ties by the successor's choice variance,
    then by the least distance.
    """
    dm = distance_matrix(g)
    outcomes = [
        belief_update(g, L, p, d, dm) for d in response_distances(g, L, p, dm)
    ]
    if result is not None:
        for out in outcomes:
            if out.terminal:
                continue
            lab = result.label_of(out.successor)
            if lab is not None and lab[0] == "RobberWin":
                return out.distance

    def choice_variance(mask: int) -> int:
        best = 0
        for v in range(g.n):
            row = dm.dist[v]
            best = max(best, len({row[u] for u in bits(mask)}))
        return popcount(mask) - best

    best_out = None
    best_key = None
    for out in outcomes:
        size = popcount(out.consistent)
        key = (size if size >= 2 else 0, choice_variance(out.successor))
        if best_key is None or key > best_key:
            best_out, best_key = out, key
    return best_out.distance
