"""Checkable win certificates for both players, with independent verifiers.

A cop certificate is an adaptive probing tree: children keyed by the
declared distance, leaves exactly where the answer pins the robber to one
vertex.  A robber certificate is a family of belief sets closed under play:
whatever the probe, some declarable distance keeps at least two candidates
and the post-move belief covers some family member again.  Verification
recomputes everything from the distance matrix; it never consults the
solver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import (
    Graph,
    bits,
    closed_neighborhood,
    distance_matrix,
    mask_of,
    popcount,
)

MAX_TREE_DEPTH = 10_000


class MalformedTree(ValueError):
    """Structurally broken cop strategy tree."""


class EmptyFamily(ValueError):
    """A robber certificate must contain at least one belief set."""


@dataclass
class CopNode:
    belief: int
    probe: int
    children: dict[int, "CopNode | None"]  # None = locating answer (leaf)


@dataclass
class CopStrategyTree:
    root: CopNode | None  # None: single-vertex graph, nothing to probe


@dataclass(frozen=True)
class RobberCertificate:
    family: tuple[int, ...]

    def relabel(self, mapping) -> "RobberCertificate":
        """Map canonical vertex labels onto a host graph's labels."""
        return RobberCertificate(
            tuple(mask_of(mapping[v] for v in bits(m)) for m in self.family)
        )


@dataclass(frozen=True)
class CopVerification:
    valid: bool
    depth: int | None = None
    path: tuple[int, ...] | None = None  # distance labels from the root
    reason: str | None = None


@dataclass(frozen=True)
class RobberVerification:
    valid: bool
    member: int | None = None
    probe: int | None = None
    reason: str | None = None


def verify_cop_strategy(g: Graph, tree: CopStrategyTree) -> CopVerification:
    """Check a probing tree bottom to top against the game rules.

    Valid(depth) certifies the cop wins within ``depth`` probes from full
    uncertainty.  The tree must start at the all-vertices belief, cover
    exactly the declarable distances at every node, put leaves exactly on
    locating answers, and step each non-locating answer to N[C] \\ {probe}.
    """
    dm = distance_matrix(g)
    full = g.full_mask
    if tree.root is None:
        if g.n == 1:
            return CopVerification(valid=True, depth=0)
        return CopVerification(
            valid=False, path=(), reason="empty tree but initial belief is not a singleton"
        )

    def check(node, belief: int, path: tuple[int, ...]):
        if len(path) > MAX_TREE_DEPTH:
            raise MalformedTree("tree deeper than the structural limit")
        if not isinstance(node, CopNode):
            raise MalformedTree(f"expected a node at path {path}")
        if not isinstance(node.probe, int) or not 0 <= node.probe < g.n:
            raise MalformedTree(f"probe {node.probe!r} out of range at path {path}")
        if node.belief != belief:
            return CopVerification(
                valid=False, path=path, reason="node belief does not match the play"
            )
        spheres = dm.sphere_masks(node.probe)
        reachable = {d for d, s in enumerate(spheres) if belief & s}
        declared = set(node.children)
        if declared != reachable:
            missing = sorted(reachable - declared)
            extra = sorted(declared - reachable)
            return CopVerification(
                valid=False,
                path=path,
                reason=f"distance branches mismatch (missing {missing}, extra {extra})",
            )
        depth = 1
        for d in sorted(node.children):
            C = belief & spheres[d]
            child = node.children[d]
            if popcount(C) == 1:
                if child is not None:
                    return CopVerification(
                        valid=False,
                        path=path + (d,),
                        reason="locating answer must be a leaf",
                    )
                continue
            if child is None:
                return CopVerification(
                    valid=False,
                    path=path + (d,),
                    reason="non-locating answer cannot be a leaf",
                )
            M = closed_neighborhood(g, C) & ~(1 << node.probe)
            sub = check(child, M, path + (d,))
            if isinstance(sub, CopVerification):
                return sub
            depth = max(depth, 1 + sub)
        return depth

    out = check(tree.root, full, ())
    if isinstance(out, CopVerification):
        return out
    return CopVerification(valid=True, depth=out)


def verify_robber_certificate(g: Graph, cert: RobberCertificate) -> RobberVerification:
    """Check the closed-family evasion invariant member by member.

    For every member A and probe p there must be a distance whose consistent
    set keeps two or more candidates and whose post-move belief contains
    some family member (superset matching).  A Valid certificate witnesses
    non-locatability of g: the full-uncertainty start contains any member.
    """
    if not cert.family:
        raise EmptyFamily("certificate has no members")
    dm = distance_matrix(g)
    members = set(cert.family)
    for A in cert.family:
        if popcount(A) < 2:
            return RobberVerification(
                valid=False, member=A, reason="member smaller than two vertices"
            )
        if A & ~g.full_mask:
            return RobberVerification(
                valid=False, member=A, reason="member is not a vertex subset"
            )
        for p in range(g.n):
            notp = ~(1 << p)
            ok = False
            for sphere in dm.sphere_masks(p):
                C = A & sphere
                if not C or C & (C - 1) == 0:
                    continue
                M = closed_neighborhood(g, C) & notp
                if M in members or any(B & ~M == 0 for B in cert.family):
                    ok = True
                    break
            if not ok:
                return RobberVerification(
                    valid=False,
                    member=A,
                    probe=p,
                    reason="no surviving answer reaches a superset of a member",
                )
    return RobberVerification(valid=True)


def paper_certificate(name: str) -> RobberCertificate:
    """Hand-transcribed evasion families on the canonical labelings.

    double_net: the central triangle T, the three sets T_x (the two other
    corners plus their leaves), and the six sets T_{x,y} (everything except
    corner y and the leaves of corner x).  k33_minus: all one-vertex
    deletions plus the deletion of the distance-3 pair {0, 3}.
    """
    if name == "double_net":
        corners = (0, 1, 2)
        leaves = {0: (3, 4), 1: (5, 6), 2: (7, 8)}
        everything = set(range(9))
        family = [mask_of(corners)]
        for x in corners:
            rest = [c for c in corners if c != x]
            family.append(mask_of(rest + [l for c in rest for l in leaves[c]]))
        for x in corners:
            for y in corners:
                if x == y:
                    continue
                family.append(mask_of(everything - {y} - set(leaves[x])))
        return RobberCertificate(tuple(family))
    if name == "k33_minus":
        everything = set(range(6))
        family = [mask_of(everything - {z}) for z in range(6)]
        family.append(mask_of(everything - {0, 3}))
        return RobberCertificate(tuple(family))
    raise ValueError(f"no hard-coded certificate named {name!r}")


# -- JSON wire format ---------------------------------------------------------
#
# robber: {"type": "robber", "family": [[ints]]}
# cop:    {"type": "cop", "root": {"belief": [ints], "probe": int,
#          "children": {"<d>": node or "LEAF"}}}  (root null on one vertex)

def _node_to_json(node: CopNode) -> dict:
    return {
        "belief": sorted(bits(node.belief)),
        "probe": node.probe,
        "children": {
            str(d): ("LEAF" if child is None else _node_to_json(child))
            for d, child in sorted(node.children.items())
        },
    }


def _node_from_json(obj) -> CopNode:
    try:
        belief = mask_of(obj["belief"])
        probe = obj["probe"]
        children = {}
        for key, child in obj["children"].items():
            children[int(key)] = None if child == "LEAF" else _node_from_json(child)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedTree(f"bad cop tree node: {exc}") from exc
    return CopNode(belief=belief, probe=probe, children=children)


def certificate_to_json(cert) -> str:
    if isinstance(cert, RobberCertificate):
        doc = {
            "type": "robber",
            "family": [sorted(bits(m)) for m in cert.family],
        }
    elif isinstance(cert, CopStrategyTree):
        doc = {
            "type": "cop",
            "root": None if cert.root is None else _node_to_json(cert.root),
        }
    else:
        raise TypeError(f"not a certificate: {cert!r}")
    return json.dumps(doc, indent=2) + "\n"


def certificate_from_json(text: str):
    doc = json.loads(text)
    kind = doc.get("type")
    if kind == "robber":
        return RobberCertificate(tuple(mask_of(m) for m in doc["family"]))
    if kind == "cop":
        root = doc.get("root")
        return CopStrategyTree(root=None if root is None else _node_from_json(root))
    raise ValueError(f"unknown certificate type {kind!r}")
