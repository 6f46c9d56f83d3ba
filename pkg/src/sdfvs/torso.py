"""Torso: contract a graph onto a vertex subset, keeping track of S-arcs."""

from dataclasses import dataclass

from .digraph import Digraph
from .errors import ContractViolation
from .instances import CompressionInstance


@dataclass(frozen=True)
class TorsoResult:
    graph: Digraph
    s_arcs: frozenset


def torso(g, keep, s_arcs):
    """Contract ``g`` onto ``keep``.

    ``(a, b)`` is an arc of the result iff some a->b walk has all internal
    vertices outside ``keep``; it is an S-arc iff some such walk uses an arc of
    ``s_arcs``. Arcs of ``g[keep]`` are copied with their multiplicity.
    """
    keep = frozenset(keep)
    s_arcs = frozenset(s_arcs)
    if not keep <= g.vertices:
        raise ContractViolation("torso vertex set must be a subset of the graph")
    if len(keep) == g.n:
        return TorsoResult(g, s_arcs & g.arc_set())
    outside = g.vertices - keep
    arcs = [(u, v) for u, v in g.arcs if u in keep and v in keep]
    new_s = {a for a in arcs if a in s_arcs}
    present = set(arcs)
    extra = {}
    succ = g.successors
    for a in sorted(keep):
        # state (vertex, used an S-arc); the flagged state dominates the plain one
        seen = {}
        stack = []
        for x in succ(a):
            if x in outside:
                f = (a, x) in s_arcs
                if seen.get(x) is None or (f and not seen[x]):
                    seen[x] = f
                    stack.append((x, f))
        while stack:
            x, f = stack.pop()
            if seen[x] != f:
                continue
            for y in succ(x):
                fy = f or (x, y) in s_arcs
                if y in keep:
                    extra[(a, y)] = extra.get((a, y), False) or fy
                elif seen.get(y) is None or (fy and not seen[y]):
                    seen[y] = fy
                    stack.append((y, fy))
    for arc, flag in sorted(extra.items()):
        if arc not in present:
            arcs.append(arc)
            present.add(arc)
        if flag:
            new_s.add(arc)
    labels = tuple(sorted(keep))
    index = {v: i for i, v in enumerate(labels)}
    graph = Digraph._trusted(labels, index, tuple(arcs), g.undeletable & keep)
    return TorsoResult(graph, frozenset(new_s))


def reduce_instance(inst, zs):
    """The instance with ``zs`` contracted away (torso onto the rest)."""
    zs = frozenset(zs)
    if zs & inst.old_solution:
        raise ContractViolation("Z must avoid the terminals")
    if not zs:
        return inst
    res = torso(inst.graph, inst.graph.vertices - zs, inst.s_arcs)
    return CompressionInstance.trusted(res.graph, res.s_arcs, inst.old_solution, inst.budget)
