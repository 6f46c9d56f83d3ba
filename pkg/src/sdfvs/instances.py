"""Problem records and the S-closed-walk test they are validated with."""

from dataclasses import dataclass

from .digraph import Digraph, component_array
from .errors import ContractViolation


def restrict_arcs(g, s_arcs):
    """The pairs of ``s_arcs`` that are still arcs of ``g``."""
    present = g.arc_set()
    return frozenset(a for a in s_arcs if a in present)


def s_walk_components(g, s_arcs):
    """Component ids (by position) of SCCs that contain an S-arc."""
    comp, _ = component_array(g)
    index = {v: i for i, v in enumerate(g.labels)}
    hit = set()
    for u, v in s_arcs:
        iu = index.get(u)
        iv = index.get(v)
        if iu is not None and iv is not None and comp[iu] == comp[iv]:
            hit.add(comp[iu])
    return comp, hit


def has_s_closed_walk(g, s_arcs, through=None):
    """Whether ``g`` has a closed walk using an arc of ``s_arcs``.

    A closed walk through arc ``(u, v)`` exists iff ``u`` and ``v`` share a
    strongly connected component. With ``through`` set, the walk must also
    visit that vertex, i.e. it must be in the same component.
    """
    comp, hit = s_walk_components(g, s_arcs)
    if through is None:
        return bool(hit)
    if through not in g:
        return False
    return comp[g.position(through)] in hit


@dataclass(frozen=True)
class EdgeInstance:
    graph: Digraph
    s_arcs: frozenset
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "s_arcs", frozenset(self.s_arcs))
        if self.budget < 0:
            raise ContractViolation("budget must be non-negative")
        if not self.s_arcs <= self.graph.arc_set():
            raise ContractViolation("S must be a subset of the arcs")


@dataclass(frozen=True)
class VertexInstance:
    graph: Digraph
    s_vertices: frozenset
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "s_vertices", frozenset(self.s_vertices))
        if self.budget < 0:
            raise ContractViolation("budget must be non-negative")
        if not self.s_vertices <= self.graph.vertices:
            raise ContractViolation("S must be a subset of the vertices")


@dataclass(frozen=True)
class CompressionInstance:
    """``(G, S, T, k)``: find ``X`` disjoint from T with ``|X| <= k`` solving G.

    ``G - T`` must already be free of S-closed walks.
    """

    graph: Digraph
    s_arcs: frozenset
    old_solution: frozenset
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "s_arcs", frozenset(self.s_arcs))
        object.__setattr__(self, "old_solution", frozenset(self.old_solution))
        g = self.graph
        if self.budget < 0:
            raise ContractViolation("budget must be non-negative")
        if not self.s_arcs <= g.arc_set():
            raise ContractViolation("S must be a subset of the arcs")
        if not self.old_solution <= g.vertices:
            raise ContractViolation("T must be a subset of the vertices")
        if self.old_solution & g.undeletable:
            raise ContractViolation("T must avoid undeletable vertices")
        rest = g.induced(g.vertices - self.old_solution)
        if has_s_closed_walk(rest, restrict_arcs(rest, self.s_arcs)):
            raise ContractViolation("G - T still has an S-closed walk")

    @classmethod
    def trusted(cls, graph, s_arcs, old_solution, budget):
        """Build without re-validating (internal use on derived instances)."""
        inst = object.__new__(cls)
        object.__setattr__(inst, "graph", graph)
        object.__setattr__(inst, "s_arcs", frozenset(s_arcs))
        object.__setattr__(inst, "old_solution", frozenset(old_solution))
        object.__setattr__(inst, "budget", budget)
        return inst

    @property
    def terminals(self):
        return self.old_solution


@dataclass(frozen=True)
class Solution:
    deleted: frozenset
    certified: bool = False
