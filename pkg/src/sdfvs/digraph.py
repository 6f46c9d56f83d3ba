"""Immutable directed multigraphs with stable vertex labels.

Vertices are non-negative integers that keep their identity across every
derived graph (reversal, deletion, torso), so a deletion set computed deep in
the search tree names vertices of the input graph directly. Internally each
graph also numbers its vertices ``0..n-1`` in label order ("positions"); the
kernels in :mod:`sdfvs.kernels` work on positions.
"""

from array import array
from collections import Counter
from dataclasses import dataclass

from . import kernels
from .errors import ContractViolation, GraphError


class Digraph:
    """A directed multigraph with an undeletable vertex set.

    Parallel arcs and self-loops are allowed. Instances never change after
    construction; every transformation returns a new graph.
    """

    __slots__ = ("_labels", "_index", "_arcs", "_undeletable", "_csr",
                 "_vset", "_succ", "_pred")

    def __init__(self, vertices, arcs, undeletable=()):
        labels = tuple(sorted(set(vertices)))
        if labels and labels[0] < 0:
            raise GraphError(f"negative vertex id {labels[0]}")
        index = {v: i for i, v in enumerate(labels)}
        checked = []
        for arc in arcs:
            u, v = arc
            if u not in index or v not in index:
                raise GraphError(f"arc {(u, v)} has an endpoint outside the vertex set")
            checked.append((u, v))
        undeletable = frozenset(undeletable)
        if not undeletable <= index.keys():
            raise GraphError("undeletable vertices must belong to the graph")
        self._labels = labels
        self._index = index
        self._arcs = tuple(checked)
        self._undeletable = undeletable
        self._csr = None
        self._vset = None
        self._succ = None
        self._pred = None

    @classmethod
    def _trusted(cls, labels, index, arcs, undeletable, csr=None):
        g = cls.__new__(cls)
        g._labels = labels
        g._index = index
        g._arcs = arcs
        g._undeletable = undeletable
        g._csr = csr
        g._vset = None
        g._succ = None
        g._pred = None
        return g

    # -- basic views ---------------------------------------------------

    @property
    def labels(self):
        """Vertex labels in increasing order."""
        return self._labels

    @property
    def vertices(self):
        if self._vset is None:
            self._vset = frozenset(self._labels)
        return self._vset

    @property
    def arcs(self):
        return self._arcs

    @property
    def undeletable(self):
        return self._undeletable

    @property
    def n(self):
        return len(self._labels)

    @property
    def m(self):
        return len(self._arcs)

    def __len__(self):
        return len(self._labels)

    def __contains__(self, v):
        return v in self._index

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self._labels == other._labels
                and self._undeletable == other._undeletable
                and Counter(self._arcs) == Counter(other._arcs))

    __hash__ = None

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m}, undeletable={sorted(self._undeletable)})"

    def position(self, v):
        return self._index[v]

    def successors(self, v):
        if self._succ is None:
            succ = {u: [] for u in self._labels}
            for a, b in self._arcs:
                succ[a].append(b)
            self._succ = succ
        return self._succ[v]

    def predecessors(self, v):
        if self._pred is None:
            pred = {u: [] for u in self._labels}
            for a, b in self._arcs:
                pred[b].append(a)
            self._pred = pred
        return self._pred[v]

    def arc_set(self):
        return frozenset(self._arcs)

    # -- kernel plumbing -----------------------------------------------

    def csr(self):
        """``(out_ptr, out_head, in_ptr, in_tail, in_arc)`` over positions."""
        if self._csr is None:
            n = len(self._labels)
            index = self._index
            tails = [index[u] for u, _ in self._arcs]
            heads = [index[v] for _, v in self._arcs]
            out_ptr = array("i", [0] * (n + 1))
            in_ptr = array("i", [0] * (n + 1))
            for t in tails:
                out_ptr[t + 1] += 1
            for h in heads:
                in_ptr[h + 1] += 1
            for i in range(n):
                out_ptr[i + 1] += out_ptr[i]
                in_ptr[i + 1] += in_ptr[i]
            m = len(tails)
            out_head = array("i", [0] * m)
            in_tail = array("i", [0] * m)
            in_arc = array("i", [0] * m)
            fill = list(out_ptr[:n])
            outpos = [0] * m
            for e in range(m):
                t = tails[e]
                p = fill[t]
                fill[t] = p + 1
                out_head[p] = heads[e]
                outpos[e] = p
            fill = list(in_ptr[:n])
            for e in range(m):
                h = heads[e]
                p = fill[h]
                fill[h] = p + 1
                in_tail[p] = tails[e]
                in_arc[p] = outpos[e]
            self._csr = (out_ptr, out_head, in_ptr, in_tail, in_arc)
        return self._csr

    def mask(self, vs):
        """Position mask (``bytearray``) of the vertices in ``vs`` present in the graph."""
        out = bytearray(len(self._labels))
        index = self._index
        for v in vs:
            i = index.get(v)
            if i is not None:
                out[i] = 1
        return out

    def positions(self, vs):
        index = self._index
        return [index[v] for v in vs if v in index]

    def labels_of(self, mask):
        labels = self._labels
        return frozenset(labels[i] for i, bit in enumerate(mask) if bit)

    # -- derived graphs ------------------------------------------------

    def reverse(self):
        csr = None
        if self._csr is not None:
            out_ptr, out_head, in_ptr, in_tail, in_arc = self._csr
            # Reversal swaps the roles of the two adjacency arrays; arc ids
            # index the new out-array, which is the old in-array order.
            m = len(out_head)
            inv = array("i", [0] * m)
            for p in range(m):
                inv[in_arc[p]] = p
            csr = (in_ptr, in_tail, out_ptr, out_head, inv)
        return Digraph._trusted(self._labels, self._index,
                                tuple((v, u) for u, v in self._arcs),
                                self._undeletable, csr)

    def delete_vertices(self, xs):
        xs = frozenset(xs)
        bad = xs & self._undeletable
        if bad:
            raise ContractViolation(f"cannot delete undeletable vertices {sorted(bad)}")
        return self.induced(self.vertices - xs)

    def induced(self, keep):
        """Subgraph induced by ``keep`` (undeletable marks are carried over)."""
        keep = frozenset(keep) & self.vertices
        if len(keep) == len(self._labels):
            return self
        labels = tuple(sorted(keep))
        index = {v: i for i, v in enumerate(labels)}
        arcs = tuple((u, v) for u, v in self._arcs if u in index and v in index)
        return Digraph._trusted(labels, index, arcs, self._undeletable & keep)

    def with_undeletable(self, extra):
        """Same graph with ``extra`` vertices added to the undeletable set."""
        extra = frozenset(extra)
        if not extra <= self.vertices:
            raise GraphError("undeletable vertices must belong to the graph")
        if extra <= self._undeletable:
            return self
        return Digraph._trusted(self._labels, self._index, self._arcs,
                                self._undeletable | extra, self._csr)

    def without_undeletable(self):
        if not self._undeletable:
            return self
        return Digraph._trusted(self._labels, self._index, self._arcs,
                                frozenset(), self._csr)

    def fresh_label(self):
        """A label not used by this graph."""
        return self._labels[-1] + 1 if self._labels else 0


@dataclass(frozen=True)
class SccDecomposition:
    """Components in topological order: arcs never go to a lower index."""

    components: tuple
    component_of: dict

    @property
    def last(self):
        return self.components[-1] if self.components else frozenset()


def build(n, arcs, undeletable=(), base=1):
    """Graph on vertices ``base..base+n-1`` (1-based by default, like instance files)."""
    arcs = list(arcs)
    hi = base + n
    for u, v in arcs:
        if not (base <= u < hi and base <= v < hi):
            raise GraphError(f"arc {(u, v)} out of range for n={n}")
    return Digraph(range(base, hi), arcs, undeletable)


def _blocked(g, removed):
    return g.mask(removed) if removed else bytearray(g.n)


def reach_forward(g, xs, removed=()):
    """Vertices reachable from ``xs`` in ``g`` minus ``removed``."""
    removed = frozenset(removed)
    if removed & frozenset(xs):
        raise ContractViolation("sources intersect the removed set")
    out_ptr, out_head = g.csr()[:2]
    seen = kernels.reach(out_ptr, out_head, g.n, g.positions(xs), _blocked(g, removed))
    return g.labels_of(seen)


def reach_backward(g, xs, removed=()):
    """Vertices that can reach ``xs`` in ``g`` minus ``removed``."""
    removed = frozenset(removed)
    if removed & frozenset(xs):
        raise ContractViolation("targets intersect the removed set")
    _, _, in_ptr, in_tail, _ = g.csr()
    seen = kernels.reach(in_ptr, in_tail, g.n, g.positions(xs), _blocked(g, removed))
    return g.labels_of(seen)


def reverse(g):
    return g.reverse()


def delete_vertices(g, xs):
    return g.delete_vertices(xs)


def component_array(g, removed=()):
    """Raw ``(comp, count)`` over positions; blocked positions get ``-1``."""
    out_ptr, out_head = g.csr()[:2]
    return kernels.scc(out_ptr, out_head, g.n, _blocked(g, removed))


def scc(g):
    comp, count = component_array(g)
    groups = [[] for _ in range(count)]
    labels = g.labels
    for i, c in enumerate(comp):
        groups[c].append(labels[i])
    components = tuple(frozenset(c) for c in groups)
    component_of = {labels[i]: c for i, c in enumerate(comp)}
    return SccDecomposition(components, component_of)
