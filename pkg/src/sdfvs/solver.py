"""Iterative compression and the bounded search tree for Subset-DFVS.

The top level grows the graph one vertex at a time and, whenever the current
solution breaks, compresses ``T = X + {v}`` (size ``k+1``) to size ``k``.
Compression guesses the part of the new solution inside T, leaving a disjoint
compression instance. Each disjoint instance is solved by a search tree whose
nodes (1) contract a covering set ``Z`` of candidate shadow vertices with the
torso, then (2) branch on a critical vertex or on an important separator.
"""

import itertools
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .sampling import SamplingConfig, iter_covering
from .digraph import Digraph, reach_backward
from .errors import ContractViolation, InseparableError, InternalConsistencyError, SearchLimitExceeded
from .instances import (CompressionInstance, EdgeInstance, Solution, VertexInstance,
                        has_s_closed_walk, restrict_arcs, s_walk_components)
from .separators import enumerate_important_separators
from .torso import reduce_instance, torso

__all__ = [
    "EdgeInstance", "VertexInstance", "CompressionInstance", "Solution", "EndpointSets",
    "AuxCriticalGraph", "AugmentedGraph", "SolverConfig", "SolverStats", "Solver",
    "has_s_closed_walk", "verify_solution", "vertex_to_edge", "edge_to_vertex",
    "preprocess", "trim", "endpoint_sets", "aux_critical_graph", "critical_vertex_superset",
    "augmented_graph", "branch", "solve_disjoint_compression", "solve_compression", "solve",
]


# -- predicates and reductions ------------------------------------------------


def verify_solution(inst, xs):
    """Whether ``xs`` is a valid answer for an edge or compression instance."""
    xs = frozenset(xs)
    g = inst.graph
    if len(xs) > inst.budget or not xs <= g.vertices or xs & g.undeletable:
        return False
    if isinstance(inst, CompressionInstance) and xs & inst.old_solution:
        return False
    rest = g.induced(g.vertices - xs)
    return not has_s_closed_walk(rest, restrict_arcs(rest, inst.s_arcs))


def vertex_to_edge(inst):
    """S becomes every arc with an endpoint in the vertex set S."""
    sv = inst.s_vertices
    s_arcs = frozenset(a for a in inst.graph.arcs if a[0] in sv or a[1] in sv)
    return EdgeInstance(inst.graph, s_arcs, inst.budget)


def edge_to_vertex(inst, strict=False):
    """Subdivide S-arcs (every arc with ``strict``) through fresh vertices.

    The new vertices are undeletable: deleting one can always be traded for
    deleting a deletable endpoint of its arc, and when both endpoints are
    undeletable the arc must not be cuttable at all.
    """
    g = inst.graph
    fresh = g.fresh_label()
    arcs = []
    new = []
    s_vertices = []
    for u, v in g.arcs:
        is_s = (u, v) in inst.s_arcs
        if is_s or strict:
            x = fresh
            fresh += 1
            new.append(x)
            arcs += [(u, x), (x, v)]
            if is_s:
                s_vertices.append(x)
        else:
            arcs.append((u, v))
    graph = Digraph(g.labels + tuple(new), arcs, g.undeletable | frozenset(new))
    return VertexInstance(graph, frozenset(s_vertices), inst.budget)


@dataclass(frozen=True)
class EndpointSets:
    s_minus: frozenset
    s_plus: frozenset


def endpoint_sets(s_arcs):
    return EndpointSets(frozenset(u for u, _ in s_arcs), frozenset(v for _, v in s_arcs))


def preprocess(inst):
    """Drop T-vertices that cannot reach a tail of an S-arc (repeatedly)."""
    g, s_arcs, ts = inst.graph, inst.s_arcs, inst.old_solution
    while True:
        tails = endpoint_sets(s_arcs).s_minus
        reaching = reach_backward(g, tails) if tails else frozenset()
        drop = ts - reaching
        if not drop:
            break
        g = g.induced(g.vertices - drop)
        ts = ts - drop
        s_arcs = frozenset(a for a in s_arcs if a[0] not in drop and a[1] not in drop)
    if g is inst.graph:
        return inst
    return CompressionInstance.trusted(g, s_arcs, ts, inst.budget)


def trim(inst):
    """Keep only vertices whose strong component contains an S-arc.

    Other vertices lie on no S-closed walk, so removing them (even
    undeletable ones) changes neither the answer nor the valid solutions
    inside the kept part.
    """
    g = inst.graph
    comp, hit = s_walk_components(g, inst.s_arcs)
    labels = g.labels
    keep = frozenset(labels[i] for i, c in enumerate(comp) if c in hit)
    if len(keep) == g.n:
        return inst
    s_arcs = frozenset(a for a in inst.s_arcs if a[0] in keep and a[1] in keep)
    return CompressionInstance.trusted(g.induced(keep), s_arcs, inst.old_solution & keep, inst.budget)


# -- critical vertices and branching ---------------------------------------


@dataclass(frozen=True)
class AuxCriticalGraph:
    graph: Digraph
    source: int
    sink: int
    back: dict  # aux label -> (original vertex, "in" | "out")


def aux_critical_graph(g, s_arcs, t0):
    """Split graph in which traversing an S-arc from T0 means reaching ``sink``."""
    labels = g.labels
    pos = {v: i for i, v in enumerate(labels)}
    n = len(labels)
    s, t = 2 * n, 2 * n + 1
    arcs = []
    for u, v in g.arcs:
        if (u, v) in s_arcs:
            arcs.append((2 * pos[u] + 1, 2 * pos[v]))
        else:
            arcs.append((2 * pos[u] + 1, 2 * pos[v] + 1))
    for i in range(n):
        arcs.append((2 * i, 2 * i + 1))
        arcs.append((2 * i, t))
    for v in sorted(t0):
        arcs.append((s, 2 * pos[v] + 1))
    back = {}
    for i, v in enumerate(labels):
        back[2 * i] = (v, "in")
        back[2 * i + 1] = (v, "out")
    return AuxCriticalGraph(Digraph(range(2 * n + 2), arcs, (s, t)), s, t, back)


def critical_vertex_superset(g, s_arcs, t0, k):
    """Superset of the k-critical vertices with respect to ``t0``.

    Collects the in-copies lying on important s-t separators of size at most
    ``2k`` in the split graph; at most ``2k * 4**(2k)`` vertices.
    """
    t0 = frozenset(t0)
    if not t0:
        raise ContractViolation("T0 must be nonempty")
    s_arcs = frozenset(s_arcs)
    if k <= 0 or not s_arcs:
        return frozenset()
    aux = aux_critical_graph(g, s_arcs, t0)
    try:
        seps = enumerate_important_separators(aux.graph, {aux.source}, {aux.sink}, 2 * k)
    except InseparableError:
        return frozenset()
    out = set()
    for sep in seps:
        for x in sep.vertices:
            v, side = aux.back[x]
            if side == "in":
                out.add(v)
    return frozenset(out)


@dataclass(frozen=True)
class AugmentedGraph:
    graph: Digraph
    sink: int


def augmented_graph(g, s_arcs):
    """``g`` plus an undeletable sink fed by every tail of an S-arc."""
    t = g.fresh_label()
    tails = sorted(endpoint_sets(s_arcs).s_minus)
    graph = Digraph(g.labels + (t,), list(g.arcs) + [(u, t) for u in tails],
                    g.undeletable | {t})
    return AugmentedGraph(graph, t)


def _nonempty_subsets(ts):
    ts = sorted(ts)
    for r in range(1, len(ts) + 1):
        yield from (frozenset(c) for c in itertools.combinations(ts, r))


def branch(inst, F):
    """Children ``(instance, deleted)`` of a search node.

    Critical-vertex children come first (increasing label), then separator
    children ordered by size and then lexicographically. Duplicate deletion
    sets are dropped.
    """
    g, s_arcs, ts, k = inst.graph, inst.s_arcs, inst.old_solution, inst.budget
    out = []
    seen = set()

    def add(deleted):
        if deleted in seen or len(deleted) > k:
            return
        seen.add(deleted)
        rest = g.delete_vertices(deleted)
        child_s = frozenset(a for a in s_arcs if a[0] not in deleted and a[1] not in deleted)
        out.append((CompressionInstance.trusted(rest, child_s, ts, k - len(deleted)), deleted))

    for v in sorted(F):
        if v in g and v not in ts and v not in g.undeletable:
            add(frozenset((v,)))
    if not ts or k <= 0:
        return out
    aug = augmented_graph(g, s_arcs)
    seps = []
    for t0 in _nonempty_subsets(ts):
        target = {aug.sink} | (ts - t0)
        try:
            seps.extend(enumerate_important_separators(aug.graph, t0, target, k))
        except InseparableError:
            continue
    for sep in sorted(seps, key=lambda s: s.key()):
        if sep.vertices:
            add(sep.vertices)
    return out


# -- search ----------------------------------------------------------------


@dataclass(frozen=True)
class SolverConfig:
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    max_nodes: int = None
    timeout: float = None
    retry: bool = True  # monte-carlo: one more pass with doubled trials after NO
    memo: bool = True
    lower_bound: bool = True
    check: bool = True


@dataclass
class SolverStats:
    nodes: int = 0
    covering_sets: int = 0
    memo_hits: int = 0
    pruned: int = 0
    passes: int = 0


def _packing_bound(g, s_arcs, fixed, limit):
    """Greedy count of vertex-disjoint S-closed walks, stopping above ``limit``.

    Each such walk needs its own deleted vertex. Returns ``limit + 1`` when an
    S-closed walk uses only ``fixed`` (undeletable) vertices.
    """
    inner = g.induced(fixed)
    if has_s_closed_walk(inner, restrict_arcs(inner, s_arcs)):
        return limit + 1
    count = 0
    removed = set()
    while count <= limit:
        best = None
        for u, v in sorted(s_arcs):
            if u in removed or v in removed:
                continue
            path = _shortest_path(g, v, u, removed)
            if path is not None and (best is None or len(path) < len(best)):
                best = path
        if best is None:
            break
        removed.update(best)
        count += 1
    return count


def _shortest_path(g, src, dst, removed):
    if src == dst:
        return [src]
    parent = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.successors(x):
                if y in parent or y in removed:
                    continue
                parent[y] = x
                if y == dst:
                    path = [y]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path
                nxt.append(y)
        frontier = nxt
    return None


def _instance_key(inst):
    g = inst.graph
    return (g.labels, tuple(sorted(g.arcs)), tuple(sorted(inst.s_arcs)),
            tuple(sorted(inst.old_solution)))


class Solver:
    """Search driver holding configuration, limits, memo tables and statistics."""

    def __init__(self, config=None):
        self.config = config or SolverConfig()
        self.stats = SolverStats()
        self._deadline = None
        self._no_memo = {}

    # limits

    def _start(self):
        t = self.config.timeout
        self._deadline = time.monotonic() + t if t is not None else None

    def _tick(self):
        self.stats.nodes += 1
        limit = self.config.max_nodes
        if limit is not None and self.stats.nodes > limit:
            raise SearchLimitExceeded(f"node limit {limit} reached")
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise SearchLimitExceeded("timeout reached")

    def _node_sampling(self):
        cfg = self.config.sampling
        state = np.random.SeedSequence([cfg.seed & (2 ** 64 - 1), self.stats.nodes])
        return replace(cfg, seed=int(state.generate_state(1, np.uint64)[0]))

    # disjoint compression

    def solve_disjoint_compression(self, inst):
        """A solution disjoint from T of size at most k, or ``None``."""
        self._tick()
        if not has_s_closed_walk(inst.graph, inst.s_arcs):
            return frozenset()
        if inst.budget == 0:
            return None
        work = trim(preprocess(inst))
        if not has_s_closed_walk(work.graph, work.s_arcs):
            return frozenset()
        k = work.budget
        key = None
        if self.config.memo:
            key = _instance_key(work)
            if self._no_memo.get(key, -1) >= k:
                self.stats.memo_hits += 1
                return None
        if self.config.lower_bound:
            fixed = work.old_solution | work.graph.undeletable
            if _packing_bound(work.graph, work.s_arcs, fixed, k) > k:
                self.stats.pruned += 1
                return None
        found = self._search(work)
        if found is None:
            if key is not None:
                self._no_memo[key] = max(self._no_memo.get(key, -1), k)
            return None
        if self.config.check and not verify_solution(inst, found):
            raise InternalConsistencyError(f"lifted solution {sorted(found)} does not verify")
        return found

    def _search(self, inst):
        k = inst.budget
        ts = inst.old_solution
        tried = set()
        for zs, _ in iter_covering(inst.graph, ts, k, self._node_sampling()):
            self.stats.covering_sets += 1
            red = trim(preprocess(reduce_instance(inst, zs)))
            if not has_s_closed_walk(red.graph, red.s_arcs):
                sol = frozenset()
                if verify_solution(inst, sol):
                    return sol
                continue
            rkey = _instance_key(red)
            if rkey in tried:
                continue
            tried.add(rkey)
            F = set()
            for t0 in _nonempty_subsets(red.old_solution):
                F |= critical_vertex_superset(red.graph, red.s_arcs, t0, k)
            for child, deleted in branch(red, F):
                sol = self.solve_disjoint_compression(child)
                if sol is not None:
                    return sol | deleted
        return None

    # compression and iterative compression

    def solve_compression(self, inst):
        """Compress a solution T of ``G`` to one of size at most k, or ``None``."""
        g, s_arcs, ts, k = inst.graph, inst.s_arcs, inst.old_solution, inst.budget
        if len(ts) <= k:
            return ts
        for size in range(min(k, len(ts)), -1, -1):
            for xs in itertools.combinations(sorted(ts), size):
                xs = frozenset(xs)
                rest = g.delete_vertices(xs)
                child_s = frozenset(a for a in s_arcs if a[0] not in xs and a[1] not in xs)
                child = CompressionInstance.trusted(rest, child_s, ts - xs, k - size)
                sol = self.solve_disjoint_compression(child)
                if sol is not None:
                    return sol | xs
        return None

    def _solve_once(self, g, s_arcs, k):
        xs = frozenset()
        order = g.labels
        for i, v in enumerate(order):
            gi = g.induced(order[:i + 1])
            si = restrict_arcs(gi, s_arcs)
            rest = gi.induced(gi.vertices - xs)
            if not has_s_closed_walk(rest, restrict_arcs(rest, si)):
                continue
            ts = xs | {v}
            if len(ts) <= k:
                xs = ts
                continue
            inst = CompressionInstance.trusted(gi, si, ts, k)
            xs = self.solve_compression(inst)
            if xs is None:
                return None
        return xs

    def solve(self, inst):
        """Certified :class:`Solution` of an edge instance, or ``None`` for NO."""
        self._start()
        g, s_arcs, k = inst.graph, inst.s_arcs, inst.budget
        und = g.undeletable
        if und:
            # Undeletable vertices only route walks; contract them away.
            fixed = g.induced(und)
            if has_s_closed_walk(fixed, restrict_arcs(fixed, s_arcs)):
                return None
            res = torso(g, g.vertices - und, s_arcs)
            g, s_arcs = res.graph, res.s_arcs
        passes = 1
        if self.config.retry and self.config.sampling.mode == "mc":
            passes = 2
        base = self.config
        found = None
        for p in range(passes):
            self.stats.passes += 1
            if p:
                cfg = base.sampling
                self.config = replace(base, sampling=replace(cfg, multiplier=2 * cfg.multiplier))
                self._no_memo.clear()
            found = self._solve_once(g, s_arcs, k)
            if found is not None:
                break
        self.config = base
        if found is None:
            return None
        if not verify_solution(inst, found):
            raise InternalConsistencyError(f"solution {sorted(found)} does not verify on the input")
        return Solution(found, True)


def solve_disjoint_compression(inst, config=None):
    return Solver(config).solve_disjoint_compression(inst)


def solve_compression(inst, config=None):
    return Solver(config).solve_compression(inst)


def solve(inst, config=None):
    return Solver(config).solve(inst)
