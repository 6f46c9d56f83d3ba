"""Brute-force reference implementations, written straight from the definitions.

Nothing here uses the flow kernels, the separator enumeration or the solver;
reachability is recomputed with a plain BFS so that the oracle can serve as
independent ground truth in tests.
"""

import itertools
from collections import deque
from dataclasses import dataclass
from math import comb

from .errors import InseparableError, OracleBudgetError
from .instances import Solution
from .separators import Separator


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 10
    max_subsets: int = 2_000_000

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_subsets < 1:
            raise ValueError("oracle budgets must be positive")


def _admit(g, budget, k):
    budget = budget or OracleBudget()
    if g.n > budget.max_vertices:
        raise OracleBudgetError(f"{g.n} vertices exceeds oracle limit {budget.max_vertices}")
    count = sum(comb(g.n, r) for r in range(min(k, g.n) + 1))
    if count > budget.max_subsets:
        raise OracleBudgetError(f"{count} subsets exceeds oracle limit {budget.max_subsets}")


def _adjacency(g, removed):
    adj = {v: [] for v in g.labels if v not in removed}
    for u, v in g.arcs:
        if u in adj and v in adj:
            adj[u].append(v)
    return adj


def _bfs(adj, sources):
    seen = set(s for s in sources if s in adj)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def has_s_walk(g, s_arcs, removed=frozenset()):
    """S-closed walk test: some surviving S-arc (u, v) with v reaching u."""
    adj = _adjacency(g, removed)
    for u, v in s_arcs:
        if u in adj and v in adj and u in _bfs(adj, [v]):
            return True
    return False


def brute_force_solve(inst, budget=None):
    """Smallest solution of size at most k (lexicographically least), or ``None``."""
    g = inst.graph
    _admit(g, budget, inst.budget)
    pool = sorted(g.vertices - g.undeletable)
    for r in range(min(inst.budget, len(pool)) + 1):
        for xs in itertools.combinations(pool, r):
            if not has_s_walk(g, inst.s_arcs, frozenset(xs)):
                return Solution(frozenset(xs), True)
    return None


def _reach(g, xs, removed):
    return frozenset(_bfs(_adjacency(g, removed), xs))


def brute_force_important_separators(g, xs, ys, k, budget=None):
    """Important X-Y separators of size at most k, from the definition."""
    xs = frozenset(xs)
    ys = frozenset(ys)
    pool = sorted(g.vertices - xs - ys - g.undeletable)
    _admit(g, budget, len(pool))
    if _reach(g, xs, frozenset(pool)) & ys:
        raise InseparableError("no separator exists")
    # every separator with its reach, by size
    seps = []
    for r in range(len(pool) + 1):
        for ws in itertools.combinations(pool, r):
            ws = frozenset(ws)
            reach = _reach(g, xs, ws)
            if not reach & ys:
                seps.append((ws, reach))
    sep_set = {ws for ws, _ in seps}
    out = set()
    for ws, reach in seps:
        if len(ws) > k:
            continue
        if any(ws - {w} in sep_set for w in ws):
            continue  # not minimal
        if any(len(w2) <= len(ws) and reach < r2 for w2, r2 in seps):
            continue  # dominated
        out.add(Separator(ws, xs, ys))
    return out


def brute_force_critical(g, s_arcs, t0, k, budget=None):
    """Heads of S-arcs that are k-critical with respect to ``t0``.

    ``v`` qualifies when some ``W`` avoiding T0 with ``|W| <= k`` contains
    ``v``, leaves the tail ``u`` of an S-arc ``(u, v)`` reachable from T0, and
    lets no S-arc be traversed from T0 (every reachable tail has its head in W).
    """
    t0 = frozenset(t0)
    pool = sorted(g.vertices - t0)
    _admit(g, budget, k)
    s_arcs = frozenset(s_arcs)
    out = set()
    for r in range(1, min(k, len(pool)) + 1):
        for ws in itertools.combinations(pool, r):
            ws = frozenset(ws)
            reach = _reach(g, t0, ws)
            if any(a in reach and b not in ws for a, b in s_arcs):
                continue
            for u, v in s_arcs:
                if u in reach and v in ws:
                    out.add(v)
    return frozenset(out)
