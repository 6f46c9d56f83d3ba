import random

import pytest

from graphs import C2, D4, P4, bidirected_complete, g_of, random_graph
from sdfvs.digraph import Digraph, build
from sdfvs.errors import InseparableError, OracleBudgetError
from sdfvs.instances import EdgeInstance
from sdfvs.oracle import (OracleBudget, brute_force_critical, brute_force_important_separators,
                          brute_force_solve, has_s_walk)


def test_solve_c2_lexicographic():
    assert brute_force_solve(EdgeInstance(g_of(C2), {(1, 2)}, 1)).deleted == {1}


def test_solve_dag_k0():
    g = g_of(P4)
    assert brute_force_solve(EdgeInstance(g, set(g.arcs), 0)).deleted == frozenset()


def test_solve_k4_budget_two_is_no():
    g = bidirected_complete(4)
    assert brute_force_solve(EdgeInstance(g, set(g.arcs), 2)) is None


def test_important_separator_examples():
    assert {s.vertices for s in brute_force_important_separators(g_of(P4), {1}, {4}, 2)} == \
        {frozenset({3})}
    assert {s.vertices for s in brute_force_important_separators(g_of(D4), {1}, {4}, 2)} == \
        {frozenset({2, 3})}
    with pytest.raises(InseparableError):
        brute_force_important_separators(build(2, [(1, 2)]), {1}, {2}, 2)


def test_critical_example():
    g = build(3, [(1, 2), (2, 3), (3, 1)])
    assert brute_force_critical(g, {(2, 3)}, {1}, 1) == {3}
    assert brute_force_critical(g, set(), {1}, 1) == frozenset()
    assert brute_force_critical(g, {(2, 3)}, {1}, 0) == frozenset()


def test_budget_refusal():
    g = build(11, [])
    with pytest.raises(OracleBudgetError):
        brute_force_solve(EdgeInstance(g, set(), 1))
    with pytest.raises(OracleBudgetError):
        brute_force_solve(EdgeInstance(g_of(P4), set(), 1), OracleBudget(max_vertices=3))
    with pytest.raises(ValueError):
        OracleBudget(max_vertices=0)


def _relabel(g, perm):
    return Digraph([perm[v] for v in g.labels], [(perm[u], perm[v]) for u, v in g.arcs],
                   [perm[v] for v in g.undeletable])


def test_relabeling_invariance():
    rng = random.Random(31)
    for _ in range(200):
        n = rng.randint(1, 7)
        g = random_graph(rng, n, rng.randint(0, 2 * n), loops=True, undeletable_rate=0.2)
        s = frozenset(a for a in g.arcs if rng.random() < 0.5)
        k = rng.randint(0, 3)
        images = list(range(1, n + 1))
        rng.shuffle(images)
        perm = dict(zip(range(1, n + 1), images))
        h = _relabel(g, perm)
        hs = frozenset((perm[u], perm[v]) for u, v in s)
        a = brute_force_solve(EdgeInstance(g, s, k))
        b = brute_force_solve(EdgeInstance(h, hs, k))
        assert (a is None) == (b is None)
        if a is not None:
            assert len(a.deleted) == len(b.deleted)
        assert has_s_walk(g, s) == has_s_walk(h, hs)
        if n >= 2:
            x, y = rng.sample(range(1, n + 1), 2)
            try:
                sa = {frozenset(perm[v] for v in sep.vertices)
                      for sep in brute_force_important_separators(g, {x}, {y}, 2)}
            except InseparableError:
                sa = None
            try:
                sb = {sep.vertices
                      for sep in brute_force_important_separators(h, {perm[x]}, {perm[y]}, 2)}
            except InseparableError:
                sb = None
            assert sa == sb
