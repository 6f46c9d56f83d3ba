import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphs import digraphs, random_multigraph
from sdfvs.digraph import build, reach_forward
from sdfvs.errors import ContractViolation
from sdfvs.instances import CompressionInstance, has_s_closed_walk, restrict_arcs
from sdfvs.oracle import brute_force_solve
from sdfvs.solver import EdgeInstance
from sdfvs.torso import reduce_instance, torso


def _outside_reach(g, a, keep):
    """Vertices reached from ``a`` by walks whose internal vertices avoid ``keep``."""
    seen = set()
    stack = list(g.successors(a))
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        if x not in keep:
            stack.extend(g.successors(x))
    return seen


def _torso_by_definition(g, keep, s_arcs):
    arcs, s_new = set(), set()
    reach = {v: _outside_reach(g, v, keep) for v in g.labels}
    for a in keep:
        for b in reach[a] & keep:
            arcs.add((a, b))
        for x, y in s_arcs:
            if x != a and (x in keep or x not in reach[a]):
                continue
            for b in keep:
                if y == b or (y not in keep and b in reach[y]):
                    s_new.add((a, b))
    return arcs, s_new


def test_identity_when_keeping_everything():
    g = build(3, [(1, 2), (2, 3), (2, 3)])
    res = torso(g, g.vertices, {(1, 2)})
    assert res.graph == g and res.s_arcs == {(1, 2)}


def test_chain_contraction_marks_s():
    res = torso(build(3, [(1, 2), (2, 3)]), {1, 3}, {(2, 3)})
    assert (1, 3) in res.graph.arcs and (1, 3) in res.s_arcs


def test_two_cycle_becomes_s_loop():
    res = torso(build(2, [(1, 2), (2, 1)]), {1}, {(2, 1)})
    assert res.graph.arcs == ((1, 1),) and res.s_arcs == {(1, 1)}


def test_torso_rejects_foreign_vertices():
    with pytest.raises(ContractViolation):
        torso(build(2, []), {3}, set())


def test_reduce_instance_identity():
    inst = CompressionInstance(build(3, [(3, 1), (1, 2), (2, 3)]), {(1, 2)}, {3}, 1)
    assert reduce_instance(inst, set()) is inst


def test_reduce_instance_chain():
    # t -> 1 -> 2 -> t with t = 3
    inst = CompressionInstance(build(3, [(3, 1), (1, 2), (2, 3)]), {(1, 2)}, {3}, 1)
    red = reduce_instance(inst, {1})
    assert sorted(red.graph.arcs) == [(2, 3), (3, 2)]
    assert (3, 2) in red.s_arcs and (2, 3) not in red.s_arcs
    assert red.old_solution == {3} and red.budget == 1


def test_reduce_instance_rejects_terminals():
    inst = CompressionInstance(build(3, [(3, 1), (1, 2), (2, 3)]), {(1, 2)}, {3}, 1)
    with pytest.raises(ContractViolation):
        reduce_instance(inst, {3})


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=7), st.data())
def test_torso_matches_definition(g, data):
    keep = data.draw(st.sets(st.sampled_from(g.labels), min_size=1))
    s_arcs = data.draw(st.sets(st.sampled_from(g.arcs))) if g.arcs else set()
    res = torso(g, keep, s_arcs)
    arcs, s_new = _torso_by_definition(g, keep, s_arcs)
    assert set(res.graph.arcs) == arcs
    assert res.s_arcs == s_new
    # supergraph of G[C] with multiplicity
    inner = Counter((u, v) for u, v in g.arcs if u in keep and v in keep)
    assert not inner - Counter(res.graph.arcs)
    assert res.graph.undeletable == g.undeletable & keep


def _random_tuple(rng):
    n = rng.randint(2, 8)
    g = random_multigraph(rng, n, rng.randint(0, 16))
    keep = frozenset(v for v in g.labels if rng.random() < 0.6) or frozenset({1})
    s_arcs = frozenset(a for a in g.arcs if rng.random() < 0.4)
    return g, keep, s_arcs


def test_torso_preserves_separation():
    rng = random.Random(4201)
    for _ in range(1000):
        g, keep, s_arcs = _random_tuple(rng)
        res = torso(g, keep, s_arcs)
        ws = frozenset(v for v in keep if rng.random() < 0.3)
        rest = sorted(keep - ws)
        if not rest:
            continue
        a, b = rng.choice(rest), rng.choice(rest)
        assert (b in reach_forward(g, {a}, ws)) == (b in reach_forward(res.graph, {a}, ws))


def _walk_through(g, s_arcs, v, ws):
    h = g.induced(g.vertices - ws)
    return has_s_closed_walk(h, restrict_arcs(h, s_arcs), through=v)


def test_torso_preserves_s_closed_walks():
    rng = random.Random(4301)
    for _ in range(1000):
        g, keep, s_arcs = _random_tuple(rng)
        res = torso(g, keep, s_arcs)
        v = rng.choice(sorted(keep))
        ws = frozenset(x for x in keep if x != v and rng.random() < 0.3)
        assert _walk_through(g, s_arcs, v, ws) == _walk_through(res.graph, res.s_arcs, v, ws)


def test_reduced_no_instance_stays_no():
    rng = random.Random(4401)
    checked = 0
    while checked < 150:
        n = rng.randint(3, 7)
        g = random_multigraph(rng, n, rng.randint(3, 14))
        s_arcs = frozenset(a for a in g.arcs if rng.random() < 0.5)
        ts = frozenset(v for v in g.labels if rng.random() < 0.4)
        rest = g.induced(g.vertices - ts)
        if not ts or has_s_closed_walk(rest, restrict_arcs(rest, s_arcs)):
            continue
        k = rng.randint(0, 2)
        inst = CompressionInstance(g, s_arcs, ts, k)
        zs = frozenset(v for v in g.vertices - ts if rng.random() < 0.4)
        red = reduce_instance(inst, zs)
        if _disjoint_oracle(inst) is None:
            checked += 1
            assert _disjoint_oracle(red) is None


def _disjoint_oracle(inst):
    """Disjoint compression by brute force: T made undeletable."""
    g = inst.graph.with_undeletable(inst.old_solution)
    return brute_force_solve(EdgeInstance(g, restrict_arcs(g, inst.s_arcs), inst.budget))
