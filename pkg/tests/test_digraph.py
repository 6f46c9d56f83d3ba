import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphs import C3, P4, digraphs, g_of
from sdfvs.digraph import (Digraph, build, delete_vertices, reach_backward, reach_forward,
                           reverse, scc)
from sdfvs.errors import ContractViolation, GraphError


def test_build_cycle_has_one_component():
    g = build(3, [(1, 2), (2, 3), (3, 1)])
    assert g.n == 3 and g.m == 3
    assert scc(g).components == (frozenset({1, 2, 3}),)


def test_build_path():
    g = build(4, [(1, 2), (2, 3), (3, 4)])
    assert g.vertices == {1, 2, 3, 4}
    assert sorted(g.arcs) == [(1, 2), (2, 3), (3, 4)]


def test_build_rejects_bad_endpoint():
    with pytest.raises(GraphError):
        build(2, [(1, 3)])


def test_build_rejects_undeletable_outside():
    with pytest.raises(GraphError):
        build(2, [], undeletable=[5])


@pytest.mark.parametrize("xs, removed, expected", [
    ({1}, set(), {1, 2, 3, 4}),
    ({1}, {3}, {1, 2}),
])
def test_reach_forward_path(xs, removed, expected):
    assert reach_forward(g_of(P4), xs, removed) == expected


def test_reach_forward_cycle():
    assert reach_forward(g_of(C3), {2}) == {1, 2, 3}


def test_reach_forward_empty_sources():
    assert reach_forward(g_of(P4), set()) == frozenset()


def test_reach_rejects_overlap():
    with pytest.raises(ContractViolation):
        reach_forward(g_of(P4), {1}, {1})


@pytest.mark.parametrize("xs, removed, expected", [
    ({4}, set(), {1, 2, 3, 4}),
    ({4}, {2}, {3, 4}),
    ({1}, set(), {1}),
])
def test_reach_backward_path(xs, removed, expected):
    assert reach_backward(g_of(P4), xs, removed) == expected


def test_reverse_path():
    assert sorted(reverse(g_of(P4)).arcs) == [(2, 1), (3, 2), (4, 3)]


def test_reverse_cycle():
    assert sorted(reverse(g_of(C3)).arcs) == [(1, 3), (2, 1), (3, 2)]


def test_reverse_involution_keeps_multiplicity_and_undeletable():
    g = build(3, [(1, 2), (1, 2), (2, 2), (3, 1)], undeletable={2})
    assert reverse(reverse(g)) == g
    assert reverse(g).undeletable == {2}


def test_scc_path_order():
    assert scc(g_of(P4)).components == tuple(frozenset({v}) for v in (1, 2, 3, 4))


def test_scc_two_components():
    d = scc(build(3, [(1, 2), (2, 1), (2, 3)]))
    assert d.components == (frozenset({1, 2}), frozenset({3}))
    assert d.last == {3}


def test_delete_vertices():
    assert sorted(delete_vertices(g_of(P4), {2}).arcs) == [(3, 4)]
    assert delete_vertices(g_of(P4), set()) == g_of(P4)


def test_delete_undeletable_raises():
    with pytest.raises(ContractViolation):
        delete_vertices(g_of(P4, undeletable={2}), {2})


def test_labels_survive_deletion():
    g = delete_vertices(g_of(P4), {1, 2})
    assert g.labels == (3, 4)
    assert reach_forward(g, {3}) == {3, 4}


def test_digraph_with_sparse_labels():
    g = Digraph([10, 20, 30], [(10, 30), (30, 20)])
    assert reach_forward(g, {10}) == {10, 20, 30}
    assert g.fresh_label() == 31


def _mutual(g):
    reach = {v: reach_forward(g, {v}) for v in g.labels}
    return {v: frozenset(u for u in g.labels if u in reach[v] and v in reach[u]) for v in g.labels}


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=8), st.data())
def test_reach_forward_equals_backward_on_reverse(g, data):
    xs = data.draw(st.sets(st.sampled_from(g.labels), max_size=3))
    removed = data.draw(st.sets(st.sampled_from(g.labels), max_size=3)) - xs
    assert reach_forward(g, xs, removed) == reach_backward(reverse(g), xs, removed)


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=8))
def test_scc_topological_and_matches_brute_force(g):
    d = scc(g)
    for u, v in g.arcs:
        assert d.component_of[u] <= d.component_of[v]
    mutual = _mutual(g)
    for comp in d.components:
        for v in comp:
            assert mutual[v] == comp


@settings(max_examples=150, deadline=None)
@given(digraphs(max_n=8, undeletable=False), st.data())
def test_delete_then_scc_refines_old_components(g, data):
    xs = data.draw(st.sets(st.sampled_from(g.labels), max_size=3))
    h = delete_vertices(g, xs)
    old = scc(g)
    mutual = _mutual(h)
    for comp in scc(h).components:
        assert comp == mutual[next(iter(comp))]
        # every new component sits inside one old component
        assert len({old.component_of[v] for v in comp}) == 1


def test_csr_is_consistent_with_arcs():
    g = build(4, [(1, 2), (1, 2), (3, 1), (4, 4)])
    out_ptr, out_head, in_ptr, in_tail, in_arc = g.csr()
    outs = sorted((g.labels[u], g.labels[out_head[e]])
                  for u in range(g.n) for e in range(out_ptr[u], out_ptr[u + 1]))
    assert outs == sorted(g.arcs)
    for v, p in itertools.product(range(g.n), range(len(in_tail))):
        if in_ptr[v] <= p < in_ptr[v + 1]:
            assert out_head[in_arc[p]] == v
