import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphs import digraphs, shadow_gadget
from sdfvs.digraph import build
from sdfvs.errors import CapacityError, ContractViolation
from sdfvs.sampling import (SamplingConfig, ShadowTable, covering, default_trials,
                            deterministic_family, deterministic_psets, iter_covering, random_set,
                            splitter)
from sdfvs.separators import enumerate_Ik, exact_reverse_shadow, shadow

CHAIN = build(3, [(1, 2), (2, 3)])  # v=1 -> a=2 -> t=3
LOOP = build(4, [(1, 2), (2, 3), (3, 4), (4, 1)])  # t=1 -> a=2 -> v=3 -> b=4 -> t


def test_random_set_k0_is_empty():
    for seed in range(20):
        assert random_set(CHAIN, {3}, 0, seed) == frozenset()


def test_random_set_edgeless_is_empty():
    g = build(6, [])
    for seed in range(20):
        assert random_set(g, {1}, 1, seed) == frozenset()


def test_random_set_chain_two_cases():
    seen = set()
    for seed in range(400):
        seen.add(random_set(CHAIN, {3}, 1, seed))
    assert seen == {frozenset(), frozenset({1})}


def test_random_set_contract():
    with pytest.raises(ContractViolation):
        random_set(CHAIN, set(), 1, 0)
    with pytest.raises(ContractViolation):
        random_set(CHAIN, {3}, -1, 0)


def test_deterministic_family_k0():
    assert deterministic_family(CHAIN, {3}, 0).sets == (frozenset(),)


def test_deterministic_family_chain_contains_v():
    assert frozenset({1}) in deterministic_family(CHAIN, {3}, 1).sets


def test_deterministic_capacity_gate():
    with pytest.raises(CapacityError):
        deterministic_family(CHAIN, {3}, 2)
    with pytest.raises(CapacityError):
        list(iter_covering(CHAIN, {3}, 2, SamplingConfig(mode="det")))


@pytest.mark.parametrize("n, r", [(5, 2), (12, 2), (30, 3), (40, 2)])
def test_splitter_property(n, r):
    family = splitter(n, r)
    assert all(max(h) < r * r for h in family)
    for m in itertools.combinations(range(n), r):
        assert any(len({h[x] for x in m}) == r for h in family)


def test_deterministic_family_size_is_polylog():
    for n in (10, 40, 100):
        g = build(n, [(i, i + 1) for i in range(1, n)])
        assert len(deterministic_psets(g, {n}, 1)) <= 2 * n * 26


def test_covering_k0():
    assert covering(LOOP, {1}, 0).sets == (frozenset(),)


@pytest.mark.parametrize("mode", ["mc", "exhaustive-p"])
def test_covering_loop_finds_shadow(mode):
    sh = shadow(LOOP, {1}, {2, 4})
    target = sh.forward | sh.backward
    assert target == {3}
    fam = covering(LOOP, {1}, 2, SamplingConfig(mode=mode, seed=3))
    assert any(target <= z for z in fam)


def test_covering_det_chain():
    fam = covering(CHAIN, {3}, 1, SamplingConfig(mode="det"))
    assert frozenset({1}) in fam.sets


def test_exhaustive_capacity():
    g = build(17, [])
    with pytest.raises(CapacityError):
        covering(g, {1}, 1, SamplingConfig(mode="exhaustive-p"))


def test_default_trials():
    assert default_trials(1) == 68
    assert default_trials(2) == 320
    assert default_trials(4) == 1 << 23
    assert SamplingConfig(trials=10, multiplier=3).trials_for(2) == 30


def test_config_validation():
    with pytest.raises(ValueError):
        SamplingConfig(mode="nope")
    with pytest.raises(ValueError):
        SamplingConfig(trials=0)


@settings(max_examples=80, deadline=None)
@given(digraphs(min_n=2, max_n=8), st.data())
def test_reproducible_and_contract(g, data):
    ts = data.draw(st.sets(st.sampled_from(g.labels), min_size=1, max_size=2))
    k = data.draw(st.integers(0, 2))
    seed = data.draw(st.integers(0, 2 ** 32))
    assert random_set(g, ts, k, seed) == random_set(g, ts, k, seed)
    cfg = SamplingConfig(trials=64, seed=seed)
    fam = covering(g, ts, k, cfg)
    assert fam == covering(g, ts, k, cfg)
    for mode_cfg in (cfg, SamplingConfig(mode="exhaustive-p")):
        for z in covering(g, ts, k, mode_cfg):
            assert not z & ts
            assert not z & g.undeletable


@settings(max_examples=80, deadline=None)
@given(digraphs(min_n=2, max_n=8), st.data())
def test_membership_monotonicity(g, data):
    ts = frozenset(data.draw(st.sets(st.sampled_from(g.labels), min_size=1, max_size=2)))
    k = data.draw(st.integers(1, 2))
    allowed = set()
    for sep in enumerate_Ik(g, ts, k):
        allowed |= exact_reverse_shadow(g, ts, sep.vertices)
    table = ShadowTable(g, ts, k)
    for mask in range(1 << min(len(table.universe), 8)):
        z = table.union(mask)
        assert z <= allowed
        for ws in table.chosen(mask):
            assert ws <= set(table.universe)
    seed = data.draw(st.integers(0, 1000))
    assert random_set(g, ts, k, seed) <= allowed


def _witness_fixtures():
    base, ts, nm = shadow_gadget(r=2, k=2)
    # every vertex reachable from T, so only reverse shadows matter
    extra = [(nm["t1"], nm[x]) for x in ("b1", "b2", "c12")]
    g = build(base.n, list(base.arcs) + extra)
    yield g, ts, frozenset({nm["a1"]}), 1
    yield g, ts, frozenset({nm["a1"], nm["a2"]}), 2
    yield CHAIN, frozenset({3}), frozenset({2}), 1
    yield LOOP, frozenset({1}), frozenset({2}), 1


@pytest.mark.parametrize("fixture", list(_witness_fixtures()))
def test_monte_carlo_success_witness(fixture):
    g, ts, xs, k = fixture
    sh = shadow(g, ts, xs)
    need = sh.forward | sh.backward
    trials = 4 ** (2 * k * k) * 2
    hits = 0
    for seed in range(3):
        fam = covering(g, ts, k, SamplingConfig(trials=trials, seed=seed))
        hits += any(need <= z and not z & xs for z in fam)
    assert hits == 3
