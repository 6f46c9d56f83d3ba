"""Seeded random and planted instance generators."""

import random

from .digraph import build
from .errors import ContractViolation
from .fileformat import from_instance
from .instances import EdgeInstance


def _pick_s(rng, arcs, s_fraction):
    return frozenset(a for a in arcs if rng.random() < s_fraction)


def random_instance(n, m, s_fraction, k, seed):
    """Uniform arcs without replacement (no self-loops), each in S independently."""
    if n < 1 or m < 0 or k < 0 or not 0.0 <= s_fraction <= 1.0:
        raise ContractViolation("need n >= 1, m >= 0, k >= 0 and 0 <= s_fraction <= 1")
    if m > n * (n - 1):
        raise ContractViolation(f"m={m} exceeds the {n * (n - 1)} possible arcs")
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    arcs = rng.sample(pairs, m)
    return EdgeInstance(build(n, arcs), _pick_s(rng, arcs, s_fraction), k)


def planted_instance(n, m, s_fraction, k, seed):
    """A YES instance at budget ``k`` built around a hidden deletion set.

    Outside the hidden set the arcs follow a random topological order, so
    deleting the hidden set leaves a DAG; arcs touching it are unrestricted.
    Returns ``(instance, hidden)``.
    """
    if n < 1 or m < 0 or not 0 <= k <= n or not 0.0 <= s_fraction <= 1.0:
        raise ContractViolation("need n >= 1, m >= 0, 0 <= k <= n and 0 <= s_fraction <= 1")
    rng = random.Random(seed)
    vertices = list(range(1, n + 1))
    hidden = frozenset(rng.sample(vertices, k))
    order = [v for v in vertices if v not in hidden]
    rng.shuffle(order)
    allowed = [(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order))]
    allowed += [(u, v) for u in vertices for v in vertices
                if u != v and (u in hidden or v in hidden)]
    allowed.sort()
    if m > len(allowed):
        raise ContractViolation(f"m={m} exceeds the {len(allowed)} arcs a planted instance allows")
    arcs = rng.sample(allowed, m)
    return EdgeInstance(build(n, arcs), _pick_s(rng, arcs, s_fraction), k), hidden


def generate(mode, n, m, s_fraction, k, seed):
    """Instance file record for ``gen``; the header comment records the parameters."""
    if mode == "random":
        inst = random_instance(n, m, s_fraction, k, seed)
    elif mode == "planted":
        inst, _ = planted_instance(n, m, s_fraction, k, seed)
    else:
        raise ContractViolation(f"unknown generator mode {mode!r}")
    note = f"gen {mode} n={n} m={m} s_fraction={s_fraction} k={k} seed={seed}"
    return from_instance(inst, [note])
