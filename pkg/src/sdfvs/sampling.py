"""Random sampling of important separators and the two-phase covering step.

A sample ``P`` selects members of ``I_k`` (the important v-T separators of
size at most ``k``); the set ``Z`` is the union of the exact reverse shadows of
the selected members. Covering repeats this on the reversed graph with the
first-phase ``Z`` frozen, so that ``Z`` can swallow both shadows of a solution.

Three sources of ``P`` are provided:

* ``mc``: each vertex independently with probability ``4**-k``;
* ``exhaustive-p``: every vertex set of size at most ``k`` (small graphs);
* ``det``: preimages ``h^-1(H)`` over a splitter family (tiny ``k`` only).
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ContractViolation
from .separators import enumerate_Ik, exact_reverse_shadow

MODES = ("mc", "exhaustive-p", "det")


@dataclass(frozen=True)
class SamplingConfig:
    mode: str = "mc"
    trials: int = None  # None: default_trials(k)
    seed: int = 0
    det_threshold: int = 64
    exhaustive_limit: int = 16
    trial_cap: int = 1 << 23
    multiplier: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown sampling mode {self.mode!r}")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be positive")
        if self.multiplier < 1:
            raise ValueError("multiplier must be positive")

    def trials_for(self, k):
        base = self.trials if self.trials is not None else default_trials(k, self.trial_cap)
        return base * self.multiplier


def default_trials(k, cap=1 << 23):
    return min(4 ** (k * k) + 64, cap)


@dataclass(frozen=True)
class SampleFamily:
    sets: tuple
    provenance: tuple

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)


class ShadowTable:
    """Members of ``I_k`` with nonempty usable shadow, indexed for subset tests.

    Only members whose shadow (minus undeletable vertices) is nonempty matter;
    the universe is the union of their vertices, and a sample is represented
    by a bitmask over that universe.
    """

    def __init__(self, g, ts, k):
        self.graph = g
        und = g.undeletable
        entries = []
        for sep in enumerate_Ik(g, ts, k) if k > 0 else ():
            sh = exact_reverse_shadow(g, ts, sep.vertices) - und
            if sh:
                entries.append((sep.vertices, sh))
        universe = sorted({v for ws, _ in entries for v in ws})
        self.universe = universe
        bit = self._bit = {v: 1 << i for i, v in enumerate(universe)}
        self.columns = np.array([g.position(v) for v in universe], dtype=np.intp)
        self.entries = [(sum(bit[v] for v in ws), ws, sh) for ws, sh in entries]
        self._cache = {0: frozenset()}

    def mask_of(self, vs):
        bit = self._bit
        return sum(bit[v] for v in set(vs) if v in bit)

    def union(self, mask):
        out = self._cache.get(mask)
        if out is None:
            z = set()
            for m, _, sh in self.entries:
                if m & mask == m:
                    z |= sh
            out = self._cache[mask] = frozenset(z)
        return out

    def chosen(self, mask):
        return [ws for m, ws, _ in self.entries if m & mask == m]


def _check(g, ts, k):
    ts = frozenset(ts)
    if not ts:
        raise ContractViolation("terminal set must be nonempty")
    if not ts <= g.vertices:
        raise ContractViolation("terminals must be vertices of the graph")
    if k < 0:
        raise ContractViolation("k must be non-negative")
    return ts


def random_set(g, ts, k, seed):
    """One sample: ``P`` with rate ``4**-k`` per vertex, then the union of shadows."""
    ts = _check(g, ts, k)
    if k == 0:
        return frozenset()
    rng = np.random.default_rng(seed)
    picked = rng.random(g.n) < 4.0 ** -k
    table = ShadowTable(g, ts, k)
    return table.union(table.mask_of(v for v, b in zip(g.labels, picked) if b))


def _is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def splitter(n, r):
    """Functions ``[n] -> [r*r]`` such that each ``r``-subset is hashed injectively by one.

    Uses ``x -> ((a*x) mod p) mod r^2`` for ``a = 1..p-1`` with ``p`` a prime
    above ``n``; the summed collision count over all ``a`` is below ``p-1`` for
    any ``r``-set, so some ``a`` is collision free. Returned as tuples of
    bucket values indexed by ``x``.
    """
    s = r * r
    if n <= s:
        return [tuple(range(n))]
    p = n + 1
    while not _is_prime(p):
        p += 1
    return [tuple(((a * (x + 1)) % p) % s for x in range(n)) for a in range(1, p)]


def deterministic_psets(g, ts, k, threshold=64):
    """All ``P = h^-1(H)`` for ``h`` in the splitter family and ``|H| <= k``."""
    ts = _check(g, ts, k)
    if k == 0:
        return [frozenset()]
    r = k + k * k * 4 ** k
    if r > threshold:
        raise CapacityError(f"deterministic sampling needs a+b={r} > threshold {threshold}")
    labels = g.labels
    out = []
    seen = set()
    for h in splitter(g.n, r):
        buckets = {}
        for i, b in enumerate(h):
            buckets.setdefault(b, []).append(labels[i])
        keys = sorted(buckets)
        for a in range(k + 1):
            for hs in itertools.combinations(keys, a):
                pset = frozenset(v for b in hs for v in buckets[b])
                if pset not in seen:
                    seen.add(pset)
                    out.append(pset)
    return out


def deterministic_family(g, ts, k, threshold=64):
    """One-phase deterministic family: one ``Z`` per splitter-defined ``P``."""
    ts = _check(g, ts, k)
    psets = deterministic_psets(g, ts, k, threshold)
    if k == 0:
        return SampleFamily((frozenset(),), (("det", 0),))
    table = ShadowTable(g, ts, k)
    sets = []
    prov = []
    for i, p in enumerate(psets):
        sets.append(table.union(table.mask_of(p)))
        prov.append(("det", i))
    return SampleFamily(tuple(sets), tuple(prov))


class _Phase2:
    """Second-phase shadow tables, one per first-phase result."""

    def __init__(self, g, ts, k):
        self.rev = g.reverse()
        self.ts = ts
        self.k = k
        self.tables = {}

    def table(self, z1):
        t = self.tables.get(z1)
        if t is None:
            t = self.tables[z1] = ShadowTable(self.rev.with_undeletable(z1), self.ts, self.k)
        return t


def _row_masks(bits):
    """Integer bitmask (column ``i`` -> bit ``i``) of each row of a boolean matrix."""
    if bits.shape[1] == 0:
        return [0] * bits.shape[0]
    packed = np.packbits(bits, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _mc(g, ts, k, config):
    trials = config.trials_for(k)
    p = 4.0 ** -k
    t1 = ShadowTable(g, ts, k)
    phase2 = _Phase2(g, ts, k)
    seen = set()
    done = 0
    chunk = 256
    index = 0
    while done < trials:
        size = min(chunk, trials - done)
        rng = np.random.default_rng([config.seed, index])
        a = rng.random((size, g.n)) < p
        b = rng.random((size, g.n)) < p
        found = []
        m1s = _row_masks(a[:, t1.columns])
        groups = {}
        for row, m1 in enumerate(m1s):
            groups.setdefault(t1.union(m1), []).append(row)
        for z1, rows in groups.items():
            t2 = phase2.table(z1)
            rows = np.asarray(rows)
            m2s = _row_masks(b[rows][:, t2.columns])
            firsts = {}
            for row, m2 in zip(rows.tolist(), m2s):
                if m2 not in firsts:
                    firsts[m2] = row
            for m2, row in firsts.items():
                found.append((row, z1 | t2.union(m2)))
        found.sort(key=lambda item: item[0])
        for row, z in found:
            if z not in seen:
                seen.add(z)
                yield z, ("mc", config.seed, done + row)
        done += size
        index += 1
        chunk = min(chunk * 4, 1 << 16)


def _exhaustive(g, ts, k, config):
    if g.n > config.exhaustive_limit:
        raise CapacityError(f"exhaustive sampling limited to {config.exhaustive_limit} vertices, got {g.n}")
    t1 = ShadowTable(g, ts, k)
    phase2 = _Phase2(g, ts, k)
    pool = sorted(g.vertices - ts - g.undeletable)
    seen = set()
    for size in range(k + 1):
        for ws in itertools.combinations(pool, size):
            z1 = t1.union(t1.mask_of(ws))
            t2 = phase2.table(z1)
            z = z1 | t2.union(t2.mask_of(ws))
            if z not in seen:
                seen.add(z)
                yield z, ("exhaustive-p", ws)


def _det(g, ts, k, config):
    psets = deterministic_psets(g, ts, k, config.det_threshold)
    t1 = ShadowTable(g, ts, k)
    phase2 = _Phase2(g, ts, k)
    seen = set()
    for i, p1 in enumerate(psets):
        z1 = t1.union(t1.mask_of(p1))
        t2 = phase2.table(z1)
        for j, p2 in enumerate(psets):
            z = z1 | t2.union(t2.mask_of(p2))
            if z not in seen:
                seen.add(z)
                yield z, ("det", i, j)


def iter_covering(g, ts, k, config=None):
    """Lazily yield distinct ``(Z, provenance)`` pairs in generation order."""
    config = config or SamplingConfig()
    ts = _check(g, ts, k)
    if k == 0:
        yield frozenset(), (config.mode, 0)
        return
    if config.mode == "mc":
        yield from _mc(g, ts, k, config)
    elif config.mode == "exhaustive-p":
        yield from _exhaustive(g, ts, k, config)
    else:
        yield from _det(g, ts, k, config)


def covering(g, ts, k, config=None):
    """The whole two-phase family, deduplicated, in generation order."""
    pairs = list(iter_covering(g, ts, k, config))
    return SampleFamily(tuple(z for z, _ in pairs), tuple(p for _, p in pairs))
