"""Vertex separators, important separators and shadows.

An X-Y separator is a vertex set avoiding X, Y and the undeletable vertices
whose removal leaves no X->Y path. Important separators are the minimal ones
that cannot be swapped for an equal-or-smaller separator reaching strictly
more vertices from X; there are at most ``4**k`` of size ``<= k``.
"""

from dataclasses import dataclass

from . import kernels
from .digraph import reach_backward, reach_forward
from .errors import ContractViolation, InseparableError


@dataclass(frozen=True)
class Separator:
    vertices: frozenset
    source: frozenset
    sink: frozenset

    def __len__(self):
        return len(self.vertices)

    def key(self):
        return (len(self.vertices), tuple(sorted(self.vertices)))


@dataclass(frozen=True)
class ShadowPair:
    forward: frozenset
    backward: frozenset


class _Inseparable:
    """Result of :func:`min_vertex_cut` when no separator exists at all."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INSEPARABLE"

    def __bool__(self):
        return False


INSEPARABLE = _Inseparable()


def _check_pair(g, xs, ys):
    xs = frozenset(xs)
    ys = frozenset(ys)
    if not xs or not ys:
        raise ContractViolation("source and sink sets must be nonempty")
    if xs & ys:
        raise ContractViolation("source and sink sets must be disjoint")
    if not (xs | ys) <= g.vertices:
        raise ContractViolation("source and sink sets must be vertices of the graph")
    return xs, ys


def is_separator(g, xs, ys, ws):
    xs, ys = _check_pair(g, xs, ys)
    ws = frozenset(ws)
    if not ws <= g.vertices or ws & (xs | ys | g.undeletable):
        return False
    return not (reach_forward(g, xs, ws) & ys)


def is_minimal_separator(g, xs, ys, ws):
    ws = frozenset(ws)
    if not is_separator(g, xs, ys, ws):
        return False
    return not any(is_separator(g, xs, ys, ws - {w}) for w in ws)


def _cuttable(g, xs_mask, ys_mask, blocked):
    und = g.mask(g.undeletable) if g.undeletable else None
    out = bytearray(g.n)
    for i in range(g.n):
        if not (xs_mask[i] or ys_mask[i] or blocked[i] or (und is not None and und[i])):
            out[i] = 1
    return out


def min_vertex_cut(g, xs, ys, budget, removed=()):
    """Minimum X-Y separator closest to Y, if its size is at most ``budget``.

    Returns ``(size, Separator)``, ``None`` when every separator is larger than
    ``budget``, or :data:`INSEPARABLE` when no separator exists (some X->Y path
    has no deletable internal vertex).
    """
    xs, ys = _check_pair(g, xs, ys)
    blocked = g.mask(removed)
    xm = g.mask(xs)
    ym = g.mask(ys)
    out_ptr, out_head, in_ptr, in_tail, in_arc = g.csr()
    size, cut = kernels.furthest_cut(out_ptr, out_head, in_ptr, in_tail, in_arc, g.n,
                                     g.positions(xs), ym, _cuttable(g, xm, ym, blocked),
                                     blocked, budget)
    if size == kernels.INSEPARABLE:
        return INSEPARABLE
    if size == kernels.OVER_BUDGET:
        return None
    labels = g.labels
    return size, Separator(frozenset(labels[i] for i in cut), xs, ys)


def is_important(g, xs, ys, ws):
    """Whether ``ws`` is an important X-Y separator.

    ``ws`` is important exactly when it is the furthest minimum separator
    between the vertices it leaves reachable from X and Y.
    """
    xs, ys = _check_pair(g, xs, ys)
    ws = frozenset(ws)
    if not ws <= g.vertices or ws & (xs | ys | g.undeletable):
        return False
    reached = reach_forward(g, xs, ws)
    if reached & ys:
        return False
    res = min_vertex_cut(g, reached, ys, len(ws))
    if res is None or res is INSEPARABLE:
        return False
    size, sep = res
    return size == len(ws) and sep.vertices == ws


def enumerate_important_separators(g, xs, ys, k):
    """All important X-Y separators of size at most ``k``.

    Branches on the lowest-labelled vertex of the furthest minimum cut: either
    it joins the separator or it joins the source side. Candidates are then
    filtered through :func:`is_important`. Raises :class:`InseparableError`
    when X and Y cannot be separated at all.
    """
    xs, ys = _check_pair(g, xs, ys)
    n = g.n
    out_ptr, out_head, in_ptr, in_tail, in_arc = g.csr()
    ym = g.mask(ys)
    und = g.mask(g.undeletable)
    base = bytearray(n)
    for i in range(n):
        if not (ym[i] or und[i]):
            base[i] = 1
    candidates = set()
    top = True

    def rec(src, deleted, budget):
        nonlocal top
        blocked = bytearray(n)
        for d in deleted:
            blocked[d] = 1
        cuttable = bytearray(base)
        for i in src:
            cuttable[i] = 0
        for d in deleted:
            cuttable[d] = 0
        size, cut = kernels.furthest_cut(out_ptr, out_head, in_ptr, in_tail, in_arc, n,
                                         src, ym, cuttable, blocked, budget)
        if top:
            top = False
            if size == kernels.INSEPARABLE:
                raise InseparableError(f"no separator between {sorted(xs)} and {sorted(ys)}")
        if size < 0:
            return
        if size == 0:
            candidates.add(frozenset(deleted))
            return
        # Every important separator keeps the source side of the furthest cut.
        for c in cut:
            blocked[c] = 1
        far = kernels.reach(out_ptr, out_head, n, src, blocked)
        side = [i for i in range(n) if far[i]]
        v = cut[0]
        rec(side, deleted + (v,), budget - 1)
        rec(side + [v], deleted, budget)

    rec(g.positions(xs), (), k)
    labels = g.labels
    out = []
    for cand in candidates:
        ws = frozenset(labels[i] for i in cand)
        if is_important(g, xs, ys, ws):
            out.append(Separator(ws, xs, ys))
    out.sort(key=Separator.key)
    return tuple(out)


def enumerate_Ik(g, ts, k):
    """Nonempty important v-T separators of size ``<= k`` over all ``v`` outside T.

    Deduplicated by vertex set; each member records one witness ``v`` as its
    source. Vertices that cannot reach T contribute only the empty set, which
    is not a member.
    """
    ts = frozenset(ts)
    if not ts:
        raise ContractViolation("terminal set must be nonempty")
    reaching = reach_backward(g, ts)
    found = {}
    for v in g.labels:
        if v in ts or v not in reaching:
            continue
        try:
            seps = enumerate_important_separators(g, {v}, ts, k)
        except InseparableError:
            continue
        for sep in seps:
            if sep.vertices and sep.vertices not in found:
                found[sep.vertices] = sep
    return tuple(sorted(found.values(), key=Separator.key))


def _check_shadow_args(g, ts, ws):
    ts = frozenset(ts)
    ws = frozenset(ws)
    if ws & ts:
        raise ContractViolation("W must be disjoint from the terminals")
    if not (ts | ws) <= g.vertices:
        raise ContractViolation("terminals and W must be vertices of the graph")
    return ts, ws


def shadow(g, ts, ws):
    """Forward and reverse shadow of ``ws`` with respect to terminals ``ts``."""
    ts, ws = _check_shadow_args(g, ts, ws)
    rest = g.vertices - ws - ts
    forward = rest - reach_forward(g, ts, ws)
    backward = rest - reach_backward(g, ts, ws)
    return ShadowPair(frozenset(forward), frozenset(backward))


def exact_reverse_shadow(g, ts, ws):
    """Vertices ``v`` for which ``ws`` is a minimal v-T separator."""
    ts, ws = _check_shadow_args(g, ts, ws)
    if ws & g.undeletable:
        return frozenset()
    to_t = reach_backward(g, ts, ws)
    for w in ws:
        if not any(x in to_t for x in g.successors(w) if x not in ws):
            return frozenset()
    cand = g.vertices - to_t - ws - ts
    for w in ws:
        if not cand:
            break
        preds = [p for p in g.predecessors(w) if p not in ws]
        cand &= reach_backward(g, preds, ws)
    return frozenset(cand)


def exact_forward_shadow(g, ts, ws):
    """Vertices ``v`` for which ``ws`` is a minimal T-v separator."""
    return exact_reverse_shadow(g.reverse(), ts, ws)


def is_thin(g, ts, ws):
    ts, ws = _check_shadow_args(g, ts, ws)
    return not any(v in shadow(g, ts, ws - {v}).backward for v in ws)
