"""Line-oriented instance files.

Grammar (one record per line, vertices numbered from 1)::

    c <comment>
    p sdfvs-e <n> <m>      edge form: S is a set of arcs
    p sdfvs-v <n> <m>      vertex form: S is a set of vertices
    a <u> <v> [s]          arc; trailing ``s`` puts it in S (edge form only)
    s <v>                  vertex in S (vertex form only)
    k <int>                budget
    u <v>                  undeletable vertex

Records are kept in file order so that ``serialize(parse(text))`` reproduces
the text up to whitespace normalization.
"""

from dataclasses import dataclass, field

from .digraph import build
from .errors import GraphError, ParseError
from .instances import EdgeInstance, VertexInstance

EDGE = "sdfvs-e"
VERTEX = "sdfvs-v"


@dataclass
class InstanceFile:
    kind: str
    n: int
    m: int
    arcs: list = field(default_factory=list)  # (u, v, in_s)
    s_vertices: list = field(default_factory=list)
    budget: int = None
    undeletable: list = field(default_factory=list)
    comments: list = field(default_factory=list)
    records: list = field(default_factory=list)  # (tag, index) in file order

    @property
    def s_arcs(self):
        return frozenset((u, v) for u, v, s in self.arcs if s)

    def to_instance(self, budget=None):
        k = self.budget if budget is None else budget
        if k is None:
            raise ParseError("instance has no budget line")
        g = build(self.n, [(u, v) for u, v, _ in self.arcs], self.undeletable)
        if self.kind == EDGE:
            return EdgeInstance(g, self.s_arcs, k)
        return VertexInstance(g, frozenset(self.s_vertices), k)


def _int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno) from None


def parse(text):
    inst = None
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tag, _, rest = line.partition(" ")
        toks = rest.split()
        if tag == "c":
            comment = " ".join(toks)
            if inst is None:
                pending.append(comment)
            else:
                inst.records.append(("c", len(inst.comments)))
                inst.comments.append(comment)
            continue
        if tag == "p":
            if inst is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(toks) != 3 or toks[0] not in (EDGE, VERTEX):
                raise ParseError("expected 'p sdfvs-e <n> <m>' or 'p sdfvs-v <n> <m>'", lineno)
            n = _int(toks[1], lineno, "n")
            m = _int(toks[2], lineno, "m")
            if n < 0 or m < 0:
                raise ParseError("n and m must be non-negative", lineno)
            inst = InstanceFile(toks[0], n, m)
            for comment in pending:
                inst.records.append(("c", len(inst.comments)))
                inst.comments.append(comment)
            inst.records.append(("p", 0))
            continue
        if inst is None:
            raise ParseError("record before the problem line", lineno)
        if tag == "a":
            if len(toks) not in (2, 3):
                raise ParseError("expected 'a <u> <v> [s]'", lineno)
            u = _vertex(toks[0], inst.n, lineno)
            v = _vertex(toks[1], inst.n, lineno)
            in_s = False
            if len(toks) == 3:
                if toks[2] != "s":
                    raise ParseError(f"unknown arc marker {toks[2]!r}", lineno)
                if inst.kind == VERTEX:
                    raise ParseError("S-arc marker in a vertex-form instance", lineno)
                in_s = True
            inst.records.append(("a", len(inst.arcs)))
            inst.arcs.append((u, v, in_s))
        elif tag in ("s", "u"):
            if len(toks) != 1:
                raise ParseError(f"expected '{tag} <v>'", lineno)
            v = _vertex(toks[0], inst.n, lineno)
            if tag == "s":
                if inst.kind == EDGE:
                    raise ParseError("S-vertex line in an edge-form instance", lineno)
                inst.records.append(("s", len(inst.s_vertices)))
                inst.s_vertices.append(v)
            else:
                inst.records.append(("u", len(inst.undeletable)))
                inst.undeletable.append(v)
        elif tag == "k":
            if len(toks) != 1:
                raise ParseError("expected 'k <int>'", lineno)
            if inst.budget is not None:
                raise ParseError("duplicate budget line", lineno)
            k = _int(toks[0], lineno, "k")
            if k < 0:
                raise ParseError("budget must be non-negative", lineno)
            inst.budget = k
            inst.records.append(("k", 0))
        else:
            raise ParseError(f"unknown record type {tag!r}", lineno)
    if inst is None:
        raise ParseError("missing problem line")
    if len(inst.arcs) != inst.m:
        raise ParseError(f"header declares {inst.m} arcs, found {len(inst.arcs)}")
    return inst


def _vertex(tok, n, lineno):
    v = _int(tok, lineno, "vertex")
    if not 1 <= v <= n:
        raise ParseError(f"vertex {v} out of range 1..{n}", lineno)
    return v


def serialize(inst):
    lines = []
    for tag, i in inst.records:
        if tag == "c":
            lines.append(f"c {inst.comments[i]}".rstrip())
        elif tag == "p":
            lines.append(f"p {inst.kind} {inst.n} {inst.m}")
        elif tag == "a":
            u, v, s = inst.arcs[i]
            lines.append(f"a {u} {v} s" if s else f"a {u} {v}")
        elif tag == "s":
            lines.append(f"s {inst.s_vertices[i]}")
        elif tag == "u":
            lines.append(f"u {inst.undeletable[i]}")
        elif tag == "k":
            lines.append(f"k {inst.budget}")
    return "\n".join(lines) + "\n"


def normalize(text):
    """Canonical spelling of an instance text: trimmed lines, single spaces, no blanks."""
    out = []
    for raw in text.splitlines():
        toks = raw.split()
        if toks:
            out.append(" ".join(toks))
    return "\n".join(out) + "\n"


def from_instance(inst, comments=()):
    """File record for an in-memory edge or vertex instance on vertices ``1..n``."""
    g = inst.graph
    if g.labels != tuple(range(1, g.n + 1)):
        raise GraphError("instance files need vertices numbered 1..n")
    if isinstance(inst, EdgeInstance):
        f = InstanceFile(EDGE, g.n, g.m)
        f.arcs = [(u, v, (u, v) in inst.s_arcs) for u, v in g.arcs]
    else:
        f = InstanceFile(VERTEX, g.n, g.m)
        f.arcs = [(u, v, False) for u, v in g.arcs]
        f.s_vertices = sorted(inst.s_vertices)
    f.budget = inst.budget
    f.undeletable = sorted(g.undeletable)
    f.comments = list(comments)
    f.records = [("c", i) for i in range(len(f.comments))] + [("p", 0)]
    f.records += [("a", i) for i in range(len(f.arcs))]
    f.records += [("s", i) for i in range(len(f.s_vertices))]
    f.records += [("u", i) for i in range(len(f.undeletable))]
    f.records.append(("k", 0))
    return f


def read(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write(path, inst):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(inst))
