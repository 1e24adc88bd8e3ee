"""Coxeter matrices with entries in {2, 3, inf}, gluing matrices, and the
Singer graph W_M assembled from quotient digons and triangles.

Gluing-matrix files are line oriented, ``#`` starts a comment::

    vertices s t u
    edge s t 3
    edge t u 3
    edge u s 3
    order 2
    column s t : 1 3
    column t u : 5 1
    column u s : 6 4

``edge a b m`` declares m_ab = m in {2, 3}; absent pairs are infinite.
``column a b : v1 .. vq`` orients {a, b} as (a, b) and sets n(ab) = v_n.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations

from .difference_sets import DifferenceSet, delta_of, verify_difference_set
from .errors import InvalidGluing, NoSuchEdge, NotSingerCyclic, ParseError
from .polygons import (
    Gallery,
    SingerPolygon,
    normalize_polygon,
    quotient_digon,
    quotient_triangle,
)

INF = float("inf")


@dataclass(frozen=True)
class CoxeterMatrix:
    vertices: tuple[str, ...]
    finite: dict[frozenset, int] = field(hash=False)
    edge_order: tuple[frozenset, ...] = ()

    def m(self, s: str, t: str) -> float:
        if s == t:
            return 1
        return self.finite.get(frozenset((s, t)), INF)

    def defining_graph(self) -> DefiningGraph:
        edges = self.edge_order or tuple(self.finite)
        return DefiningGraph(self.vertices, tuple(edges))


@dataclass(frozen=True)
class DefiningGraph:
    vertices: tuple[str, ...]
    edges: tuple[frozenset, ...]

    def neighbours(self, v: str) -> list[str]:
        return sorted(next(iter(e - {v})) for e in self.edges if v in e)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        start = min(self.vertices)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.neighbours(u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == set(self.vertices)


@dataclass(frozen=True)
class GluingMatrix:
    coxeter: CoxeterMatrix
    q: int
    columns: dict[tuple[str, str], tuple[int, ...]] = field(hash=False)

    @property
    def orientation(self) -> tuple[tuple[str, str], ...]:
        """Oriented edges, in edge-declaration order."""
        by_edge = {frozenset(st): st for st in self.columns}
        return tuple(by_edge[e] for e in self.coxeter.edge_order if e in by_edge)

    def m(self, s: str, t: str) -> float:
        return self.coxeter.m(s, t)

    def n(self, n: int, s: str, t: str) -> int:
        """The entry n(st) for an oriented edge (s, t)."""
        return self.columns[(s, t)][n - 1]

    def cyclic_order(self, s: str, t: str) -> int:
        """delta(st): q+1 for m=2, q^2+q+1 for m=3."""
        return self.q + 1 if self.m(s, t) == 2 else delta_of(self.q)

    def serialize(self) -> str:
        cx = self.coxeter
        lines = ["vertices " + " ".join(cx.vertices)]
        for e in cx.edge_order:
            s, t = self.orientation_of(e)
            lines.append(f"edge {s} {t} {cx.finite[e]}")
        lines.append(f"order {self.q}")
        for s, t in self.orientation:
            lines.append(f"column {s} {t} : " + " ".join(map(str, self.columns[(s, t)])))
        return "\n".join(lines) + "\n"

    def orientation_of(self, e: frozenset) -> tuple[str, str]:
        for st in self.columns:
            if frozenset(st) == e:
                return st
        a, b = sorted(e)
        return a, b


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_gluing(text: str) -> GluingMatrix:
    vertices: tuple[str, ...] | None = None
    finite: dict[frozenset, int] = {}
    edge_order: list[frozenset] = []
    q = None
    columns: dict[tuple[str, str], tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "vertices":
                vertices = tuple(tok[1:])
            elif tok[0] == "edge":
                _, a, b, mv = tok
                e = frozenset((a, b))
                if e in finite:
                    raise ParseError(f"line {lineno}: edge {a} {b} declared twice")
                finite[e] = int(mv)
                edge_order.append(e)
            elif tok[0] == "order":
                q = int(tok[1])
            elif tok[0] == "column":
                if tok[3] != ":":
                    raise ParseError(f"line {lineno}: expected ':' after column endpoints")
                key = (tok[1], tok[2])
                if key in columns or (key[1], key[0]) in columns:
                    raise ParseError(f"line {lineno}: second column for edge {key[0]} {key[1]}")
                columns[key] = tuple(int(v) for v in tok[4:])
            else:
                raise ParseError(f"line {lineno}: unknown directive {tok[0]!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed {tok[0]!r} line") from None
    if vertices is None:
        raise ParseError("missing 'vertices' line")
    if q is None:
        raise ParseError("missing 'order' line")
    return GluingMatrix(CoxeterMatrix(vertices, finite, tuple(edge_order)), q, columns)


@dataclass(frozen=True)
class GluingReport:
    valid: bool
    reason: str = ""
    column: tuple[str, str] | None = None

    def __str__(self) -> str:
        if self.valid:
            return "valid"
        where = f"column {self.column[0]} {self.column[1]}: " if self.column else ""
        return f"invalid: {where}{self.reason}"


def validate_gluing(g: GluingMatrix) -> GluingReport:
    cx = g.coxeter
    verts = set(cx.vertices)
    if len(verts) != len(cx.vertices):
        return GluingReport(False, "repeated vertex name")
    for e, mv in cx.finite.items():
        if len(e) != 2 or not e <= verts:
            return GluingReport(False, f"edge {sorted(e)} has unknown or repeated endpoints")
        if mv not in (2, 3):
            return GluingReport(False, f"edge {sorted(e)} has m={mv}; only 2, 3 are supported")
    if not cx.defining_graph().is_connected():
        return GluingReport(False, "defining graph is not connected")
    if g.q < 2:
        return GluingReport(False, f"order {g.q} < 2")
    for st in g.columns:
        if frozenset(st) not in cx.finite:
            return GluingReport(False, "column for a pair with no finite edge", st)
    oriented = {frozenset(st) for st in g.columns}
    for e in cx.edge_order:
        if e not in oriented:
            return GluingReport(False, f"edge {' '.join(sorted(e))} has no column")
    for st in g.orientation:
        col = g.columns[st]
        if len(col) != g.q:
            return GluingReport(False, f"expected {g.q} entries, got {len(col)}", st)
        if g.m(*st) == 2:
            if sorted(col) != list(range(1, g.q + 1)):
                return GluingReport(False, f"{col} is not a permutation of 1..{g.q}", st)
        else:
            delta = delta_of(g.q)
            if any(not 1 <= v < delta for v in col):
                return GluingReport(False, f"entries must lie in 1..{delta - 1}", st)
            rep = verify_difference_set((0,) + col, delta)
            if not rep.valid:
                return GluingReport(False, f"{{0}} + {col} mod {delta}: {rep.reason}", st)
    return GluingReport(True)


# -- the Singer graph W_M ----------------------------------------------------

@dataclass(frozen=True)
class WeylGraphData:
    q: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]  # oriented (s, t, m_st)
    residues: dict[tuple[str, str], SingerPolygon] = field(hash=False)
    omegas: dict[tuple[str, str], dict[int, int]] = field(default_factory=dict, hash=False)
    gluing: GluingMatrix | None = None

    @property
    def chambers(self) -> tuple[int, ...]:
        return tuple(range(self.q + 1))

    def serialize(self) -> str:
        lines = ["vertices " + " ".join(self.vertices), f"order {self.q}"]
        for s, t, mv in self.edges:
            lines.append(f"residue {s} {t} {mv}")
            lines += [f"suite: {g}" for g in self.residues[(s, t)].suites]
        return "\n".join(lines) + "\n"


def _pull_back(target: SingerPolygon, omega: dict[int, int], labels: tuple[str, str],
               q: int) -> SingerPolygon:
    inverse = {v: k for k, v in omega.items()}
    rename = dict(zip(target.labels, labels))
    suites = tuple(g.map(inverse).relabel(rename) for g in target.suites)
    return SingerPolygon(target.m, q, tuple(range(q + 1)), suites, labels=labels)


def build_weyl_graph(g: GluingMatrix) -> WeylGraphData:
    report = validate_gluing(g)
    if not report.valid:
        raise InvalidGluing(str(report))
    residues = {}
    omegas = {}
    edges = []
    for s, t in g.orientation:
        mv = int(g.m(s, t))
        col = g.columns[(s, t)]
        omega = {0: 0} | {n: col[n - 1] for n in range(1, g.q + 1)}
        if mv == 2:
            target = quotient_digon(g.q)
        else:
            target = quotient_triangle(DifferenceSet.of((0,) + col, delta_of(g.q)))
        residues[(s, t)] = _pull_back(target, omega, (s, t), g.q)
        omegas[(s, t)] = omega
        edges.append((s, t, mv))
    return WeylGraphData(g.q, g.coxeter.vertices, tuple(edges), residues, omegas, g)


def residue(w: WeylGraphData, edge: tuple[str, str]) -> SingerPolygon:
    a, b = edge
    if (a, b) in w.residues:
        return w.residues[(a, b)]
    if (b, a) in w.residues:
        return w.residues[(b, a)]
    raise NoSuchEdge(f"{a} {b} is not an edge of the defining graph")


def oriented_residue(w: WeylGraphData, s: str, t: str) -> SingerPolygon:
    """The residue on {s, t} with defining suites starting with label s."""
    p = residue(w, (s, t))
    if p.labels == (s, t):
        return p
    suites = tuple(g.reversed() for g in p.suites)
    return SingerPolygon(p.m, p.q, p.chambers, suites, labels=(s, t), base=p.base)


def extract_gluing_matrix(w: WeylGraphData,
                          orientation: list[tuple[str, str]] | None = None) -> GluingMatrix:
    """Normalize every residue at chamber 0; the bijections restricted to
    1..q are the columns."""
    if orientation is None:
        orientation = [(s, t) for s, t, _ in w.edges]
    if {frozenset(e) for e in orientation} != {frozenset((s, t)) for s, t, _ in w.edges} \
            or len(orientation) != len(w.edges):
        raise InvalidGluing("orientation must pick each edge exactly once")
    finite = {}
    edge_order = []
    columns = {}
    for s, t in orientation:
        p = oriented_residue(w, s, t)
        try:
            _, phi = normalize_polygon(p, 0)
        except NotSingerCyclic as exc:
            raise NotSingerCyclic(f"residue {s} {t}: {exc}") from None
        e = frozenset((s, t))
        finite[e] = p.m
        edge_order.append(e)
        columns[(s, t)] = tuple(phi[n] for n in range(1, w.q + 1))
    return GluingMatrix(CoxeterMatrix(w.vertices, finite, tuple(edge_order)), w.q, columns)


def parse_weyl(text: str) -> WeylGraphData:
    """Inverse of ``WeylGraphData.serialize`` (residue suites only)."""
    vertices = None
    q = None
    edges: list[tuple[str, str, int]] = []
    suites: dict[tuple[str, str], list[Gallery]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "vertices":
                vertices = tuple(tok[1:])
            elif tok[0] == "order":
                q = int(tok[1])
            elif tok[0] == "residue":
                _, a, b, mv = tok
                current = (a, b)
                if current in suites or (b, a) in suites:
                    raise ParseError(f"line {lineno}: residue {a} {b} declared twice")
                edges.append((a, b, int(mv)))
                suites[current] = []
            elif tok[0] == "suite:":
                if current is None:
                    raise ParseError(f"line {lineno}: suite before any residue")
                g = Gallery.parse(line.split(":", 1)[1])
                if set(g.types) - set(current):
                    raise ParseError(f"line {lineno}: suite labels outside {current}")
                suites[current].append(g)
            else:
                raise ParseError(f"line {lineno}: unknown directive {tok[0]!r}")
        except (ValueError, IndexError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: malformed line") from None
    if vertices is None or q is None:
        raise ParseError("missing 'vertices' or 'order' line")
    residues = {
        (a, b): SingerPolygon(mv, q, tuple(range(q + 1)), tuple(suites[(a, b)]), labels=(a, b))
        for a, b, mv in edges
    }
    return WeylGraphData(q, vertices, tuple(edges), residues)


def residues_isomorphic(a: SingerPolygon, b: SingerPolygon) -> dict | None:
    """A chamber bijection fixing 0 carrying a's suites onto b's, or None.

    Brute force over permutations of the non-base chambers; q is small.
    """
    if (a.m, a.q, len(a.suites)) != (b.m, b.q, len(b.suites)):
        return None
    rename = dict(zip(a.labels, b.labels))
    src = [g.relabel(rename) for g in a.suites]
    wanted = set(b.suites)
    others_a = [c for c in a.chambers if c != a.base]
    for img in permutations([c for c in b.chambers if c != b.base]):
        psi = dict(zip(others_a, img)) | {a.base: b.base}
        if all(g.map(psi) in wanted for g in src):
            return psi
    return None


# -- L-cycles ----------------------------------------------------------------

def _normal_form(cycle: list[str]) -> tuple[str, ...]:
    body = cycle[:-1]
    i = body.index(min(body))
    body = body[i:] + body[:i]
    if len(body) > 2 and body[-1] < body[1]:
        body = [body[0]] + body[1:][::-1]
    return tuple(body + [body[0]])


def cycle_basis(l: DefiningGraph) -> list[tuple[str, ...]]:
    """Fundamental cycles of the BFS tree rooted at the smallest vertex,
    one per non-tree edge, each in normal form (closed vertex sequence)."""
    if not l.is_connected():
        raise ValueError("defining graph must be connected")
    if not l.vertices:
        return []
    root = min(l.vertices)
    parent: dict[str, str | None] = {root: None}
    depth = {root: 0}
    tree = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in l.neighbours(u):
            if v not in parent:
                parent[v] = u
                depth[v] = depth[u] + 1
                tree.add(frozenset((u, v)))
                queue.append(v)
    cycles = []
    for e in sorted(l.edges, key=lambda e: tuple(sorted(e))):
        if e in tree:
            continue
        u, v = sorted(e)
        pu, pv = [u], [v]
        while pu[-1] != pv[-1]:
            if depth[pu[-1]] >= depth[pv[-1]]:
                pu.append(parent[pu[-1]])
            else:
                pv.append(parent[pv[-1]])
        # junction -> ... -> u -> v -> ... -> junction
        walk = pu[::-1] + pv[:-1]
        cycles.append(_normal_form(walk + [walk[0]]))
    return cycles
