"""Generalized digons and triangles as chamber systems, their cyclic
panel-regular actions, and the quotient Singer polygons with flowers and
defining suites.

Chambers of a ``ChamberSystem`` are the integers ``0..N-1``; ``coords``
maps each one to its ``(x, y)`` realization.  Quotient chambers are
residues: ``Z/kZ`` for the digon, the elements of a based difference set
for the triangle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product
from math import gcd
from typing import Callable, Hashable, Iterable

from .difference_sets import DifferenceSet, based_difference_sets, delta_of
from .errors import (
    ChamberNotFound,
    NotSingerCyclic,
    PreconditionViolated,
    UnsupportedChamberSystem,
)

S, T = "s", "t"


# -- chamber systems ---------------------------------------------------------

@dataclass
class ChamberSystem:
    coords: tuple[tuple[int, int], ...]
    labels: tuple[str, str] = (S, T)
    kind: str = ""
    moduli: tuple[int, int] = (0, 0)
    difference_set: DifferenceSet | None = None
    panels: dict[str, tuple[frozenset[int], ...]] = field(init=False, repr=False)
    _panel_of: dict[str, tuple[int, ...]] = field(init=False, repr=False)
    _index: dict[tuple[int, int], int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._index = {c: i for i, c in enumerate(self.coords)}
        self.panels = {}
        self._panel_of = {}
        for axis, label in enumerate(self.labels):
            groups: dict[int, list[int]] = {}
            for i, c in enumerate(self.coords):
                groups.setdefault(c[axis], []).append(i)
            keys = sorted(groups)
            self.panels[label] = tuple(frozenset(groups[k]) for k in keys)
            where = [0] * len(self.coords)
            for pi, k in enumerate(keys):
                for i in groups[k]:
                    where[i] = pi
            self._panel_of[label] = tuple(where)

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def chambers(self) -> range:
        return range(len(self.coords))

    def index(self, coord: tuple[int, int]) -> int:
        try:
            return self._index[coord]
        except KeyError:
            raise ChamberNotFound(coord) from None

    def panel_index(self, label: str, chamber: int) -> int:
        return self._panel_of[label][chamber]

    def panel(self, label: str, chamber: int) -> frozenset[int]:
        return self.panels[label][self._panel_of[label][chamber]]

    def adjacent(self, label: str, a: int, b: int) -> bool:
        return self._panel_of[label][a] == self._panel_of[label][b]


def build_digon(q1: int, q2: int) -> ChamberSystem:
    """The k1 x k2 grid; s-panels are columns (equal x), t-panels rows (equal y)."""
    if q1 < 1 or q2 < 1:
        raise ValueError("q1, q2 must be >= 1")
    k1, k2 = q1 + 1, q2 + 1
    coords = tuple((x, y) for x in range(k1) for y in range(k2))
    return ChamberSystem(coords, kind="digon", moduli=(k1, k2))


def build_triangle(d: DifferenceSet) -> ChamberSystem:
    delta = d.delta
    coords = tuple(sorted((x, (x + e) % delta) for x in range(delta) for e in d.elements))
    return ChamberSystem(coords, kind="triangle", moduli=(delta, delta), difference_set=d)


# -- generalized polygon axioms ----------------------------------------------

@dataclass(frozen=True)
class PolygonReport:
    m: int
    passed: bool
    bipartite: bool
    diameter: float
    girth: float
    min_thickness: int
    witness: str = ""

    def __str__(self) -> str:
        head = "pass" if self.passed else "fail"
        s = (f"{head} m={self.m} diameter={self.diameter} girth={self.girth} "
             f"bipartite={self.bipartite} thickness={self.min_thickness}")
        return s + (f" ({self.witness})" if self.witness else "")


def incidence_graph(c: ChamberSystem) -> tuple[list[tuple[str, int]], list[tuple[int, int]]]:
    """Panels as vertices, one edge per chamber (s-panel -- t-panel)."""
    ls, lt = c.labels
    ns = len(c.panels[ls])
    verts = [(ls, i) for i in range(ns)] + [(lt, j) for j in range(len(c.panels[lt]))]
    edges = [(c.panel_index(ls, ch), ns + c.panel_index(lt, ch)) for ch in c.chambers]
    return verts, edges


def _bfs(adj: list[list[tuple[int, int]]], root: int) -> tuple[list[float], list[int]]:
    dist: list[float] = [float("inf")] * len(adj)
    via = [-1] * len(adj)
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, e in adj[u]:
            if dist[v] == float("inf"):
                dist[v] = dist[u] + 1
                via[v] = e
                queue.append(v)
    return dist, via


def verify_generalized_polygon(c: ChamberSystem, m: int) -> PolygonReport:
    verts, edges = incidence_graph(c)
    n = len(verts)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        adj[u].append((v, e))
        adj[v].append((u, e))

    color = [-1] * n
    bipartite = True
    for root in range(n):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    bipartite = False

    diameter: float = 0
    far = ""
    girth: float = float("inf")
    for root in range(n):
        dist, via = _bfs(adj, root)
        ecc = max(dist)
        if ecc > diameter:
            diameter = ecc
            far = f"{verts[root]} to {verts[dist.index(ecc)]}"
        for e, (u, v) in enumerate(edges):
            if e != via[u] and e != via[v]:
                girth = min(girth, dist[u] + dist[v] + 1)

    thickness = min(len(p) for lab in c.labels for p in c.panels[lab])
    witness = ""
    if not bipartite:
        witness = "incidence graph not bipartite"
    elif diameter != m:
        witness = f"diameter {diameter} != {m}: {far}"
    elif girth != 2 * m:
        witness = f"girth {girth} != {2 * m}"
    elif thickness < 2:
        witness = f"a panel has {thickness} chamber(s)"
    return PolygonReport(m, not witness, bipartite, diameter, girth, thickness, witness)


# -- cyclic actions ----------------------------------------------------------

@dataclass(frozen=True)
class CyclicAction:
    order: int
    generator: tuple[int, ...]

    def power(self, d: int) -> tuple[int, ...]:
        perm = tuple(range(len(self.generator)))
        for _ in range(d):
            perm = tuple(self.generator[i] for i in perm)
        return perm

    def apply(self, d: int, chambers: Iterable[int]) -> frozenset[int]:
        g = self.power(d)
        return frozenset(g[i] for i in chambers)


def identity_action(c: ChamberSystem) -> CyclicAction:
    return CyclicAction(1, tuple(c.chambers))


def standard_action(c: ChamberSystem) -> CyclicAction:
    """(x, y) -> (x+1, y+1) on a digon D(q, q) or a triangle T(D)."""
    k1, k2 = c.moduli
    if c.kind not in ("digon", "triangle") or k1 != k2:
        raise UnsupportedChamberSystem(
            f"no standard panel-regular cyclic action on {c.kind or 'this'} system with moduli {c.moduli}")
    k = k1
    gen = tuple(c.index(((x + 1) % k, (y + 1) % k)) for x, y in c.coords)
    return CyclicAction(k, gen)


def _is_permutation(perm: tuple[int, ...], n: int) -> bool:
    return len(perm) == n and sorted(perm) == list(range(n))


def preserves_panels(c: ChamberSystem, perm: tuple[int, ...]) -> bool:
    for lab in c.labels:
        for p in c.panels[lab]:
            img = frozenset(perm[i] for i in p)
            if img != c.panel(lab, next(iter(img))):
                return False
    return True


def verify_panel_regular(c: ChamberSystem, a: CyclicAction) -> bool:
    n = len(c)
    if not _is_permutation(a.generator, n) or a.order < 1:
        return False
    if a.power(a.order) != tuple(range(n)):
        return False
    if not preserves_panels(c, a.generator):
        return False
    for lab in c.labels:
        panels = c.panels[lab]
        if len(panels) != a.order:
            return False
        start = panels[0]
        orbit = {start}
        cur = start
        for _ in range(a.order - 1):
            cur = frozenset(a.generator[i] for i in cur)
            orbit.add(cur)
        if len(orbit) != len(panels):
            return False
    return True


def automorphisms(c: ChamberSystem):
    """Every label-preserving chamber automorphism, by brute force over
    panel permutations.  Only usable for tiny systems."""
    ls, lt = c.labels
    ns, nt = len(c.panels[ls]), len(c.panels[lt])
    by_pair = {(c.panel_index(ls, ch), c.panel_index(lt, ch)): ch for ch in c.chambers}
    if len(by_pair) != len(c):
        raise UnsupportedChamberSystem("chambers not determined by their panels")
    pairs = list(by_pair.items())
    for ps in permutations(range(ns)):
        for pt in permutations(range(nt)):
            perm = [0] * len(c)
            for (i, j), ch in pairs:
                img = by_pair.get((ps[i], pt[j]))
                if img is None:
                    break
                perm[ch] = img
            else:
                yield tuple(perm)


def find_equivariant_isomorphism(c: ChamberSystem, a: CyclicAction,
                                 b: CyclicAction) -> tuple[int, ...] | None:
    """A chamber automorphism phi with phi(a x) = b phi(x), both actions panel-regular."""
    if a.order != b.order or not (verify_panel_regular(c, a) and verify_panel_regular(c, b)):
        return None
    ls, lt = c.labels
    ga, gb = a.generator, b.generator

    def orbit_images(label: str, start_img: frozenset[int]) -> dict[frozenset[int], frozenset[int]]:
        src = c.panels[label][0]
        out = {}
        for _ in range(a.order):
            out[src] = start_img
            src = frozenset(ga[i] for i in src)
            start_img = frozenset(gb[i] for i in start_img)
        return out

    for ps, pt in product(c.panels[ls], c.panels[lt]):
        fs, ft = orbit_images(ls, ps), orbit_images(lt, pt)
        perm = []
        for ch in c.chambers:
            meet = fs[c.panel(ls, ch)] & ft[c.panel(lt, ch)]
            if len(meet) != 1:
                break
            perm.append(next(iter(meet)))
        else:
            phi = tuple(perm)
            if (_is_permutation(phi, len(c)) and preserves_panels(c, phi)
                    and all(phi[ga[x]] == gb[phi[x]] for x in c.chambers)):
                return phi
    return None


# -- galleries and Singer polygons -------------------------------------------

Chamber = Hashable


@dataclass(frozen=True)
class Gallery:
    start: Chamber
    steps: tuple[tuple[str, Chamber], ...]

    @classmethod
    def alternating(cls, chambers: Iterable[Chamber], labels: tuple[str, str] = (S, T)) -> Gallery:
        seq = list(chambers)
        return cls(seq[0], tuple((labels[i % 2], ch) for i, ch in enumerate(seq[1:])))

    @property
    def chambers(self) -> tuple[Chamber, ...]:
        return (self.start,) + tuple(ch for _, ch in self.steps)

    @property
    def types(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.steps)

    @property
    def end(self) -> Chamber:
        return self.steps[-1][1] if self.steps else self.start

    @property
    def closed(self) -> bool:
        return self.end == self.start

    def is_stutter_free(self) -> bool:
        seq = self.chambers
        return all(a != b for a, b in zip(seq, seq[1:]))

    def reversed(self) -> Gallery:
        seq = self.chambers
        types = self.types
        return Gallery(seq[-1], tuple((types[i], seq[i]) for i in range(len(types) - 1, -1, -1)))

    def __add__(self, other: Gallery) -> Gallery:
        if self.end != other.start:
            raise ValueError("galleries do not compose")
        return Gallery(self.start, self.steps + other.steps)

    def map(self, f: Callable[[Chamber], Chamber] | dict) -> Gallery:
        g = f.__getitem__ if isinstance(f, dict) else f
        return Gallery(g(self.start), tuple((lab, g(ch)) for lab, ch in self.steps))

    def relabel(self, labels: dict[str, str]) -> Gallery:
        return Gallery(self.start, tuple((labels[lab], ch) for lab, ch in self.steps))

    def __str__(self) -> str:
        return " ".join([str(self.start)] + [f"{lab} {ch}" for lab, ch in self.steps])

    @classmethod
    def parse(cls, text: str) -> Gallery:
        tok = text.split()
        if len(tok) % 2 == 0:
            raise ValueError(f"malformed gallery: {text!r}")
        start = int(tok[0])
        return cls(start, tuple((tok[i], int(tok[i + 1])) for i in range(1, len(tok), 2)))


@dataclass(frozen=True)
class Petal:
    st: Gallery
    ts: Gallery

    def cycle(self) -> Gallery:
        return self.st + self.ts.reversed()


@dataclass(frozen=True)
class SingerPolygon:
    m: int
    q: int
    chambers: tuple[Chamber, ...]
    suites: tuple[Gallery, ...]
    labels: tuple[str, str] = (S, T)
    base: Chamber = 0
    difference_set: DifferenceSet | None = None
    canonical: bool = False

    @property
    def modulus(self) -> int:
        return self.q + 1 if self.m == 2 else delta_of(self.q)

    def serialize(self) -> str:
        lines = [f"polygon m={self.m} q={self.q}"]
        lines += [f"suite: {g}" for g in self.suites]
        return "\n".join(lines) + "\n"


def quotient_digon(q: int) -> SingerPolygon:
    """k\\D(q) on Z/kZ; suites [0 s y t z s (z-y) t 0] with 0 != y != z."""
    if q < 1:
        raise ValueError("q must be >= 1")
    k = q + 1
    suites = tuple(
        Gallery.alternating((0, y, z, (z - y) % k, 0))
        for y in range(1, k) for z in range(k) if z != y
    )
    return SingerPolygon(2, q, tuple(range(k)), suites, canonical=True)


def quotient_triangle(d: DifferenceSet) -> SingerPolygon:
    """delta\\T(D) on a based D; suites [0 s x t y s z t y' s x' t 0] with y'-x' = x-y+z."""
    if not d.based:
        raise ValueError("difference set must be based")
    suites = []
    for x in d.nonzero:
        for y in d.elements:
            if y == x:
                continue
            for z in d.elements:
                if z == y:
                    continue
                y2, x2 = d.pair_with_difference(x - y + z)
                suites.append(Gallery.alternating((0, x, y, z, y2, x2, 0)))
    return SingerPolygon(3, d.q, d.elements, tuple(suites), difference_set=d, canonical=True)


def _require_chamber(p: SingerPolygon, c: Chamber) -> None:
    if c not in p.chambers:
        raise ChamberNotFound(f"{c!r} is not a chamber of the polygon")


def flower(p: SingerPolygon, base: Chamber) -> list[Petal]:
    """Petals [base s .. t .. (s ..)] ~ [base t .. s .. (t ..)] with a unique partner each."""
    _require_chamber(p, base)
    ls, lt = p.labels
    if not p.canonical:
        if base != p.base:
            raise UnsupportedChamberSystem("flowers of a bare residue are known only at its base")
        half = p.m
        out = []
        for g in p.suites:
            seq = g.chambers
            out.append(Petal(Gallery.alternating(seq[:half + 1], (ls, lt)),
                             Gallery.alternating(seq[half:][::-1], (lt, ls))))
        return out

    petals = []
    if p.m == 2:
        k = p.modulus
        for y in p.chambers:
            if y == base:
                continue
            for z in p.chambers:
                if z == y:
                    continue
                partners = [w for w in p.chambers
                            if w != base and w != z and w == (base - y + z) % k]
                if len(partners) != 1:
                    raise NotSingerCyclic(f"petal partner of {(base, y, z)} not unique: {partners}")
                petals.append(Petal(Gallery.alternating((base, y, z), (ls, lt)),
                                    Gallery.alternating((base, partners[0], z), (lt, ls))))
        return petals

    delta = p.modulus
    els = p.chambers
    for x in els:
        if x == base:
            continue
        for y in els:
            if y == x:
                continue
            for z in els:
                if z == y:
                    continue
                target = (base - x + y - z) % delta
                partners = [(x2, y2) for x2 in els for y2 in els
                            if x2 != base and y2 != x2 and z != y2 and (x2 - y2) % delta == target]
                if len(partners) != 1:
                    raise NotSingerCyclic(f"petal partner of {(base, x, y, z)} not unique: {partners}")
                x2, y2 = partners[0]
                petals.append(Petal(Gallery.alternating((base, x, y, z), (ls, lt)),
                                    Gallery.alternating((base, x2, y2, z), (lt, ls))))
    return petals


def is_flower_cycle(p: SingerPolygon, g: Gallery) -> bool:
    """Is ``g`` a closed alternating s/t gallery of length 2m whose two halves
    form a petal of the flower of the canonical polygon ``p`` at its start?"""
    ls, lt = p.labels
    if len(g.steps) != 2 * p.m or not g.closed or not g.is_stutter_free():
        return False
    if g.types != tuple((ls, lt)[i % 2] for i in range(2 * p.m)):
        return False
    seq = g.chambers
    if any(ch not in p.chambers for ch in seq):
        return False
    n = p.modulus
    if p.m == 2:
        x, y, z, w, _ = seq
        return w == (x - y + z) % n
    c, x, y, z, y2, x2, _ = seq
    return (x2 - y2) % n == (c - x + y - z) % n


def rotation_automorphism(p: SingerPolygon, r: int) -> dict[int, int]:
    """x -> x + r on k\\D(q); asserts every suite maps to a flower cycle."""
    if p.m != 2 or not p.canonical:
        raise UnsupportedChamberSystem("rotations are defined on the canonical Singer digon")
    k = p.modulus
    perm = {x: (x + r) % k for x in p.chambers}
    for g in p.suites:
        if not is_flower_cycle(p, g.map(perm)):
            raise AssertionError(f"rotation by {r} breaks suite {g}")
    return perm


def _transported_ok(src: SingerPolygon, target: SingerPolygon, phi: dict) -> bool:
    return all(is_flower_cycle(target, g.map(phi)) for g in src.suites)


def _search_normalization(p: SingerPolygon) -> tuple[SingerPolygon, dict]:
    """Brute-force a bijection sending p.base to 0 and p's suites onto the
    defining suites of a canonical polygon.  Smallest column wins."""
    others = sorted((c for c in p.chambers if c != p.base))
    if len(others) != p.q or len(p.suites) != p.q ** p.m:
        raise NotSingerCyclic(f"wrong shape: {len(p.chambers)} chambers, {len(p.suites)} suites")
    suites = {g.chambers for g in p.suites}
    if p.m == 2:
        target = quotient_digon(p.q)
        wanted = {g.chambers for g in target.suites}
        for col in permutations(range(1, p.q + 1)):
            phi = dict(zip(others, col)) | {p.base: 0}
            if {tuple(phi[c] for c in s) for s in suites} == wanted:
                return target, phi
        raise NotSingerCyclic("no digon normalization matches the suites")
    candidates = []
    for d in based_difference_sets(p.q):
        for col in permutations(d.nonzero):
            candidates.append((col, d))
    candidates.sort(key=lambda cd: cd[0])
    cache: dict[tuple[int, ...], set] = {}
    for col, d in candidates:
        if d.elements not in cache:
            cache[d.elements] = {g.chambers for g in quotient_triangle(d).suites}
        phi = dict(zip(others, col)) | {p.base: 0}
        if {tuple(phi[c] for c in s) for s in suites} == cache[d.elements]:
            return quotient_triangle(d), phi
    raise NotSingerCyclic("no triangle normalization matches the suites")


def normalize_polygon(p: SingerPolygon, c: Chamber) -> tuple[SingerPolygon, dict]:
    """An isomorphism onto a canonical polygon sending ``c`` to 0.

    Returns ``(target, phi)`` with ``phi`` a chamber bijection.  For
    triangles the target difference set is the lexicographically smallest
    one reachable by d -> r(d - c).
    """
    _require_chamber(p, c)
    if p.m not in (2, 3):
        raise NotSingerCyclic(f"gonality {p.m} unsupported")
    if not p.canonical:
        target, phi0 = _search_normalization(p)
        if c == p.base:
            return target, phi0
        target2, phi1 = normalize_polygon(target, phi0[c])
        return target2, {x: phi1[phi0[x]] for x in p.chambers}

    if p.m == 2:
        k = p.modulus
        phi = {x: (x - c) % k for x in p.chambers}
        target = quotient_digon(p.q)
    else:
        delta = p.modulus
        best = None
        for r in range(1, delta):
            if gcd(r, delta) != 1:
                continue
            cand = tuple(sorted(r * (x - c) % delta for x in p.chambers))
            if best is None or cand < best[0]:
                best = (cand, r)
        els, r = best
        target = quotient_triangle(DifferenceSet(p.q, delta, els))
        phi = {x: r * (x - c) % delta for x in p.chambers}
    if not _transported_ok(p, target, phi):
        raise NotSingerCyclic("normalization does not preserve flowers")
    return target, phi


# -- coverings ---------------------------------------------------------------

def coordinate_projection(c: ChamberSystem) -> Callable[[int], int]:
    """Chamber (x, y) lies over quotient chamber y - x (mod the modulus)."""
    k = c.moduli[0]
    return lambda ch: (c.coords[ch][1] - c.coords[ch][0]) % k


def lift(total: ChamberSystem, proj: Callable[[int], Chamber], g: Gallery,
         start: int, labels: dict[str, str]) -> int | None:
    """Endpoint of the lift of ``g`` from ``start``, or None if a step fails to lift."""
    cur = start
    if proj(cur) != g.start:
        return None
    for lab, target in g.steps:
        hits = [ch for ch in total.panel(labels[lab], cur) if ch != cur and proj(ch) == target]
        if len(hits) != 1:
            return None
        cur = hits[0]
    return cur


def verify_covering(total: ChamberSystem, a: CyclicAction, quotient: SingerPolygon,
                    projection: Callable[[int], Chamber] | None = None) -> bool:
    if not verify_panel_regular(total, a):
        raise PreconditionViolated("action is not panel-regular")
    if len(quotient.chambers) * a.order != len(total):
        raise PreconditionViolated("chamber counts do not match")
    proj = projection or coordinate_projection(total)
    labels = dict(zip(quotient.labels, total.labels))

    # (i) orbit map is a bijection onto quotient chambers, bijective on panels
    seen: dict[Chamber, int] = {}
    for ch in total.chambers:
        if proj(a.generator[ch]) != proj(ch):
            return False
    for ch in total.chambers:
        seen[proj(ch)] = seen.get(proj(ch), 0) + 1
    if set(seen) != set(quotient.chambers) or any(v != a.order for v in seen.values()):
        return False
    for lab in total.labels:
        for pan in total.panels[lab]:
            if sorted(map(proj, pan), key=repr) != sorted(quotient.chambers, key=repr):
                return False

    # (ii) every defining suite lifts closed from every chamber over the base
    fiber = [ch for ch in total.chambers if proj(ch) == quotient.base]
    for g in quotient.suites:
        for start in fiber:
            if lift(total, proj, g, start, labels) != start:
                return False
    return True


def difference_set_from_action(t: ChamberSystem, a: CyclicAction,
                               p: frozenset[int], l: frozenset[int]) -> DifferenceSet:
    """{d : p meets g^d l} for an s-panel p and t-panel l."""
    ls, lt = t.labels
    if p not in t.panels[ls] or l not in t.panels[lt]:
        raise PreconditionViolated("p must be an s-panel and l a t-panel")
    if not verify_panel_regular(t, a):
        raise PreconditionViolated("action is not panel-regular")
    out = []
    cur = l
    for d in range(a.order):
        if p & cur:
            out.append(d)
        cur = frozenset(a.generator[i] for i in cur)
    try:
        return DifferenceSet.of(out, a.order)
    except ValueError as exc:
        raise PreconditionViolated(f"not a generalized triangle: {exc}") from None
