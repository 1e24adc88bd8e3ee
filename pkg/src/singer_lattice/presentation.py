"""Finite presentations: universal and fundamental groups of Singer polygons
and Weyl graphs, the lattice presentation read off a gluing matrix, and
Tietze-style simplification.

A word is a tuple of ``(generator, exponent)`` pairs with nonzero
exponents.  Presentations print as::

    gen a_s_t
    rel a_s_t^7
    rel a_s_t^1 a_t_u^1 a_u_s^1
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InvalidGluing, ParseError
from .polygons import Gallery, SingerPolygon, normalize_polygon
from .weyl import GluingMatrix, WeylGraphData, cycle_basis, validate_gluing

Word = tuple[tuple[str, int], ...]


# -- words -------------------------------------------------------------------

def free_reduce(word) -> Word:
    out: list[list] = []
    for g, e in word:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def cyclic_reduce(word) -> Word:
    w = list(free_reduce(word))
    while len(w) > 1 and w[0][0] == w[-1][0]:
        g = w[0][0]
        e = w[0][1] + w[-1][1]
        w = w[1:-1]
        if e:
            w = [(g, e)] + w
        w = list(free_reduce(w))
    return tuple(w)


def inverse(word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def word_power(word, n: int) -> Word:
    if n < 0:
        return free_reduce(inverse(word) * -n)
    return free_reduce(tuple(word) * n)


def substitute(word, gen: str, replacement) -> Word:
    out: list[tuple[str, int]] = []
    for g, e in word:
        if g == gen:
            out.extend(word_power(replacement, e))
        else:
            out.append((g, e))
    return free_reduce(out)


def format_word(word) -> str:
    return " ".join(f"{g}^{e}" for g, e in word)


def parse_word(text: str) -> Word:
    out = []
    for tok in text.split():
        g, sep, e = tok.rpartition("^")
        if not sep:
            g, e = tok, "1"
        try:
            out.append((g, int(e)))
        except ValueError:
            raise ParseError(f"bad factor {tok!r}") from None
    return tuple(out)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        known = set(self.generators)
        if len(known) != len(self.generators):
            raise ValueError("repeated generator")
        for r in self.relators:
            for g, e in r:
                if g not in known:
                    raise ValueError(f"relator uses undeclared generator {g!r}")
            if free_reduce(r) != tuple(r):
                raise ValueError(f"relator {format_word(r)} is not freely reduced")

    @classmethod
    def make(cls, generators, relators) -> GroupPresentation:
        """Freely reduce, drop empty and duplicate relators, keep first-seen order."""
        seen = set()
        rels = []
        for r in relators:
            r = free_reduce(r)
            if r and r not in seen:
                seen.add(r)
                rels.append(r)
        return cls(tuple(generators), tuple(rels))

    def serialize(self) -> str:
        lines = [f"gen {g}" for g in self.generators]
        lines += [f"rel {format_word(r)}" for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> GroupPresentation:
        gens, rels = [], []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "gen":
                gens.extend(rest.split())
            elif head == "rel":
                rels.append(parse_word(rest))
            else:
                raise ParseError(f"line {lineno}: expected 'gen' or 'rel'")
        try:
            return cls.make(gens, rels)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self) -> str:
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


def kill(p: GroupPresentation, gens) -> GroupPresentation:
    """Quotient by the normal closure of ``gens`` (delete them)."""
    dead = set(gens)
    return GroupPresentation.make(
        [g for g in p.generators if g not in dead],
        [tuple((g, e) for g, e in r if g not in dead) for r in p.relators])


def eliminate(p: GroupPresentation, gen: str, replacement, drop=None) -> GroupPresentation:
    """Substitute ``gen = replacement`` everywhere and drop the generator.

    ``drop`` is the relator expressing that equation, if present.
    """
    rels = [substitute(r, gen, replacement) for r in p.relators if r != drop]
    return GroupPresentation.make([g for g in p.generators if g != gen], rels)


# -- polygons ----------------------------------------------------------------

def gen_name(n: int, label: str) -> str:
    return f"g_{n}_{label}"


def _canonical(p: SingerPolygon) -> SingerPolygon:
    return p if p.canonical else normalize_polygon(p, p.base)[0]


def universal_presentation_polygon(p: SingerPolygon) -> GroupPresentation:
    """< g_(n,s), g_(n,t), a | a^k, a^n g_(n,t) g_(n,s)^-1 >, n over the nonzero chambers."""
    p = _canonical(p)
    ls, lt = p.labels
    nonzero = [c for c in p.chambers if c != 0]
    gens = [name for n in nonzero for name in (gen_name(n, ls), gen_name(n, lt))] + ["a"]
    rels = [(("a", p.modulus),)]
    for n in nonzero:
        rels.append((("a", n), (gen_name(n, lt), 1), (gen_name(n, ls), -1)))
    return GroupPresentation.make(gens, rels)


def fundamental_presentation_polygon(p: SingerPolygon) -> GroupPresentation:
    """Kill the tree {g_(n,t)}, then eliminate g_(n,s) = a^n."""
    p = _canonical(p)
    ls, lt = p.labels
    nonzero = [c for c in p.chambers if c != 0]
    pres = kill(universal_presentation_polygon(p), [gen_name(n, lt) for n in nonzero])
    for n in nonzero:
        g = gen_name(n, ls)
        pres = eliminate(pres, g, (("a", n),), drop=(("a", n), (g, -1)))
    return pres


def _edge_word(start, lab: str, end) -> list[tuple[str, int]]:
    # the edge x -s-> y of a setoid panel is g_(x,s)^-1 g_(y,s); g_(0,s) = 1
    out = []
    if start != 0:
        out.append((gen_name(start, lab), -1))
    if end != 0:
        out.append((gen_name(end, lab), 1))
    return out


def suite_word(g: Gallery) -> Word:
    w: list[tuple[str, int]] = []
    cur = g.start
    for lab, nxt in g.steps:
        w.extend(_edge_word(cur, lab, nxt))
        cur = nxt
    return free_reduce(w)


def suite_presentation(p: SingerPolygon | WeylGraphData) -> GroupPresentation:
    """Universal group straight from the defining suites (no substitutions)."""
    if isinstance(p, SingerPolygon):
        polys = [p]
        labels = list(p.labels)
    else:
        polys = [p.residues[(s, t)] for s, t, _ in p.edges]
        labels = list(p.vertices)
    chambers = sorted({c for poly in polys for c in poly.chambers if c != 0})
    gens = [gen_name(n, lab) for n in chambers for lab in labels]
    rels = [suite_word(g) for poly in polys for g in poly.suites]
    return GroupPresentation.make(gens, rels)


# -- Weyl graphs and lattices ------------------------------------------------

def lattice_generator(s: str, t: str) -> str:
    return f"a_{s}_{t}"


def _gluing_of(w: WeylGraphData) -> GluingMatrix:
    if w.gluing is not None:
        return w.gluing
    from .weyl import extract_gluing_matrix
    return extract_gluing_matrix(w)


def universal_presentation_weyl(w: WeylGraphData) -> GroupPresentation:
    """< g_(n,v), a_st | a_st^delta(st), a_st^n(st) g_(n,t) g_(n,s)^-1 >."""
    g = _gluing_of(w)
    gens = [gen_name(n, v) for n in range(1, g.q + 1) for v in g.coxeter.vertices]
    gens += [lattice_generator(s, t) for s, t in g.orientation]
    rels = [((lattice_generator(s, t), g.cyclic_order(s, t)),) for s, t in g.orientation]
    for s, t in g.orientation:
        a = lattice_generator(s, t)
        for n in range(1, g.q + 1):
            rels.append(((a, g.n(n, s, t)), (gen_name(n, t), 1), (gen_name(n, s), -1)))
    return GroupPresentation.make(gens, rels)


def cycle_factors(g: GluingMatrix, cycle, n: int) -> list[tuple[str, str, int]]:
    """Per step of an L-cycle: (s, t, exponent) on the oriented generator a_st.
    Traversing (s, t) against the orientation contributes -n(st)."""
    oriented = set(g.orientation)
    out = []
    for u, v in zip(cycle, cycle[1:]):
        if (u, v) in oriented:
            out.append((u, v, g.n(n, u, v)))
        elif (v, u) in oriented:
            out.append((v, u, -g.n(n, v, u)))
        else:
            raise InvalidGluing(f"{u} {v} is not an edge")
    return out


def cycle_relator(g: GluingMatrix, cycle, n: int) -> Word:
    return free_reduce(tuple((lattice_generator(s, t), e) for s, t, e in cycle_factors(g, cycle, n)))


def telescope(g: GluingMatrix, cycle, n: int) -> Word:
    """The cycle relator with each a_st^(+-n(st)) replaced by g_(n,s) g_(n,t)^-1
    (or its inverse), freely reduced.  Empty iff the relation is induced."""
    out: list[tuple[str, int]] = []
    for s, t, e in cycle_factors(g, cycle, n):
        piece = ((gen_name(n, s), 1), (gen_name(n, t), -1))
        out.extend(piece if e > 0 else inverse(piece))
    return free_reduce(out)


def lattice_presentation(g: GluingMatrix) -> GroupPresentation:
    report = validate_gluing(g)
    if not report.valid:
        raise InvalidGluing(str(report))
    gens = [lattice_generator(s, t) for s, t in g.orientation]
    rels = [((lattice_generator(s, t), g.cyclic_order(s, t)),) for s, t in g.orientation]
    for cycle in cycle_basis(g.coxeter.defining_graph()):
        for n in range(1, g.q + 1):
            rels.append(cycle_relator(g, cycle, n))
    return GroupPresentation.make(gens, rels)


def fundamental_from_suites(w: WeylGraphData, xi: str | None = None) -> GroupPresentation:
    """pi_1(W, T) for the tree T = {g_(n, xi)}, computed from raw suites."""
    xi = xi or min(w.vertices)
    p = suite_presentation(w)
    return kill(p, [gen_name(n, xi) for n in range(1, w.q + 1)])


# -- simplification ----------------------------------------------------------

def _eliminable(p: GroupPresentation):
    """(generator, relator) pairs where the generator occurs once, exponent +-1."""
    for r in p.relators:
        counts = Counter(g for g, _ in r)
        for g, e in r:
            if abs(e) == 1 and counts[g] == 1:
                yield g, r


def simplify(p: GroupPresentation) -> GroupPresentation:
    """Free and cyclic reduction plus Tietze eliminations, to a fixed point.

    Among eliminable generators the one occurring in fewest relators goes
    first; ties go to the latest declared.
    """
    cur = GroupPresentation.make(p.generators, [cyclic_reduce(r) for r in p.relators])
    while True:
        options = list(_eliminable(cur))
        if not options:
            return cur
        usage = Counter(g for r in cur.relators for g in {x for x, _ in r})
        position = {g: i for i, g in enumerate(cur.generators)}
        gen, rel = min(options, key=lambda o: (usage[o[0]], -position[o[0]], len(o[1])))
        i = next(k for k, (g, _) in enumerate(rel) if g == gen)
        rotated = rel[i:] + rel[:i]
        rest = rotated[1:]
        # gen^e * rest = 1
        replacement = inverse(rest) if rotated[0][1] == 1 else tuple(rest)
        cur = eliminate(cur, gen, replacement, drop=rel)
        cur = GroupPresentation.make(cur.generators, [cyclic_reduce(r) for r in cur.relators])
