from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest

from singer_lattice.difference_sets import (
    DifferenceSet,
    are_equivalent,
    based_difference_sets,
    singer_difference_set,
    translate_scale,
)
from singer_lattice.errors import (
    ChamberNotFound,
    NotSingerCyclic,
    PreconditionViolated,
    UnsupportedChamberSystem,
)
from singer_lattice.polygons import (
    CyclicAction,
    Gallery,
    SingerPolygon,
    automorphisms,
    build_digon,
    build_triangle,
    difference_set_from_action,
    find_equivariant_isomorphism,
    flower,
    identity_action,
    incidence_graph,
    is_flower_cycle,
    normalize_polygon,
    quotient_digon,
    quotient_triangle,
    rotation_automorphism,
    standard_action,
    verify_covering,
    verify_generalized_polygon,
    verify_panel_regular,
)

# Reference chamber sequences; labels always alternate s, t.
FANO_SUITES = [
    (0, 1, 0, 1, 3, 1, 0), (0, 1, 0, 3, 0, 3, 0), (0, 1, 3, 0, 1, 3, 0), (0, 1, 3, 1, 0, 1, 0),
    (0, 3, 0, 1, 0, 3, 0), (0, 3, 0, 3, 0, 1, 0), (0, 3, 1, 0, 3, 1, 0), (0, 3, 1, 3, 1, 3, 0),
]
DIGON2_SUITES = ["0 s 1 t 0 s 2 t 0", "0 s 1 t 2 s 1 t 0", "0 s 2 t 0 s 1 t 0", "0 s 2 t 1 s 2 t 0"]

BASED_Q3 = based_difference_sets(3)
BASED_Q4 = based_difference_sets(4)


def nx_incidence(c):
    g = nx.Graph()
    for ch, (x, y) in enumerate(c.coords):
        g.add_edge(("s", c.panel_index("s", ch)), ("t", c.panel_index("t", ch)), key=ch)
    return g


# -- construction ------------------------------------------------------------

def test_digon_examples():
    c = build_digon(2, 2)
    assert len(c) == 9
    assert [len(p) for p in c.panels["s"]] == [3, 3, 3]
    assert [len(p) for p in c.panels["t"]] == [3, 3, 3]
    c = build_digon(1, 1)
    assert len(c) == 4 and len(c.panels["s"]) == 2 and len(c.panels["t"]) == 2
    g = nx_incidence(build_digon(1, 2))
    assert nx.is_isomorphic(g, nx.complete_bipartite_graph(2, 3))


def test_triangle_examples(fano):
    c = build_triangle(fano)
    assert len(c) == 21
    assert len(c.panels["s"]) == 7 and len(c.panels["t"]) == 7
    assert all(len(p) == 3 for lab in "st" for p in c.panels[lab])
    assert nx.is_isomorphic(nx_incidence(c), nx.heawood_graph())
    thin = build_triangle(DifferenceSet.of([0, 1], 3))
    assert len(thin) == 6
    assert nx.is_isomorphic(nx_incidence(thin), nx.cycle_graph(6))
    big = build_triangle(DifferenceSet.of([0, 1, 3, 9], 13))
    assert len(big) == 52 and all(len(p) == 4 for p in big.panels["s"])


def test_chamber_lookup(fano):
    c = build_triangle(fano)
    assert c.coords[c.index((0, 1))] == (0, 1)
    with pytest.raises(ChamberNotFound):
        c.index((0, 2))


# -- polygon axioms, with networkx as the oracle ----------------------------

def test_axiom_examples(fano):
    r = verify_generalized_polygon(build_digon(2, 2), 2)
    assert r.passed and r.diameter == 2 and r.girth == 4
    r = verify_generalized_polygon(build_triangle(fano), 3)
    assert r.passed and r.diameter == 3 and r.girth == 6
    r = verify_generalized_polygon(build_digon(1, 2), 3)
    assert not r.passed and r.diameter == 2
    assert str(r).startswith("fail")


@pytest.mark.parametrize("q1,q2", [(1, 1), (1, 2), (2, 3), (3, 3), (4, 2), (5, 5)])
def test_digon_axioms_match_networkx(q1, q2):
    c = build_digon(q1, q2)
    r = verify_generalized_polygon(c, 2)
    g = nx_incidence(c)
    assert r.passed
    assert r.diameter == nx.diameter(g)
    assert r.girth == nx.girth(g)


@pytest.mark.parametrize("d", [DifferenceSet.of([0, 1], 3)] + BASED_Q3[:4] + BASED_Q4[:3],
                         ids=lambda d: ",".join(map(str, d.elements)))
def test_triangle_axioms_match_networkx(d):
    c = build_triangle(d)
    r = verify_generalized_polygon(c, 3)
    g = nx_incidence(c)
    assert r.diameter == nx.diameter(g) == 3
    assert r.girth == nx.girth(g) == 6
    assert nx.is_bipartite(g)
    # panels of size 2 meet the thickness bound, so even the thin triangle passes
    assert r.passed


def test_incidence_graph_shape(fano):
    verts, edges = incidence_graph(build_triangle(fano))
    assert len(verts) == 14 and len(edges) == 21


def test_non_triangle_fails(fano):
    # a set that is not a difference set gives chambers but no triangle
    bad = build_triangle(DifferenceSet(2, 7, (0, 1, 2)))
    assert not verify_generalized_polygon(bad, 3).passed


# -- actions ---------------------------------------------------------------

def test_standard_action_examples(fano):
    assert standard_action(build_digon(2, 2)).order == 3
    assert standard_action(build_triangle(fano)).order == 7
    with pytest.raises(UnsupportedChamberSystem):
        standard_action(build_digon(1, 2))


def test_panel_regular_examples(fano):
    d = build_digon(2, 2)
    assert verify_panel_regular(d, standard_action(d))
    t = build_triangle(fano)
    assert verify_panel_regular(t, standard_action(t))
    assert not verify_panel_regular(d, identity_action(d))


def test_power_is_not_reduced(fano):
    d = build_digon(2, 2)
    a = standard_action(d)
    fake = CyclicAction(2, a.generator)  # claims order 2, really 3
    assert not verify_panel_regular(d, fake)


def test_uniqueness_of_actions_on_d2():
    c = build_digon(2, 2)
    std = standard_action(c)
    auts = list(automorphisms(c))
    assert len(auts) == 36  # S3 on rows times S3 on columns
    regular = [a for a in auts if verify_panel_regular(c, CyclicAction(3, a))]
    assert regular
    for perm in regular:
        iso = find_equivariant_isomorphism(c, CyclicAction(3, perm), std)
        assert iso is not None
        for ch in c.chambers:
            assert iso[perm[ch]] == std.generator[iso[ch]]


# -- quotients and suites --------------------------------------------------

def test_digon_suites_golden():
    assert [str(g) for g in quotient_digon(2).suites] == DIGON2_SUITES
    assert [str(g) for g in quotient_digon(1).suites] == ["0 s 1 t 0 s 1 t 0"]
    assert len(quotient_digon(3).suites) == 9


def test_triangle_suites_golden(fano):
    p = quotient_triangle(fano)
    assert [g.chambers for g in p.suites] == FANO_SUITES
    assert all(g.types == ("s", "t") * 3 for g in p.suites)


def test_triangle_clubs_condition(fano):
    for g in quotient_triangle(fano).suites:
        _, x, y, z, y2, x2, _ = g.chambers
        assert (y2 - x2) % 7 == (x - y + z) % 7
        assert x != 0 and y != x and z != y


def test_thin_triangle():
    p = quotient_triangle(DifferenceSet.of([0, 1], 3))
    assert [str(g) for g in p.suites] == ["0 s 1 t 0 s 1 t 0 s 1 t 0"]


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5])
def test_suite_counts(q):
    assert len(quotient_digon(q).suites) == q * q


@pytest.mark.parametrize("d", [DifferenceSet.of([0, 1, 3], 7)] + BASED_Q3[:2] + BASED_Q4[:2],
                         ids=lambda d: ",".join(map(str, d.elements)))
def test_triangle_counts(d):
    assert len(quotient_triangle(d).suites) == d.q ** 3


def test_serialize():
    text = quotient_digon(2).serialize()
    assert text.splitlines()[0] == "polygon m=2 q=2"
    assert text.splitlines()[1:] == [f"suite: {s}" for s in DIGON2_SUITES]


def test_gallery_roundtrip():
    g = Gallery.parse("0 s 1 t 2 s 1 t 0")
    assert str(g) == "0 s 1 t 2 s 1 t 0"
    assert g.closed and g.is_stutter_free()
    assert str(g.reversed()) == "0 t 1 s 2 t 1 s 0"


# -- flowers -----------------------------------------------------------------

def test_flower_digon_example():
    petals = flower(quotient_digon(2), 0)
    hit = [p for p in petals if p.st.chambers == (0, 1, 0)]
    assert [p.ts.chambers for p in hit] == [(0, 2, 0)]


def test_flower_digon_symmetric():
    q = 3
    k = q + 1
    for x in range(k):
        for p in flower(quotient_digon(q), x):
            _, y, z = p.st.chambers
            if z == x:
                assert p.ts.chambers[1] == (2 * x - y) % k


def test_flower_triangle_example(fano):
    petals = flower(quotient_triangle(fano), 0)
    hit = [p for p in petals if p.st.chambers == (0, 1, 0, 1)]
    assert [p.ts.chambers for p in hit] == [(0, 1, 3, 1)]


@pytest.mark.parametrize("p", [quotient_digon(2), quotient_digon(4),
                               quotient_triangle(DifferenceSet.of([0, 1, 3], 7)),
                               quotient_triangle(BASED_Q3[0])],
                         ids=["D2", "D4", "T013", "T-q3"])
def test_flower_sizes_and_suites(p):
    for base in p.chambers:
        petals = flower(p, base)
        assert len(petals) == p.q ** p.m
        assert len({pt.st for pt in petals}) == len(petals)
    assert {pt.cycle() for pt in flower(p, 0)} == set(p.suites)


def test_flower_partner_uniqueness_is_enforced():
    # a digon "with the wrong modulus" cannot have unique partners everywhere
    broken = SingerPolygon(2, 2, (0, 1, 2, 3), quotient_digon(3).suites, canonical=True)
    with pytest.raises(NotSingerCyclic):
        flower(broken, 0)


# -- rotations and normalization ---------------------------------------------

def test_rotation_examples():
    assert rotation_automorphism(quotient_digon(2), 0) == {0: 0, 1: 1, 2: 2}
    perm = rotation_automorphism(quotient_digon(2), 1)
    g = Gallery.parse("0 s 1 t 0 s 2 t 0").map(perm)
    assert str(g) == "1 s 2 t 1 s 0 t 1"
    assert is_flower_cycle(quotient_digon(2), g)
    perm = rotation_automorphism(quotient_digon(3), 2)
    assert all(is_flower_cycle(quotient_digon(3), s.map(perm)) for s in quotient_digon(3).suites)


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_rotations_preserve_suites(q):
    p = quotient_digon(q)
    for r in range(q + 1):
        perm = rotation_automorphism(p, r)
        assert all(is_flower_cycle(p, s.map(perm)) for s in p.suites)


def test_normalize_examples(fano):
    target, phi = normalize_polygon(quotient_digon(2), 1)
    assert phi == {0: 2, 1: 0, 2: 1}
    assert target.suites == quotient_digon(2).suites
    target, phi = normalize_polygon(quotient_triangle(fano), 0)
    assert phi == {0: 0, 1: 1, 3: 3}
    target, phi = normalize_polygon(quotient_triangle(DifferenceSet.of([0, 2, 6], 7)), 2)
    assert target.difference_set.elements == (0, 1, 3)
    assert phi == {0: 3, 2: 0, 6: 1}
    with pytest.raises(ChamberNotFound):
        normalize_polygon(quotient_triangle(fano), 2)


def test_equivalent_sets_give_isomorphic_quotients(fano):
    p = quotient_triangle(fano)
    for r in (1, 2, 3, 4, 5, 6):
        for x in range(7):
            d2 = translate_scale(fano, r, x)
            shift = min(d2.elements)
            based = DifferenceSet.of([e - shift for e in d2.elements], 7)
            target = quotient_triangle(based)
            phi = {d: (r * d + x - shift) % 7 for d in fano.elements}
            assert all(is_flower_cycle(target, s.map(phi)) for s in p.suites)


# -- coverings ---------------------------------------------------------------

def test_covering_examples(fano):
    d = build_digon(2, 2)
    assert verify_covering(d, standard_action(d), quotient_digon(2))
    t = build_triangle(fano)
    assert verify_covering(t, standard_action(t), quotient_triangle(fano))


def test_covering_precondition(fano):
    d = build_digon(2, 2)
    with pytest.raises(PreconditionViolated):
        verify_covering(d, identity_action(d), quotient_digon(2))


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_digon_coverings(q):
    d = build_digon(q, q)
    assert verify_covering(d, standard_action(d), quotient_digon(q))


@pytest.mark.parametrize("d", [DifferenceSet.of([0, 1, 3], 7), singer_difference_set(3)] + BASED_Q3[:3],
                         ids=lambda d: ",".join(map(str, d.elements)))
def test_triangle_coverings(d):
    t = build_triangle(d)
    assert verify_covering(t, standard_action(t), quotient_triangle(d))


def mutants(p: SingerPolygon):
    """Every polygon differing from p in one interior chamber of one suite."""
    for i, g in enumerate(p.suites):
        seq = list(g.chambers)
        for pos in range(1, len(seq) - 1):
            for c in p.chambers:
                if c == seq[pos]:
                    continue
                new = seq[:pos] + [c] + seq[pos + 1:]
                ng = Gallery.alternating(new, p.labels)
                yield SingerPolygon(p.m, p.q, p.chambers, p.suites[:i] + (ng,) + p.suites[i + 1:],
                                    p.labels, canonical=p.canonical)


@pytest.mark.parametrize("which", ["digon", "triangle"])
def test_single_suite_mutations_fail(which, fano):
    if which == "digon":
        total, quotient = build_digon(2, 2), quotient_digon(2)
    else:
        total, quotient = build_triangle(fano), quotient_triangle(fano)
    a = standard_action(total)
    count = 0
    for m in mutants(quotient):
        assert not verify_covering(total, a, m)
        count += 1
    assert count == len(quotient.suites) * (len(quotient.suites[0].chambers) - 2) * quotient.q


def test_difference_set_from_action(fano):
    t = build_triangle(fano)
    a = standard_action(t)
    p = t.panels["s"][0]
    d0 = difference_set_from_action(t, a, p, t.panels["t"][0])
    assert are_equivalent(d0, fano) is not None
    d1 = difference_set_from_action(t, a, p, t.panels["t"][1])
    # g^d l meets p iff l = g^-d p, so moving l forward shifts the set back
    assert translate_scale(d0, 1, 6) == d1
    thin = build_triangle(DifferenceSet.of([0, 1], 3))
    dt = difference_set_from_action(thin, standard_action(thin), thin.panels["s"][0], thin.panels["t"][0])
    assert are_equivalent(dt, DifferenceSet.of([0, 1], 3)) is not None
