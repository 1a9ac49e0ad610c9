import pytest

from sharpblunt import fungroup as fg, rootdata as rd, triples as tp
from sharpblunt.rootdata import FiniteType as FT, expr_str


def omegas(x_type):
    pair = fg.dual_pair(x_type)
    return pair, [(e, tp.omega_class(pair, e)) for e in pair.omega_prime.elements]


def sharp_by_label(y_name, label, mode="normative"):
    y = FT.parse(y_name)
    x = rd.dual_affine_type(y)
    pair, oms = omegas(x)
    out = []
    for coords, oc in oms:
        if oc.label == label:
            out.extend(tp.enumerate_sharp(y, coords, mode))
    return out


def test_sharp_exceptional_lists():
    assert [expr_str(t.expr) for t in sharp_by_label("E7", "nontriv")] == ["E6"]
    assert [expr_str(t.expr) for t in sharp_by_label("E7", "1")] == ["E7"]
    assert [expr_str(t.expr) for t in sharp_by_label("E6", "gen")] == ["D4", "D4"]
    assert [expr_str(t.expr) for t in sharp_by_label("F4", "1")] == ["F4"]
    assert [expr_str(t.expr) for t in sharp_by_label("G2", "1")] == ["G2"]
    assert [expr_str(t.expr) for t in sharp_by_label("E8", "1")] == ["E8"]


def test_sharp_classical_examples():
    # C4, trivial element: (t, r) = (3, 3), factors B2 x B2 at the Weyl level
    hits = sharp_by_label("C4", "1")
    assert [t.params for t in hits] == [(3, 3)]
    assert rd.weyl_expr(hits[0].expr) == (FT("B", 2), FT("B", 2))
    # A3, generator: I is empty
    got = sharp_by_label("A3", "gen")
    assert all(t.i_nodes == () and t.expr == () for t in got) and got
    # B6, trivial: includes (4, 3) with factors D4 x B2
    hits = {t.params: t for t in sharp_by_label("B6", "1")}
    assert (4, 3) in hits
    assert rd.weyl_expr(hits[(4, 3)].expr) == (FT("B", 2), FT("D", 4))
    assert (0, 5) in hits  # the degenerate D0 entry: full B6


def test_sharp_triples_are_stable_orbits():
    for name in ["B5", "C5", "D6", "D7"]:
        y = FT.parse(name)
        x = rd.dual_affine_type(y)
        pair, oms = omegas(x)
        for coords, oc in oms:
            for t in tp.enumerate_sharp(y, coords):
                assert t.i_nodes == t.orbit[0]
                rep = tp.dual_action_rep(pair, coords)
                assert pair.omega.stabilizes(rep, t.i_nodes)


def test_strictly_sharp():
    hits = sharp_by_label("C4", "1")
    assert tp.is_strictly_sharp(hits[0])  # (3,3), middle-node orbit
    b4 = {t.params: t for t in sharp_by_label("B4", "1")}
    assert not tp.is_strictly_sharp(b4[(4, 1)])  # t - r = 3
    e8 = sharp_by_label("E8", "1")
    assert tp.is_strictly_sharp(e8[0])
    e7 = sharp_by_label("E7", "1")
    assert not tp.is_strictly_sharp(e7[0])  # deleted node is half an orbit


def test_strictly_sharp_x_formulas():
    assert tp.strictly_sharp_params("B", 6, "1") == {(4, 3)}
    assert tp.strictly_sharp_params("B", 3, "nontriv") == {(2, 3)}
    assert tp.strictly_sharp_params("C", 4, "1") == {(3, 3)}
    assert tp.strictly_sharp_params("C", 7, "nontriv") == {(6, 5)}
    assert tp.strictly_sharp_params("D", 8, "1") == {(4, 4)}
    assert tp.strictly_sharp_params("D", 18, "un") == {(6, 6)}
    assert tp.strictly_sharp_params("D", 5, "spin") == {(4, 5)}
    assert tp.strictly_sharp_params("D", 14, "spin") == {(8, 7)}


def test_strictly_blunt_examples():
    for n in range(1, 9):
        x = FT("A", n)
        pair, oms = omegas(x)
        for coords, oc in oms:
            assert tp.is_strictly_blunt(x, oc) == (oc.label == "gen")
    pair, oms = omegas(FT("D", 8))
    for coords, oc in oms:
        assert tp.is_strictly_blunt(FT("D", 8), oc) == (oc.label == "1")
    pair, oms = omegas(FT("D", 4))
    for coords, oc in oms:
        if oc.label != "1":
            assert not tp.is_strictly_blunt(FT("D", 4), oc)
    pair, oms = omegas(FT("B", 4))
    for coords, oc in oms:
        assert tp.is_strictly_blunt(FT("B", 4), oc) == (oc.label == "1")
    pair, oms = omegas(FT("D", 5))
    for coords, oc in oms:
        assert tp.is_strictly_blunt(FT("D", 5), oc) == (oc.label == "spin")


def test_strictly_blunt_witness_consistency():
    for name in ["A6", "B5", "C6", "D8", "E7", "G2"]:
        x = FT.parse(name)
        pair, oms = omegas(x)
        for coords, oc in oms:
            wit = tp.strictly_blunt_witness(x, coords)
            assert (wit is not None) == tp.is_strictly_blunt(x, oc)


def test_blunt_exceptional():
    x = FT("E", 8)
    got = tp.enumerate_blunt(x, ())
    assert sorted(expr_str(b.expr) for b in got) == sorted(
        ["E8", "A1xE7", "A2xE6", "A3xD5", "A4xA4", "D8", "A1xA2xA5"])
    marks = {expr_str(b.expr): b.mark for b in got}
    assert marks["A4xA4"] == 5 and marks["A1xA2xA5"] == 6
    # excluded deletions have empty fibers after filtering
    for node in (2, 3):  # A8 and A7 x A1
        _, wit = tp._fiber_witnesses(x, node, ())
        assert wit == ()


def test_blunt_classical_examples():
    got = tp.enumerate_blunt(FT("C", 4), (0,))
    assert [(b.params, rd.weyl_expr(b.expr)) for b in got] == [
        ((5, 3), (FT("A", 1), FT("B", 3)))]
    assert got[0].case == "g"
    # A family: single class, the full finite part, for generators only
    for n in (3, 6):
        x = FT("A", n)
        pair, oms = omegas(x)
        for coords, oc in oms:
            got = tp.enumerate_blunt(x, coords)
            if oc.label == "gen":
                assert [expr_str(b.expr) for b in got] == [f"A{n}"]
            else:
                assert got == []


def test_blunt_c4_split_between_modes():
    # normative follows the closed lists; the fiber route puts the same
    # class on the other group element (documented discrepancy)
    pair, oms = omegas(FT("C", 4))
    for coords, oc in oms:
        normative = tp.enumerate_blunt(FT("C", 4), coords)
        fibers = tp.enumerate_blunt(FT("C", 4), coords, "fibers")
        if oc.label == "1":
            assert [b.params for b in normative] == [(5, 3)]
            assert fibers == []
        else:
            assert normative == []
            assert [b.deleted_node for b in fibers] == [1]


def test_blunt_params_examples():
    got = {b.params: b for b in tp.enumerate_blunt(FT("B", 6), (0,))}
    assert set(got) == {(2, 3)}  # D2 x B4 with the D2 alias split
    assert got[(2, 3)].expr == (FT("A", 1), FT("A", 1), FT("B", 4))
    got = tp.enumerate_blunt(FT("D", 8), (0, 0))
    assert [(b.params, expr_str(b.expr)) for b in got] == [((4, 0), "D8")]


def test_lemma27():
    ok, bad = tp.lemma27_equivalence(200, 201)
    assert ok and bad == []
    assert ((4 // 4) % 2 == 5 % 2) and (4 + 5) % 8 == 1  # (t,r) = (4,5), n = 5
    assert ((4 // 4) % 2 == 3 % 2) and (4 + 3) % 8 == 7  # (t,r) = (4,3), n = 3


def test_literal_mode_exceptional_discrepancies_are_pinned():
    # The defining predicate does not constrain the group element for a
    # pointwise-fixed complement, so the nontrivial-element-only entries of
    # the closed lists gain literal companions at the identity.
    seen = []
    for name in ["E6", "E7", "E8", "F4", "G2"]:
        y = FT.parse(name)
        pair, oms = omegas(y)
        for coords, oc in oms:
            seen.extend(tp.sharp_mode_discrepancies(y, coords))
    assert seen == [
        ("literal-only", FT("E", 6), (0,), (2, 3, 4, 5), "D4"),
        ("literal-only", FT("E", 7), (0,), (1, 2, 3, 4, 5, 6), "E6"),
    ]


def test_literal_mode_known_discrepancies():
    # every group element keeps the empty set sharp in type A
    y = FT("A", 4)
    pair, oms = omegas(y)
    for coords, oc in oms:
        lit = tp.enumerate_sharp(y, coords, "literal")
        assert any(t.i_nodes == () for t in lit)
        normative = tp.enumerate_sharp(y, coords)
        assert bool(normative) == (oc.label == "gen")
    # the B3 fork-pair deletion is literal-only for the trivial element
    rep = tp.sharp_mode_discrepancies(FT("B", 3), (0,))
    assert ("literal-only", FT("B", 3), (0,), (2, 3), "B2") in rep


def test_literal_matches_bruteforce_small_a():
    # independent check of the arc shortcut at small rank
    import itertools
    y = FT("A", 3)
    pair, _ = omegas(y)
    og = pair.omega
    for coords in pair.omega_prime.elements:
        rep = tp.dual_action_rep(pair, coords)
        perm = og.action[rep]
        wanted = set()
        nodes = range(4)
        for r in range(4):
            for keep in itertools.combinations(nodes, r):
                deleted = frozenset(nodes) - frozenset(keep)
                if any(perm[s] not in deleted for s in deleted):
                    continue
                wp = tp._restricted_pair(pair.dual_diagram, deleted, perm)
                if wp is None:
                    continue
                from sharpblunt import sharpfin
                if sharpfin.is_sharp(wp):
                    wanted.add(og.subset_orbit(tuple(sorted(keep)))[0] if keep else ())
        got = {t.i_nodes for t in tp.enumerate_sharp(y, coords, "literal")}
        assert got == wanted, (coords, got, wanted)
