import pytest

from sharpblunt import fungroup as fg, rootdata as rd
from sharpblunt.rootdata import FiniteType as FT


def og_of(name):
    return fg.fundamental_group_with_action(rd.affinize(FT.parse(name)))


def test_structure_table():
    # cyclic orders per family, D splitting by parity
    assert og_of("A6").group.invariant_factors == (7,)
    assert og_of("B5").group.invariant_factors == (2,)
    assert og_of("C6").group.invariant_factors == (2,)
    assert og_of("D5").group.invariant_factors == (4,)
    assert og_of("D7").group.invariant_factors == (4,)
    assert og_of("D6").group.invariant_factors == (2, 2)
    assert og_of("D8").group.invariant_factors == (2, 2)
    assert og_of("E6").group.invariant_factors == (3,)
    assert og_of("E7").group.invariant_factors == (2,)
    for name in ("E8", "F4", "G2"):
        assert og_of(name).order == 1


def test_actions_match_shape():
    a = og_of("A4")
    assert set(a.action.values()) == {
        tuple((s + k) % 5 for s in range(5)) for k in range(5)
    }
    b = og_of("B4")
    assert b.action[(1,)] == (1, 0, 2, 3, 4)  # swap of the two mark-1 nodes
    c = og_of("C4")
    assert c.action[(1,)] == (4, 3, 2, 1, 0)  # end to end flip
    e7 = og_of("E7")
    nz = next(e for e in e7.elements if e != e7.group.identity)
    assert e7.action[nz][0] == 7 and e7.action[nz][7] == 0


def test_simply_transitive_on_mark_one_nodes():
    for name in ["A5", "B6", "C5", "D6", "D7", "E6", "E7"]:
        og = og_of(name)
        ones = set(og.diagram.mark_one_nodes())
        images = {og.action[e][0] for e in og.elements}
        assert images == ones and len(images) == og.order


def test_underline_subgroup():
    assert len(fg.underline_subgroup(og_of("D4"))) == 1
    assert len(fg.underline_subgroup(og_of("D5"))) == 2
    assert len(fg.underline_subgroup(og_of("D6"))) == 2
    un = fg.underline_subgroup(og_of("D6"))
    nontrivial = next(e for e in un if e != (0, 0))
    perm = og_of("D6").action[nontrivial]
    assert sum(1 for s, t in enumerate(perm) if s == t) >= 2
    with pytest.raises(ValueError):
        fg.underline_subgroup(og_of("A3"))


def test_dual_pair_pairing_nondegenerate():
    for name in ["A4", "B4", "C4", "D5", "D6", "E6", "E7"]:
        assert fg.dual_pair(FT.parse(name)).pairing().nondegenerate


def test_omega_of_J_e8_examples():
    e8 = FT("E", 8)
    # A4 x A4: the two maps are Z/5 x Z/5 ->> Z/5 <- 1
    o = fg.omega_of_J(e8, 5)
    assert o.group.invariant_factors == (5,)
    assert o.prod.order == 25
    assert o.map_b.surjective and o.map_a.injective
    assert len(fg.m_set(o, ())) == 5
    # A5 x A2 x A1 maps onto Z/6
    o = fg.omega_of_J(e8, 4)
    assert o.group.invariant_factors == (6,)
    assert len(fg.m_set(o, ())) == 6
    # A8: Z/9 onto Z/3
    o = fg.omega_of_J(e8, 2)
    assert o.group.invariant_factors == (3,)
    assert o.prod.order == 9
    assert len(fg.m_set(o, ())) == 3


def test_omega_of_J_invariants():
    for name in ["B5", "C4", "D6", "E6", "F4", "G2"]:
        t = FT.parse(name)
        pair = fg.dual_pair(t)
        for s in range(pair.diagram.n_nodes):
            o = fg.omega_of_J(t, s)
            assert o.map_a.injective
            assert o.map_b.surjective
            expected = 1
            for c in o.components:
                expected *= rd.build_root_system(c.ftype).connection_index
            assert o.prod.order == expected
            # fibers are kernel cosets: size independent of the target
            sizes = {len(fg.m_set(o, om)) for om in pair.omega_prime.elements}
            assert sizes <= {o.map_b.kernel_size()}


def test_m_set_orbit_invariance():
    t = FT("D", 6)
    pair = fg.dual_pair(t)
    og = pair.omega_prime
    for om in og.elements:
        for s in range(pair.diagram.n_nodes):
            orbit = og.node_orbit(s)
            sizes = {len(fg.m_set(fg.omega_of_J(t, u), om)) for u in orbit}
            assert len(sizes) == 1


def test_coroot_chart_f4_g2():
    o = fg.omega_of_J(FT("F", 4), 3, "coroot")
    assert o.group.order == 2
    assert len(fg.m_set(o, ())) == 4
    o = fg.omega_of_J(FT("G", 2), 1, "coroot")
    assert o.group.order == 1
    assert len(fg.m_set(o, ())) == 3
    with pytest.raises(ValueError):
        fg.omega_of_J(FT("C", 3), 1, "coroot")
