import pytest

from sharpblunt import rootdata as rd
from sharpblunt.rootdata import FiniteType as FT


def test_type_parsing_and_aliases():
    assert FT.parse("b3") == FT("B", 3)
    assert rd.normalize_type(FT("D", 0)) == ()
    assert rd.normalize_type(FT("D", 1)) == ()
    assert rd.normalize_type(FT("D", 2)) == (FT("A", 1), FT("A", 1))
    assert rd.normalize_type(FT("D", 3)) == (FT("A", 3),)
    assert rd.normalize_type(FT("B", 0)) == ()
    assert rd.normalize_type(FT("B", 1)) == (FT("A", 1),)
    assert rd.normalize_type(FT("C", 1)) == (FT("A", 1),)
    assert rd.normalize_type(FT("A", 0)) == ()
    assert rd.normalize_type(FT("A", -1)) == ()
    assert rd.normalize_expr([FT("D", 2), FT("A", 3)]) == (FT("A", 1), FT("A", 1), FT("A", 3))
    assert rd.expr_str(()) == "1"


def test_build_rejects_non_canonical():
    with pytest.raises(rd.TypeError_):
        rd.build_root_system(FT("D", 3))
    with pytest.raises(rd.TypeError_):
        rd.build_root_system(FT("A", 0))


def test_root_counts_and_theta():
    a2 = rd.build_root_system(FT("A", 2))
    assert len(a2.roots) == 6
    assert a2.highest_root == (1, 1)
    b3 = rd.build_root_system(FT("B", 3))
    assert len(b3.roots) == 18
    assert b3.highest_root == (1, 2, 2)
    assert len(rd.build_root_system(FT("E", 8)).roots) == 240


def test_connection_index_table():
    table = {"A5": 6, "A1": 2, "B4": 2, "C7": 2, "D6": 4, "D7": 4,
             "E6": 3, "E7": 2, "E8": 1, "F4": 1, "G2": 1}
    for name, idx in table.items():
        assert rd.build_root_system(FT.parse(name)).connection_index == idx


def test_affinize_marks():
    cases = {
        "A4": (1, 1, 1, 1, 1),
        "B5": (1, 1, 2, 2, 2, 2),
        "C4": (1, 2, 2, 2, 1),
        "D6": (1, 1, 2, 2, 2, 1, 1),
        "E8": (1, 2, 3, 4, 6, 5, 4, 3, 2),
        "F4": (1, 2, 3, 4, 2),
        "G2": (1, 3, 2),
    }
    for name, marks in cases.items():
        d = rd.affinize(FT.parse(name))
        assert d.marks == marks, name
    assert sorted(rd.affinize(FT.parse("E8")).marks) == sorted([1, 2, 3, 4, 5, 6, 4, 2, 3])
    # C~: two double bonds at the ends
    c = rd.affinize(FT("C", 5))
    assert c.coxeter[0][1] == 4 and c.coxeter[4][5] == 4


def test_affinize_node_zero_bonds_and_deletion_roundtrip():
    for name in ["A3", "B4", "C3", "D5", "E6", "F4", "G2"]:
        t = FT.parse(name)
        d = rd.affinize(t)
        comps = rd.components_after_deletion(d, {0})
        assert len(comps) == 1
        assert comps[0][1] == t


def test_components_examples():
    e8 = rd.affinize(FT("E", 8))
    # the mark-5 node leaves A4 x A4
    node5 = e8.marks.index(5)
    types = rd.normalize_expr(c[1] for c in rd.components_after_deletion(e8, {node5}))
    assert types == (FT("A", 4), FT("A", 4))
    # interior chain deletion in B~: D x B as root types
    b7 = rd.affinize(FT("B", 7))
    comps = rd.components_after_deletion(b7, {4})
    assert sorted(str(c[1]) for c in comps) == ["B3", "D4"]
    # C~4 minus node 1: C1 x C3 as root types
    c4 = rd.affinize(FT("C", 4))
    comps = rd.components_after_deletion(c4, {1})
    assert sorted(str(c[1]) for c in comps) == ["C1", "C3"]
    assert rd.normalize_expr(c[1] for c in comps) == (FT("A", 1), FT("C", 3))


def test_component_closure_under_diagram_symmetry():
    # single-node deletions: ranks sum to n
    for name in ["B6", "C6", "D7", "E7", "F4"]:
        t = FT.parse(name)
        d = rd.affinize(t)
        for s in range(d.n_nodes):
            comps = rd.components_after_deletion(d, {s})
            assert sum(len(c[0]) for c in comps) == t.rank


def test_dual_affine_type():
    assert rd.dual_affine_type(FT("B", 5)) == FT("C", 5)
    assert rd.dual_affine_type(FT("C", 5)) == FT("B", 5)
    assert rd.dual_affine_type(FT("D", 6)) == FT("D", 6)
    assert rd.dual_affine_type(FT("E", 7)) == FT("E", 7)


def test_op_automorphism():
    assert rd.op_automorphism(FT("A", 3)) == (2, 1, 0)
    assert rd.op_automorphism(FT("E", 7)) == tuple(range(7))
    assert rd.op_automorphism(FT("D", 5)) == (0, 1, 2, 4, 3)
    assert rd.op_automorphism(FT("D", 6)) == tuple(range(6))
    assert rd.op_automorphism(FT("E", 6)) == (5, 1, 4, 3, 2, 0)
    for name in ["A5", "B4", "C3", "D4", "D5", "E6", "F4", "G2"]:
        t = FT.parse(name)
        op = rd.op_automorphism(t)
        assert tuple(op[op[i]] for i in range(t.rank)) == tuple(range(t.rank))
        cart = rd.build_root_system(t).cartan
        for i in range(t.rank):
            for j in range(t.rank):
                assert cart[op[i]][op[j]] == cart[i][j]


def test_comarks():
    assert rd.comarks(FT("F", 4)) == (2, 3, 2, 1)
    assert rd.comarks(FT("G", 2)) == (1, 2)
    assert rd.comarks(FT("E", 8)) == rd.build_root_system(FT("E", 8)).highest_root
    assert rd.comarks(FT("C", 4)) == (1, 1, 1, 1)
    assert rd.comarks(FT("B", 4)) == (1, 2, 2, 1)


def test_coroot_affinization_relation():
    for name in ["F4", "G2", "B5", "C5"]:
        t = FT.parse(name)
        d = rd.coroot_affinization(t)
        n = t.rank
        for j in range(n):
            assert sum(d.marks[s] * d.node_roots[s][j] for s in range(n + 1)) == 0


def test_diagram_line_deterministic():
    line = rd.diagram_line(rd.affinize(FT("G", 2)))
    assert line == "G2~ [0(1) 1(3) 2(2)] bonds 0-2:3,1-2:6"
    assert rd.diagram_line(rd.affinize(FT("A", 1))) == "A1~ [0(1) 1(1)] bonds 0-1:inf"
