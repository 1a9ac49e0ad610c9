import random
from fractions import Fraction

import pytest

from sharpblunt import ablat, rootdata as rd
from sharpblunt.ablat import FinAbGroup, Lattice, ProductGroup
from sharpblunt.rootdata import FiniteType as FT


def test_smith_examples():
    a2 = rd.build_root_system(FT("A", 2)).cartan
    assert ablat.smith_decompose(a2).diag() == (1, 3)
    assert ablat.smith_decompose(ablat.identity(4)).diag() == (1, 1, 1, 1)
    d4 = rd.build_root_system(FT("D", 4)).cartan
    assert ablat.smith_decompose(d4).diag() == (1, 1, 2, 2)


def test_smith_random_verified():
    rng = random.Random(3)
    for _ in range(150):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        ablat.smith_decompose(M)  # verify=True checks U M V = D and dets


def test_lattice_quotient_examples():
    a2 = rd.build_root_system(FT("A", 2)).cartan
    q = ablat.lattice_quotient(Lattice.unit(2), Lattice.integer(a2))
    assert q.group.invariant_factors == (3,)
    for col in zip(*a2):
        assert q.project(col) == (0,)
    trivial = ablat.lattice_quotient(Lattice.unit(2), Lattice.unit(2))
    assert trivial.group.invariant_factors == ()
    b3 = rd.build_root_system(FT("B", 3)).cartan
    q = ablat.lattice_quotient(Lattice.unit(3), Lattice.integer(b3))
    assert q.group.invariant_factors == (2,)


def test_lattice_quotient_order_is_det_index():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 4)
        while True:
            M = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            if ablat.det(M):
                break
        q = ablat.lattice_quotient(Lattice.unit(n), Lattice.integer(M))
        assert q.group.order == abs(ablat.det(M))


def test_containment_error():
    with pytest.raises(ablat.ContainmentError):
        ablat.lattice_quotient(Lattice.integer(((2, 0), (0, 2))), Lattice.unit(2))


def test_section_roundtrip():
    b4 = rd.build_root_system(FT("B", 4)).cartan
    q = ablat.lattice_quotient(Lattice.unit(4), Lattice.integer(b4))
    for e in q.group.elements():
        vec, den = q.section(e)
        assert q.project(vec, den) == e


def test_induced_hom_and_fibers():
    # sum map Z/5 x Z/5 -> Z/5 style fiber counting
    src = ProductGroup((FinAbGroup((5,)), FinAbGroup((5,))))
    tgt = FinAbGroup((5,))
    h = ablat.make_hom(src, tgt, ((1, 1),))
    fib = ablat.hom_fiber(h, (0,))
    assert len(fib) == 5
    assert h.surjective and not h.injective

    src = ProductGroup((FinAbGroup((6,)), FinAbGroup((3,)), FinAbGroup((2,))))
    tgt = FinAbGroup((6,))
    h = ablat.make_hom(src, tgt, ((1, 2, 3),))
    assert len(ablat.hom_fiber(h, (0,))) == 6
    # an element outside the image has an empty fiber
    h2 = ablat.make_hom(FinAbGroup((2,)), FinAbGroup((4,)), ((2,),))
    assert ablat.hom_fiber(h2, (1,)) == []
    # fiber sizes are 0 or |kernel|
    for t in h.target.elements():
        assert len(ablat.hom_fiber(h, t)) in (0, h.kernel_size())


def test_induced_hom_identity():
    a2 = rd.build_root_system(FT("A", 2)).cartan
    q = ablat.lattice_quotient(Lattice.unit(2), Lattice.integer(a2))
    h = ablat.induced_hom(q, q)
    assert h.injective and h.surjective
    for e in q.group.elements():
        assert h.apply(e) == e


def test_make_hom_rejects_ill_defined():
    with pytest.raises(AssertionError):
        ablat.make_hom(FinAbGroup((2,)), FinAbGroup((4,)), ((1,),))


def test_duality_pairing():
    for name, factors in [("A1", (2,)), ("A2", (3,)), ("B3", (2,)), ("D5", (4,))]:
        t = FT.parse(name)
        rs = rd.build_root_system(t)
        AT = tuple(zip(*rs.cartan))
        left = ablat.lattice_quotient(
            Lattice.inverse(AT), Lattice.unit(t.rank),
            provenance=(f"pair:{t}", "E"), coeff=AT)
        right = ablat.lattice_quotient(
            Lattice.unit(t.rank), Lattice.integer(rs.cartan),
            provenance=(f"pair:{t}", "E'"), coeff=rs.cartan)
        pairing = ablat.duality_pairing(left, right)
        assert pairing.nondegenerate
        assert left.group.invariant_factors == factors
        if name == "A1":
            assert pairing.table[1][1] == Fraction(1, 2)
    # E8: trivial x trivial pairs trivially but nondegenerately
    rs = rd.build_root_system(FT("E", 8))
    AT = tuple(zip(*rs.cartan))
    left = ablat.lattice_quotient(Lattice.inverse(AT), Lattice.unit(8),
                                  provenance=("pair:E8", "E"), coeff=AT)
    right = ablat.lattice_quotient(Lattice.unit(8), Lattice.integer(rs.cartan),
                                   provenance=("pair:E8", "E'"), coeff=rs.cartan)
    assert ablat.duality_pairing(left, right).nondegenerate


def test_duality_pairing_provenance_guard():
    a2 = rd.build_root_system(FT("A", 2)).cartan
    q1 = ablat.lattice_quotient(Lattice.unit(2), Lattice.integer(a2),
                                provenance=("pair:A2", "E'"))
    q2 = ablat.lattice_quotient(Lattice.unit(2), Lattice.integer(a2),
                                provenance=("pair:B2", "E"))
    with pytest.raises(ablat.ProvenanceError):
        ablat.duality_pairing(q1, q2)
