from fractions import Fraction

import pytest

from sharpblunt import rootdata as rd, sharpfin as sf
from sharpblunt.rootdata import FiniteType as FT
from sharpblunt.sharpfin import WeylPair, identity_pair


def flip(n):
    return tuple(range(n - 1, -1, -1))


def test_weyl_pair_validation():
    WeylPair((FT("A", 5),), flip(5))
    with pytest.raises(ValueError):
        WeylPair((FT("A", 5),), (1, 0, 2, 3, 4))  # not a diagram map
    # gamma exchanging adjacent nodes inside one orbit is not ordinary
    with pytest.raises(ValueError):
        WeylPair((FT("C", 3), FT("C", 3)), (3, 4, 5, 0, 1, 2) and (5, 4, 3, 2, 1, 0))


def test_automorphism_profile_examples():
    prof = sf.automorphism_profile(WeylPair((FT("A", 5),), flip(5)))
    assert prof.r == 3 and prof.order == 2
    assert len(prof.factors) == 1 and prof.factors[0].is_op

    tri = (0, 1, 2, 3)[:0]  # placeholder to keep flake quiet
    d4 = WeylPair((FT("D", 4),), (2, 1, 3, 0))  # 3-cycle of the outer nodes
    prof = sf.automorphism_profile(d4)
    assert prof.r == 2 and prof.order == 3

    swap = WeylPair((FT("B", 2), FT("B", 2)), (2, 3, 0, 1))
    prof = sf.automorphism_profile(swap)
    assert len(prof.factors) == 1
    assert prof.factors[0].orbit_length == 2
    assert prof.factors[0].residual == (0, 1)


def test_is_sharp_examples():
    assert sf.is_sharp(WeylPair((FT("A", 2),), flip(2)))
    assert sf.is_sharp(identity_pair([FT("B", 2)]))
    assert not sf.is_sharp(identity_pair([FT("A", 1)]))
    assert sf.is_sharp(identity_pair([FT("E", 6)]))
    assert sf.is_sharp(WeylPair((FT("E", 6),), rd.op_automorphism(FT("E", 6))))
    assert sf.is_sharp(identity_pair([]))
    assert sf.is_sharp(WeylPair((FT("D", 4),), (2, 1, 3, 0)))
    assert not sf.is_sharp(identity_pair([FT("D", 9)]))
    assert sf.is_sharp(WeylPair((FT("D", 9),), rd.op_automorphism(FT("D", 9))))
    assert sf.is_sharp(identity_pair([FT("B", 6), FT("E", 6)]))
    assert not sf.is_sharp(identity_pair([FT("B", 6), FT("B", 3)]))


def test_generic_degree_examples():
    rec = sf.generic_degree(FT("A", 2), ("A", (2, 1)))
    assert rec.coeffs == (0, 1, 1) and rec.denom == 1
    assert rec.z == 1 and rec.N == 1
    triv = sf.generic_degree(FT("B", 5), ("B", (5,), ()))
    assert triv.coeffs == (1,) and triv.z == 0 and triv.N == 1
    for t, label, npos in [
        (FT("A", 4), ("A", (1, 1, 1, 1, 1)), 10),
        (FT("B", 3), ("B", (), (1, 1, 1)), 9),
        (FT("D", 4), ("D", (), (1, 1, 1, 1)), 12),
    ]:
        sign = sf.generic_degree(t, label)
        assert sign.coeffs == tuple([0] * npos + [1])
        assert sign.z == 0


def test_known_b2_degrees():
    recs = {lab: sf.generic_degree(FT("B", 2), lab) for lab in sf.irreducible_labels(FT("B", 2))}
    two_dim = recs[("B", (1,), (1,))]
    assert two_dim.coeffs == (0, 1, 2, 1) and two_dim.denom == 2
    assert two_dim.z == 2 and two_dim.special
    halves = [r for r in recs.values() if r.denom == 2]
    assert len(halves) == 3


def test_poincare_sum_rule():
    for name in ["A3", "B2", "B4", "C3", "D4", "D5"]:
        t = FT.parse(name)
        total = {}
        for label in sf.irreducible_labels(t):
            rec = sf.generic_degree(t, label)
            for i, c in enumerate(rec.coeffs):
                if c:
                    total[i] = total.get(i, Fraction(0)) + Fraction(rec.dim * c, rec.denom)
        poincare = [1]
        for d in sf.reflection_degrees(t):
            poincare = sf._pmul_two_term(poincare, d, 0, -1)
            poincare = sf._pdiv_two_term(poincare, 1, 0, -1)
        got = [total.get(i, Fraction(0)) for i in range(max(total) + 1)]
        assert got == [Fraction(c) for c in poincare]
        assert sum(poincare) == sf.weyl_group_order(t)


def test_q_one_specialization_matches_dims():
    for name in ["A4", "B4", "C4", "D5"]:
        t = FT.parse(name)
        for label in sf.irreducible_labels(t):
            rec = sf.generic_degree(t, label)
            assert rec.at_one() == rec.dim


def test_z_bound_and_unique_special():
    for name in ["A5", "B5", "C5", "D6", "D7"]:
        t = FT.parse(name)
        weyl = FT("B", t.rank) if t.family == "C" else t
        target = sf.r_op(weyl)
        hits = 0
        for label in sf.irreducible_labels(weyl):
            rec = sf.generic_degree(weyl, label)
            assert rec.z <= target
            assert rec.N & (rec.N - 1) == 0
            if weyl.family == "A":
                assert rec.N == 1
            if rec.special and rec.z == target:
                hits += 1
        assert hits <= 1


def test_capacity_error():
    with pytest.raises(sf.CapacityError):
        sf.generic_degree(FT("B", 13), ("B", (13,), ()))
    with pytest.raises(sf.CapacityError):
        sf.is_sharp_generic(identity_pair([FT("E", 6)]))


def test_ordinary_automorphism_lists_match_bruteforce():
    for name in ["A1", "A4", "B3", "C4", "D4", "D5", "D6", "E6", "F4", "G2"]:
        t = FT.parse(name)
        assert sorted(sf.ordinary_automorphisms(t)) == sf.ordinary_automorphisms_bruteforce(t)


def test_backend_agreement_and_sharp_ranks():
    mismatches, ranks = sf.crosscheck_backends(8)
    assert mismatches == []
    assert sorted(ranks["A"]) == [2, 5]
    assert sorted(ranks["B"]) == [2, 6]
    assert sorted(ranks["C"]) == [2, 6]
    assert sorted(ranks["D"]) == [4]


def test_is_sharp_generic_examples():
    assert sf.is_sharp_generic(identity_pair([FT("B", 2)]))
    assert not sf.is_sharp_generic(WeylPair((FT("A", 3),), flip(3)))
    assert sf.is_sharp_generic(WeylPair((FT("D", 4),), (2, 1, 3, 0)))
