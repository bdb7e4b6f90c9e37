import pytest

from monodromy import (
    HypothesisNotMet,
    InertiaError,
    IntMatrix,
    NotPotentiallyGood,
    WildRamification,
    classify,
    cokernel_torsion_check,
    neron_invariants,
    neron_torsion,
    verify_neron2,
    verify_neron3,
    verify_neron4,
)
from monodromy.catalog import block_sum

I2 = IntMatrix.identity(2)
MINUS = IntMatrix([[-1, 0], [0, -1]])
ROT3 = IntMatrix([[0, -1], [1, -1]])
ROT4 = IntMatrix([[0, -1], [1, 0]])
SHEAR = IntMatrix([[1, 1], [0, 1]])
# -1 on one factor, 1 on the other: mixed abelian/unipotent ranks
MIXED = IntMatrix([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]])


def triples(verdicts):
    return {v.criterion: (v.hypothesis, v.conclusion, v.agree) for v in verdicts}


class TestNeronInvariants:
    @pytest.mark.parametrize(
        "mat,a,u,phi",
        [
            (I2, 1, 0, ()),
            (MINUS, 0, 1, (2, 2)),
            (ROT3, 0, 1, (3,)),
            (ROT4, 0, 1, (2,)),
            (IntMatrix([[1, -1], [1, 0]]), 0, 1, ()),
        ],
    )
    def test_primitives(self, mat, a, u, phi):
        inv = neron_invariants(classify(mat))
        assert inv.abelian_rank == a
        assert inv.unipotent_rank == u
        assert inv.toric_rank == 0
        assert inv.phi == phi
        assert inv.phi_prime == phi

    def test_rank_split(self):
        inv = neron_invariants(classify(MIXED, 3))
        assert inv.dimension == 2
        assert inv.abelian_rank == 1
        assert inv.unipotent_rank == 1
        assert inv.phi == (2, 2)
        assert inv.phi_prime == (2, 2)
        assert inv.component_group_order == 4

    def test_p_part_stripped(self):
        # the residue characteristic can be forced past classification
        inv = neron_invariants(classify(ROT3), 3)
        assert inv.phi == (3,)
        assert inv.phi_prime == ()

    def test_phi_torsion_order(self):
        inv = neron_invariants(classify(MINUS, 3))
        assert inv.phi_torsion_order(2) == 4
        assert inv.phi_torsion_order(4) == 4
        assert inv.phi_torsion_order(3) == 1

    def test_infinite_order_rejected(self):
        with pytest.raises(NotPotentiallyGood):
            neron_invariants(classify(SHEAR))


class TestNeronTorsion:
    def test_minus_identity_levels(self):
        g2 = classify(MINUS, 3)
        rep = neron_torsion(g2, 2)
        assert (rep.fixed_order, rep.fixed_structure) == (4, (2, 2))
        assert rep.phi_torsion == (2, 2)
        assert rep.b_exponent == 2

        rep = neron_torsion(g2, 4)
        assert (rep.fixed_order, rep.fixed_structure) == (4, (2, 2))
        assert rep.b_exponent == 1

        rep = neron_torsion(classify(MINUS, 5), 3)
        assert (rep.fixed_order, rep.fixed_structure) == (1, ())
        assert rep.phi_torsion == ()
        assert rep.b_exponent == 0

    def test_block_with_fixed_line(self):
        g = classify(block_sum([ROT3, I2]))
        rep = neron_torsion(g, 3)
        assert rep.fixed_order == 27
        assert rep.fixed_structure == (3, 3, 3)
        assert rep.phi_torsion == (3,)
        assert rep.b_exponent == 3

    def test_wild_level_rejected(self):
        with pytest.raises(WildRamification):
            neron_torsion(classify(MINUS, 3), 3)
        with pytest.raises(InertiaError):
            neron_torsion(classify(MINUS), 0)


class TestVerifyNeron2:
    def test_good_generator(self):
        got = triples(verify_neron2(classify(I2)))
        assert got["neron2-shape"] == (True, True, True)
        assert got["neron2-index"] == (True, True, True)
        assert got["neron2-good"] == (True, True, True)

    def test_minus_identity(self):
        got = triples(verify_neron2(classify(MINUS, 3)))
        assert got["neron2-shape"] == (True, True, True)
        assert got["neron2-index"] == (True, True, True)
        assert got["neron2-good"] == (False, False, True)

    def test_mixed_ranks(self):
        for v in verify_neron2(classify(MIXED, 3)):
            assert v.agree

    def test_residue_two_excluded(self):
        with pytest.raises(HypothesisNotMet):
            verify_neron2(classify(MINUS), p=2)

    def test_infinite_order(self):
        with pytest.raises(NotPotentiallyGood):
            verify_neron2(classify(SHEAR))


class TestVerifyNeron3:
    def test_good_generator(self):
        got = triples(verify_neron3(classify(I2)))
        assert got["neron3-fixed-order"] == (True, True, True)
        assert got["neron3-phi"] == (True, True, True)
        assert got["neron3-good"] == (True, True, True)
        assert got["neron3-additive"] == (False, False, True)

    def test_rot3(self):
        got = triples(verify_neron3(classify(ROT3, 5)))
        assert got["neron3-fixed-order"] == (True, True, True)
        assert got["neron3-phi"] == (True, True, True)
        assert got["neron3-good"] == (False, False, True)
        assert got["neron3-additive"] == (True, True, True)

    def test_minus_identity_gated(self):
        # -I fixes no three-torsion, so the entry hypothesis fails
        with pytest.raises(HypothesisNotMet):
            verify_neron3(classify(MINUS, 5))

    def test_residue_three_excluded(self):
        with pytest.raises(HypothesisNotMet):
            verify_neron3(classify(I2), p=3)


class TestVerifyNeron4:
    def test_good_generator(self):
        got = triples(verify_neron4(classify(I2), "a"))
        assert got["neron4-good"] == (True, True, True)
        assert got["neron4-additive"] == (False, False, True)
        assert all(t[2] for t in got.values())

    def test_minus_identity_mode_a(self):
        got = triples(verify_neron4(classify(MINUS, 3), "a"))
        assert got["neron4-structure"] == (True, True, True)
        assert got["neron4-index"] == (True, True, True)
        assert got["neron4-two-torsion"] == (True, True, True)
        assert got["neron4-phi"] == (True, True, True)
        assert got["neron4-good"] == (False, False, True)
        assert got["neron4-additive"] == (True, True, True)

    def test_mixed_ranks(self):
        for v in verify_neron4(classify(MIXED, 3), "a"):
            assert v.agree

    def test_mode_a_gate(self):
        with pytest.raises(HypothesisNotMet):
            verify_neron4(classify(ROT3, 5), "a")

    def test_mode_b_gate(self):
        with pytest.raises(HypothesisNotMet):
            verify_neron4(classify(ROT4, 3), "b")

    def test_unknown_mode(self):
        with pytest.raises(InertiaError):
            verify_neron4(classify(MINUS, 3), "c")

    def test_residue_two_excluded(self):
        with pytest.raises(HypothesisNotMet):
            verify_neron4(classify(MINUS), "a", p=2)


class TestCokernelTorsion:
    def test_minus_identity(self):
        v = cokernel_torsion_check(MINUS, 2, 1, 2)
        assert v.criterion == "cokernel-torsion"
        assert (v.hypothesis, v.conclusion, v.agree) == (True, True, True)

    def test_rot4_and_rot3(self):
        v = cokernel_torsion_check(ROT4, 2, 1, 2)
        assert v.agree
        v = cokernel_torsion_check(ROT3, 3, 1, 2)
        assert v.agree

    def test_infinite_order_rejected(self):
        with pytest.raises(HypothesisNotMet):
            cokernel_torsion_check(SHEAR, 2, 1, 2)

    def test_small_r_rejected(self):
        with pytest.raises(HypothesisNotMet):
            cokernel_torsion_check(MINUS, 2, 1, 1)

    def test_parameter_validation(self):
        with pytest.raises(InertiaError):
            cokernel_torsion_check(MINUS, 1, 1, 2)
        with pytest.raises(InertiaError):
            cokernel_torsion_check(MINUS, 2, 0, 2)

    def test_congruence_gate(self):
        # (rot4 - I)^6 is invertible mod 3
        with pytest.raises(HypothesisNotMet):
            cokernel_torsion_check(ROT4, 3, 1, 2)
