from unittest import mock

import numpy as np
import pytest
from django.test import SimpleTestCase, tag

from srings.automorphism import ConditionsABRequired, is_schurian
from srings.compatibility import (
    CongruenceLine,
    EmptyIntersection,
    Inapplicable,
    NotInGamma1,
    are_compatible,
    congruence_walkthrough,
    gamma1_restrictions,
    line_matches_block,
    ordered_basis,
    schurity_by_compatibility,
    triple_congruence,
    validate_gamma1,
)
from srings.pgroup import Family, GroupSpec, build_group
from srings.scheme import block_matrix, is_permutation_matrix, scheme_from_sring
from srings.sequences import (
    SuitableSequence,
    canonical_sequence,
    enumerate_suitable,
    mod4_3_sequence,
    sring_from_sequence,
    sring_h1_from_sequence,
)
from srings.sring import singleton_partition, validate_sring


class Gamma1Tests(SimpleTestCase):
    def setUp(self):
        self.a1 = sring_h1_from_sequence(canonical_sequence(7))
        self.cs = scheme_from_sring(self.a1)
        self.t1 = self.a1.class_containing(self.a1.group.generator('a'))

    def test_restrictions_on_t1(self):
        """Test T_1 of A1 has exactly 6 color-preserving 7-cycles"""
        restrictions = gamma1_restrictions(self.a1, self.t1, cs=self.cs)
        self.assertEqual(len(restrictions), 6)
        for images in restrictions:
            self.assertEqual(sorted(images), list(self.a1.classes[self.t1]))

    def test_restrictions_p5(self):
        """Test T_1 of the p = 5 S-ring has candidates"""
        sr = sring_h1_from_sequence(canonical_sequence(5))
        t1 = sr.class_containing(sr.group.generator('a'))
        self.assertTrue(gamma1_restrictions(sr, t1))

    def test_identity_is_not_in_gamma1(self):
        """Test the identity permutation moves nothing outside L"""
        with self.assertRaises(NotInGamma1):
            validate_gamma1(self.a1, np.arange(343), self.cs)

    def test_a1_witness(self):
        """Test A1 has a compatible Gamma_1 permutation that is an automorphism"""
        verdict = schurity_by_compatibility(self.a1, self.cs)
        self.assertTrue(verdict.schurian)
        sigma = validate_gamma1(self.a1, verdict.witness, self.cs)
        self.assertEqual(len(verdict.restrictions), 6)
        for T in range(self.a1.rank):
            self.assertTrue(are_compatible(self.a1, sigma, T, self.t1, self.cs))

    def test_thin_classes_always_compatible(self):
        """Test a class inside L is compatible with everything"""
        sigma = schurity_by_compatibility(self.a1, self.cs).witness
        b_class = self.a1.class_containing(self.a1.group.generator('b'))
        for T in range(self.a1.rank):
            self.assertTrue(are_compatible(self.a1, sigma, b_class, T, self.cs))

    def test_a2_has_no_witness(self):
        """Test A2 exhausts every branch"""
        verdict = schurity_by_compatibility(sring_h1_from_sequence(mod4_3_sequence(7)))
        self.assertFalse(verdict.schurian)
        self.assertIsNone(verdict.witness)
        self.assertGreater(verdict.branches, 0)

    def test_every_chain_reaches_the_automorphism_check(self):
        """Test a rejected extension moves on to the remaining chains before giving up"""
        sr = sring_h1_from_sequence(canonical_sequence(5))
        cs = scheme_from_sring(sr)
        stabilizer_order = is_schurian(sr, cs=cs).aut.stabilizer_order
        with mock.patch('srings.compatibility.is_color_automorphism', return_value=False) as check:
            verdict = schurity_by_compatibility(sr, cs)
        self.assertFalse(verdict.schurian)
        self.assertEqual(check.call_count, stabilizer_order - 1)

    def test_requires_conditions(self):
        """Test the criterion refuses S-rings without (A) and (B)"""
        sr = validate_sring(singleton_partition(build_group(GroupSpec(Family.H1, 3))))
        with self.assertRaises(ConditionsABRequired):
            schurity_by_compatibility(sr)

    def test_ordered_basis(self):
        """Test the derived values reproduce the sequence"""
        basis = ordered_basis(self.a1)
        self.assertEqual(basis.values, canonical_sequence(7).x)
        self.assertEqual(len(basis.flat_order()), 343)
        self.assertEqual(len(basis.L), 49)


class OracleAgreementTests(SimpleTestCase):
    def assertVerdicts(self, sr, schurian, stabilizer_order):
        cs = scheme_from_sring(sr)
        certificate = is_schurian(sr, cs=cs)
        self.assertEqual(certificate.schurian, schurian)
        self.assertEqual(certificate.aut.stabilizer_order, stabilizer_order)
        self.assertEqual(schurity_by_compatibility(sr, cs).schurian, schurian)

    def test_small_primes(self):
        """Test compatibility and automorphisms agree for p = 3, 5 over both groups"""
        for p in (3, 5):
            for seq in enumerate_suitable(p):
                for family in Family:
                    sr = sring_from_sequence(family, seq)
                    cs = scheme_from_sring(sr)
                    self.assertEqual(
                        schurity_by_compatibility(sr, cs).schurian,
                        is_schurian(sr, cs=cs).schurian,
                        (family, seq),
                    )

    def test_p5_is_schurian(self):
        """Test (0,2,4,1) is Schurian with stabilizer order 5 over both groups"""
        seq = SuitableSequence(5, (0, 2, 4, 1))
        for family in Family:
            self.assertVerdicts(sring_from_sequence(family, seq), True, 5)

    def test_a2_is_not_schurian(self):
        """Test (0,4,2,5,6,1) over H1(7) is non-Schurian with stabilizer order 1"""
        self.assertVerdicts(sring_h1_from_sequence(mod4_3_sequence(7)), False, 1)

    @tag("slow")
    @pytest.mark.slow
    def test_third_p7_sequence(self):
        """Test (0,2,3,6,4,1) is non-Schurian with stabilizer order 1 over both groups"""
        seq = SuitableSequence(7, (0, 2, 3, 6, 4, 1))
        for family in Family:
            self.assertVerdicts(sring_from_sequence(family, seq), False, 1)

    @tag("slow")
    @pytest.mark.slow
    def test_p7(self):
        """Test compatibility and automorphisms agree for every p = 7 sequence over both groups"""
        for seq in enumerate_suitable(7):
            for family in Family:
                sr = sring_from_sequence(family, seq)
                cs = scheme_from_sring(sr)
                self.assertEqual(
                    schurity_by_compatibility(sr, cs).schurian,
                    is_schurian(sr, cs=cs).schurian,
                    (family, seq),
                )


class CongruenceLineTests(SimpleTestCase):
    def test_equivalence_and_composition(self):
        """Test 2n = 3l composed with 5n = 2l gives 5n = 3l mod 11"""
        first = CongruenceLine(2, 3, 11, (1, 2, 1))
        second = CongruenceLine(5, 2, 11, (2, 3, 1))
        composed = first.compose(second)
        self.assertTrue(composed.equivalent(CongruenceLine(5, 3, 11, (1, 3, -1))))
        self.assertFalse(composed.holds(10, 1))
        self.assertTrue(CongruenceLine(10, 1, 11, (1, 3, 2)).holds(10, 1))

    def test_offset_lines_do_not_compose(self):
        """Test only homogeneous lines compose"""
        with self.assertRaises(ValueError):
            CongruenceLine(1, 1, 7, (1, 1, 1), offset=1).compose(CongruenceLine(1, 1, 7, (1, 1, 1)))

    def test_str(self):
        """Test the printed form"""
        self.assertEqual(str(CongruenceLine(2, 3, 11, (1, 2, 1))), '2n = 3l (mod 11)')


class WalkthroughTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.report = congruence_walkthrough(11)

    def test_cases(self):
        """Test the three lines at p = 11"""
        lines = [(line.A, line.B) for line in self.report.cases]
        self.assertEqual(lines, [(1, 7), (8, 1), (6, 5)])
        self.assertEqual(self.report.templates_match, (True, True, True))
        self.assertTrue(self.report.lines_match_blocks)
        self.assertTrue(self.report.zero_pairs_ok)

    def test_contradiction(self):
        """Test (n, l) = (10, 1) satisfies the third line but not the composition"""
        self.assertEqual(self.report.witness, (10, 1))
        self.assertTrue(self.report.third_case_holds)
        self.assertFalse(self.report.composition_holds)
        self.assertTrue(self.report.composed.equivalent(CongruenceLine(5, 3, 11, (1, 3, -1))))
        self.assertTrue(self.report.non_schurian)
        self.assertFalse(self.report.compatibility_schurian)

    def test_inapplicable(self):
        """Test p = 7 (x_3 = 2) and p = 5 are refused"""
        with self.assertRaises(Inapplicable):
            congruence_walkthrough(7)
        with self.assertRaises(Inapplicable):
            congruence_walkthrough(5)

    def test_p7_still_non_schurian(self):
        """Test the criterion rejects A2 even though the walkthrough does not apply"""
        self.assertFalse(schurity_by_compatibility(sring_h1_from_sequence(mod4_3_sequence(7))).schurian)

    def test_empty_intersection(self):
        """Test triples with k + i != j are refused"""
        sr = sring_h1_from_sequence(mod4_3_sequence(7))
        with self.assertRaises(EmptyIntersection):
            triple_congruence(sr, 1, 3, 1)

    def test_line_matches_block_p7(self):
        """Test the first line matches its block for A2"""
        sr = sring_h1_from_sequence(mod4_3_sequence(7))
        line = triple_congruence(sr, 1, 2, 1)
        self.assertTrue(line_matches_block(sr, line))

    @tag("slow")
    @pytest.mark.slow
    def test_automorphisms_confirm(self):
        """Test the automorphism search agrees at p = 11"""
        report = congruence_walkthrough(11, confirm_with_automorphisms=True)
        self.assertFalse(report.automorphism_schurian)


def corpus(primes):
    for p in primes:
        for seq in enumerate_suitable(p):
            for family in Family:
                yield family, seq, sring_from_sequence(family, seq)


class BlockStructureTests(SimpleTestCase):
    def ordered_block(self, cs, basis, d, e, f, **kwargs):
        return block_matrix(cs, d, e, f, rows=basis.orders[d], cols=basis.orders[f], **kwargs)

    def assertShiftInvariant(self, sr):
        cs = scheme_from_sring(sr)
        basis = ordered_basis(sr)
        p = sr.group.prime
        for i in range(1, p):
            for j in range(1, p):
                d, f = basis.representative(i), basis.representative(j)
                colors = np.unique(cs.color[np.ix_(basis.orders[d], basis.orders[f])])
                for l in range(1, p):
                    d_l, f_l = basis.shifted(i, l), basis.shifted(j, l)
                    shifted_colors = np.unique(cs.color[np.ix_(basis.orders[d_l], basis.orders[f_l])])
                    np.testing.assert_array_equal(colors, shifted_colors)
                    for e in colors:
                        np.testing.assert_array_equal(
                            self.ordered_block(cs, basis, d, int(e), f),
                            self.ordered_block(cs, basis, d_l, int(e), f_l),
                        )

    def assertRelationShiftInvariant(self, sr):
        cs = scheme_from_sring(sr)
        basis = ordered_basis(sr)
        p = sr.group.prime
        for i in range(1, p):
            d = basis.representative(i)
            for j in range(1, p):
                f = basis.representative(j)
                for k in range(1, p):
                    for l in range(p):
                        block = self.ordered_block(cs, basis, d, basis.shifted(k, l), f)
                        for m in range(1, p):
                            np.testing.assert_array_equal(
                                block,
                                self.ordered_block(cs, basis, d, basis.shifted(k, l + m), basis.shifted(j, m)),
                            )

    def assertPermutationBlocks(self, sr):
        cs = scheme_from_sring(sr)
        basis = ordered_basis(sr)
        p = sr.group.prime
        position = {index: key for key, index in basis.shifts.items()}
        outside = sorted(position)
        for d in outside:
            for f in outside:
                for e in np.unique(cs.color[np.ix_(basis.orders[d], basis.orders[f])]):
                    e = int(e)
                    if e not in position:
                        continue
                    k, l = position[e]
                    self.assertTrue(is_permutation_matrix(self.ordered_block(cs, basis, d, e, f)))
                    for shift in range(1, p):
                        block = self.ordered_block(cs, basis, d, basis.shifted(k, l + shift), f,
                                                   require_permutation=True)
                        self.assertTrue(is_permutation_matrix(block))

    def assertLinesMatchBlocks(self, sr):
        cs = scheme_from_sring(sr)
        basis = ordered_basis(sr)
        p = sr.group.prime
        for i in range(1, p):
            for k in range(1, p):
                j = (i + k) % p
                if j == 0:
                    continue
                line = triple_congruence(sr, i, j, k, basis)
                self.assertTrue(line_matches_block(sr, line, cs, basis), (sr.group.family, i, j, k))

    def test_shifting_both_classes(self):
        """Test the blocks on T_i x T_j and T_i z^l x T_j z^l coincide for p <= 5"""
        for family, seq, sr in corpus((3, 5)):
            with self.subTest(family=family, seq=str(seq)):
                self.assertShiftInvariant(sr)

    def test_shifting_relation_and_column(self):
        """Test R(T) on T_i x T_j matches R(T z^m) on T_i x T_j z^m for p <= 5"""
        for family, seq, sr in corpus((3, 5)):
            with self.subTest(family=family, seq=str(seq)):
                self.assertRelationShiftInvariant(sr)

    def test_nonempty_blocks_are_permutations(self):
        """Test nonempty blocks between shifted classes are permutation matrices for every shift of the relation"""
        for family, seq, sr in corpus((3, 5)):
            with self.subTest(family=family, seq=str(seq)):
                self.assertPermutationBlocks(sr)

    def test_lines_match_blocks(self):
        """Test every applicable triple gives a line equal to its block for p = 5"""
        for family, seq, sr in corpus((5,)):
            with self.subTest(family=family, seq=str(seq)):
                self.assertLinesMatchBlocks(sr)

    @tag("slow")
    @pytest.mark.slow
    def test_p7(self):
        """Test the block invariants and every applicable line for p = 7"""
        for family, seq, sr in corpus((7,)):
            with self.subTest(family=family, seq=str(seq)):
                self.assertShiftInvariant(sr)
                self.assertRelationShiftInvariant(sr)
                self.assertPermutationBlocks(sr)
                self.assertLinesMatchBlocks(sr)
