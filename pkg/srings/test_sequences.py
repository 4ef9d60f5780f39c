from itertools import permutations

from django.test import SimpleTestCase, override_settings

from srings.pgroup import Family, GroupSpec, build_group
from srings.sequences import (
    BadLength,
    CapExceeded,
    NoSuchSequence,
    NotSuitable,
    OutOfRange,
    SuitableSequence,
    WrongResidueClass,
    canonical_sequence,
    enumerate_suitable,
    inverse_identity_holds,
    is_suitable,
    mod4_3_sequence,
    product_dichotomy_holds,
    sring_from_sequence,
    sring_h1_from_sequence,
    sring_h2_from_sequence,
    thin_subgroup,
)
from srings.sring import check_conditions_AB, is_commutative, is_p_sring, thin_residue


class SuitabilityTests(SimpleTestCase):
    def test_known_sequences(self):
        """Test sequences listed as suitable"""
        self.assertTrue(is_suitable((0, 4, 2, 5, 6, 1), 7))
        self.assertTrue(is_suitable((0, 2, 3, 6, 4, 1), 7))
        self.assertTrue(is_suitable((0, 6, 10, 3, 4, 9, 7, 2, 8, 1), 11))
        self.assertTrue(is_suitable((0, 4, 10, 5, 3, 8, 9, 2, 6, 1), 11))

    def test_unsuitable(self):
        """Test x_2 + 2 != x_5 fails"""
        self.assertFalse(is_suitable((0, 1, 2, 3, 4, 5), 7))
        self.assertFalse(is_suitable((1, 0, 2, 3, 4, 5), 7))

    def test_bad_input(self):
        """Test wrong lengths and residues outside [0, p)"""
        with self.assertRaises(BadLength):
            is_suitable((0, 1), 7)
        with self.assertRaises(OutOfRange):
            is_suitable((0, 9, 2, 5, 6, 1), 7)

    def test_wrapper_validates(self):
        """Test SuitableSequence refuses unsuitable input"""
        with self.assertRaises(NotSuitable):
            SuitableSequence(7, (0, 1, 2, 3, 4, 5))
        seq = SuitableSequence(7, [0, 4, 2, 5, 6, 1])
        self.assertEqual(seq.value(2), 4)
        self.assertEqual(seq.missing, 3)
        self.assertEqual(str(seq), '0,4,2,5,6,1')


class ConstructionTests(SimpleTestCase):
    def test_canonical(self):
        """Test x_i = ((p-1)/2)(i-1) for p = 3, 5, 7"""
        self.assertEqual(canonical_sequence(3).x, (0, 1))
        self.assertEqual(canonical_sequence(5).x, (0, 2, 4, 1))
        self.assertEqual(canonical_sequence(7).x, (0, 3, 6, 2, 5, 1))

    def test_mod4_3(self):
        """Test the x_2 = (p+1)/2 construction for p = 7, 11, 19"""
        self.assertEqual(mod4_3_sequence(7).x, (0, 4, 2, 5, 6, 1))
        self.assertEqual(mod4_3_sequence(11).x, (0, 6, 10, 3, 4, 9, 7, 2, 8, 1))
        for p in (19, 23, 31, 43):
            seq = mod4_3_sequence(p)
            self.assertEqual(seq.value(2), (p + 1) // 2)
            self.assertTrue(is_suitable(seq.x, p))

    def test_mod4_3_rejections(self):
        """Test p = 5 is the wrong residue class and p = 3 has no such sequence"""
        with self.assertRaises(WrongResidueClass):
            mod4_3_sequence(5)
        with self.assertRaises(NoSuchSequence):
            mod4_3_sequence(3)


class EnumerationTests(SimpleTestCase):
    def test_small_primes(self):
        """Test the exact lists for p = 3, 5, 7"""
        self.assertEqual([s.x for s in enumerate_suitable(3)], [(0, 1)])
        self.assertEqual([s.x for s in enumerate_suitable(5)], [(0, 2, 4, 1)])
        self.assertEqual(
            [s.x for s in enumerate_suitable(7)],
            [(0, 2, 3, 6, 4, 1), (0, 3, 6, 2, 5, 1), (0, 4, 2, 5, 6, 1)],
        )

    def test_brute_force_agrees(self):
        """Test backtracking equals filtering every tuple of distinct residues"""
        for p in (3, 5, 7):
            brute = sorted(x for x in permutations(range(p), p - 1) if is_suitable(x, p))
            self.assertEqual([s.x for s in enumerate_suitable(p)], brute)

    def test_p11_contains_known(self):
        """Test the p = 11 enumeration holds both constructions and (0,4,10,5,3,8,9,2,6,1)"""
        found = {s.x for s in enumerate_suitable(11)}
        self.assertIn(canonical_sequence(11).x, found)
        self.assertIn(mod4_3_sequence(11).x, found)
        self.assertIn((0, 4, 10, 5, 3, 8, 9, 2, 6, 1), found)

    @override_settings(SCHURLAB={'ENUMERATION_MAX_PRIME': 5})
    def test_cap(self):
        """Test the enumeration cap comes from settings"""
        with self.assertRaises(CapExceeded):
            enumerate_suitable(7)


class BuilderTests(SimpleTestCase):
    def test_h2_p3(self):
        """Test 9 singletons and 6 triples over H2(3)"""
        sr = sring_h2_from_sequence(canonical_sequence(3))
        sizes = sorted(len(members) for members in sr.classes)
        self.assertEqual(sizes, [1] * 9 + [3] * 6)

    def test_h2_p7_residue(self):
        """Test the thin residue over H2(7) is <b, c>"""
        sr = sring_h2_from_sequence(canonical_sequence(7))
        self.assertEqual(thin_residue(sr), frozenset(thin_subgroup(sr.group)))

    def test_family_dispatch(self):
        """Test sring_from_sequence accepts family values"""
        seq = canonical_sequence(5)
        self.assertEqual(sring_from_sequence('h1', seq).classes, sring_h1_from_sequence(seq).classes)
        self.assertEqual(sring_from_sequence(Family.H2, seq).group.family, Family.H2)

    def test_every_enumerated_sequence(self):
        """Test each sequence builds a non-commutative p-S-ring with (A) and (B) over both groups"""
        for p in (3, 5, 7):
            for seq in enumerate_suitable(p):
                for family in Family:
                    sr = sring_from_sequence(family, seq)
                    self.assertEqual(sr.rank, p * p + p * (p - 1))
                    self.assertTrue(is_p_sring(sr))
                    self.assertFalse(is_commutative(sr))
                    conditions = check_conditions_AB(sr)
                    self.assertTrue(conditions.holds_A, (family, seq))
                    self.assertTrue(conditions.holds_B, (family, seq))

    def test_class_identities(self):
        """Test the inverse identity and the product dichotomy for p = 5, 7"""
        for p in (5, 7):
            for family in Family:
                group = build_group(GroupSpec(family, p))
                for seq in enumerate_suitable(p):
                    self.assertTrue(inverse_identity_holds(group, seq), (family, seq))
                    self.assertTrue(product_dichotomy_holds(group, seq), (family, seq))
