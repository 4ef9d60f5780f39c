from itertools import combinations
from math import factorial

import numpy as np
import pytest
from django.test import SimpleTestCase, tag

from srings.automorphism import (
    ConditionsABRequired,
    Precheck,
    aut_order_precheck,
    is_color_automorphism,
    is_schurian,
    stabilizer_automorphisms,
)
from srings.pgroup import Family, GroupSpec, build_group
from srings.scheme import scheme_from_sring
from srings.sequences import (
    canonical_sequence,
    enumerate_suitable,
    mod4_3_sequence,
    sring_from_sequence,
    sring_h1_from_sequence,
)
from srings.sring import (
    automorphism_from_images,
    singleton_partition,
    transitivity_module,
    trivial_partition,
    validate_sring,
)


class StabilizerTests(SimpleTestCase):
    def setUp(self):
        self.group = build_group(GroupSpec(Family.H1, 3))

    def test_thin_scheme(self):
        """Test the thin scheme has a trivial stabilizer and is Schurian"""
        sr = validate_sring(singleton_partition(self.group))
        certificate = is_schurian(sr)
        self.assertEqual(certificate.aut.stabilizer_order, 1)
        self.assertEqual(certificate.aut.full_aut_order, 27)
        self.assertTrue(certificate.schurian)
        self.assertEqual(certificate.generators, ())

    def test_trivial_scheme(self):
        """Test the trivial scheme has stabilizer order 26! without enumerating it"""
        cs = scheme_from_sring(validate_sring(trivial_partition(self.group)))
        aut = stabilizer_automorphisms(cs)
        self.assertEqual(aut.stabilizer_order, factorial(26))
        self.assertFalse(aut.elements_enumerated)
        self.assertEqual(aut.stabilizer_elements, ())
        self.assertEqual(aut.orbits, ((0,), tuple(range(1, 27))))
        for images in aut.generators:
            self.assertTrue(is_color_automorphism(cs, images))

    def test_is_color_automorphism(self):
        """Test the identity preserves colors and a non-permutation does not"""
        cs = scheme_from_sring(validate_sring(singleton_partition(self.group)))
        self.assertTrue(is_color_automorphism(cs, np.arange(27)))
        self.assertFalse(is_color_automorphism(cs, np.zeros(27, dtype=np.int64)))
        right_translation = self.group.mul[:, self.group.generator('a')]
        self.assertTrue(is_color_automorphism(cs, right_translation))


class ExampleSchurityTests(SimpleTestCase):
    def setUp(self):
        self.a1 = sring_h1_from_sequence(canonical_sequence(7))
        self.a2 = sring_h1_from_sequence(mod4_3_sequence(7))

    def test_a1_is_schurian(self):
        """Test A1: stabilizer order 7, |Aut| = 7 * 343"""
        certificate = is_schurian(self.a1)
        self.assertTrue(certificate.schurian)
        self.assertEqual(certificate.aut.stabilizer_order, 7)
        self.assertEqual(certificate.aut.full_aut_order, 2401)
        self.assertTrue(certificate.aut.elements_enumerated)
        self.assertEqual(len(certificate.aut.stabilizer_elements), 7)
        self.assertEqual(len(certificate.aut.orbits), self.a1.rank)

    def test_a1_generators_are_automorphisms(self):
        """Test every emitted generator for A1 fixes e and preserves colors"""
        cs = scheme_from_sring(self.a1)
        certificate = is_schurian(self.a1, cs=cs)
        self.assertTrue(certificate.generators)
        for images in certificate.generators:
            self.assertEqual(images[0], 0)
            self.assertTrue(is_color_automorphism(cs, images))

    def test_a2_is_not_schurian(self):
        """Test A2 has a class split into several stabilizer orbits"""
        certificate = is_schurian(self.a2)
        self.assertFalse(certificate.schurian)
        self.assertIsNotNone(certificate.split_class)
        self.assertGreater(len(certificate.split_orbits), 1)
        self.assertEqual(certificate.generators, ())

    def test_threads_give_same_order(self):
        """Test the threaded search agrees with the sequential one"""
        cs = scheme_from_sring(self.a1)
        self.assertEqual(stabilizer_automorphisms(cs, threads=3).stabilizer_order,
                         stabilizer_automorphisms(cs, threads=1).stabilizer_order)

    def test_precheck(self):
        """Test A1 passes the stabilizer order precheck"""
        self.assertEqual(aut_order_precheck(self.a1), Precheck.MAYBE_SCHURIAN)

    def test_precheck_rejects_a2(self):
        """Test A2 has stabilizer order 1, so the precheck rules Schurity out"""
        certificate = is_schurian(self.a2)
        self.assertEqual(certificate.aut.stabilizer_order, 1)
        self.assertEqual(aut_order_precheck(self.a2, certificate.aut), Precheck.CERTAINLY_NOT)
        self.assertEqual(aut_order_precheck(self.a2), Precheck.CERTAINLY_NOT)
        self.assertFalse(certificate.schurian)

    def test_precheck_requires_conditions(self):
        """Test the precheck refuses the singleton partition"""
        sr = validate_sring(singleton_partition(build_group(GroupSpec(Family.H1, 3))))
        with self.assertRaises(ConditionsABRequired):
            aut_order_precheck(sr)


def group_automorphisms(group):
    """A few automorphisms fixing e, given by the images of a and b"""
    a, b = group.generator('a'), group.generator('b')
    if group.family == Family.H1:
        images = [
            {'a': group.product(a, b), 'b': b},
            {'a': group.power(a, 2), 'b': b},
            {'a': a, 'b': group.product(b, group.power(a, group.prime))},
        ]
    else:
        c = group.generator('c')
        images = [
            {'a': group.product(a, b), 'b': b},
            {'a': group.power(a, 2), 'b': b},
            {'a': a, 'b': group.power(b, 2)},
            {'a': group.product(a, c), 'b': b},
        ]
    return [automorphism_from_images(group, image) for image in images]


class TransitivityModuleTests(SimpleTestCase):
    def assertOrbitSRings(self, group):
        auts = group_automorphisms(group)
        for size in (1, 2):
            for subset in combinations(auts, size):
                sr = transitivity_module(group, list(subset))
                cs = scheme_from_sring(sr)
                for images in subset:
                    self.assertTrue(is_color_automorphism(cs, images))
                self.assertTrue(is_schurian(sr, cs=cs).schurian, (group.spec.header, size))

    def test_p3(self):
        """Test orbit S-rings of automorphism subsets of H1(3) and H2(3) are Schurian"""
        for family in Family:
            self.assertOrbitSRings(build_group(GroupSpec(family, 3)))

    @tag("slow")
    @pytest.mark.slow
    def test_p5(self):
        """Test orbit S-rings of automorphism subsets of H1(5) and H2(5) are Schurian"""
        for family in Family:
            self.assertOrbitSRings(build_group(GroupSpec(family, 5)))


class OrbitRefinementTests(SimpleTestCase):
    def assertOrbitsRefineClasses(self, sr):
        certificate = is_schurian(sr)
        covered = []
        for orbit in certificate.aut.orbits:
            self.assertEqual(len({int(sr.class_of[x]) for x in orbit}), 1, orbit)
            covered.extend(orbit)
        self.assertEqual(sorted(covered), list(range(sr.group.order)))

    def test_corpus(self):
        """Test stabilizer orbits lie inside classes for every p <= 5 sequence over both groups"""
        for p in (3, 5):
            for seq in enumerate_suitable(p):
                for family in Family:
                    with self.subTest(family=family, seq=str(seq)):
                        self.assertOrbitsRefineClasses(sring_from_sequence(family, seq))

    def test_extreme_partitions(self):
        """Test the thin and trivial schemes over H2(3)"""
        group = build_group(GroupSpec(Family.H2, 3))
        for partition in (singleton_partition(group), trivial_partition(group)):
            self.assertOrbitsRefineClasses(validate_sring(partition))
