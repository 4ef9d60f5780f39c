from django.test import SimpleTestCase, override_settings

from srings.conf import get_setting
from srings.pgroup import (
    EmptyGenerators,
    Family,
    GroupSpec,
    InvalidPrime,
    NotASubgroup,
    build_group,
    center,
    coset,
    generate_subgroup,
)


class GroupConstructionTests(SimpleTestCase):
    def setUp(self):
        self.h1 = build_group(GroupSpec(Family.H1, 3))
        self.h2 = build_group(GroupSpec(Family.H2, 5))

    def test_order_is_p_cubed(self):
        """Test both families have p^3 elements"""
        self.assertEqual(self.h1.order, 27)
        self.assertEqual(self.h2.order, 125)
        self.assertEqual(self.h1.identity, 0)

    def test_b_times_a_in_h1(self):
        """Test b*a rewrites to a^7 b in H1(3)"""
        product = self.h1.product(self.h1.generator('b'), self.h1.generator('a'))
        self.assertEqual(self.h1.elements[product], (7, 1))

    def test_b_times_a_in_h2(self):
        """Test b*a rewrites to a b c^4 in H2(5)"""
        product = self.h2.product(self.h2.generator('b'), self.h2.generator('a'))
        self.assertEqual(self.h2.elements[product], (1, 1, 4))

    def test_defining_relation_h1(self):
        """Test ab = ba^(p+1)"""
        g = self.h1
        a, b = g.generator('a'), g.generator('b')
        self.assertEqual(g.product(a, b), g.product(b, g.power(a, 4)))

    def test_generator_orders(self):
        """Test a has order p^2 in H1 and every non-identity element has order p in H2"""
        self.assertEqual(self.h1.element_order(self.h1.generator('a')), 9)
        self.assertEqual(self.h1.element_order(self.h1.generator('b')), 3)
        self.assertEqual({self.h2.element_order(x) for x in range(1, self.h2.order)}, {5})

    def test_inverse_table(self):
        """Test x * x^-1 is the identity for every x"""
        for x in range(self.h2.order):
            self.assertEqual(self.h2.mul[x, self.h2.inv[x]], 0)

    def test_tables_are_read_only(self):
        """Test shared tables cannot be modified"""
        self.assertFalse(self.h1.mul.flags.writeable)
        with self.assertRaises(ValueError):
            self.h1.mul[0, 0] = 1

    def test_build_is_cached(self):
        """Test the same GroupSpec gives the same group object"""
        self.assertIs(build_group(GroupSpec('h1', 3)), self.h1)

    def test_invalid_prime(self):
        """Test p = 2, 9 and 1 are rejected"""
        for p in (2, 9, 1):
            with self.assertRaises(InvalidPrime):
                GroupSpec(Family.H1, p)

    def test_header(self):
        """Test header text"""
        self.assertEqual(GroupSpec(Family.H2, 5).header, 'group=h2 p=5')

    def test_unknown_generator(self):
        """Test H1 has no generator c"""
        with self.assertRaises(KeyError):
            self.h1.generator('c')


class SubgroupTests(SimpleTestCase):
    def setUp(self):
        self.h1 = build_group(GroupSpec(Family.H1, 3))
        self.h2 = build_group(GroupSpec(Family.H2, 3))
        self.h1_7 = build_group(GroupSpec(Family.H1, 7))

    def test_center_h1(self):
        """Test Z(H1(3)) = {e, a^3, a^6}"""
        g = self.h1
        self.assertEqual(center(g), {0, g.index((3, 0)), g.index((6, 0))})
        self.assertIn(g.central_element(), center(g))

    def test_center_h2(self):
        """Test Z(H2(3)) = {e, c, c^2}"""
        g = self.h2
        self.assertEqual(center(g), {0, g.index((0, 0, 1)), g.index((0, 0, 2))})

    def test_generate_elementary_abelian(self):
        """Test <a^7, b> in H1(7) has 49 commuting elements of order dividing 7"""
        g = self.h1_7
        sub = generate_subgroup(g, [g.power(g.generator('a'), 7), g.generator('b')])
        self.assertEqual(len(sub), 49)
        members = sorted(sub)
        for x in members:
            self.assertEqual(g.power(x, 7), 0)
            for y in members:
                self.assertEqual(g.mul[x, y], g.mul[y, x])

    def test_generate_cyclic(self):
        """Test <a> in H1(3) has 9 elements"""
        self.assertEqual(len(generate_subgroup(self.h1, [self.h1.generator('a')])), 9)

    def test_generate_empty(self):
        """Test an empty generator set is rejected"""
        with self.assertRaises(EmptyGenerators):
            generate_subgroup(self.h2, [])

    def test_left_coset(self):
        """Test a<b> = {a, ab, ..., ab^6}"""
        g = self.h1_7
        b_sub = generate_subgroup(g, [g.generator('b')])
        self.assertEqual(coset(g, b_sub, g.generator('a')), {g.index((1, j)) for j in range(7)})
        self.assertEqual(coset(g, b_sub, g.identity), b_sub)

    def test_right_coset_differs(self):
        """Test <b>a is a different coset of the non-normal <b>"""
        g = self.h1_7
        b_sub = generate_subgroup(g, [g.generator('b')])
        a = g.generator('a')
        self.assertNotEqual(coset(g, b_sub, a, side='right'), coset(g, b_sub, a, side='left'))

    def test_coset_of_non_subgroup(self):
        """Test {e, a, b} is not a subgroup"""
        g = self.h1
        with self.assertRaises(NotASubgroup):
            coset(g, {0, g.generator('a'), g.generator('b')}, g.generator('a'))


class SettingsTests(SimpleTestCase):
    def test_defaults(self):
        """Test a known setting falls back to its default"""
        self.assertEqual(get_setting('THREADS'), 1)

    @override_settings(SCHURLAB={'THREADS': 4})
    def test_override(self):
        """Test SCHURLAB overrides are honoured"""
        self.assertEqual(get_setting('THREADS'), 4)

    def test_unknown_setting(self):
        """Test an unknown name raises KeyError"""
        with self.assertRaises(KeyError):
            get_setting('NOT_A_SETTING')
