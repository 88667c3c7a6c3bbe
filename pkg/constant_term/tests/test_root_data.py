from fractions import Fraction

from django.test import SimpleTestCase
from sympy import ImmutableMatrix

from constant_term.affine_weyl import act_on_coroot, act_on_root, enumerate_elements
from constant_term.exceptions import DimensionMismatch, ImaginaryRoot, InvalidWord, UnsupportedType
from constant_term.root_data import AffineRoot, Character, CorootVector, Functional, build_cartan, pair


class BuildCartanTests(SimpleTestCase):
    def test_a1(self):
        datum = build_cartan('A', 1)
        self.assertEqual(datum.cartan, ImmutableMatrix([[2]]))
        self.assertEqual(datum.comarks, (1,))
        self.assertEqual(datum.form, ImmutableMatrix([[2]]))
        self.assertEqual(datum.dual_coxeter, 2)
        self.assertEqual(str(datum), 'A1^(1)')

    def test_a2(self):
        datum = build_cartan('a', 2)
        self.assertEqual(datum.cartan, ImmutableMatrix([[2, -1], [-1, 2]]))
        self.assertEqual(datum.comarks, (1, 1))
        self.assertEqual(datum.highest_root, (1, 1))
        self.assertEqual(len(datum.positive_roots), 3)

    def test_dual_coxeter_numbers(self):
        expected = {
            ('A', 3): 4, ('B', 3): 5, ('C', 3): 4, ('D', 4): 6,
            ('E', 6): 12, ('E', 7): 18, ('E', 8): 30, ('F', 4): 9, ('G', 2): 4,
        }
        for (label, rank), h in expected.items():
            with self.subTest(type=label, rank=rank):
                self.assertEqual(build_cartan(label, rank).dual_coxeter, h)

    def test_highest_root_has_norm_two(self):
        for label, rank in [('B', 3), ('C', 3), ('F', 4), ('G', 2)]:
            with self.subTest(type=label):
                datum = build_cartan(label, rank)
                self.assertEqual(datum.half_norm(datum.highest_root), 1)

    def test_unsupported(self):
        for label, rank in [('A', 0), ('E', 5), ('H', 3), ('D', 3)]:
            with self.subTest(type=label, rank=rank):
                with self.assertRaises(UnsupportedType):
                    build_cartan(label, rank)

    def test_affine_cartan(self):
        self.assertEqual(build_cartan('A', 1).affine_cartan, ImmutableMatrix([[2, -2], [-2, 2]]))
        self.assertEqual(
            build_cartan('A', 2).affine_cartan,
            ImmutableMatrix([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]),
        )

    def test_affine_cartan_is_generalized(self):
        for label, rank in [('B', 3), ('C', 2), ('G', 2), ('F', 4)]:
            matrix = build_cartan(label, rank).affine_cartan
            size = rank + 1
            for i in range(size):
                self.assertEqual(matrix[i, i], 2)
                for j in range(size):
                    if i != j:
                        self.assertLessEqual(matrix[i, j], 0)
                        self.assertEqual(matrix[i, j] == 0, matrix[j, i] == 0)


class RootTests(SimpleTestCase):
    def setUp(self):
        self.datum = build_cartan('A', 1)

    def test_simple_roots(self):
        self.assertEqual(self.datum.simple_root(1), AffineRoot((1,), 0))
        self.assertEqual(self.datum.simple_root(2), AffineRoot((-1,), 1))
        with self.assertRaises(InvalidWord):
            self.datum.simple_root(3)

    def test_coroots(self):
        self.assertEqual(self.datum.coroot_of(AffineRoot((1,), 0)), CorootVector.of([1, 0, 0]))
        self.assertEqual(self.datum.coroot_of(AffineRoot((-1,), 1)), CorootVector.of([-1, 1, 0]))
        self.assertEqual(self.datum.coroot_of(AffineRoot((1,), 1)), CorootVector.of([1, 1, 0]))

    def test_simple_coroots_match_coroot_of(self):
        for label, rank in [('A', 2), ('B', 2), ('G', 2)]:
            datum = build_cartan(label, rank)
            for i in range(1, rank + 2):
                self.assertEqual(datum.coroot_of(datum.simple_root(i)), datum.simple_coroot(i))

    def test_coroot_of_is_equivariant(self):
        for label, rank in [('A', 1), ('A', 2), ('C', 2), ('G', 2)]:
            datum = build_cartan(label, rank)
            roots = [datum.simple_root(i) for i in range(1, rank + 2)]
            for beta in datum.positive_roots:
                roots += [AffineRoot(beta, -1), -AffineRoot(beta, 2)]
            for w in enumerate_elements(datum, 4):
                for a in roots:
                    self.assertEqual(
                        datum.coroot_of(act_on_root(w, a)), act_on_coroot(w, datum.coroot_of(a)), f'{datum} {w.word} {a}'
                    )

    def test_imaginary_root_has_no_coroot(self):
        with self.assertRaises(ImaginaryRoot):
            self.datum.coroot_of(AffineRoot((0,), 1))

    def test_exactly_one_sign_is_positive(self):
        for beta in self.datum.positive_roots:
            for n in range(-3, 4):
                a = AffineRoot(beta, n)
                self.assertNotEqual(a.is_positive, (-a).is_positive)

    def test_rendering(self):
        self.assertEqual(str(AffineRoot((1,), 0)), 'a1')
        self.assertEqual(str(AffineRoot((-1,), 1)), '-a1 + 1delta')
        self.assertEqual(str(AffineRoot((1, 1), 2)), 'a1 + a2 + 2delta')


class PairingTests(SimpleTestCase):
    def test_rho(self):
        datum = build_cartan('A', 2)
        for i in range(1, 4):
            self.assertEqual(pair(datum.rho, datum.simple_coroot(i)), 1)
        self.assertEqual(pair(datum.rho, datum.c), 3)
        self.assertEqual(pair(datum.rho, datum.D), 0)

    def test_delta_functional(self):
        datum = build_cartan('A', 1)
        self.assertEqual(pair(datum.delta_functional, datum.D), 1)
        self.assertEqual(pair(datum.delta_functional, datum.c), 0)

    def test_bilinear_form(self):
        datum = build_cartan('A', 2)
        h1, h2 = datum.simple_coroot(1), datum.simple_coroot(2)
        self.assertEqual(datum.bilinear(h1, h1), 2)
        self.assertEqual(datum.bilinear(h1 + h2, h1), 1)
        self.assertEqual(datum.bilinear(datum.c, h1), 0)
        self.assertEqual(datum.bilinear(datum.c, datum.D), 1)
        self.assertEqual(datum.bilinear(datum.D, datum.D), 0)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            pair(Functional.of([1, 0, 0]), CorootVector.of([1, 0, 0, 0]))


class CharacterTests(SimpleTestCase):
    def setUp(self):
        self.datum = build_cartan('A', 1)

    def test_predicates(self):
        chi = Character((-3, -3))
        self.assertTrue(chi.is_integral)
        self.assertTrue(chi.is_dominant_negative)
        self.assertEqual(chi.epsilon, 1)
        self.assertEqual(chi.at_delta(self.datum), -6)
        self.assertTrue(chi.in_meromorphy_domain(self.datum))

    def test_boundary_is_outside_meromorphy_domain(self):
        chi = Character((0, -2))
        self.assertFalse(chi.is_dominant_negative)
        self.assertFalse(chi.in_meromorphy_domain(self.datum))

    def test_rational_values(self):
        chi = Character(('-7/2', Fraction(-3)))
        self.assertFalse(chi.is_integral)
        self.assertEqual(chi.values, (Fraction(-7, 2), Fraction(-3)))

    def test_functional_round_trip(self):
        datum = build_cartan('A', 2)
        chi = Character((-3, -4, -5))
        self.assertEqual(Character.from_functional(datum, chi.functional(datum)), chi)

    def test_wrong_length(self):
        with self.assertRaises(DimensionMismatch):
            Character((-3, -3, -3)).at_delta(self.datum)
