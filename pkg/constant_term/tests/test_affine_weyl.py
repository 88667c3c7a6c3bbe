from django.test import SimpleTestCase

from constant_term.affine_weyl import (
    act_on_coroot,
    act_on_root,
    brute_force_inversion_set,
    decompose,
    enumerate_elements,
    from_matrix,
    identity,
    inversion_set,
    recompose,
    reduce,
    shifted_action,
    translation_action,
    translation_element,
)
from constant_term.exceptions import InvalidWord
from constant_term.root_data import AffineRoot, Character, CorootVector, build_cartan


class ActionTests(SimpleTestCase):
    def setUp(self):
        self.datum = build_cartan('A', 1)

    def test_reflections_on_roots(self):
        alpha1, alpha2 = self.datum.simple_root(1), self.datum.simple_root(2)
        self.assertEqual(act_on_root((1,), alpha2, self.datum), AffineRoot((1,), 1))
        self.assertEqual(act_on_root((2,), alpha1, self.datum), AffineRoot((-1,), 2))
        self.assertEqual(act_on_root((1,), alpha1, self.datum), -alpha1)

    def test_delta_is_fixed(self):
        for w in enumerate_elements(self.datum, 3):
            self.assertEqual(act_on_root(w, self.datum.delta), self.datum.delta)

    def test_bare_word_needs_datum(self):
        with self.assertRaises(ValueError):
            act_on_root((1,), self.datum.simple_root(1))
        with self.assertRaises(InvalidWord):
            act_on_root((3,), self.datum.simple_root(1), self.datum)


class ReduceTests(SimpleTestCase):
    def setUp(self):
        self.datum = build_cartan('A', 1)

    def test_cancellation(self):
        self.assertTrue(reduce(self.datum, (1, 1)).is_identity)
        self.assertTrue(reduce(self.datum, (1, 2, 2, 1)).is_identity)
        self.assertEqual(reduce(self.datum, (1, 2, 1)).length, 3)

    def test_equality_is_by_action(self):
        self.assertEqual(reduce(self.datum, (1, 2, 2, 1)), identity(self.datum))
        self.assertNotEqual(reduce(self.datum, (1, 2, 1)), reduce(self.datum, (2, 1, 2)))

    def test_braid_relation_in_a2(self):
        datum = build_cartan('A', 2)
        self.assertEqual(reduce(datum, (1, 2, 1)), reduce(datum, (2, 1, 2)))
        self.assertEqual(reduce(datum, (1, 2, 1, 2, 1, 2)), identity(datum))

    def test_braid_relations_in_c2_and_g2(self):
        for label, m in (('C', 4), ('G', 6)):
            datum = build_cartan(label, 2)
            self.assertEqual(reduce(datum, (1, 2) * (m // 2)), reduce(datum, (2, 1) * (m // 2)))
            self.assertEqual(reduce(datum, (1, 2) * m), identity(datum))
            self.assertEqual(reduce(datum, (1, 2) * (m // 2)).length, m)

    def test_invalid_generator(self):
        with self.assertRaises(InvalidWord):
            reduce(self.datum, (3,))
        with self.assertRaises(InvalidWord):
            reduce(self.datum, (0,))

    def test_from_matrix(self):
        for w in enumerate_elements(build_cartan('A', 2), 3):
            self.assertEqual(from_matrix(w.datum, w.matrix), w)

    def test_multiplication_and_inverse(self):
        w = reduce(self.datum, (1, 2))
        self.assertEqual(w * w.inverse(), identity(self.datum))
        self.assertEqual((w * w).length, 4)


class InversionSetTests(SimpleTestCase):
    def test_w1_w2(self):
        datum = build_cartan('A', 1)
        w = reduce(datum, (1, 2))
        self.assertEqual(set(inversion_set(w)), {AffineRoot((1,), 0), AffineRoot((1,), 1)})
        self.assertEqual(set(inversion_set(w, form='gamma')), {AffineRoot((-1,), 1), AffineRoot((-1,), 2)})

    def test_against_scan(self):
        for datum in (build_cartan('A', 1), build_cartan('A', 2), build_cartan('B', 2)):
            for w in enumerate_elements(datum, 4):
                with self.subTest(datum=str(datum), word=w.word):
                    betas = inversion_set(w)
                    self.assertEqual(len(set(betas)), w.length)
                    self.assertEqual(set(betas), brute_force_inversion_set(w))
                    self.assertEqual(set(inversion_set(w, form='gamma')), brute_force_inversion_set(w, inverse=True))

    def test_unknown_form(self):
        w = reduce(build_cartan('A', 1), (1,))
        with self.assertRaises(ValueError):
            inversion_set(w, form='delta')


class TranslationTests(SimpleTestCase):
    def setUp(self):
        self.datum = build_cartan('A', 1)
        self.h1 = self.datum.simple_coroot(1)

    def test_translation_action(self):
        d, c = self.datum.D, self.datum.c
        self.assertEqual(translation_action(self.h1, -d, self.datum), self.h1 - d + c)
        self.assertEqual(translation_action(self.h1, self.h1 - d, self.datum), 2 * self.h1 - d + 3 * c)
        self.assertEqual(translation_action(self.h1, c, self.datum), c)

    def test_non_classical_translation(self):
        with self.assertRaises(ValueError):
            translation_action(self.datum.c, self.h1, self.datum)

    def test_closed_formula_matches_element(self):
        for datum in (self.datum, build_cartan('A', 2)):
            basis = [datum.simple_coroot(i) for i in range(1, datum.rank + 1)] + [datum.c, datum.D]
            for coords in [(1,) * datum.rank, (-1,) + (0,) * (datum.rank - 1), (2,) * datum.rank]:
                h = datum.classical_vector(coords)
                element = translation_element(datum, h)
                for x in basis:
                    self.assertEqual(act_on_coroot(element, x), translation_action(h, x, datum))

    def test_decompose_identity(self):
        w1, h = decompose(identity(self.datum))
        self.assertTrue(w1.is_identity)
        self.assertEqual(h, CorootVector.of([0, 0, 0]))

    def test_decompose_simple_reflection(self):
        w1, h = decompose(reduce(self.datum, (1,)))
        self.assertEqual(w1.word, (1,))
        self.assertEqual(h.classical, (0,))

    def test_decompose_pure_translation(self):
        w1, h = decompose(reduce(self.datum, (2, 1)))
        self.assertTrue(w1.is_identity)
        self.assertEqual(h, self.h1)

    def test_recompose_inverts_decompose(self):
        for datum in (self.datum, build_cartan('A', 2)):
            for w in enumerate_elements(datum, 4):
                self.assertEqual(recompose(*decompose(w)), w)


class EnumerationTests(SimpleTestCase):
    def test_counts(self):
        a1, a2 = build_cartan('A', 1), build_cartan('A', 2)
        self.assertEqual(len(enumerate_elements(a1, 0)), 1)
        self.assertEqual(len(enumerate_elements(a1, 3)), 7)
        self.assertEqual(len(enumerate_elements(a1, 8)), 17)
        self.assertEqual(len(enumerate_elements(a2, 2)), 10)

    def test_order(self):
        words = [w.word for w in enumerate_elements(build_cartan('A', 1), 2)]
        self.assertEqual(words, [(), (1,), (2,), (1, 2), (2, 1)])

    def test_distinct_elements(self):
        elements = enumerate_elements(build_cartan('A', 2), 4)
        self.assertEqual(len(set(elements)), len(elements))

    def test_negative_length(self):
        with self.assertRaises(ValueError):
            enumerate_elements(build_cartan('A', 1), -1)


class ShiftedActionTests(SimpleTestCase):
    def setUp(self):
        self.datum = build_cartan('A', 1)

    def test_simple_reflection(self):
        moved = shifted_action(reduce(self.datum, (1,)), Character((-3, -3)))
        self.assertEqual(moved, Character((1, -7)))

    def test_identity(self):
        chi = Character((-3, -4))
        self.assertEqual(shifted_action(identity(self.datum), chi), chi)

    def test_minus_rho_is_fixed(self):
        minus_rho = Character((-1, -1))
        for w in enumerate_elements(self.datum, 3):
            self.assertEqual(shifted_action(w, minus_rho), minus_rho)

    def test_group_action(self):
        datum = build_cartan('A', 2)
        chi = Character((-3, -4, -5))
        elements = enumerate_elements(datum, 2)
        for w in elements:
            for w2 in elements:
                self.assertEqual(shifted_action(w * w2, chi), shifted_action(w, shifted_action(w2, chi)))
