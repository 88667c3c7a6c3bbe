from fractions import Fraction

from django.test import SimpleTestCase

from constant_term.forms import RunConfigForm
from constant_term.root_data import Character


class RunConfigFormTests(SimpleTestCase):
    def test_rank_inferred_from_chi(self):
        form = RunConfigForm({'chi': '-3,-3'})
        self.assertTrue(form.is_valid(), form.errors)
        data = form.cleaned_data
        self.assertEqual(data['root_type'], 'A')
        self.assertEqual(data['rank'], 1)
        self.assertEqual(str(data['datum']), 'A1^(1)')
        self.assertEqual(data['character'], Character((-3, -3)))
        self.assertEqual(data['zeta'].genus, 0)

    def test_rational_chi(self):
        form = RunConfigForm({'chi': '-7/2, -3', 'q': '5/2'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['chi'], (Fraction(-7, 2), Fraction(-3)))
        self.assertEqual(form.cleaned_data['q'], Fraction(5, 2))

    def test_chi_length_must_match_rank(self):
        form = RunConfigForm({'chi': '-3,-3', 'rank': 2})
        self.assertFalse(form.is_valid())
        self.assertIn('chi', form.errors)

    def test_bad_numbers(self):
        for field, value in [('chi', '-3,x'), ('q', '1'), ('q', 'abc'), ('kappa', '1/0'), ('word', '1,x')]:
            with self.subTest(field=field, value=value):
                form = RunConfigForm({field: value, 'rank': 1})
                self.assertFalse(form.is_valid())
                self.assertIn(field, form.errors)

    def test_unsupported_type(self):
        form = RunConfigForm({'root_type': 'E', 'rank': 5})
        self.assertFalse(form.is_valid())
        self.assertIn('rank', form.errors)

    def test_lpolynomial(self):
        form = RunConfigForm({'lpoly': '1,-2,q'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['zeta'].genus, 1)

        form = RunConfigForm({'lpoly': '1,0,1'})
        self.assertFalse(form.is_valid())
        self.assertIn('lpoly', form.errors)

    def test_genus_needs_lpolynomial(self):
        form = RunConfigForm({'genus': 1})
        self.assertFalse(form.is_valid())
        self.assertIn('lpoly', form.errors)

        form = RunConfigForm({'genus': 2, 'lpoly': '1,0,q'})
        self.assertFalse(form.is_valid())
        self.assertIn('lpoly', form.errors)

    def test_places(self):
        form = RunConfigForm({'rank': 1, 'h': 'deg1:1/0, deg2:0/1', 'm': 'deg1:1,3:2'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['h'].places, ((1, (1, 0)), (2, (0, 1))))
        self.assertEqual(form.cleaned_data['m'].places, ((1, 1), (3, 2)))

    def test_bad_places(self):
        for field, value in [('h', 'x:1/0'), ('h', 'deg1:1/a'), ('m', 'deg1:-1'), ('m', 'deg0:1'), ('h', 'deg1:1/0/0')]:
            with self.subTest(field=field, value=value):
                form = RunConfigForm({field: value, 'rank': 1})
                self.assertFalse(form.is_valid())
                self.assertIn(field, form.errors)

    def test_words(self):
        form = RunConfigForm({'rank': 1, 'word': 'id'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertTrue(form.cleaned_data['element'].is_identity)

        form = RunConfigForm({'rank': 1, 'word': '1,1,2'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['element'].word, (2,))

        form = RunConfigForm({'rank': 1, 'word': '1,3'})
        self.assertFalse(form.is_valid())
        self.assertIn('word', form.errors)

    def test_lists_from_a_config_file(self):
        form = RunConfigForm({'chi': [-3, -3], 'word': [1, 2], 'lpoly': [1, -2, 'q'], 'q': 2})
        self.assertTrue(form.is_valid(), form.errors)
        data = form.cleaned_data
        self.assertEqual(data['character'], Character((-3, -3)))
        self.assertEqual(data['element'].word, (1, 2))
        self.assertEqual(data['zeta'].genus, 1)
        self.assertEqual(data['q'], Fraction(2))

        form = RunConfigForm({'rank': 1, 'word': []})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertTrue(form.cleaned_data['element'].is_identity)

    def test_required_fields(self):
        form = RunConfigForm({'rank': 1}, required=('chi', 'L'))
        self.assertFalse(form.is_valid())
        self.assertIn('chi', form.errors)
        self.assertIn('L', form.errors)
