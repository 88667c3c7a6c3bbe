import contextlib
import csv
import io
import json
import tempfile
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from constant_term.cli import run
from constant_term.management.base import normalize_argv


def call(name, *args, **options):
    out = io.StringIO()
    call_command(name, *args, stdout=out, stderr=io.StringIO(), **options)
    return out.getvalue()


def call_json(name, *args, **options):
    return json.loads(call(name, *args, **options))


def run_quietly(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = run(argv)
    return status, out.getvalue(), err.getvalue()


class ArgvTests(SimpleTestCase):
    def test_negative_lists_are_joined(self):
        self.assertEqual(
            normalize_argv(['--chi', '-3,-3', '--L', '4', '--verbosity', '0']),
            ['--chi=-3,-3', '--L', '4', '--verbosity', '0'],
        )
        self.assertEqual(normalize_argv(['--kappa', '-3']), ['--kappa=-3'])
        self.assertEqual(normalize_argv(['--chi']), ['--chi'])


class WeylCommandTests(SimpleTestCase):
    def test_enumerate(self):
        payload = call_json('weyl', rank=1, max_length=3)
        self.assertEqual(payload['type'], 'A1^(1)')
        self.assertEqual(payload['count'], 7)
        self.assertEqual(payload['elements'][0], {'word': [], 'length': 0, 'translation': [0]})

    def test_enumerate_a2(self):
        self.assertEqual(call_json('weyl', rank=2, L=2)['count'], 10)

    def test_describe(self):
        element = call_json('weyl', rank=1, word='2,1')['element']
        self.assertEqual(element['translation'], [1])
        self.assertEqual(element['classical_word'], [])
        self.assertEqual(element['inversions'], ['-a1 + 2delta', '-a1 + 1delta'])

    def test_missing_length(self):
        with self.assertRaises(CommandError) as caught:
            call('weyl', rank=1)
        self.assertEqual(caught.exception.returncode, 2)

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(call('weyl', rank=1, max_length=1, format='csv'))))
        self.assertEqual(rows, [['word', 'length', 'translation'], ['', '0', '0'], ['1', '1', '0'], ['2', '1', '1']])


class CFunctionCommandTests(SimpleTestCase):
    def test_exact(self):
        payload = call_json('cfunc', chi='-3,-3', word='1', q='2')
        self.assertEqual(payload['c'], {'num': 'q**2 + q + 1', 'den': 'q'})
        self.assertEqual(payload['exact'], '7/2')
        self.assertEqual(payload['inversions'], ['a1'])

    def test_pole(self):
        with self.assertRaises(CommandError) as caught:
            call('cfunc', chi='-2,-3', word='1')
        self.assertEqual(caught.exception.returncode, 1)
        self.assertIn('ZetaPole', str(caught.exception))
        self.assertIn('a1', str(caught.exception))

    def test_rational_character_needs_q(self):
        with self.assertRaises(CommandError) as caught:
            call('cfunc', chi='-7/2,-7/2', word='1')
        self.assertEqual(caught.exception.returncode, 2)
        payload = call_json('cfunc', chi='-7/2,-7/2', word='1', q='4')
        self.assertIsNone(payload['c'])
        self.assertTrue(payload['numeric'].startswith('4.5357142857'))


class ConstantTermCommandTests(SimpleTestCase):
    def test_table(self):
        payload = call_json('cterm', chi='-3,-3', L=8, m='deg1:1', q='3')
        self.assertEqual(payload['type'], 'A1^(1)')
        self.assertEqual(payload['mode'], 'convergence')
        self.assertEqual(len(payload['terms']), 17)
        self.assertEqual(len(payload['partial_sums']), 9)
        self.assertEqual(payload['partial_sums'][0]['exact'], '1')
        self.assertEqual(payload['poles'], [])
        first = payload['terms'][0]
        self.assertEqual(first['char_exponent'], '0')
        self.assertEqual(first['c'], {'num': '1', 'den': '1'})
        self.assertNotIn('tail_bounds', payload)

    def test_tail_bounds(self):
        payload = call_json('cterm', chi='-3,-3', L=4, m='deg1:1', q='3', tail=True)
        self.assertEqual([item['L'] for item in payload['tail_bounds']], [0, 1, 2, 3, 4])

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(call('cterm', chi='-3,-3', L=2, m='deg1:1', q='3', format='csv'))))
        self.assertEqual(rows[0], ['L', 'partial_sum', 'tail_bound'])
        self.assertEqual(len(rows), 4)
        self.assertTrue(all(row[2] for row in rows[1:]))

    def test_meromorphic(self):
        payload = call_json('cterm', chi='-2,-3', L=2, m='deg1:1', mode='meromorphic')
        self.assertIn([1], [item['word'] for item in payload['poles']])

    def test_region_violation(self):
        with self.assertRaises(CommandError) as caught:
            call('cterm', chi='-3,-3', L=2)
        self.assertEqual(caught.exception.returncode, 1)
        self.assertIn('RegionViolation', str(caught.exception))

    def test_missing_length(self):
        with self.assertRaises(CommandError) as caught:
            call('cterm', chi='-3,-3')
        self.assertEqual(caught.exception.returncode, 2)

    def test_config_file_and_out(self):
        with tempfile.TemporaryDirectory() as directory:
            config = Path(directory) / 'run.json'
            config.write_text(json.dumps({'chi': '-3,-3', 'L': 2, 'm': 'deg1:1'}))
            target = Path(directory) / 'table.json'
            self.assertEqual(call('cterm', config=str(config), L=3, out=str(target)), '')
            payload = json.loads(target.read_text())
        self.assertEqual(payload['L'], 3)
        self.assertEqual(len(payload['terms']), 7)

    def test_config_file_with_lists(self):
        with tempfile.TemporaryDirectory() as directory:
            config = Path(directory) / 'run.json'
            config.write_text(json.dumps({'chi': [-3, -3], 'word': [1], 'q': 2}))
            payload = call_json('cfunc', config=str(config))
        self.assertEqual(payload['exact'], '7/2')

    def test_broken_config_file(self):
        with tempfile.TemporaryDirectory() as directory:
            config = Path(directory) / 'run.json'
            config.write_text('[1, 2]')
            with self.assertRaises(CommandError) as caught:
                call('cterm', config=str(config))
        self.assertEqual(caught.exception.returncode, 2)


class LocalCommandTests(SimpleTestCase):
    def test_gk_integral(self):
        payload = call_json('gk', q='2', kappa='-3')
        self.assertEqual(payload['total'], '7/6')
        self.assertTrue(payload['matches_closed_form'])

    def test_gk_bruteforce(self):
        payload = call_json('gk', q='2', kappa='-3', gk_mode='bruteforce', N=3, M=2)
        self.assertEqual(payload['mode'], 'bruteforce')
        self.assertTrue(payload['matches_closed_form'])

    def test_gk_warning(self):
        err = io.StringIO()
        call_command('gk', q='3', kappa='-2', stdout=io.StringIO(), stderr=err)
        self.assertIn('warning', err.getvalue())

    def test_gk_needs_prime(self):
        with self.assertRaises(CommandError) as caught:
            call('gk', q='4', kappa='-3')
        self.assertEqual(caught.exception.returncode, 2)

    def test_gk_local_product(self):
        payload = call_json('gk', q='2', chi='-3,-3', word='1')
        self.assertEqual(payload['value'], '7/6')

    def test_euler_zeta(self):
        payload = call_json('euler', q='2', s='2', degree=10)
        self.assertEqual(payload['closed_form'], '8/3')
        self.assertLess(float(payload['gap']), 1e-3)

    def test_euler_c_function(self):
        payload = call_json('euler', q='2', chi='-3,-3', word='id')
        self.assertEqual(payload['partial'], '1')
        self.assertEqual(payload['target'], '1')

    def test_euler_c_function_at_degree_14(self):
        payload = call_json('euler', q='2', chi='-3,-3', word='1', degree=14)
        self.assertEqual(payload['target'], '7/2')
        self.assertLess(abs(float(payload['partial_numeric']) - 3.5), 1e-2)
        self.assertLess(float(payload['gap']), 1e-2)

    def test_euler_c_function_from_the_command_line(self):
        status, out, _ = run_quietly(['euler', '--q', '2', '--word', '1', '--chi', '-3,-3', '--degree', '14'])
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out)['word'], [1])

    def test_euler_rejects_genus(self):
        with self.assertRaises(CommandError) as caught:
            call('euler', q='2', s='2', lpoly='1,0,q')
        self.assertEqual(caught.exception.returncode, 2)


class VerifyCommandTests(SimpleTestCase):
    def test_cocycle(self):
        payload = call_json('verify', 'cocycle', chi='-3,-3', genus=0, max_length=2)
        self.assertEqual(payload['target'], 'cocycle')
        self.assertTrue(all(report['passed'] for report in payload['reports']))
        self.assertGreater(payload['reports'][0]['checked'], 0)

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(call('verify', 'zeta-ratios', format='csv'))))
        self.assertEqual(rows[0], ['target', 'passed', 'checked', 'counterexample'])
        self.assertEqual(rows[1][:2], ['zeta-ratios', 'True'])

    def test_unknown_target(self):
        with self.assertRaises(CommandError):
            call('verify', 'everything')


class CliTests(SimpleTestCase):
    def test_success(self):
        status, out, _ = run_quietly(['verify', 'zeta-ratios'])
        self.assertEqual(status, 0)
        self.assertTrue(json.loads(out)['reports'][0]['passed'])

    def test_negative_values_on_the_command_line(self):
        status, out, _ = run_quietly(['cfunc', '--chi', '-3,-3', '--word', '1,2'])
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out)['length'], 2)

    def test_computation_failure(self):
        status, _, err = run_quietly(['cfunc', '--chi', '-2,-3', '--word', '1'])
        self.assertEqual(status, 1)
        self.assertIn('ZetaPole', err)

    def test_invalid_configuration(self):
        status, _, err = run_quietly(['cterm', '--chi', '-3,-3'])
        self.assertEqual(status, 2)
        self.assertIn('L', err)
