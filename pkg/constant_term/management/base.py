"""
Shared plumbing for the constant_term management commands: common flags,
the optional JSON config file, validation through RunConfigForm and JSON/CSV
output to stdout or --out.
"""
import csv
import io
import json
import logging
import re
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from ..exceptions import ConstantTermError
from ..forms import RunConfigForm
from ..qfield import render_decimal, render_rational

VALUE_OPTIONS = {
    '--config', '--out', '--format', '--type', '--rank', '--chi', '--genus', '--lpoly', '--h', '--m',
    '--q', '--L', '--word', '--max-length', '--mode', '--kappa', '--gk-mode', '--N', '--M', '--s',
    '--degree',
}
NEGATIVE_VALUE = re.compile(r'^-\d')


def normalize_argv(argv):
    """Join '--chi -3,-3' into '--chi=-3,-3' so negative lists are not read as flags"""
    result = []
    tokens = iter(argv)
    for token in tokens:
        if token in VALUE_OPTIONS:
            value = next(tokens, None)
            if value is None:
                result.append(token)
            elif NEGATIVE_VALUE.match(value):
                result.append(f'{token}={value}')
            else:
                result.extend([token, value])
        else:
            result.append(token)
    return result


class ConfigError(CommandError):
    """Invalid run configuration; exits with status 2"""

    def __init__(self, errors):
        self.errors = errors
        lines = [f'{field}: {" ".join(str(m) for m in messages)}' for field, messages in errors.items()]
        super().__init__('invalid configuration\n  ' + '\n  '.join(lines), returncode=2)


class ConstantTermCommand(BaseCommand):
    requires_system_checks = []
    required_fields = ()
    default_format = 'json'

    def run_from_argv(self, argv):
        super().run_from_argv(argv[:2] + normalize_argv(argv[2:]))

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON file of option values; flags override it')
        parser.add_argument('--out', help='write output to this file instead of stdout')
        parser.add_argument('--format', choices=['json', 'csv'])
        parser.add_argument('--type', dest='root_type', help='finite type A..G')
        parser.add_argument('--rank', type=int)
        parser.add_argument('--chi', help='character values on h_1..h_{l+1}, e.g. -3,-3')
        parser.add_argument('--genus', type=int)
        parser.add_argument('--lpoly', help='L-polynomial coefficients in q, e.g. 1,0,q')
        parser.add_argument('--h', help='torus places, e.g. deg1:1/0')
        parser.add_argument('--m', help='automorphism places, e.g. deg1:1')
        parser.add_argument('--q', help='numeric value q0 of q')
        parser.add_argument('--L', type=int, help='truncation length')
        parser.add_argument('--word', help='generator indices, e.g. 1,2')
        parser.add_argument('--max-length', type=int)
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def load_config(self, options):
        config = {}
        if options.get('config'):
            try:
                config = json.loads(Path(options['config']).read_text())
            except (OSError, ValueError) as exc:
                raise ConfigError({'config': [str(exc)]})
            if not isinstance(config, dict):
                raise ConfigError({'config': ['the config file must hold a JSON object']})
        for name, value in options.items():
            if name in RunConfigForm.base_fields and value is not None:
                config[name] = value
        return config

    def configure_logging(self, verbosity):
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
        logging.getLogger('constant_term').setLevel(level)

    def handle(self, *args, **options):
        self.configure_logging(options.get('verbosity', 1))
        form = RunConfigForm(self.load_config(options), required=self.required_fields)
        if not form.is_valid():
            raise ConfigError(form.errors)
        config = form.cleaned_data
        self.options = options
        try:
            payload = self.compute(config)
        except ConstantTermError as exc:
            raise CommandError(f'{type(exc).__name__}: {exc}', returncode=1)
        self.emit(payload, config.get('format') or self.default_format)

    def compute(self, config):
        raise NotImplementedError('subclasses of ConstantTermCommand must provide a compute() method')

    def csv_rows(self, payload):
        raise CommandError(f'{self.__module__.rsplit(".", 1)[-1]} has no CSV output', returncode=2)

    def emit(self, payload, output_format):
        if output_format == 'csv':
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator='\n')
            writer.writerows(self.csv_rows(payload))
            text = buffer.getvalue()
        else:
            text = json.dumps(payload, indent=2) + '\n'
        if self.options.get('out'):
            Path(self.options['out']).write_text(text)
        else:
            self.stdout.write(text, ending='')


def exact(value):
    """
    'p/q' for exact rationals. None for values that only exist numerically
    and for rationals too long to print as decimal integers.
    """
    try:
        return render_rational(value)
    except (TypeError, ValueError):
        return None


def numeric(value):
    return None if value is None else render_decimal(value)


def character_fields(character):
    """The q-power (h eta^{mD})^{w o chi} as its total exponent and its rational-function part"""
    return {
        'char_exponent': render_rational(character.r + character.f.degree_in_q()),
        'char_ratfunc': character.f.as_dict(),
    }


def roots(items):
    return [str(a) for a in items]
