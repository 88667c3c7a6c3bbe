from django.core.management.base import CommandError

from ...verification import TARGETS, Scope, run_verification
from ..base import ConstantTermCommand


class Command(ConstantTermCommand):
    help = 'Check an identity over its instance grid; exits 1 with the first counterexample on failure'
    required_fields = ('target',)

    def add_command_arguments(self, parser):
        parser.add_argument('target', choices=TARGETS)

    def handle(self, *args, **options):
        self.failure = None
        super().handle(*args, **options)
        if self.failure is not None:
            raise CommandError(f'verification failed: {self.failure}', returncode=1)

    def compute(self, config):
        explicit_zeta = config.get('genus') is not None or config.get('lpoly') is not None
        scope = Scope(
            datums=(config['datum'],) if config.get('datum') is not None else (),
            zetas=(config['zeta'],) if explicit_zeta else (),
            character=config.get('character'),
            max_length=config.get('max_length'),
            q0=config.get('q'),
        )
        reports = run_verification(config['target'], scope)
        failed = [report for report in reports if not report.passed]
        if failed:
            self.failure = f'{failed[0].target}: {failed[0].counterexample}'
        return {'target': config['target'], 'reports': [report.as_dict() for report in reports]}

    def csv_rows(self, payload):
        rows = [('target', 'passed', 'checked', 'counterexample')]
        for report in payload['reports']:
            rows.append((report['target'], report['passed'], report['checked'], report['counterexample'] or ''))
        return rows
