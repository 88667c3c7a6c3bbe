from ...conf import app_setting
from ...cterm import constant_term, theta_constants
from ..base import ConstantTermCommand, character_fields, exact, numeric


def _term(row):
    item = {
        'word': list(row.element.word),
        'length': row.length,
        'c': row.c.as_dict() if row.c is not None else None,
        **character_fields(row.character),
        'numeric': numeric(row.numeric),
    }
    if row.pole is not None:
        item['pole'] = str(row.pole)
    return item


class Command(ConstantTermCommand):
    help = 'Truncated constant term: one exact term per Weyl element, with partial sums and tail bounds'
    required_fields = ('chi', 'L')

    def add_command_arguments(self, parser):
        parser.add_argument('--mode', choices=['convergence', 'meromorphic'])
        parser.add_argument('--tail', action='store_true', help='add theta tail bounds to JSON output')

    def compute(self, config):
        datum, chi, zeta = config['datum'], config['character'], config['zeta']
        h, m, q0, L = config['h'], config['m'], config.get('q'), config['L']
        mode = config.get('mode') or 'convergence'
        table = constant_term(datum, chi, h, m, zeta, L, q0=q0, mode=mode)

        payload = {
            'type': str(datum),
            'chi': [str(v) for v in chi.values],
            'genus': zeta.genus,
            'mode': mode,
            'L': L,
            'q0': str(q0) if q0 is not None else None,
            'numeric_digits': app_setting('NUMERIC_DIGITS'),
            'terms': [_term(row) for row in table.rows],
            'partial_sums': [
                {'L': length, 'exact': exact(value), 'numeric': numeric(value)} for length, value in table.partial_sums
            ],
            'poles': [{'word': list(row.element.word), 'pole': str(row.pole)} for row in table.poles],
        }
        wants_tail = self.options.get('tail') or config.get('format') == 'csv'
        if wants_tail and q0 is not None and mode == 'convergence':
            theta = theta_constants(datum, chi, h, m, zeta, q0)
            payload['tail_bounds'] = [{'L': length, 'bound': numeric(theta.tail_bound(length))} for length in range(L + 1)]
        return payload

    def csv_rows(self, payload):
        bounds = {item['L']: item['bound'] for item in payload.get('tail_bounds', [])}
        rows = [('L', 'partial_sum', 'tail_bound')]
        for item in payload['partial_sums']:
            rows.append((item['L'], item['numeric'], bounds.get(item['L'], '')))
        return rows
