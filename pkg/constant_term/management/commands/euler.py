from ...local_oracle import euler_consistency
from ...zeta import euler_partial
from ..base import ConfigError, ConstantTermCommand, exact, numeric

DEFAULT_DEGREE = 10


class Command(ConstantTermCommand):
    help = 'Euler products over the places of F_q(T): zeta itself, or the local values of c(chi, w)'
    required_fields = ('q',)

    def add_command_arguments(self, parser):
        parser.add_argument('--s', help='zeta argument, s > 1')
        parser.add_argument('--degree', type=int, help=f'largest place degree (default {DEFAULT_DEGREE})')

    def compute(self, config):
        q0, degree = config['q'], config.get('degree') or DEFAULT_DEGREE
        if config['zeta'].genus != 0:
            raise ConfigError({'genus': ['places are only enumerated for the rational function field']})
        if config.get('element') is not None:
            chi, w = config['character'], config['element']
            if chi is None:
                raise ConfigError({'chi': ['the local-global comparison needs --chi']})
            result = euler_consistency(chi, w, config['zeta'], degree, q0)
            return {
                'q0': str(q0),
                'degree': degree,
                'word': list(w.word),
                'partial': exact(result.partial),
                'partial_numeric': numeric(result.partial),
                'target': exact(result.target),
                'gap': numeric(result.gap),
                'tail_estimate': numeric(result.tail_estimate),
            }

        s = config.get('s')
        if s is None:
            raise ConfigError({'s': ['give --s, or --word with --chi']})
        result = euler_partial(q0, s, degree)
        payload = {
            'q0': str(q0),
            's': str(s),
            'degree': degree,
            'value': exact(result.value),
            'numeric': numeric(result.value),
            'log_tail_bound': numeric(result.log_tail_bound),
        }
        if s.denominator == 1:
            closed = config['zeta'].zeta_at(int(s)).at(q0)
            payload.update(closed_form=exact(closed), gap=numeric(abs(closed - result.value)))
        return payload

    def csv_rows(self, payload):
        keys = [key for key in ('q0', 's', 'degree', 'value', 'partial', 'partial_numeric', 'target', 'gap', 'log_tail_bound', 'tail_estimate') if key in payload]
        return [keys, [payload[key] for key in keys]]
