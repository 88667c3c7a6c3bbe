import warnings

from sympy import isprime

from ...exceptions import RelaxedHypothesisWarning
from ...local_oracle import gk_integral, gk_local_product
from ..base import ConfigError, ConstantTermCommand, exact, numeric


class Command(ConstantTermCommand):
    help = 'Rank-one Gindikin-Karpelevich integral, or the local product for a Weyl element'
    required_fields = ('q',)

    def add_command_arguments(self, parser):
        parser.add_argument('--kappa', help='exponent of |a| in the local integral')
        parser.add_argument('--gk-mode', choices=['shells', 'bruteforce'])
        parser.add_argument('--N', type=int, help='valuation shells summed or enumerated')
        parser.add_argument('--M', type=int, help='precision of enumerated representatives')

    def compute(self, config):
        q = config['q']
        if q.denominator != 1 or not isprime(int(q)):
            raise ConfigError({'q': [f'the residue field size must be a prime, got {q}']})
        q = int(q)

        if config.get('element') is not None:
            chi, w = config['character'], config['element']
            if chi is None:
                raise ConfigError({'chi': ['the local product needs --chi']})
            value = gk_local_product(chi, w, q)
            return {'q': q, 'word': list(w.word), 'chi': [str(v) for v in chi.values], 'value': exact(value)}

        kappa = config.get('kappa')
        if kappa is None:
            raise ConfigError({'kappa': ['give --kappa, or --word with --chi']})
        mode = config.get('gk_mode') or 'shells'
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always', RelaxedHypothesisWarning)
            result = gk_integral(q, kappa, mode=mode, N=config.get('N'), M=config.get('M'))
        for warning in caught:
            self.stderr.write(f'warning: {warning.message}')
        return {
            'q': q,
            'kappa': str(kappa),
            'mode': mode,
            'partial': exact(result.partial),
            'tail': exact(result.tail),
            'total': exact(result.total),
            'closed_form': exact(result.closed_form),
            'numeric': numeric(result.total),
            'matches_closed_form': result.total == result.closed_form,
        }

    def csv_rows(self, payload):
        keys = [key for key in ('q', 'kappa', 'mode', 'partial', 'tail', 'total', 'closed_form', 'value') if key in payload]
        return [keys, [payload[key] for key in keys]]
