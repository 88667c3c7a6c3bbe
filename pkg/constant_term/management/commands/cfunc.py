from ...affine_weyl import inversion_set
from ...cterm import c_function, c_function_numeric
from ..base import ConfigError, ConstantTermCommand, exact, numeric, roots


class Command(ConstantTermCommand):
    help = 'Evaluate c(chi, w) exactly as a rational function of q'
    required_fields = ('chi', 'word')

    def compute(self, config):
        chi, w, zeta, q0 = config['character'], config['element'], config['zeta'], config.get('q')
        payload = {
            'type': str(w.datum),
            'word': list(w.word),
            'length': w.length,
            'chi': [str(v) for v in chi.values],
            'genus': zeta.genus,
            'inversions': roots(inversion_set(w, form='gamma')),
        }
        if chi.is_integral:
            c = c_function(chi, w, zeta)
            payload['c'] = c.as_dict()
            if q0 is not None:
                value = c.at(q0)
                payload.update(q0=str(q0), exact=exact(value), numeric=numeric(value))
        elif q0 is None:
            raise ConfigError({'q': ['a non-integral character is only evaluated numerically; give --q']})
        else:
            payload.update(c=None, q0=str(q0), numeric=numeric(c_function_numeric(chi, w, zeta, q0)))
        return payload

    def csv_rows(self, payload):
        return [
            ('word', 'length', 'numerator', 'denominator', 'numeric'),
            (
                ' '.join(str(i) for i in payload['word']),
                payload['length'],
                (payload['c'] or {}).get('num', ''),
                (payload['c'] or {}).get('den', ''),
                payload.get('numeric') or '',
            ),
        ]
