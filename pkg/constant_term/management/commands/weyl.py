from ...affine_weyl import decompose, enumerate_elements, inversion_set
from ..base import ConfigError, ConstantTermCommand, roots


def _summary(w):
    return {
        'word': list(w.word),
        'length': w.length,
        'translation': [int(x) for x in w.translation.classical],
    }


def describe(w):
    """Reduced word, both inversion-set forms and the normal form w^-1 = w_1 T_H"""
    w1, translation = decompose(w)
    return {
        **_summary(w),
        'inversions': roots(inversion_set(w, form='beta')),
        'inversions_gamma': roots(inversion_set(w, form='gamma')),
        'classical_word': list(w1.word),
        'classical_matrix': [[str(x) for x in row] for row in w.classical_part.tolist()],
    }


class Command(ConstantTermCommand):
    help = 'Enumerate affine Weyl group elements up to a length, or describe one word'
    required_fields = ('rank',)

    def compute(self, config):
        datum = config['datum']
        if config.get('element') is not None:
            return {'type': str(datum), 'element': describe(config['element'])}
        max_length = config.get('max_length')
        if max_length is None:
            max_length = config.get('L')
        if max_length is None:
            raise ConfigError({'max_length': ['give --max-length (or --word)']})
        elements = enumerate_elements(datum, max_length)
        return {
            'type': str(datum),
            'max_length': max_length,
            'count': len(elements),
            'elements': [_summary(w) for w in elements],
        }

    def csv_rows(self, payload):
        rows = [('word', 'length', 'translation')]
        for item in payload.get('elements', [payload.get('element')]):
            rows.append((
                ' '.join(str(i) for i in item['word']),
                item['length'],
                ' '.join(str(x) for x in item['translation']),
            ))
        return rows
