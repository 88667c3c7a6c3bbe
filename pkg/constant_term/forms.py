from fractions import Fraction

from django import forms
from django.core.exceptions import ValidationError

from .affine_weyl import reduce
from .cterm import AutomorphismData, TorusData
from .exceptions import ConstantTermError
from .root_data import SUPPORTED_RANKS, Character, build_cartan
from .verification import TARGETS
from .zeta import LPolynomial, ZetaFunction


def _rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f'{text.strip()!r} is not a rational number')


def _places(text, parse_value):
    """'deg1:v,deg2:v' -> ((1, parse_value(v)), (2, ...))"""
    places = []
    for chunk in text.split(','):
        chunk = chunk.strip()
        if not chunk:
            continue
        degree, sep, value = chunk.partition(':')
        degree = degree.strip()
        if degree.startswith('deg'):
            degree = degree[3:]
        if not sep or not degree.isdigit() or int(degree) < 1:
            raise ValidationError(f'{chunk!r} is not of the form deg<d>:<value>')
        places.append((int(degree), parse_value(value.strip())))
    return tuple(places)


class CommaListField(forms.CharField):
    """Comma-separated text; JSON lists from a config file are joined the same way"""

    def __init__(self, *, empty_list='', **kwargs):
        self.empty_list = empty_list
        super().__init__(**kwargs)

    def to_python(self, value):
        if isinstance(value, (list, tuple)):
            value = ','.join(str(v) for v in value) if value else self.empty_list
        return super().to_python(value)


class RunConfigForm(forms.Form):
    """Validated run configuration shared by every command"""

    MODES = [('convergence', 'convergence'), ('meromorphic', 'meromorphic')]
    GK_MODES = [('shells', 'shells'), ('bruteforce', 'bruteforce')]
    FORMATS = [('json', 'json'), ('csv', 'csv')]

    root_type = forms.ChoiceField(choices=[(t, t) for t in SUPPORTED_RANKS], required=False)
    rank = forms.IntegerField(min_value=1, required=False)
    chi = CommaListField(required=False, help_text='e.g. -3,-3')
    genus = forms.IntegerField(min_value=0, required=False)
    lpoly = CommaListField(required=False, help_text='coefficients a_0..a_2g in q, e.g. 1,-2,q')
    h = forms.CharField(required=False, help_text='e.g. deg1:1/0,deg2:0/1')
    m = forms.CharField(required=False, help_text='e.g. deg1:1')
    q = forms.CharField(required=False)
    L = forms.IntegerField(min_value=0, required=False)
    word = CommaListField(required=False, empty_list='id', help_text='e.g. 1,2')
    max_length = forms.IntegerField(min_value=0, required=False)
    mode = forms.ChoiceField(choices=MODES, required=False)
    kappa = forms.CharField(required=False)
    gk_mode = forms.ChoiceField(choices=GK_MODES, required=False)
    N = forms.IntegerField(min_value=0, required=False)
    M = forms.IntegerField(min_value=0, required=False)
    s = forms.CharField(required=False)
    degree = forms.IntegerField(min_value=1, required=False)
    target = forms.ChoiceField(choices=[(t, t) for t in TARGETS], required=False)
    format = forms.ChoiceField(choices=FORMATS, required=False)

    def __init__(self, *args, required=(), **kwargs):
        super().__init__(*args, **kwargs)
        for name in required:
            self.fields[name].required = True

    def clean_chi(self):
        text = self.cleaned_data.get('chi')
        if not text:
            return None
        return tuple(_rational(v) for v in text.split(','))

    def clean_lpoly(self):
        text = self.cleaned_data.get('lpoly')
        if not text:
            return None
        try:
            return LPolynomial(tuple(c.strip() for c in text.split(',')))
        except (ConstantTermError, ValueError, TypeError) as exc:
            raise ValidationError(str(exc))

    def clean_h(self):
        text = self.cleaned_data.get('h')
        if not text:
            return TorusData()

        def ords(value):
            try:
                return tuple(int(o) for o in value.split('/'))
            except ValueError:
                raise ValidationError(f'{value!r} must be integers separated by /')

        return TorusData(_places(text, ords))

    def clean_m(self):
        text = self.cleaned_data.get('m')
        if not text:
            return AutomorphismData()

        def exponent(value):
            if not value.isdigit():
                raise ValidationError(f'{value!r} must be a nonnegative integer')
            return int(value)

        return AutomorphismData(_places(text, exponent))

    def clean_q(self):
        text = self.cleaned_data.get('q')
        if not text:
            return None
        q0 = _rational(text)
        if q0 <= 1:
            raise ValidationError('q must be greater than 1')
        return q0

    def clean_word(self):
        text = (self.cleaned_data.get('word') or '').strip()
        if not text:
            return None
        if text == 'id':
            return ()
        try:
            return tuple(int(i) for i in text.split(','))
        except ValueError:
            raise ValidationError('Word must be comma-separated generator indices, e.g. 1,2')

    def clean_kappa(self):
        text = self.cleaned_data.get('kappa')
        return _rational(text) if text else None

    def clean_s(self):
        text = self.cleaned_data.get('s')
        return _rational(text) if text else None

    def clean(self):
        """Build the Cartan datum, character, zeta function and element the fields describe"""
        cleaned_data = super().clean()
        chi = cleaned_data.get('chi')
        rank = cleaned_data.get('rank')
        root_type = cleaned_data.get('root_type') or 'A'
        if rank is None and chi is not None:
            rank = len(chi) - 1
        cleaned_data['root_type'] = root_type
        cleaned_data['rank'] = rank

        datum = None
        if rank:
            try:
                datum = build_cartan(root_type, rank)
            except ConstantTermError as exc:
                self.add_error('rank', str(exc))
        cleaned_data['datum'] = datum

        cleaned_data['character'] = None
        if chi is not None and datum is not None:
            if len(chi) != datum.rank + 1:
                self.add_error('chi', f'{datum} needs {datum.rank + 1} character values, got {len(chi)}')
            else:
                cleaned_data['character'] = Character(chi)

        genus = cleaned_data.get('genus')
        lpoly = cleaned_data.get('lpoly')
        if lpoly is not None:
            if genus is not None and genus != lpoly.genus:
                self.add_error('lpoly', f'L-polynomial has genus {lpoly.genus}, not {genus}')
            cleaned_data['zeta'] = ZetaFunction(lpoly)
        elif genus:
            self.add_error('lpoly', f'genus {genus} needs its L-polynomial coefficients')
        else:
            cleaned_data['zeta'] = ZetaFunction()

        if datum is not None:
            h = cleaned_data.get('h')
            if h is not None:
                try:
                    h.check(datum)
                except ConstantTermError as exc:
                    self.add_error('h', str(exc))
            word = cleaned_data.get('word')
            if word is not None:
                try:
                    cleaned_data['element'] = reduce(datum, word)
                except ConstantTermError as exc:
                    self.add_error('word', str(exc))

        return cleaned_data
