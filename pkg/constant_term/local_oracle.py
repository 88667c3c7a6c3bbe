"""
Rank-one local checks over F_p((pi)).

Laurent series carry an absolute precision: a series with precision P is
known modulo pi^P. iwasawa_norm reads |a| off the first column of an SL_2
matrix, and gk_integral integrates |a|^kappa over the lower unipotent group
either by enumerating residue classes or by summing valuation shells.
"""
import itertools
import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy import isprime

from .affine_weyl import act_on_coroot, apply_word, inversion_set, reduce
from .conf import app_setting
from .exceptions import (
    DomainError,
    EnumerationTooLarge,
    InductionMismatch,
    PrecisionExhausted,
    RelaxedHypothesisWarning,
)
from .qfield import as_fraction, to_mpf
from .root_data import pair
from .zeta import place_counts

logger = logging.getLogger(__name__)


def _min_precision(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class LaurentSeries:
    """
    sum_k coefficients[k] pi^(valuation + k) over F_p, known modulo
    pi^precision (precision None means the series is exact).
    """

    p: int
    valuation: int
    coefficients: tuple
    precision: int = None

    def __post_init__(self):
        coefficients = [c % self.p for c in self.coefficients]
        valuation = self.valuation
        if self.precision is not None:
            coefficients = coefficients[: max(0, self.precision - valuation)]
        while coefficients and coefficients[0] == 0:
            coefficients.pop(0)
            valuation += 1
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        if not coefficients:
            valuation = self.precision if self.precision is not None else 0
        object.__setattr__(self, 'coefficients', tuple(coefficients))
        object.__setattr__(self, 'valuation', valuation)

    @classmethod
    def from_int(cls, p, value):
        return cls(p, 0, (value,))

    @classmethod
    def uniformizer(cls, p, power=1):
        return cls(p, power, (1,))

    @property
    def is_zero(self):
        """No nonzero retained coefficient (zero to working precision)"""
        return not self.coefficients

    @property
    def is_exact_zero(self):
        return self.is_zero and self.precision is None

    def val(self):
        if self.is_zero:
            raise PrecisionExhausted(f'valuation of a series known only modulo pi^{self.precision}')
        return self.valuation

    def coefficient(self, k):
        index = k - self.valuation
        if 0 <= index < len(self.coefficients):
            return self.coefficients[index]
        return 0

    def _top(self):
        if self.precision is not None:
            return self.precision
        return self.valuation + len(self.coefficients)

    def __add__(self, other):
        precision = _min_precision(self.precision, other.precision)
        low = min(self.valuation, other.valuation)
        high = precision if precision is not None else max(self._top(), other._top())
        coefficients = [self.coefficient(k) + other.coefficient(k) for k in range(low, max(low, high))]
        return LaurentSeries(self.p, low, tuple(coefficients), precision)

    def __neg__(self):
        return LaurentSeries(self.p, self.valuation, tuple(-c for c in self.coefficients), self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_exact_zero or other.is_exact_zero:
            return LaurentSeries(self.p, 0, ())
        # absolute precision of a product: min(P_a + v_b, P_b + v_a)
        precision = None
        if self.precision is not None:
            precision = self.precision + other.valuation
        if other.precision is not None:
            precision = _min_precision(precision, other.precision + self.valuation)
        coefficients = [0] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                coefficients[i + j] += a * b
        return LaurentSeries(self.p, self.valuation + other.valuation, tuple(coefficients), precision)

    def inverse(self, terms=None):
        """1/self, keeping the relative precision (or `terms` terms of an exact series)"""
        if self.is_zero:
            raise PrecisionExhausted('cannot invert a series that is zero to working precision')
        if self.precision is not None:
            terms = self.precision - self.valuation
        else:
            terms = terms or app_setting('SERIES_PRECISION')
        c = list(self.coefficients) + [0] * terms
        inverse_lead = pow(c[0], -1, self.p)
        b = [inverse_lead]
        for k in range(1, terms):
            b.append(-inverse_lead * sum(c[j] * b[k - j] for j in range(1, k + 1)) % self.p)
        return LaurentSeries(self.p, -self.valuation, tuple(b), -self.valuation + terms)

    def __str__(self):
        terms = [f'{c}*pi^{self.valuation + k}' for k, c in enumerate(self.coefficients) if c]
        text = ' + '.join(terms) or '0'
        if self.precision is not None:
            text += f' + O(pi^{self.precision})'
        return text


@dataclass(frozen=True, eq=False)
class SL2Mat:
    a: LaurentSeries
    b: LaurentSeries
    c: LaurentSeries
    d: LaurentSeries

    def __post_init__(self):
        if not (self.det() - LaurentSeries.from_int(self.a.p, 1)).is_zero:
            raise DomainError(f'determinant {self.det()} is not 1')

    @classmethod
    def identity(cls, p):
        one = LaurentSeries.from_int(p, 1)
        zero = LaurentSeries(p, 0, ())
        return cls(one, zero, zero, one)

    @classmethod
    def diagonal(cls, t, terms=None):
        zero = LaurentSeries(t.p, 0, ())
        return cls(t, zero, zero, t.inverse(terms))

    @classmethod
    def lower_unipotent(cls, s):
        one = LaurentSeries.from_int(s.p, 1)
        zero = LaurentSeries(s.p, 0, ())
        return cls(one, zero, s, one)

    @classmethod
    def upper_unipotent(cls, s):
        one = LaurentSeries.from_int(s.p, 1)
        zero = LaurentSeries(s.p, 0, ())
        return cls(one, s, zero, one)

    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other):
        return SL2Mat(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __eq__(self, other):
        if not isinstance(other, SL2Mat):
            return NotImplemented
        return all((x - y).is_zero for x, y in zip(self.entries, other.entries))

    __hash__ = None

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def is_integral(self):
        """All entries in O, i.e. the matrix lies in SL_2(O)"""
        return all(x.is_zero or x.val() >= 0 for x in self.entries)


def iwasawa_norm(g):
    """
    e with |a| = q^e for g = k diag(a, 1/a) u, namely
    e = -min(val(g_11), val(g_21)).
    """
    a, c = g.a, g.c
    if a.is_zero and c.is_zero:
        raise PrecisionExhausted('first column is zero to working precision')
    if a.is_zero:
        if a.precision is not None and c.valuation >= a.precision:
            raise PrecisionExhausted('retained terms do not determine the smaller valuation')
        return -c.valuation
    if c.is_zero:
        if c.precision is not None and a.valuation >= c.precision:
            raise PrecisionExhausted('retained terms do not determine the smaller valuation')
        return -a.valuation
    return -min(a.valuation, c.valuation)


def lower_unipotent_decomposition(s):
    """
    (k, t, u) with (1 0; s 1) = k t u for val(s) < 0: t = diag(s, 1/s),
    u = (1 1/s; 0 1) and k = (1/s -1; 1 0) in SL_2(O).
    """
    inverse = s.inverse()
    torus = SL2Mat.diagonal(s)
    unipotent = SL2Mat.upper_unipotent(inverse)
    unipotent_inverse = SL2Mat.upper_unipotent(-inverse)
    torus_inverse = SL2Mat(inverse, torus.b, torus.c, s)
    k = SL2Mat.lower_unipotent(s) @ unipotent_inverse @ torus_inverse
    return k, torus, unipotent


@dataclass(frozen=True)
class GKIntegral:
    """Integral of |a|^kappa over the lower unipotent group, split at val(s) = -N"""

    partial: object
    tail: object
    closed_form: object

    @property
    def total(self):
        return self.partial + self.tail


def _power(q, exponent):
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        return Fraction(q) ** int(exponent)
    return to_mpf(Fraction(q)) ** to_mpf(exponent)


def _check_kappa(kappa):
    if kappa >= -1:
        raise DomainError(f'the local integral diverges for kappa = {kappa} >= -1')
    if kappa >= -2:
        warnings.warn(
            f'kappa = {kappa} lies in [-2, -1): the series converges but kappa < -2 fails',
            RelaxedHypothesisWarning,
            stacklevel=3,
        )


def gk_closed_form(q, kappa):
    """(1 - q^kappa) / (1 - q^(kappa + 1))"""
    kappa = as_fraction(kappa)
    return (1 - _power(q, kappa)) / (1 - _power(q, kappa + 1))


def _gk_tail(q, kappa, shells):
    """Exact sum over val(s) < -shells: ((q-1)/q) q^{(N+1)(1+kappa)} / (1 - q^{1+kappa})"""
    ratio = _power(q, kappa + 1)
    return (q - 1) * _power(q, (shells + 1) * (kappa + 1)) / (q * (1 - ratio))


def gk_integral(q, kappa, mode='shells', N=None, M=None):
    """
    Integral of Phi_kappa(1 0; s 1) = |a|^kappa over s in F_q((pi)).

    shells: exact sum over the first N valuation shells plus the closed-form
    tail. bruteforce: enumerate the q^(N+M) classes of pi^-N O / pi^M O,
    weight each by q^-M and push every representative through iwasawa_norm.
    """
    q = as_fraction(q)
    if q.denominator != 1 or not isprime(int(q)):
        raise DomainError(f'the residue field size q = {q} must be prime')
    q = int(q)
    kappa = as_fraction(kappa)
    _check_kappa(kappa)
    N = app_setting('GK_SHELLS') if N is None else int(N)
    precision = app_setting('NUMERIC_DPS')
    with mpmath.workdps(precision):
        if mode == 'shells':
            partial = Fraction(1) if kappa.denominator == 1 else mpmath.mpf(1)
            for n in range(1, N + 1):
                partial += q ** (n - 1) * (q - 1) * _power(q, n * kappa)
        elif mode == 'bruteforce':
            M = N if M is None else int(M)
            if q ** (N + M) > app_setting('BRUTEFORCE_LIMIT'):
                raise EnumerationTooLarge(f'{q}^{N + M} classes exceed the enumeration limit')
            partial = Fraction(0) if kappa.denominator == 1 else mpmath.mpf(0)
            for digits in itertools.product(range(q), repeat=N + M):
                s = LaurentSeries(q, -N, digits, M)
                exponent = iwasawa_norm(SL2Mat.lower_unipotent(s))
                partial += _power(q, exponent * kappa) / q**M
            logger.debug('Enumerated %d classes for q=%d kappa=%s', q ** (N + M), q, kappa)
        else:
            raise ValueError(f'unknown mode {mode!r}')
        return GKIntegral(partial=partial, tail=_gk_tail(q, kappa, N), closed_form=gk_closed_form(q, kappa))


def gk_affine_factor(chi, a, q, datum):
    """The local integral over U_{-a} with kappa = chi(h_a)"""
    kappa = as_fraction(pair(chi.functional(datum), datum.coroot_of(a)))
    if kappa.denominator != 1:
        raise DomainError(f'chi(h_a) = {kappa} is not integral')
    return gk_integral(q, kappa).total


def _closed_form_product(chi, w, q):
    datum = w.datum
    chi_bar = chi.shifted(datum)
    value = Fraction(1)
    for a in inversion_set(w, form='gamma'):
        s = as_fraction(pair(chi_bar, datum.coroot_of(a)))
        value *= (1 - _power(q, s - 1)) / (1 - _power(q, s))
    return value


def _inductive_product(chi, w, q):
    """Peel w = w_{i_r} w' one letter at a time, integrating over U_{-gamma_r} each step"""
    datum = w.datum
    chi_bar = chi.shifted(datum)
    value = Fraction(1)
    word = w.word
    while word:
        first, rest = word[0], word[1:]
        shorter = reduce(datum, rest)
        # gamma_r = (w')^{-1} alpha_{i_r}
        gamma = apply_word(datum, tuple(reversed(rest)), datum.simple_root(first))
        coroot = datum.coroot_of(gamma)
        shift = as_fraction(pair(datum.rho, act_on_coroot(shorter, coroot)))
        if shift != 1:
            raise InductionMismatch(f'((w\')^-1 rho)(h_gamma) = {shift} at {gamma}, expected 1')
        kappa = as_fraction(pair(chi_bar, coroot)) - shift
        value *= gk_integral(q, kappa).total
        word = rest
    return value


def gk_local_product(chi, w, q):
    """Local Gindikin-Karpelevich value, by closed form and by induction on l(w)"""
    datum = w.datum
    if not chi.is_dominant_negative:
        raise DomainError(f'character {chi} must be dominant-negative')
    closed = _closed_form_product(chi, w, q)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', RelaxedHypothesisWarning)
        inductive = _inductive_product(chi, w, q)
    if closed != inductive:
        raise InductionMismatch(f'closed form {closed} differs from induction {inductive} for {w} in {datum}')
    return closed


@dataclass(frozen=True)
class EulerConsistency:
    partial: object
    target: object
    gap: object
    tail_estimate: object


def euler_consistency(chi, w, zeta, max_degree, q0):
    """
    q0^l(w) times the product of local values over the places of F_q0(T) of
    degree <= max_degree, compared with c(chi, w) at q0.
    """
    from .cterm import c_function

    if zeta.genus != 0:
        raise DomainError('Euler products are only formed over the rational function field')
    if not chi.is_dominant_negative:
        raise DomainError(f'character {chi} must be dominant-negative')
    q0 = int(q0)
    partial = Fraction(q0) ** w.length
    for degree, count in place_counts(q0, max_degree):
        partial *= _closed_form_product(chi, w, q0**degree) ** count
    target = c_function(chi, w, zeta).at(q0)

    datum = w.datum
    chi_bar = chi.shifted(datum)
    with mpmath.workdps(app_setting('NUMERIC_DPS')):
        q = mpmath.mpf(q0)
        first = max_degree + 1
        log_bound = mpmath.mpf(0)
        for a in inversion_set(w, form='gamma'):
            s = -to_mpf(as_fraction(pair(chi_bar, datum.coroot_of(a))))
            log_bound += q ** (first * (1 - s)) / ((1 - q ** (1 - s)) * (1 - q ** (-s * first)))
        tail_estimate = to_mpf(target) * (mpmath.exp(log_bound) - 1)
    return EulerConsistency(partial=partial, target=target, gap=abs(target - partial), tail_estimate=tail_estimate)
