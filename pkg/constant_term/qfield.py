"""
Exact arithmetic in Q(q) for a single symbolic indeterminate q.

RatFunc wraps an element of sympy's fraction field Z(q), which keeps numerator
and denominator coprime with a positive leading coefficient in the
denominator. ScaledValue is q^r * f(q) with r in [0, 1): the value type of
every character and c-function evaluation.
"""
import logging
import math
import operator
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy import Symbol, integer_nthroot, sympify
from sympy.polys.domains import ZZ
from sympy.polys.fields import FracElement, field

from .conf import app_setting
from .exceptions import DivisionByZero, IncompatibleExponent, PoleAtQ0

logger = logging.getLogger(__name__)

QFIELD, _Q = field('q', ZZ)
Q_SYMBOL = Symbol('q')


def as_fraction(value):
    """Convert ints, Fractions and sympy Rationals to a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f'{value!r} is not an exact rational')


def to_mpf(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def _poly_at(poly, x):
    return sum((Fraction(int(coeff)) * x**monom[0] for monom, coeff in poly.terms()), Fraction(0))


class RatFunc:
    """A rational function of q with integer coefficients, in lowest terms"""

    __slots__ = ('_value',)

    def __init__(self, value=0):
        if isinstance(value, RatFunc):
            value = value._value
        elif isinstance(value, FracElement):
            pass
        elif isinstance(value, Fraction):
            value = QFIELD(value.numerator) / QFIELD(value.denominator)
        elif isinstance(value, int):
            value = QFIELD(value)
        else:
            raise TypeError(f'cannot build a rational function from {value!r}')
        self._value = value

    @classmethod
    def q(cls):
        return cls(_Q)

    @classmethod
    def q_power(cls, exponent):
        """q**exponent for an integer exponent"""
        if exponent >= 0:
            return cls(_Q**exponent)
        return cls(QFIELD.one / _Q**(-exponent))

    @classmethod
    def from_expr(cls, expr):
        """Parse a sympy expression or string in the symbol q"""
        if isinstance(expr, str):
            expr = sympify(expr, locals={'q': Q_SYMBOL})
        free = expr.free_symbols - {Q_SYMBOL}
        if free:
            raise ValueError(f'unexpected symbols {sorted(map(str, free))} in {expr}')
        return cls(QFIELD.from_expr(expr))

    @property
    def numerator(self):
        return self._value.numer

    @property
    def denominator(self):
        return self._value.denom

    @property
    def is_zero(self):
        return not self._value

    @property
    def is_polynomial(self):
        return self._value.denom == QFIELD.ring.one

    def degree_in_q(self):
        """deg(numerator) - deg(denominator)"""
        if self.is_zero:
            raise DivisionByZero('zero has no degree')
        return self._value.numer.degree() - self._value.denom.degree()

    def as_dict(self):
        return {'num': str(self._value.numer.as_expr()), 'den': str(self._value.denom.as_expr())}

    def as_expr(self):
        return self._value.as_expr()

    def at(self, q0):
        """Exact value at a rational point q0"""
        q0 = as_fraction(q0)
        den = _poly_at(self._value.denom, q0)
        if den == 0:
            raise PoleAtQ0(q0)
        return _poly_at(self._value.numer, q0) / den

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other._value
        if isinstance(other, (int, Fraction, FracElement)):
            return RatFunc(other)._value
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self._value + other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self._value - other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(other - self._value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self._value * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise DivisionByZero('division by the zero rational function')
        return RatFunc(self._value / other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(other) / self

    def __pow__(self, exponent):
        if exponent < 0:
            if self.is_zero:
                raise DivisionByZero('zero raised to a negative power')
            return RatFunc(1) / RatFunc(self._value**(-exponent))
        return RatFunc(self._value**exponent)

    def __neg__(self):
        return RatFunc(-self._value)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._value == other

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        return f'RatFunc({self._value.as_expr()})'

    def __str__(self):
        return str(self._value.as_expr())


@dataclass(frozen=True)
class ScaledValue:
    """q**r * f(q) with 0 <= r < 1"""

    r: Fraction
    f: RatFunc

    def __post_init__(self):
        r = as_fraction(self.r)
        if not 0 <= r < 1:
            raise ValueError(f'fractional exponent {r} outside [0, 1)')
        object.__setattr__(self, 'r', r)
        if not isinstance(self.f, RatFunc):
            object.__setattr__(self, 'f', RatFunc(self.f))

    @classmethod
    def of(cls, f):
        return cls(Fraction(0), RatFunc(f))

    @classmethod
    def q_power(cls, exponent):
        """q**exponent for a rational exponent"""
        exponent = as_fraction(exponent)
        whole = math.floor(exponent)
        return cls(exponent - whole, RatFunc.q_power(whole))

    @property
    def is_zero(self):
        return self.f.is_zero

    def _carry(self, r, f):
        whole = math.floor(r)
        if whole:
            f = f * RatFunc.q_power(whole)
        return ScaledValue(r - whole, f)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return ScaledValue(self.r, self.f * other)
        if not isinstance(other, ScaledValue):
            return NotImplemented
        return self._carry(self.r + other.r, self.f * other.f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return ScaledValue(self.r, self.f / other)
        if not isinstance(other, ScaledValue):
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero('division by a zero scaled value')
        return self._carry(self.r - other.r, self.f / other.f)

    def __pow__(self, exponent):
        return self._carry(self.r * exponent, self.f**exponent)

    def __add__(self, other):
        if not isinstance(other, ScaledValue):
            return NotImplemented
        if self.r != other.r:
            raise IncompatibleExponent(f'cannot add q^{self.r}*f and q^{other.r}*g')
        return ScaledValue(self.r, self.f + other.f)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ScaledValue(self.r, -self.f)

    def as_dict(self):
        return {'r': str(self.r), **self.f.as_dict()}

    def __str__(self):
        if self.r == 0:
            return str(self.f)
        return f'q**({self.r})*({self.f})'


_OPERATIONS = {
    '+': operator.add,
    '-': operator.sub,
    '*': operator.mul,
    '/': operator.truediv,
}


def scaled_arith(op, a, b):
    """Apply one of + - * / to two ScaledValues, keeping canonical form"""
    try:
        func = _OPERATIONS[op]
    except KeyError:
        raise ValueError(f'unknown operation {op!r}') from None
    return func(a, b)


def _exact_root_power(q0, r):
    """q0**r as a Fraction when it is rational, else None"""
    if r == 0:
        return Fraction(1)
    num = q0.numerator**r.numerator
    den = q0.denominator**r.numerator
    num_root, num_exact = integer_nthroot(num, r.denominator)
    den_root, den_exact = integer_nthroot(den, r.denominator)
    if num_exact and den_exact:
        return Fraction(int(num_root), int(den_root))
    return None


def eval_numeric(value, q0, precision=None):
    """
    Evaluate a RatFunc or ScaledValue at q = q0.

    The result is an exact Fraction whenever q0**r is rational, otherwise an
    mpmath mpf computed at `precision` decimal digits.
    """
    q0 = as_fraction(q0)
    if q0 <= 1:
        raise ValueError(f'q0 must exceed 1, got {q0}')
    if isinstance(value, RatFunc):
        return value.at(q0)
    if not isinstance(value, ScaledValue):
        raise TypeError(f'cannot evaluate {value!r}')
    base = value.f.at(q0)
    scale = _exact_root_power(q0, value.r)
    if scale is not None:
        return scale * base
    with mpmath.workdps(precision or app_setting('NUMERIC_DPS')):
        return mpmath.power(to_mpf(q0), to_mpf(value.r)) * to_mpf(base)


def render_decimal(value, digits=None):
    """Decimal string with `digits` significant digits"""
    digits = digits or app_setting('NUMERIC_DIGITS')
    with mpmath.workdps(max(digits + 10, app_setting('NUMERIC_DPS'))):
        return mpmath.nstr(to_mpf(value), digits)


def render_rational(value):
    """'p/q' (or 'p') for exact rationals"""
    value = as_fraction(value)
    return str(value)
