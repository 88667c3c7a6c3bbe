"""
Zeta functions of function fields over F_q as exact rational functions of q.

zeta(s) = L(q^-s) / ((1 - q^-s)(1 - q^(1-s))), with L of degree 2g in u and
coefficients in Z[q]. Place enumeration for Euler products is only done for
the rational function field F_q(T).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from sympy import divisors, mobius

from .conf import app_setting
from .exceptions import DomainError, InvalidLPolynomial, ZetaPole
from .qfield import RatFunc, ScaledValue, as_fraction, to_mpf

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LPolynomial:
    """L(u) = a_0 + a_1 u + ... + a_2g u^2g with a_i in Z[q]"""

    coefficients: tuple = (RatFunc(1),)

    def __post_init__(self):
        coefficients = tuple(RatFunc.from_expr(a) if isinstance(a, str) else RatFunc(a) for a in self.coefficients)
        object.__setattr__(self, 'coefficients', coefficients)
        if len(coefficients) % 2 == 0:
            raise InvalidLPolynomial(f'L-polynomial needs 2g+1 coefficients, got {len(coefficients)}')
        if coefficients[0] != 1:
            raise InvalidLPolynomial(f'L(0) must be 1, got {coefficients[0]}')
        for i, a in enumerate(coefficients):
            if not a.is_polynomial:
                raise InvalidLPolynomial(f'coefficient a_{i} = {a} is not a polynomial in q')
        g = self.genus
        for i in range(2 * g + 1):
            mirrored = coefficients[2 * g - i]
            if mirrored != coefficients[i] * RatFunc.q_power(g - i):
                raise InvalidLPolynomial(
                    f'a_{2 * g - i} = {mirrored} but the functional equation needs q^{g - i} * a_{i}'
                )

    @classmethod
    def rational(cls):
        return cls((RatFunc(1),))

    @classmethod
    def elliptic(cls, a):
        """1 + a u + q u^2"""
        return cls((RatFunc(1), RatFunc(a), RatFunc.q()))

    @property
    def genus(self):
        return (len(self.coefficients) - 1) // 2

    def at(self, u):
        value = RatFunc(0)
        for a in reversed(self.coefficients):
            value = value * u + a
        return value

    def at_numeric(self, q0, u):
        coefficients = [to_mpf(a.at(q0)) for a in self.coefficients]
        return mpmath.polyval(coefficients[::-1], u)

    def __str__(self):
        return ' + '.join(f'({a})*u**{i}' for i, a in enumerate(self.coefficients))


@dataclass(frozen=True)
class ZetaFunction:
    L: LPolynomial = field(default_factory=LPolynomial.rational)

    @property
    def genus(self):
        return self.L.genus

    @lru_cache(maxsize=None)
    def zeta_at(self, n):
        """Exact zeta(n) as a rational function of q"""
        n = int(n)
        denominator = (1 - RatFunc.q_power(-n)) * (1 - RatFunc.q_power(1 - n))
        if denominator.is_zero:
            raise ZetaPole(n)
        return self.L.at(RatFunc.q_power(-n)) / denominator

    def xi_at(self, n):
        """q^((g-1)n) zeta(n)"""
        return ScaledValue.q_power((self.genus - 1) * n) * ScaledValue.of(self.zeta_at(n))

    def evaluate(self, s, q0, precision=None):
        """
        zeta(s) at q = q0: exact for integral s, mpmath otherwise.
        """
        s = as_fraction(s)
        q0 = as_fraction(q0)
        if s.denominator == 1:
            return self.zeta_at(int(s)).at(q0)
        with mpmath.workdps(precision or app_setting('NUMERIC_DPS')):
            q = to_mpf(q0)
            u = q ** (-to_mpf(s))
            return self.L.at_numeric(q0, u) / ((1 - u) * (1 - q * u))


def ratio_identity_check(zeta, n):
    """
    The three ratio identities at s = n:
    zeta(s)/zeta(1-s) = q^((2s-1)(1-g)), zeta(-s)/zeta(1+s) = q^((-2s-1)(1-g))
    and their product q^(-2(1-g)).
    """
    g = zeta.genus
    first = zeta.zeta_at(n) / zeta.zeta_at(1 - n)
    second = zeta.zeta_at(-n) / zeta.zeta_at(1 + n)
    return (
        first == RatFunc.q_power((2 * n - 1) * (1 - g)),
        second == RatFunc.q_power((-2 * n - 1) * (1 - g)),
        first * second == RatFunc.q_power(-2 * (1 - g)),
    )


def irreducible_count(q0, d):
    """Number of monic irreducible polynomials of degree d over F_q0"""
    return int(sum(int(mobius(e)) * q0 ** (d // e) for e in divisors(d))) // d


def place_counts(q0, max_degree):
    """[(d, number of places of F_q0(T) of degree d)] including the infinite place"""
    return [(d, irreducible_count(q0, d) + (d == 1)) for d in range(1, max_degree + 1)]


@dataclass(frozen=True)
class EulerPartial:
    """Euler product over places of degree <= degree, with a bound on log(zeta / partial)"""

    value: object
    log_tail_bound: object
    degree: int


def euler_tail_bound(q0, s, max_degree):
    """
    Bound on sum over places of degree > max_degree of -log(1 - q_v^-s), using
    N_d <= q0^d and -log(1 - x) <= x/(1 - x).
    """
    q = to_mpf(as_fraction(q0))
    s = to_mpf(as_fraction(s))
    first = max_degree + 1
    return q ** (first * (1 - s)) / ((1 - q ** (1 - s)) * (1 - q ** (-s * first)))


def euler_partial(q0, s, max_degree, precision=None):
    """Partial Euler product of zeta_{F_q0(T)}(s) over places of degree <= max_degree"""
    s = as_fraction(s)
    if int(q0) != q0 or q0 < 2:
        raise DomainError(f'q0 must be an integer >= 2, got {q0}')
    q0 = int(q0)
    if s <= 1:
        raise DomainError(f'the Euler product needs s > 1, got {s}')
    if max_degree < 1:
        raise DomainError('max_degree must be at least 1')
    with mpmath.workdps(precision or app_setting('NUMERIC_DPS')):
        counts = place_counts(q0, max_degree)
        if s.denominator == 1:
            value = Fraction(1)
            for d, count in counts:
                value /= (1 - Fraction(1, q0 ** (int(s) * d))) ** count
        else:
            value = mpmath.mpf(1)
            for d, count in counts:
                value /= (1 - mpmath.mpf(q0) ** (-to_mpf(s) * d)) ** count
        tail = euler_tail_bound(q0, s, max_degree)
    logger.debug('Euler partial for q0=%s s=%s up to degree %d', q0, s, max_degree)
    return EulerPartial(value, tail, max_degree)
