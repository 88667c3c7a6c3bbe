"""
The constant term sum over the affine Weyl group.

For a character chi, torus data h and automorphism data m, each w contributes

    term_w = (h eta^{mD})^{w(chi + rho) - rho} * c(chi, w)

with c(chi, w) = q^{l(w)(1-g)} prod zeta(-(chi+rho)(h_a)) / zeta(-(chi+rho)(h_a) + 1)
over the positive roots a sent negative by w. Exponents are exact rationals,
c-values exact rational functions of q.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from sympy import ImmutableMatrix

from .affine_weyl import (
    decompose,
    enumerate_elements,
    identity,
    inversion_set,
    shifted_action,
    translation_element,
)
from .conf import app_setting
from .exceptions import DimensionMismatch, DomainError, NonIntegralExponent, RegionViolation, ZetaPole
from .qfield import RatFunc, ScaledValue, as_fraction, eval_numeric, to_mpf
from .root_data import AffineRoot, Character, CorootVector, pair

logger = logging.getLogger(__name__)

__all__ = [
    'AutomorphismData',
    'Character',
    'ConstantTermTable',
    'TermRow',
    'ThetaConstants',
    'ThreeFactors',
    'TorusData',
    'c_function',
    'c_function_numeric',
    'character_eval_direct',
    'character_eval_three_factor',
    'cocycle_check',
    'constant_term',
    'exceptional_roots',
    'functional_equation_term_check',
    'term',
    'theta_constants',
    'three_factor_split',
]


@dataclass(frozen=True)
class TorusData:
    """Places (degree, (ord(s_1), ..., ord(s_{l+1}))) with finite support"""

    places: tuple = ()

    def __post_init__(self):
        places = tuple((int(d), tuple(int(o) for o in ords)) for d, ords in self.places)
        for degree, _ in places:
            if degree < 1:
                raise DomainError(f'place degree must be positive, got {degree}')
        object.__setattr__(self, 'places', places)

    def check(self, datum):
        for _, ords in self.places:
            if len(ords) != datum.rank + 1:
                raise DimensionMismatch(f'ord vector {ords} needs {datum.rank + 1} entries for {datum}')

    def place_vectors(self, datum):
        """(degree, sum_i ord(s_i) h_i) for each place"""
        self.check(datum)
        for degree, ords in self.places:
            last = ords[-1]
            classical = [o - last * a for o, a in zip(ords, datum.comarks)]
            yield degree, CorootVector.of(classical + [last, 0])

    def norm_exponents(self, datum):
        """e_i with |s_i| = q^{e_i}"""
        self.check(datum)
        return tuple(-sum(d * ords[i] for d, ords in self.places) for i in range(datum.rank + 1))


@dataclass(frozen=True)
class AutomorphismData:
    """Places (degree, m) with m >= 0"""

    places: tuple = ()

    def __post_init__(self):
        places = tuple((int(d), int(m)) for d, m in self.places)
        for degree, m in places:
            if degree < 1:
                raise DomainError(f'place degree must be positive, got {degree}')
            if m < 0:
                raise DomainError(f'automorphism exponents must be nonnegative, got {m}')
        object.__setattr__(self, 'places', places)

    @property
    def total(self):
        """sum of degree * m over places"""
        return sum(d * m for d, m in self.places)

    def require_nontrivial(self):
        if not any(m for _, m in self.places):
            raise RegionViolation('the automorphism must have some m > 0 for the sum to converge')


def _zeta_argument(chi_bar, datum, a):
    s = as_fraction(pair(chi_bar, datum.coroot_of(a)))
    return -s


@lru_cache(maxsize=8192)
def c_function(chi, w, zeta):
    """Exact c(chi, w) as a rational function of q"""
    datum = w.datum
    chi_bar = chi.shifted(datum)
    value = RatFunc.q_power(w.length * (1 - zeta.genus))
    for a in inversion_set(w, form='gamma'):
        s = _zeta_argument(chi_bar, datum, a)
        if s.denominator != 1:
            raise NonIntegralExponent(f'zeta argument {s} at root {a} is not an integer')
        s = int(s)
        try:
            value = value * zeta.zeta_at(s) / zeta.zeta_at(s + 1)
        except ZetaPole as exc:
            raise ZetaPole(exc.argument, root=a) from exc
    return value


def c_function_numeric(chi, w, zeta, q0, precision=None):
    """c(chi, w) at q = q0 for rational characters"""
    datum = w.datum
    chi_bar = chi.shifted(datum)
    q0 = as_fraction(q0)
    with mpmath.workdps(precision or app_setting('NUMERIC_DPS')):
        value = to_mpf(q0) ** (w.length * (1 - zeta.genus))
        for a in inversion_set(w, form='gamma'):
            s = _zeta_argument(chi_bar, datum, a)
            for argument in (s, s + 1):
                if argument in (0, 1):
                    raise ZetaPole(argument, root=a)
            value *= to_mpf(zeta.evaluate(s, q0, precision)) / to_mpf(zeta.evaluate(s + 1, q0, precision))
    return value


def _pull_back(w, x):
    """w^{-1}(x)"""
    return CorootVector(w.inverse_matrix * x.coords)


def character_eval_direct(h, m, w, mu):
    """prod over places of q^{-d mu(w^{-1}(sum_i ord(s_i) h_i + m D))}"""
    datum = w.datum
    exponent = Fraction(0)
    for degree, x in h.place_vectors(datum):
        exponent -= degree * as_fraction(pair(mu, _pull_back(w, x)))
    if m.places:
        at_d = as_fraction(pair(mu, _pull_back(w, datum.D)))
        exponent -= m.total * at_d
    return ScaledValue.q_power(exponent)


@dataclass(frozen=True)
class ThreeFactors:
    torus: ScaledValue
    automorphism: ScaledValue
    cross: ScaledValue

    @property
    def product(self):
        return self.torus * self.automorphism * self.cross


def three_factor_split(h, m, w, chi):
    """
    (h eta^{mD})^{w(chi + rho)} split along w^{-1} = w_1 T_H into the torus
    factor, the automorphism factor and the cross term between h and H.
    """
    datum = w.datum
    w1, translation = decompose(w)
    chi_bar = chi.shifted(datum)
    at_c = as_fraction(pair(chi_bar, datum.c))
    at_d = as_fraction(pair(chi_bar, datum.D))
    torus = cross = Fraction(0)
    for degree, x in h.place_vectors(datum):
        h_nu = datum.classical_vector(x.classical)
        e_nu = as_fraction(x.c)
        torus -= degree * (as_fraction(pair(chi_bar, CorootVector(w1.matrix * h_nu.coords))) + e_nu * at_c)
        cross -= degree * as_fraction(datum.bilinear(h_nu, translation)) * at_c
    moved = as_fraction(pair(chi_bar, CorootVector(w1.matrix * translation.coords)))
    half_norm = as_fraction(datum.bilinear(translation, translation)) / 2
    automorphism = m.total * (moved + half_norm * at_c - at_d)
    return ThreeFactors(
        torus=ScaledValue.q_power(torus),
        automorphism=ScaledValue.q_power(automorphism),
        cross=ScaledValue.q_power(cross),
    )


def character_eval_three_factor(h, m, w, chi):
    return three_factor_split(h, m, w, chi).product


def character_factor(chi, w, h, m):
    """(h eta^{mD})^{w(chi + rho) - rho}"""
    datum = w.datum
    return character_eval_direct(h, m, w, chi.shifted(datum)) * character_eval_direct(
        h, m, identity(datum), -datum.rho
    )


def term(chi, w, h, m, zeta):
    """(h eta^{mD})^{w o chi} c(chi, w) as an exact ScaledValue"""
    return character_factor(chi, w, h, m) * c_function(chi, w, zeta)


@dataclass(frozen=True)
class TermRow:
    element: object
    character: ScaledValue
    c: object = None
    value: object = None
    numeric: object = None
    pole: ZetaPole = None

    @property
    def length(self):
        return self.element.length


@dataclass(frozen=True)
class ConstantTermTable:
    rows: tuple
    partial_sums: tuple = ()
    q0: object = None
    mode: str = 'convergence'

    @property
    def poles(self):
        return [row for row in self.rows if row.pole is not None]

    def partial_sum(self, max_length):
        for length, value in self.partial_sums:
            if length == max_length:
                return value
        raise KeyError(max_length)


def _accumulate(total, value):
    if isinstance(total, Fraction) and isinstance(value, Fraction):
        return total + value
    return to_mpf(total) + to_mpf(value)


def _check_region(datum, chi, mode):
    if mode == 'convergence':
        if not chi.is_dominant_negative:
            raise RegionViolation(f'character {chi} needs every value below -2 for the convergent sum')
    elif mode == 'meromorphic':
        if not chi.in_meromorphy_domain(datum):
            raise RegionViolation(
                f'chi(h_delta) = {chi.at_delta(datum)} must be below -{datum.dual_coxeter} in meromorphic mode'
            )
    else:
        raise ValueError(f'unknown mode {mode!r}')


def constant_term(datum, chi, h, m, zeta, max_length, q0=None, mode='convergence'):
    """
    Terms of the constant term for every w with l(w) <= max_length.

    In convergence mode chi must be dominant-negative and any zeta pole is an
    error; in meromorphic mode poles are recorded on their rows. Rational
    characters are summed numerically and need q0.
    """
    _check_region(datum, chi, mode)
    if mode == 'convergence':
        m.require_nontrivial()
    exact = chi.is_integral
    if not exact and q0 is None:
        raise NonIntegralExponent(f'character {chi} is not integral; give q0 for a numeric table')
    rows = []
    for w in enumerate_elements(datum, max_length):
        character = character_factor(chi, w, h, m)
        try:
            if exact:
                c = c_function(chi, w, zeta)
                value = character * c
                numeric = eval_numeric(value, q0) if q0 is not None else None
            else:
                c = value = None
                numeric = to_mpf(eval_numeric(character, q0)) * c_function_numeric(chi, w, zeta, q0)
        except ZetaPole as exc:
            if mode == 'convergence':
                raise
            logger.warning('Pole in the term of %s: %s', w, exc)
            rows.append(TermRow(element=w, character=character, pole=exc))
            continue
        rows.append(TermRow(element=w, character=character, c=c, value=value, numeric=numeric))
    partial_sums = ()
    if q0 is not None:
        running = Fraction(0)
        sums = []
        for length in range(max_length + 1):
            for row in rows:
                if row.length == length and row.numeric is not None:
                    running = _accumulate(running, row.numeric)
            sums.append((length, running))
        partial_sums = tuple(sums)
    logger.debug('%d terms up to length %d', len(rows), max_length)
    return ConstantTermTable(rows=tuple(rows), partial_sums=partial_sums, q0=q0, mode=mode)


def exceptional_roots(datum, chi):
    """
    Positive real roots a with (chi + rho)(h_a) >= -1, the only roots whose
    zeta ratio can meet a pole. Finite exactly when chi(h_delta) < -h^v.
    """
    if not chi.in_meromorphy_domain(datum):
        raise RegionViolation(f'chi(h_delta) = {chi.at_delta(datum)} is not below -{datum.dual_coxeter}')
    chi_bar = chi.shifted(datum)
    found = []
    for beta in datum.positive_roots:
        for sign in (1, -1):
            classical = tuple(sign * x for x in beta)
            n = 0 if sign == 1 else 1
            while True:
                a = AffineRoot(classical, n)
                value = as_fraction(pair(chi_bar, datum.coroot_of(a)))
                if value < -1:
                    break
                found.append((a, value))
                n += 1
    return sorted(found, key=lambda item: (item[0].n, item[0].classical))


def cocycle_check(chi, w, w2, zeta):
    """c(chi, w w2) == c(w2 o chi, w) * c(chi, w2)"""
    return c_function(chi, w * w2, zeta) == c_function(shifted_action(w2, chi), w, zeta) * c_function(chi, w2, zeta)


def functional_equation_term_check(chi, w, w2, h, m, zeta):
    """term_{w2 w}(chi) == c(chi, w) * term_{w2}(w o chi)"""
    lhs = term(chi, w2 * w, h, m, zeta)
    rhs = term(shifted_action(w, chi), w2, h, m, zeta) * c_function(chi, w, zeta)
    return lhs == rhs


def _lattice_points(datum, radius):
    """Nonzero H in the coroot lattice with ||H|| <= radius"""
    inverse = datum.form.inv()
    bounds = [int(mpmath.floor(radius * mpmath.sqrt(to_mpf(as_fraction(inverse[k, k]))))) for k in range(datum.rank)]
    limit = to_mpf(radius) ** 2

    def walk(prefix):
        if len(prefix) == datum.rank:
            if any(prefix):
                h = datum.classical_vector(prefix)
                if to_mpf(as_fraction(datum.bilinear(h, h))) <= limit:
                    yield h
            return
        bound = bounds[len(prefix)]
        for value in range(-bound, bound + 1):
            yield from walk(prefix + [value])

    yield from walk([])


def _dual_norm(datum, values):
    f = ImmutableMatrix(list(values))
    return mpmath.sqrt(to_mpf(as_fraction((f.T * datum.form.inv() * f)[0])))


@dataclass(frozen=True)
class ThetaConstants:
    """
    Constants bounding the constant-term tail by a theta series over the
    translations H, for one fixed (chi, h, m) and q = q0.
    """

    datum: object
    q0: Fraction
    epsilon: Fraction
    M: object
    N1: object
    N2: object
    N3: object
    sigma1: object
    sigma2: object
    sigma3: object
    sigma3_bound: object
    m_eps: object
    m_eps_bar: object
    prefactor: object
    translation_lengths: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def growth(self):
        """Linear coefficient of the exponent: sigma_1 + sigma_3 log max(M_eps, 1)"""
        return self.sigma1 + self.sigma3_bound * mpmath.log(max(self.m_eps, 1))

    def weight(self, t):
        return mpmath.exp(self.growth * t - self.sigma2 * t**2)

    def tail_bound(self, max_length):
        """Bound on the sum of all terms with l(w) > max_length"""
        with mpmath.workdps(app_setting('NUMERIC_DPS')):
            datum = self.datum
            start = max(mpmath.mpf(0), (max_length - datum.longest_classical_length) / self.sigma3_bound)
            log_cutoff = mpmath.log(mpmath.mpf(app_setting('THETA_CUTOFF')))
            a, s2 = self.growth, self.sigma2
            radius = (a + mpmath.sqrt(a**2 - 4 * s2 * log_cutoff)) / (2 * s2)

            explicit = mpmath.mpf(0)
            count = 0
            if start <= radius:
                for h in _lattice_points(datum, radius):
                    norm = datum.norm(h)
                    if norm >= start:
                        explicit += self.weight(norm)
                        count += 1
                if start == 0:
                    explicit += 1

            shortest = min(datum.norm(datum.simple_coroot(i)) for i in range(1, datum.rank + 1))
            remainder = mpmath.mpf(0)
            t = max(radius, start)
            for _ in range(100_000):
                shell = (2 * (t + 1) / shortest + 1) ** datum.rank * self.weight(t)
                remainder += shell
                if shell < mpmath.mpf(10) ** (-2 * app_setting('NUMERIC_DPS')) * (1 + remainder):
                    break
                t += 1
            logger.debug('Theta tail at L=%d: %d explicit lattice points', max_length, count)
            total = self.prefactor * datum.weyl_order * self.M ** (datum.rank + 1) * self.m_eps_bar
            return total * (explicit + remainder)


def theta_constants(datum, chi, h, m, zeta, q0):
    """Explicit admissible constants for the theta-series bound of the tail"""
    if not chi.is_dominant_negative:
        raise RegionViolation(f'character {chi} needs every value below -2')
    m.require_nontrivial()
    h.check(datum)
    q0 = as_fraction(q0)
    with mpmath.workdps(app_setting('NUMERIC_DPS')):
        log_q = mpmath.log(to_mpf(q0))
        chi_bar = chi.shifted(datum)
        at_c = as_fraction(pair(chi_bar, datum.c))
        total = m.total

        # |s_i|^{chi_bar(w_1 h_i)} over w_1; w_1 h_i runs over the coroots of roots as long as alpha_i
        exponents = h.norm_exponents(datum)
        best = None
        for i in range(1, datum.rank + 2):
            if i <= datum.rank:
                simple = datum.simple_root(i).classical
            else:
                simple = datum.highest_root
            length = datum.half_norm(simple)
            for beta in datum.positive_roots:
                if datum.half_norm(beta) != length:
                    continue
                for sign in (1, -1):
                    classical = tuple(sign * x for x in beta)
                    value = as_fraction(pair(chi_bar, datum.coroot_of(AffineRoot(classical, 0))))
                    if i == datum.rank + 1:
                        value = at_c - value
                    candidate = exponents[i - 1] * value
                    best = candidate if best is None else max(best, candidate)
        M = to_mpf(q0) ** to_mpf(best)

        dual = _dual_norm(datum, [pair(chi_bar, datum.simple_coroot(i)) for i in range(1, datum.rank + 1)])
        N1 = mpmath.exp(total * dual * log_q)
        N2 = mpmath.exp(total * to_mpf(at_c) / 2 * log_q)
        h_sum = datum.classical_vector([0] * datum.rank)
        for degree, x in h.place_vectors(datum):
            h_sum = h_sum + datum.classical_vector(x.classical) * degree
        N3 = mpmath.exp(abs(to_mpf(at_c)) * datum.norm(h_sum) * log_q)
        sigma1 = mpmath.log(N1) + mpmath.log(N3)
        sigma2 = -mpmath.log(N2)

        lengths = {}
        sigma3 = mpmath.mpf(0)
        for translation in _lattice_points(datum, mpmath.sqrt(app_setting('SIGMA3_NORM_SQUARED'))):
            length = translation_element(datum, translation).length
            lengths[tuple(translation.classical)] = length
            sigma3 = max(sigma3, length / datum.norm(translation))
        # l(T_H) = sum over positive roots of |alpha(H)| is bounded by the sum of dual norms
        sigma3_bound = sum(
            (_dual_norm(datum, datum.root_functional(AffineRoot(beta, 0)).values[: datum.rank]) for beta in datum.positive_roots),
            mpmath.mpf(0),
        )
        sigma3_bound = max(sigma3, sigma3_bound)

        epsilon = chi.epsilon
        m_eps = to_mpf(q0) ** (1 - zeta.genus) * to_mpf(zeta.evaluate(1 + epsilon, q0)) ** 2
        m_eps_bar = max(m_eps, 1) ** datum.longest_classical_length
        prefactor = to_mpf(eval_numeric(character_eval_direct(h, m, identity(datum), -datum.rho), q0))

    if sigma2 <= 0:
        raise RegionViolation('the Gaussian coefficient must be positive')
    logger.debug('Theta constants for %s: sigma2=%s sigma3=%s', chi, sigma2, sigma3)
    return ThetaConstants(
        datum=datum,
        q0=q0,
        epsilon=epsilon,
        M=M,
        N1=N1,
        N2=N2,
        N3=N3,
        sigma1=sigma1,
        sigma2=sigma2,
        sigma3=sigma3,
        sigma3_bound=sigma3_bound,
        m_eps=m_eps,
        m_eps_bar=m_eps_bar,
        prefactor=prefactor,
        translation_lengths=lengths,
    )
