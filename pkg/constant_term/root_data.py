"""
Cartan data for finite types and their untwisted affinizations.

Vectors of the extended Cartan subalgebra are coordinates in the basis
(h_1, ..., h_l, c, D); functionals are their values on that basis. The
Cartan matrix follows cartan[i][j] = alpha_j(h_i).
"""
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import mpmath
from sympy import ImmutableMatrix, Rational

from .exceptions import DimensionMismatch, ImaginaryRoot, InvalidWord, UnsupportedType
from .qfield import as_fraction, to_mpf

logger = logging.getLogger(__name__)

SUPPORTED_RANKS = {
    'A': range(1, 64),
    'B': range(2, 64),
    'C': range(2, 64),
    'D': range(4, 64),
    'E': range(6, 9),
    'F': range(4, 5),
    'G': range(2, 3),
}

_EXCEPTIONAL_WEYL_ORDERS = {('E', 6): 51840, ('E', 7): 2903040, ('E', 8): 696729600, ('F', 4): 1152, ('G', 2): 12}


def _rational(value):
    value = as_fraction(value)
    return Rational(value.numerator, value.denominator)


def _finite_cartan(type_label, rank):
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, a_ij=-1, a_ji=-1):
        a[i][j] = a_ij
        a[j][i] = a_ji

    if type_label == 'A':
        for i in range(rank - 1):
            link(i, i + 1)
    elif type_label in ('B', 'C'):
        for i in range(rank - 2):
            link(i, i + 1)
        # B: alpha_l short, C: alpha_l long
        if type_label == 'B':
            link(rank - 2, rank - 1, -1, -2)
        else:
            link(rank - 2, rank - 1, -2, -1)
    elif type_label == 'D':
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif type_label == 'E':
        link(0, 2)
        link(1, 3)
        for i in range(2, rank - 1):
            link(i, i + 1)
    elif type_label == 'F':
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif type_label == 'G':
        link(0, 1, -3, -1)
    return a


def _weyl_order(type_label, rank):
    if type_label == 'A':
        return math.factorial(rank + 1)
    if type_label in ('B', 'C'):
        return 2**rank * math.factorial(rank)
    if type_label == 'D':
        return 2 ** (rank - 1) * math.factorial(rank)
    return _EXCEPTIONAL_WEYL_ORDERS[(type_label, rank)]


def _root_coroot_pairs(cartan):
    """Orbit of the simple (root, coroot) pairs under the simple reflections"""
    rank = len(cartan)

    def reflect(pair, i):
        root, coroot = pair
        root_at = sum(root[j] * cartan[i][j] for j in range(rank))
        coroot_at = sum(coroot[k] * cartan[k][i] for k in range(rank))
        new_root = tuple(x - root_at * (j == i) for j, x in enumerate(root))
        new_coroot = tuple(x - coroot_at * (k == i) for k, x in enumerate(coroot))
        return new_root, new_coroot

    simple = [tuple(int(j == i) for j in range(rank)) for i in range(rank)]
    seen = {s: s for s in simple}
    queue = deque(simple)
    while queue:
        root = queue.popleft()
        for i in range(rank):
            new_root, new_coroot = reflect((root, seen[root]), i)
            if new_root not in seen:
                seen[new_root] = new_coroot
                queue.append(new_root)
    return seen


def _symmetrizer(cartan):
    """d_j = (h_j, h_j)/2 up to a common scale, from a_ij d_j = a_ji d_i"""
    rank = len(cartan)
    d = [None] * rank
    d[0] = Rational(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(rank):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                d[j] = Rational(cartan[j][i]) * d[i] / cartan[i][j]
                queue.append(j)
    return d


@dataclass(frozen=True)
class AffineRoot:
    """alpha + n*delta with alpha in simple-root coordinates (zero for imaginary roots)"""

    classical: tuple
    n: int = 0

    @property
    def is_imaginary(self):
        return not any(self.classical)

    @property
    def is_positive(self):
        if self.n != 0:
            return self.n > 0
        return any(x > 0 for x in self.classical)

    def __neg__(self):
        return AffineRoot(tuple(-x for x in self.classical), -self.n)

    def __add__(self, other):
        return AffineRoot(tuple(x + y for x, y in zip(self.classical, other.classical)), self.n + other.n)

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        names = {1: '', -1: '-'}
        terms = [f'{names.get(c, c)}a{i}' for i, c in enumerate(self.classical, start=1) if c]
        text = ' + '.join(terms).replace('+ -', '- ')
        if self.n:
            text = f'{text} + {self.n}delta' if text else f'{self.n}delta'
        return text or '0'


@dataclass(frozen=True)
class _Vector:
    coords: ImmutableMatrix

    @classmethod
    def of(cls, values):
        return cls(ImmutableMatrix([_rational(v) for v in values]))

    @property
    def dim(self):
        return self.coords.rows

    @property
    def values(self):
        return tuple(self.coords)

    def _check(self, other):
        if type(other) is not type(self):
            return False
        if other.dim != self.dim:
            raise DimensionMismatch(f'dimension {self.dim} against {other.dim}')
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return type(self)(self.coords + other.coords)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return type(self)(self.coords - other.coords)

    def __neg__(self):
        return type(self)(-self.coords)

    def __mul__(self, scalar):
        return type(self)(self.coords * _rational(scalar))

    __rmul__ = __mul__

    def __getitem__(self, index):
        return self.coords[index]


class CorootVector(_Vector):
    """Element of the extended Cartan subalgebra in the basis (h_1..h_l, c, D)"""

    @property
    def classical(self):
        return tuple(self.coords[:-2])

    @property
    def c(self):
        return self.coords[-2]

    @property
    def d(self):
        return self.coords[-1]

    def __str__(self):
        names = [f'h{i}' for i in range(1, self.dim - 1)] + ['c', 'D']
        terms = [f'{v}*{name}' for v, name in zip(self.coords, names) if v != 0]
        return ' + '.join(terms) or '0'


class Functional(_Vector):
    """Values of a linear functional on the basis (h_1..h_l, c, D)"""


def pair(f, v):
    """f(v)"""
    if f.dim != v.dim:
        raise DimensionMismatch(f'functional of dimension {f.dim} paired with vector of dimension {v.dim}')
    return f.coords.dot(v.coords)


@dataclass(frozen=True)
class CartanDatum:
    type_label: str
    rank: int
    cartan: ImmutableMatrix
    highest_root: tuple
    comarks: tuple
    form: ImmutableMatrix
    _coroot_table: dict = field(compare=False, hash=False, repr=False, default_factory=dict)

    def __str__(self):
        return f'{self.type_label}{self.rank}^(1)'

    @property
    def dim(self):
        return self.rank + 2

    @property
    def dual_coxeter(self):
        return 1 + sum(self.comarks)

    @property
    def weyl_order(self):
        """Order of the finite Weyl group"""
        return _weyl_order(self.type_label, self.rank)

    @cached_property
    def positive_roots(self):
        return tuple(sorted((r for r in self._coroot_table if all(x >= 0 for x in r)), key=lambda r: (sum(r), r)))

    @property
    def longest_classical_length(self):
        return len(self.positive_roots)

    def is_root(self, classical):
        return tuple(classical) in self._coroot_table

    def is_real_root(self, a):
        return not a.is_imaginary and self.is_root(a.classical)

    def classical_coroot(self, classical):
        """Coroot of a classical root, in simple-coroot coordinates"""
        try:
            return self._coroot_table[tuple(classical)]
        except KeyError:
            raise ValueError(f'{classical} is not a root of {self.type_label}{self.rank}') from None

    @cached_property
    def _pairing_rows(self):
        # row i gives beta(h_i) = sum_j beta_j * row[j] for i = 1..l+1
        rows = [tuple(int(self.cartan[i, j]) for j in range(self.rank)) for i in range(self.rank)]
        theta_row = tuple(
            -sum(self.comarks[k] * int(self.cartan[k, j]) for k in range(self.rank)) for j in range(self.rank)
        )
        return tuple(rows) + (theta_row,)

    def check_index(self, i):
        if not 1 <= i <= self.rank + 1:
            raise InvalidWord(f'generator {i} outside 1..{self.rank + 1}')

    def root_at_simple_coroot(self, a, i):
        """a(h_i) for the simple affine coroot h_i, i = 1..l+1"""
        row = self._pairing_rows[i - 1]
        return sum(b * r for b, r in zip(a.classical, row))

    def simple_root(self, i):
        self.check_index(i)
        if i <= self.rank:
            return AffineRoot(tuple(int(j == i - 1) for j in range(self.rank)), 0)
        return AffineRoot(tuple(-x for x in self.highest_root), 1)

    @property
    def delta(self):
        return AffineRoot((0,) * self.rank, 1)

    def reflect(self, a, i):
        """w_i(a) = a - a(h_i) alpha_i"""
        k = self.root_at_simple_coroot(a, i)
        if not k:
            return a
        alpha = self.simple_root(i)
        return AffineRoot(tuple(x - k * y for x, y in zip(a.classical, alpha.classical)), a.n - k * alpha.n)

    def simple_coroot(self, i):
        self.check_index(i)
        if i <= self.rank:
            return CorootVector.of([int(j == i - 1) for j in range(self.rank)] + [0, 0])
        return CorootVector.of([-x for x in self.comarks] + [1, 0])

    def root_functional(self, a):
        """The functional alpha + n*delta on (h_1..h_l, c, D)"""
        values = [sum(b * int(self.cartan[k, j]) for j, b in enumerate(a.classical)) for k in range(self.rank)]
        return Functional.of(values + [0, a.n])

    def simple_root_functional(self, i):
        return self.root_functional(self.simple_root(i))

    @cached_property
    def rho(self):
        """rho(h_i) = 1 for i = 1..l+1, rho(D) = 0"""
        return Functional.of([1] * self.rank + [self.dual_coxeter, 0])

    @cached_property
    def delta_functional(self):
        return Functional.of([0] * (self.rank + 1) + [1])

    @cached_property
    def c(self):
        return CorootVector.of([0] * self.rank + [1, 0])

    @cached_property
    def D(self):
        return CorootVector.of([0] * self.rank + [0, 1])

    def classical_vector(self, coords):
        return CorootVector.of(list(coords) + [0, 0])

    def half_norm(self, classical):
        """(h_alpha, h_alpha)/2 for a classical root alpha, i.e. 2/(alpha, alpha)"""
        h = ImmutableMatrix(self.classical_coroot(classical))
        return (h.T * self.form * h)[0] / 2

    def coroot_of(self, a):
        """h_{alpha + n delta} = h_alpha + n (2/(alpha, alpha)) c"""
        if a.is_imaginary:
            raise ImaginaryRoot(f'{a} is imaginary')
        h = self.classical_coroot(a.classical)
        return CorootVector.of(list(h) + [a.n * self.half_norm(a.classical), 0])

    def bilinear(self, v1, v2):
        """Invariant form on the extended Cartan: (c, D) = 1, c and D isotropic and orthogonal to the classical part"""
        if v1.dim != self.dim or v2.dim != self.dim:
            raise DimensionMismatch(f'expected vectors of dimension {self.dim}')
        x = ImmutableMatrix(v1.classical)
        y = ImmutableMatrix(v2.classical)
        return (x.T * self.form * y)[0] + v1.c * v2.d + v1.d * v2.c

    def norm(self, v):
        return mpmath.sqrt(to_mpf(as_fraction(self.bilinear(v, v))))

    @cached_property
    def affine_cartan(self):
        """[alpha_j(h_i)] for i, j = 1..l+1"""
        size = self.rank + 1
        return ImmutableMatrix(
            size,
            size,
            lambda i, j: pair(self.simple_root_functional(j + 1), self.simple_coroot(i + 1)),
        )


@lru_cache(maxsize=None)
def build_cartan(type_label, rank):
    """Finite Cartan data of the given type, with the normalized invariant form on coroots"""
    type_label = str(type_label).upper()
    if type_label not in SUPPORTED_RANKS or rank not in SUPPORTED_RANKS[type_label]:
        raise UnsupportedType(f'no finite root system of type {type_label}{rank}')
    a = _finite_cartan(type_label, rank)
    table = _root_coroot_pairs(a)
    positive = [r for r in table if all(x >= 0 for x in r)]
    highest = max(positive, key=sum)
    comarks = table[highest]

    d = _symmetrizer(a)
    gram = ImmutableMatrix(rank, rank, lambda i, j: a[i][j] * d[j])
    theta = ImmutableMatrix(comarks)
    gram = gram * (2 / (theta.T * gram * theta)[0])

    datum = CartanDatum(
        type_label=type_label,
        rank=rank,
        cartan=ImmutableMatrix(a),
        highest_root=tuple(highest),
        comarks=tuple(comarks),
        form=gram,
        _coroot_table=table,
    )
    logger.debug('Built %s with %d positive roots', datum, len(positive))
    return datum


@dataclass(frozen=True)
class Character:
    """
    Rational values chi(h_1), ..., chi(h_{l+1}) on the simple affine coroots.

    d_value is chi(D); it is zero for characters given by the user and can
    become nonzero under the shifted Weyl action.
    """

    values: tuple
    d_value: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(as_fraction(v) for v in self.values))
        object.__setattr__(self, 'd_value', as_fraction(self.d_value))

    def _check(self, datum):
        if len(self.values) != datum.rank + 1:
            raise DimensionMismatch(
                f'character has {len(self.values)} values, {datum} needs {datum.rank + 1}'
            )

    @property
    def is_integral(self):
        return all(v.denominator == 1 for v in self.values) and self.d_value.denominator == 1

    @property
    def is_dominant_negative(self):
        return all(v < -2 for v in self.values)

    @property
    def epsilon(self):
        return min(-v for v in self.values) - 2

    def at_delta(self, datum):
        """chi(h_delta) = chi(h_{l+1}) + sum of comarks times chi(h_i)"""
        self._check(datum)
        return self.values[-1] + sum(a * v for a, v in zip(datum.comarks, self.values))

    def in_meromorphy_domain(self, datum):
        return self.at_delta(datum) < -datum.dual_coxeter

    def functional(self, datum):
        self._check(datum)
        return Functional.of(list(self.values[:-1]) + [self.at_delta(datum), self.d_value])

    def shifted(self, datum):
        """chi + rho as a functional"""
        return self.functional(datum) + datum.rho

    @classmethod
    def from_functional(cls, datum, f):
        values = [as_fraction(f[k]) for k in range(datum.rank)]
        last = as_fraction(f[datum.rank]) - sum(a * v for a, v in zip(datum.comarks, values))
        return cls(tuple(values) + (last,), as_fraction(f[datum.rank + 1]))

    def __str__(self):
        text = ','.join(str(v) for v in self.values)
        if self.d_value:
            text += f' (D: {self.d_value})'
        return text
