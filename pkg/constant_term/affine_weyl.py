"""
Affine Weyl group elements as reduced words with their action on the
extended Cartan subalgebra.

A word (i_r, ..., i_1) is written left to right, so word[0] is the generator
applied last: w = w_{i_r} ... w_{i_1}. Equality of elements is decided by the
normal form w^{-1} = w_1 T_H (classical part, translation).
"""
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

from sympy import ImmutableMatrix, eye, zeros

from .exceptions import InvalidWord
from .root_data import AffineRoot, CartanDatum, Character, CorootVector, Functional

logger = logging.getLogger(__name__)

MAX_DESCENT_STEPS = 10_000


def _reflection_matrix(datum, i):
    """w_i(x) = x - alpha_i(x) h_i as a matrix on coroot coordinates"""
    h = datum.simple_coroot(i).coords
    alpha = datum.simple_root_functional(i).coords
    return ImmutableMatrix(eye(datum.dim) - h * alpha.T)


@lru_cache(maxsize=None)
def reflection_matrices(datum):
    return {i: _reflection_matrix(datum, i) for i in range(1, datum.rank + 2)}


def is_positive_coroot(datum, v):
    """Whether v is a nonzero nonnegative combination of h_1..h_{l+1}"""
    if v.d != 0:
        return False
    x_c = v.c
    coefficients = [x + x_c * a for x, a in zip(v.classical, datum.comarks)] + [x_c]
    return all(y >= 0 for y in coefficients) and any(y != 0 for y in coefficients)


@dataclass(frozen=True, eq=False)
class WeylElement:
    datum: CartanDatum
    word: tuple
    matrix: ImmutableMatrix
    inverse_matrix: ImmutableMatrix

    @property
    def length(self):
        return len(self.word)

    @property
    def is_identity(self):
        return not self.word

    @cached_property
    def normal_form(self):
        """(classical block of w^{-1}, H) with w^{-1} = w_1 T_H"""
        rank = self.datum.rank
        n = self.inverse_matrix
        classical = n[:rank, :rank]
        image_of_d = n[:rank, rank + 1]
        h = -classical.inv() * image_of_d
        if not all(x.is_integer for x in h):
            raise ValueError(f'translation part {tuple(h)} of {self.word} is not in the coroot lattice')
        return ImmutableMatrix(classical), tuple(int(x) for x in h)

    @property
    def classical_part(self):
        return self.normal_form[0]

    @property
    def translation(self):
        return self.datum.classical_vector(self.normal_form[1])

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.datum == other.datum and self.normal_form == other.normal_form

    def __hash__(self):
        return hash((self.datum, self.normal_form))

    def __mul__(self, other):
        return reduce(self.datum, self.word + other.word)

    def inverse(self):
        return _from_reduced_word(self.datum, tuple(reversed(self.word)))

    def __repr__(self):
        return f'WeylElement({self.datum}, {list(self.word)})'

    def __str__(self):
        return ''.join(f'w{i}' for i in self.word) or 'id'


def _from_reduced_word(datum, word):
    matrices = reflection_matrices(datum)
    matrix = ImmutableMatrix(eye(datum.dim))
    inverse = matrix
    for i in word:
        matrix = matrix * matrices[i]
        inverse = matrices[i] * inverse
    return WeylElement(datum, tuple(word), matrix, inverse)


def identity(datum):
    return _from_reduced_word(datum, ())


def _check_word(datum, word):
    word = tuple(int(i) for i in word)
    for i in word:
        if not 1 <= i <= datum.rank + 1:
            raise InvalidWord(f'generator {i} outside 1..{datum.rank + 1}')
    return word


def apply_word(datum, word, a):
    """Image of a root under w_{word[0]} ... w_{word[-1]}"""
    for i in reversed(word):
        a = datum.reflect(a, i)
    return a


def act_on_root(w, a, datum=None):
    """w(a) for a WeylElement or a word (which then needs its datum)"""
    if isinstance(w, WeylElement):
        return apply_word(w.datum, w.word, a)
    if datum is None:
        raise ValueError('a bare word needs its Cartan datum')
    return apply_word(datum, _check_word(datum, w), a)


def act_on_coroot(w, x):
    return CorootVector(w.matrix * x.coords)


def act_on_functional(w, f):
    """(w f)(x) = f(w^{-1} x)"""
    return Functional(w.inverse_matrix.T * f.coords)


def _exchange_index(datum, letters, i):
    gamma = datum.simple_root(i)
    for j in range(len(letters) - 1, -1, -1):
        if gamma == datum.simple_root(letters[j]):
            return j
        gamma = datum.reflect(gamma, letters[j])
    raise AssertionError(f'no exchange position for w{i} after {letters}')


def reduce(datum, word):
    """
    Reduced word for the product of the given generators.

    Rebuilds left to right: w_i is appended when the current element sends
    alpha_i to a positive root, otherwise the exchange condition deletes one
    earlier letter.
    """
    letters = []
    for i in _check_word(datum, word):
        if apply_word(datum, letters, datum.simple_root(i)).is_positive:
            letters.append(i)
        else:
            del letters[_exchange_index(datum, letters, i)]
    return _from_reduced_word(datum, tuple(letters))


def from_matrix(datum, matrix):
    """Element with the given action on coroots, found by descent"""
    matrices = reflection_matrices(datum)
    current = ImmutableMatrix(matrix)
    target = ImmutableMatrix(eye(datum.dim))
    letters = []
    while current != target:
        if len(letters) > MAX_DESCENT_STEPS:
            raise ValueError('matrix does not come from the affine Weyl group')
        for i in range(1, datum.rank + 2):
            image = CorootVector(current * datum.simple_coroot(i).coords)
            if not is_positive_coroot(datum, image):
                current = current * matrices[i]
                letters.append(i)
                break
        else:
            raise ValueError('matrix does not come from the affine Weyl group')
    return reduce(datum, tuple(reversed(letters)))


def inversion_set(w, form='beta'):
    """
    beta_j = w_{i_r} ... w_{i_{j+1}} alpha_{i_j}, the positive roots sent
    negative by w^{-1}; with form='gamma', gamma_j = w_{i_1} ... w_{i_{j-1}} alpha_{i_j},
    the positive roots sent negative by w. Both are listed for j = 1..r.
    """
    datum = w.datum
    seq = tuple(reversed(w.word))  # seq[j - 1] = i_j
    roots = []
    for j, i in enumerate(seq):
        alpha = datum.simple_root(i)
        if form == 'beta':
            roots.append(apply_word(datum, tuple(reversed(seq[j + 1:])), alpha))
        elif form == 'gamma':
            roots.append(apply_word(datum, seq[:j], alpha))
        else:
            raise ValueError(f'unknown inversion set form {form!r}')
    return roots


def _positive_real_roots(datum, max_n):
    for beta in datum.positive_roots:
        yield AffineRoot(beta, 0)
    for n in range(1, max_n + 1):
        for beta in datum.positive_roots:
            yield AffineRoot(beta, n)
            yield AffineRoot(tuple(-x for x in beta), n)


def brute_force_inversion_set(w, inverse=False):
    """Scan of positive real roots a with w^{-1}(a) < 0 (or w(a) < 0 when inverse)"""
    word = w.word if inverse else tuple(reversed(w.word))
    bound = 2 * w.length + 1
    return {a for a in _positive_real_roots(w.datum, bound) if not apply_word(w.datum, word, a).is_positive}


def translation_matrix(datum, h):
    """Matrix of T_H on coroot coordinates"""
    rank = datum.rank
    h_col = ImmutableMatrix(list(h.classical))
    pairing = datum.form * h_col  # (e_k, H) for each classical e_k
    half_norm = (h_col.T * datum.form * h_col)[0] / 2
    m = zeros(datum.dim, datum.dim)
    for k in range(rank):
        m[k, k] = 1
        m[rank, k] = pairing[k]
    m[rank, rank] = 1
    for k in range(rank):
        m[k, rank + 1] = -h_col[k]
    m[rank, rank + 1] = -half_norm
    m[rank + 1, rank + 1] = 1
    return ImmutableMatrix(m)


def translation_action(h, x, datum):
    """
    T_H(x) for classical integral H: classical h' goes to h' + (h', H)c,
    c is fixed and D goes to D - H - ((H, H)/2)c.
    """
    if any(value != 0 for value in (h.c, h.d)):
        raise ValueError(f'{h} is not classical')
    classical = datum.classical_vector(x.classical)
    image = classical + datum.c * (datum.bilinear(classical, h) + x.c)
    return image + (datum.D - h - datum.c * (datum.bilinear(h, h) / 2)) * x.d


def translation_element(datum, h):
    return from_matrix(datum, translation_matrix(datum, h))


def _extend_classical(datum, classical):
    m = eye(datum.dim)
    m[: datum.rank, : datum.rank] = classical
    return ImmutableMatrix(m)


def decompose(w):
    """(w_1, H) with w^{-1} = w_1 T_H, w_1 in the finite Weyl group"""
    classical, h = w.normal_form
    w1 = from_matrix(w.datum, _extend_classical(w.datum, classical))
    return w1, w.datum.classical_vector(h)


def recompose(w1, h):
    """The element w with w^{-1} = w_1 T_H"""
    datum = w1.datum
    inverse = w1.matrix * translation_matrix(datum, h)
    return from_matrix(datum, inverse.inv())


def shifted_action(w, chi):
    """w o chi = w(chi + rho) - rho"""
    datum = w.datum
    image = act_on_functional(w, chi.shifted(datum)) - datum.rho
    return Character.from_functional(datum, image)


def _lengthening(datum, word):
    """Generators i with l(w w_i) = l(w) + 1"""
    for i in range(1, datum.rank + 2):
        if apply_word(datum, word, datum.simple_root(i)).is_positive:
            yield i


def enumerate_elements(datum, max_length):
    """
    Every element of length <= max_length exactly once, sorted by length
    and then by its lexicographically least reduced word.
    """
    if max_length < 0:
        raise ValueError('max_length must be nonnegative')
    shell = {identity(datum).normal_form: ()}
    found = [()]
    for length in range(1, max_length + 1):
        candidates = {}
        for word in sorted(shell.values()):
            for i in _lengthening(datum, word):
                candidate = word + (i,)
                element = _from_reduced_word(datum, candidate)
                key = element.normal_form
                if key not in candidates or candidate < candidates[key]:
                    candidates[key] = candidate
        shell = candidates
        found.extend(sorted(shell.values()))
        logger.debug('%s: %d elements of length %d', datum, len(shell), length)
    return [_from_reduced_word(datum, word) for word in found]
