"""Errors raised by the constant-term library.

Every error derives from ConstantTermError so callers (the management
commands in particular) can separate domain failures from programming errors.
"""


class ConstantTermError(Exception):
    """Base class for all library errors"""


class UnsupportedType(ConstantTermError, ValueError):
    """Finite type or rank with no Cartan data"""


class DimensionMismatch(ConstantTermError, ValueError):
    """Vectors, characters or place data of the wrong length"""


class ImaginaryRoot(ConstantTermError, ValueError):
    """A coroot was requested for an imaginary root"""


class InvalidLPolynomial(ConstantTermError, ValueError):
    """L-polynomial coefficients violating L(0) = 1 or the functional equation"""


class DomainError(ConstantTermError, ValueError):
    """Argument outside the region where a formula converges"""


class RegionViolation(ConstantTermError, ValueError):
    """Character outside the dominant-negative or meromorphy region"""


class DivisionByZero(ConstantTermError, ZeroDivisionError):
    pass


class IncompatibleExponent(ConstantTermError, ArithmeticError):
    """Addition of q-scaled values with different fractional exponents"""


class NonIntegralExponent(ConstantTermError, ArithmeticError):
    """A zeta argument that is not an integer in exact mode"""


class PoleAtQ0(ConstantTermError, ZeroDivisionError):
    """A rational function evaluated at a root of its denominator"""

    def __init__(self, q0):
        self.q0 = q0
        super().__init__(f'denominator vanishes at q = {q0}')


class ZetaPole(ConstantTermError, ArithmeticError):
    """Zeta evaluated at a pole, optionally attributed to an inversion root"""

    def __init__(self, argument, root=None):
        self.argument = argument
        self.root = root
        message = f'zeta has a pole at s = {argument}'
        if root is not None:
            message += f' (root {root})'
        super().__init__(message)


class PrecisionExhausted(ConstantTermError, ArithmeticError):
    """Retained Laurent-series terms do not determine the requested valuation"""


class EnumerationTooLarge(ConstantTermError, ValueError):
    pass


class InductionMismatch(ConstantTermError, AssertionError):
    """The inductive local product disagrees with the closed form"""


class RelaxedHypothesisWarning(UserWarning):
    """Local integral evaluated for -2 <= kappa < -1, where it converges but the usual hypothesis kappa < -2 fails"""


class InvalidWord(ConstantTermError, ValueError):
    """Generator index outside 1..l+1"""
