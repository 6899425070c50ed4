"""Error types shared across the library.

Each error carries a stable machine-readable ``code`` used in CLI reports and
mapped onto exit codes (input errors 2, conditioning 3, numerical 4).
"""


class HolonomyForgeError(Exception):
    code = "error"


class DimensionError(HolonomyForgeError, ValueError):
    """Shape, size, or malformed-input problems."""

    code = "dimension"


class NotInAlgebraError(HolonomyForgeError, ValueError):
    """Matrix is not anti-Hermitian with respect to the indefinite form."""

    code = "not_in_algebra"


class TrivialInputError(HolonomyForgeError, ValueError):
    """The defining matrix is zero; the construction needs a nontrivial input."""

    code = "trivial_X"


class NotApplicableError(HolonomyForgeError, ValueError):
    """Operation requires structure the input does not have."""

    code = "not_applicable"


class IllConditionedError(HolonomyForgeError, ArithmeticError):
    """Grouped singular-value system too ill-conditioned to invert reliably."""

    code = "ill_conditioned"


class NumericalError(HolonomyForgeError, ArithmeticError):
    """Quadrature or ODE integration failed to converge, or values overflowed."""

    code = "numerical"


class OrientationWarning(UserWarning):
    """Curve traversed clockwise (negative signed area)."""
