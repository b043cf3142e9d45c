"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ParameterError -> 2,
FormulaDomainError -> 3, PrecisionError -> 4.
"""


class DormantDegreeError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(DormantDegreeError, ValueError):
    """Inputs outside the domain of a formula (non-prime p, r > n, ...)."""


class ConductorMismatchError(ParameterError):
    """Mixed cyclotomic fields in a single operation."""


class EnumerationCapError(ParameterError):
    """A brute-force enumeration was refused because it exceeds its cap."""


class FormulaDomainError(DormantDegreeError, ArithmeticError):
    """The formula is not defined as written (e.g. non-integral sign exponent)."""


class IrrationalityError(FormulaDomainError):
    """A value that must be rational by symmetry turned out not to be.

    Reaching this from a symmetric root-of-unity sum signals a bug, not a
    property of the inputs.
    """


class PrecisionError(DormantDegreeError, ArithmeticError):
    """The certified error bound is too wide to isolate a unique result."""
