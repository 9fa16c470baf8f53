"""Exception types shared across the kernel.

Every structured failure raised by this package derives from KernelError so
the CLI can map library errors to exit codes without enumerating modules.
"""


class KernelError(Exception):
    """Base class for structured failures raised by this package."""


class NonDivisible(KernelError):
    """Exact polynomial division was requested but no quotient exists."""


class LevelMismatch(KernelError):
    """Operands are specialized at different hbar values."""


class DimensionMismatch(KernelError):
    """Vector or exponent length does not match the expected variable count."""


class UnsupportedType(KernelError):
    """Root-datum specification string is malformed or names an unsupported series."""


class NotSimpleAffineRoot(KernelError):
    """Affine simple root index out of range for the datum."""


class DatumMismatch(KernelError):
    """Operands were built over different root data."""


class DenominatorNotCleared(KernelError):
    """A localized element acted on a polynomial but denominators did not cancel."""


class DenominatorVanishes(KernelError):
    """hbar specialization at 0 was requested on an element with denominators."""


class IntegralParameter(KernelError):
    """Operation requires a non-integral infinitesimal character."""


class ZeroScalar(KernelError):
    """A localized denominator acts by zero at this parameter."""


class NotDominant(KernelError):
    """Weight is not dominant."""


class NotWInvariant(KernelError):
    """Element is not Weyl-invariant."""


class WindowTooSmall(KernelError):
    """Requested regrade output is not determined by the input window."""


class NotExact(KernelError):
    """A complex failed an exactness certificate; carries a degree witness."""


class InconsistentWindow(KernelError):
    """Window data violates the invariants of its declared construction."""


class UnsupportedGroup(KernelError):
    """Group name outside the supported desk-scale list."""


class BadCoefficients(KernelError):
    """Characteristic-polynomial coefficients violate the group constraint."""


class NotInvertible(KernelError):
    """Matrix is singular where a group element is required."""


class ComponentMissesBigCell(KernelError):
    """A centralizer component admitted no big-cell witness."""
