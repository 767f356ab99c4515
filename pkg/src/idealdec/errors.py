"""Exception taxonomy shared across the package."""


class IdealDecError(Exception):
    """Base class for all package-specific errors."""


# -- coefficient arithmetic ------------------------------------------------

class ZeroInverse(IdealDecError):
    """Inverse of zero requested in a prime field."""


class RingMismatch(IdealDecError):
    """Operands live over different coefficient rings."""


class ConstantPolynomial(IdealDecError):
    """Operation needs positive degree (e.g. discriminant of a constant)."""


class CharacteristicTooSmall(IdealDecError):
    """Squarefree decomposition needs char 0 or p > deg f."""


# -- multivariate polynomials ----------------------------------------------

class ZeroPolynomial(IdealDecError):
    """Leading monomial of the zero polynomial requested."""


class SingularMatrix(IdealDecError):
    """Coordinate change matrix is not invertible."""


class DegreeZeroInVariable(IdealDecError):
    """Resultant requested in a variable the polynomial does not contain."""


class SizeTooLarge(IdealDecError):
    """Minor size exceeds the Jacobian matrix dimensions."""


# -- Groebner engine ---------------------------------------------------------

class BudgetExceeded(IdealDecError):
    """Basis size or degree cap hit during a Groebner computation."""


class ZeroDivisor(IdealDecError):
    """Colon ideal by the zero polynomial."""


class GroebnerAuditError(IdealDecError):
    """A computed basis failed the S-polynomial / membership audit."""


# -- Hilbert machinery -------------------------------------------------------

class OrderNotDegreeCompatible(IdealDecError):
    """Initial ideal for Hilbert data needs a degree compatible order."""


class NonDivisible(IdealDecError):
    """Degree ratio for a multiplicity is not an integer."""


class StabilizationFailed(IdealDecError):
    """Hilbert function values did not become polynomial below the cap."""


# -- factorization ------------------------------------------------------------

class UnluckySpecialization(IdealDecError):
    """No shift kept the bivariate specialization squarefree of full degree."""


# -- modular reduction --------------------------------------------------------

class NoAdmissiblePrime(IdealDecError):
    """No divisor of d(0) satisfies the prime selection conditions."""


class BadPrime(IdealDecError):
    """Reduction mod p is undefined or kills a generator."""


class InvalidPrimeOverride(IdealDecError):
    """A user-forced prime violates the selection conditions."""


# -- pipeline -----------------------------------------------------------------

class UnsupportedDimension(IdealDecError):
    """The pipeline only handles equidimensional curves (c = 1)."""


class RetryExhausted(IdealDecError):
    """Las Vegas budget spent without a consistent decomposition."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = tuple(trace or ())


class PartitionIncomplete(IdealDecError):
    """Modular factor specializations do not multiply back to d mod p."""


class NoMatch(IdealDecError):
    """No tuple of modular factors passed the section dimension test."""


class NoUsableMinor(IdealDecError):
    """Every Jacobian minor was zero mod p or broke the colon dimension."""


# -- CLI ------------------------------------------------------------------------

class ParseError(IdealDecError):
    """Ideal file rejected; carries 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
