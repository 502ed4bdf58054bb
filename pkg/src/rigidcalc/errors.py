"""Exception types shared across the library.

Everything raised on purpose derives from RigidCalcError, so callers (and the
command line front end) can separate "bad input" from genuine bugs.
"""


class RigidCalcError(Exception):
    """Base class for all errors raised by rigidcalc."""


# -- cyclotomic arithmetic ---------------------------------------------------

class InvalidOrder(RigidCalcError):
    """A cyclotomic order N < 1 was requested."""


class NotAnEmbedding(RigidCalcError):
    """zeta -> exp(2*pi*i*a/N) requires gcd(a, N) = 1."""


# -- linear algebra ----------------------------------------------------------

class SingularMatrix(RigidCalcError):
    """A matrix that must be invertible is not."""


class DimensionMismatch(RigidCalcError):
    """Matrix shapes are incompatible with the requested operation."""


# -- monodromy tuples --------------------------------------------------------

class DuplicatePuncture(RigidCalcError):
    """Finite punctures of a tuple must be pairwise distinct."""


class UnknownPuncture(RigidCalcError):
    """The requested point is not a puncture of the tuple."""


class NotQuasiUnipotent(RigidCalcError):
    """Some eigenvalue is not an N-th root of unity; try a larger N."""


# -- twists and middle convolution -------------------------------------------

class ZeroScalar(RigidCalcError):
    """Rank-one local data must consist of nonzero scalars."""


class PunctureMismatch(RigidCalcError):
    """Rank-one twist data does not match the tuple's punctures."""


class ZeroLambda(RigidCalcError):
    """Middle convolution is undefined for lambda = 0."""


class NegativeIndex(RigidCalcError):
    """The recursive family is indexed by i >= 0."""


class NotRigid(RigidCalcError):
    """Rank reduction requires rigidity index 2."""


class NotIrreducible(RigidCalcError):
    """Rank reduction requires an absolutely irreducible tuple."""


class AlreadyRankOne(RigidCalcError):
    """A reduction step was requested on a rank-one tuple."""


class NoProgress(RigidCalcError):
    """A reduction step failed to decrease the rank (convention bug)."""


# -- hypergeometric construction ---------------------------------------------

class EmptyParameters(RigidCalcError):
    """Hypergeometric parameter lists must be nonempty."""


class NotRootOfUnity(RigidCalcError):
    """A parameter is not a root of unity of order dividing N."""


class EmptySupport(RigidCalcError):
    """A multiplicity function needs nonempty support."""


# -- Weil polynomial checks --------------------------------------------------

class ZeroConstantTerm(RigidCalcError):
    """Q(0) = 0 makes the functional equation undefined."""


class RootFindingFailure(RigidCalcError):
    """Root refinement did not certify within the precision cap."""


# -- serialization -----------------------------------------------------------

class SchemaError(RigidCalcError):
    """A JSON document does not match the expected schema."""
