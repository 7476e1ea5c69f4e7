"""Exception types shared across the package."""


class OrthomodError(Exception):
    """Base class for every error raised by this package."""


class IndeterminatePrecision(OrthomodError):
    """Certified interval evaluation hit the precision cap without separating."""


class SingularGram(OrthomodError):
    """The Gram matrix is singular where a nondegenerate lattice is required."""


class ZeroVector(OrthomodError):
    """A nonzero lattice vector was required."""


class NotPrimitive(OrthomodError):
    """The vector is a proper multiple of a lattice vector."""


class WrongSignature(OrthomodError):
    """The lattice does not have the signature required by the operation."""


class IndexOutOfRange(OrthomodError):
    """The sublattice index |r^2|/div(r) fell outside {1, 2}."""


class UnsupportedWeight(OrthomodError):
    """Weight outside the domain of the dimension formula."""


class NonEvenWeight(OrthomodError):
    """Exact L-value evaluation is implemented for even weights only."""


class PiResidueError(OrthomodError):
    """The symbolic pi powers failed to cancel; indicates an internal bug."""


class WOutOfRange(OrthomodError):
    """The auxiliary exponent w is outside the admissible range."""


class UnsupportedIndex(OrthomodError):
    """Index d outside the domain of the requested branch-term formula."""
