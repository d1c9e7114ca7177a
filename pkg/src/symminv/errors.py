"""Exception types raised across the package."""


class SymminvError(Exception):
    """Base class for all package-specific errors."""


class NotSymmetric(SymminvError):
    """Amplitudes of equal Hamming weight disagree beyond tolerance."""


class ZeroPolynomial(SymminvError):
    """All Majorana coefficients vanish; the state direction is undefined."""


class DegenerateRoot(SymminvError):
    """A Majorana root of multiplicity 2 blocks the two-cube decomposition."""


class ProductState(SymminvError):
    """The state is a single spinor cube (triple Majorana root)."""


class EigenFailure(SymminvError):
    """Eigenvalue computation did not converge; numerical pathology."""


class NonRealResult(SymminvError):
    """A contraction that must be real returned a large imaginary part."""


class AsymmetricState(SymminvError):
    """Pairwise concurrences disagree beyond tolerance on a supposedly symmetric state."""


class OutOfRegion(SymminvError):
    """Invariant triple lies outside the achievable region."""


class EmptySlice(SymminvError):
    """No region points exist at the requested fixed coordinate value."""


class ParseError(SymminvError):
    """Malformed command-line state specification or triple."""
