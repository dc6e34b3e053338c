"""Exception types shared across the package."""


class SolutionFormatError(ValueError):
    """A solution document is malformed or has out-of-range indices."""


class PreconditionError(ValueError):
    """An input violates an axiom the operation relies on."""


class TruncationError(ValueError):
    """A request exceeds the degree through which a Groebner basis is certified."""


class OracleSizeError(ValueError):
    """The brute-force quotient oracle would need too many words."""


class IdentityViolation(RuntimeError):
    """A counting or dimension identity that must hold failed.

    Seeing this means a bug in the construction, not bad input.
    """
