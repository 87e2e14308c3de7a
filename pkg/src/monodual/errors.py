"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """Index or level outside the representable range."""


class DepthError(DomainError):
    """Recursion level beyond the configured resource limit."""


class InvalidPatchError(ValueError):
    """Operation requires a patch that passes the matching validator."""


class AmbiguousAssemblyError(ValueError):
    """Tile assembly of a claimed-complete patch is not uniquely forced."""


class SlopeMismatchError(ValueError):
    """Continued fractions fail the complementary-slope precondition."""
