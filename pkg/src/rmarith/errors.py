"""Exception hierarchy shared by all rmarith modules."""


class RmarithError(Exception):
    """Base class for every error raised by this library."""


class NonPrimitiveForm(RmarithError):
    """The quadratic form has gcd(a, b, c) > 1."""


class SquareDiscriminant(RmarithError):
    """The discriminant is zero or a perfect square (degenerate form)."""


class InvalidDiscriminant(RmarithError):
    """Not a discriminant of a quadratic order (must be 0 or 1 mod 4, non-square)."""


class DiscriminantMismatch(RmarithError):
    """Composition requires both forms to share one discriminant."""


class NonCyclicTwoPart(RmarithError):
    """The 2-Sylow subgroup of the class group is not cyclic."""


class CountExceedsFiniteExpansion(RmarithError):
    """More convergents requested than a finite continued fraction has."""


class NotEventuallyPeriodic(RmarithError):
    """A periodic continued fraction is required (rational input given)."""


class SearchLimitExceeded(RmarithError):
    """Conductor scan exhausted its range without a match."""

    def __init__(self, target: int, limit: int):
        self.target = target
        self.limit = limit
        super().__init__(
            f"no conductor f' in 1..{limit} reaches class number {target}"
        )


class ReducibleCharPoly(RmarithError):
    """Characteristic polynomial factors over Q; eigenvalue is not quadratic."""


class NotPrimitive(RmarithError):
    """Matrix is not primitive (no power is entrywise positive)."""


class BoundTooSmall(RmarithError):
    """No matrix with the requested characteristic polynomial fits the entry bound."""


class OutOfDomain(RmarithError):
    """Argument lies outside the function's domain."""
