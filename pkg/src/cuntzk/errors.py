"""Exception hierarchy shared by all cuntzk modules.

Every error carries enough data (a witnessing triple, element, column, ...)
to reproduce the failure without re-running the computation.
"""


class CuntzkError(Exception):
    """Base class for all cuntzk errors."""


class ValidationError(CuntzkError):
    """Input data violates a structural invariant."""


class NotAssociative(ValidationError):
    def __init__(self, a, b, c):
        self.triple = (a, b, c)
        super().__init__(f"multiplication table is not associative at ({a}, {b}, {c})")


class NoIdentity(ValidationError):
    def __init__(self):
        super().__init__("multiplication table has no two-sided identity")


class MissingInverse(ValidationError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class UnsupportedParameter(ValidationError):
    pass


class UnknownIrrep(ValidationError):
    pass


class TableMismatch(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class DimensionTooSmall(ValidationError):
    pass


class ParseError(CuntzkError):
    pass


class NotFaithful(CuntzkError):
    """A fixed-point computation was requested outside its hypothesis."""


class InternalInvariantError(CuntzkError):
    """An identity the theory guarantees failed numerically."""


class IntegralityViolation(InternalInvariantError):
    def __init__(self, value, context=""):
        self.value = value
        msg = f"value {value!r} is not an integer within tolerance"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class DegenerateEigenvectors(InternalInvariantError):
    def __init__(self, retries):
        self.retries = retries
        super().__init__(
            f"class-sum eigenvalues stayed degenerate after {retries} reseeded retries"
        )


class MatricesUnavailable(CuntzkError):
    pass


class ValidationFailed(ValidationError):
    """Supplied representation matrices violate an invariant."""


class NotInvariant(InternalInvariantError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"endomorphism does not preserve the lattice (column {column})")
