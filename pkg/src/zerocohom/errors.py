"""Exception types shared across the package.

Every error that carries a witness stores it on the exception object so
callers (and tests) can inspect the offending element/pair/triple instead
of parsing the message.
"""


class ZerocohomError(Exception):
    """Base class for all errors raised by this package."""


class TableError(ZerocohomError):
    """Malformed multiplication table input (shape, range, names)."""


class DuplicateName(TableError):
    pass


class AssociativityError(ZerocohomError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"associativity fails at {witness}")


class ZeroError(ZerocohomError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"declared zero is not absorbing, witness {witness}")


class NotAnIdeal(ZerocohomError):
    def __init__(self, witness=None):
        self.witness = witness
        super().__init__(f"subset is not a two-sided ideal (witness {witness})")


class MissingZero(ZerocohomError):
    pass


class NoZero(MissingZero):
    pass


class NotAGroup(ZerocohomError):
    pass


class DegenerateSandwich(ZerocohomError):
    pass


class NotMonoidWithZero(ZerocohomError):
    pass


class PresentationSyntaxError(ZerocohomError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownGenerator(PresentationSyntaxError):
    pass


class GeneratorIsZero(ZerocohomError):
    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"generator {generator!r} equals zero in the presented semigroup")


class NotAComplex(ZerocohomError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"composite map is nonzero on generator {witness}")


class InvalidModule(ZerocohomError):
    def __init__(self, witness=None, message="module axioms violated"):
        self.witness = witness
        super().__init__(f"{message} (witness {witness})")


class InvalidLabeling(ZerocohomError):
    pass


class NotIdempotent(ZerocohomError):
    pass


class DegreeMismatch(ZerocohomError):
    pass


class CapExceeded(ZerocohomError):
    pass


class FunctorialityError(ZerocohomError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"functoriality fails at {witness}")


class DivisionUndefined(ZerocohomError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"denominator vanishes while numerator does not, at {witness}")


class UncertifiedInput(ZerocohomError):
    pass
