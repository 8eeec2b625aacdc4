"""
Modul s pojmenovanými výjimkami knihovny.

Každá výjimka nese strojově čitelný kód `code`, který CLI vypisuje na
diagnostický výstup. Třídy zároveň dědí od nejbližší vestavěné výjimky,
takže je lze zachytit i jako ValueError / ZeroDivisionError.
"""


class AlgebraError(Exception):
    """Společný předek všech chyb knihovny."""

    code = "algebra_error"


class FieldError(AlgebraError, ValueError):
    code = "field_error"


class DivisionByZero(AlgebraError, ZeroDivisionError):
    code = "division_by_zero"


class FieldMismatch(AlgebraError, ValueError):
    code = "field_mismatch"


class OwnerMismatch(AlgebraError, ValueError):
    code = "owner_mismatch"


class ParseError(AlgebraError, ValueError):
    code = "parse_error"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (pozice {position})"
        super().__init__(message)
        self.position = position


class UnknownGenerator(ParseError):
    code = "unknown_generator"


class ResourceBound(AlgebraError, ValueError):
    code = "resource_bound"


class MalformedTransform(AlgebraError, ValueError):
    code = "malformed_transform"


class TooManyRelators(AlgebraError, ValueError):
    code = "too_many_relators"


class HypothesisFailed(AlgebraError, ValueError):
    code = "hypothesis_failed"


class NotInIdeal(AlgebraError, ValueError):
    code = "not_in_ideal"


class SpanningFailure(AlgebraError, ValueError):
    code = "spanning_failure"


class PreconditionFailed(AlgebraError, ValueError):
    code = "precondition_failed"


class NotAnIdeal(AlgebraError, ValueError):
    code = "not_an_ideal"


class NotALieElement(AlgebraError, ArithmeticError):
    code = "not_a_lie_element"


class IterationBoundExceeded(AlgebraError, ArithmeticError):
    code = "iteration_bound_exceeded"

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound
