import builtins
from typing import Any, NoReturn


class Exception(builtins.Exception):
    pass


class InternalException(Exception):
    pass


class OracleMismatchException(InternalException):
    """A fast algorithm and its brute-force oracle disagree."""

    def __init__(self, what: str, fast: Any, oracle: Any):
        self.what = what
        self.fast = fast
        self.oracle = oracle
        super().__init__(
            "{} disagrees with its oracle:\n  computed: {}\n  oracle:   {}".format(
                what, fast, oracle
            )
        )


class RuntimeException(RuntimeError, Exception):
    def __init__(self, msg: str):
        self.msg = msg

    @property
    def type(self) -> str:
        return "Runtime"

    def __str__(self) -> str:
        lines = str(self.msg).strip().split("\n")
        return "{} Error\n".format(self.type) + "\n".join(
            "  " + line for line in lines
        )


class ValidationException(RuntimeException):
    @property
    def type(self) -> str:
        return "Validation"


class ParsingException(ValidationException):
    @property
    def type(self) -> str:
        return "Parsing"


class PreconditionException(RuntimeException):
    @property
    def type(self) -> str:
        return "Precondition"


class NotAFacetException(PreconditionException):
    def __init__(self, facet: Any):
        self.facet = facet
        super().__init__("{} is not a facet of the complex".format(facet))


class GuardException(PreconditionException):
    """An exponential search was refused because its input is too large."""

    def __init__(self, what: str, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(
            "{} needs size {}, above the limit of {}; raise --max-facets to "
            "run the exhaustive check anyway".format(what, size, limit)
        )


class SearchBudgetException(PreconditionException):
    def __init__(self, what: str, budget: int):
        self.budget = budget
        super().__init__(
            "{} gave up after {} search nodes; raise the search budget to keep "
            "looking".format(what, budget)
        )


def raise_parsing_error(msg: str) -> NoReturn:
    raise ParsingException(msg)


def raise_validation_error(msg: str) -> NoReturn:
    raise ValidationException(msg)


def raise_precondition_error(msg: str) -> NoReturn:
    raise PreconditionException(msg)


def raise_internal_error(msg: str) -> NoReturn:
    raise InternalException(msg)
