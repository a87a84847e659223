class SupertimeError(Exception):
    pass


class DivisionByZero(SupertimeError, ZeroDivisionError):
    pass


class PoleAtSubstitution(SupertimeError):
    pass


class ZeroBody(SupertimeError):
    pass


class SingularOddBlock(ZeroBody):
    pass


class SingularBlock(ZeroBody):
    pass


class SingularMetric(ZeroBody):
    pass


class GradingMismatch(SupertimeError):
    pass


class ParityMismatch(SupertimeError):
    pass


class NotGradedSymmetric(SupertimeError):
    pass


class NotFirstOrder(SupertimeError):
    pass


class RankDeficient(SupertimeError):
    pass


class UnknownSymbol(SupertimeError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class SessionMismatch(SupertimeError):
    pass


class SectionNotFoundError(SupertimeError):
    pass


class ExprSyntaxError(SupertimeError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
