"""Text syntax for super numbers, graded matrices, vierbeins and bindings."""

import typing as T

from lark import Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from supertime.actions import (
    EVEN_SLOTS,
    ODD_SLOTS,
    VierbeinParams,
    even_entry,
    odd_entry,
)
from supertime.coeff_ring import IMAGINARY_UNIT, SQRT2, RatFunc
from supertime.errors import DivisionByZero, ExprSyntaxError, ParityMismatch
from supertime.grassmann import Session, SuperNumber, default_session, ginv
from supertime.lib.grammar import expression_parser
from supertime.supermatrix import SuperMatrix

#: prefix of the vierbein slot shorthands, e.g. ``E_alpha``
SHORTHAND_PREFIX = "E_"


@v_args(inline=True)
class _Lowering(Transformer):
    def __init__(
        self,
        session: Session,
        shorthands: T.Optional[T.Mapping[str, SuperNumber]] = None,
    ):
        super().__init__()
        self.session = session
        self.shorthands = shorthands or {}

    def number(self, token) -> SuperNumber:
        return self.session.scalar(int(token))

    def name(self, token) -> SuperNumber:
        name = str(token)
        session = self.session
        if name in self.shorthands:
            return self.shorthands[name]
        if name == IMAGINARY_UNIT:
            return session.scalar(session.scalars.i)
        if name == SQRT2:
            return session.scalar(session.scalars.sqrt2)
        if name in session:
            return session.odd(name)
        return session.even(name)

    def add(self, left, right):
        return left + right

    def sub(self, left, right):
        return left - right

    def mul(self, left, right):
        return left * right

    def div(self, left, right):
        if not right:
            raise DivisionByZero("division by zero")
        if not right.soul:
            return left / right.body
        return left * ginv(right)

    def neg(self, value):
        return -value

    def pow(self, base, exponent):
        return base ** int(exponent)

    def row(self, *entries):
        return list(entries)

    def matrix(self, *rows):
        return list(rows)

    def binding(self, token, value):
        return str(token), value

    def bindings(self, *pairs):
        return dict(pairs)


def _eof_position(src: str) -> T.Tuple[int, int]:
    lines = src.split("\n")
    return len(lines), len(lines[-1]) + 1


def _parse(src: str, start: str, session: Session, shorthands=None):
    try:
        tree = expression_parser(start).parse(src)
    except UnexpectedInput as error:
        at_end = isinstance(error, UnexpectedEOF) or (
            isinstance(error, UnexpectedToken) and error.token.type == "$END"
        )
        if at_end:
            line, column = _eof_position(src)
            raise ExprSyntaxError("unexpected end of input", line, column) from None
        found = getattr(error, "token", None) or getattr(error, "char", "input")
        message = f"unexpected {str(found)!r}"
        raise ExprSyntaxError(message, error.line, error.column) from None
    try:
        return _Lowering(session, shorthands).transform(tree)
    except VisitError as error:
        raise error.orig_exc from None


def parse_expr(src: str, session: T.Optional[Session] = None) -> SuperNumber:
    """
    Parse an expression into a canonical :class:`SuperNumber`.

    ``i`` is the imaginary unit, ``sqrt2`` the square root of two, registered
    odd generators (``theta``, ``thetabar``, ``c``, ``cbar``, ...) are odd and
    every other name must be a registered even symbol.

    :raises ExprSyntaxError: With the 1-based line and column of the problem.
    :raises UnknownSymbol: For unregistered names.
    :raises ZeroBody: When dividing by an element with zero body.
    """
    return _parse(src, "expr", session or default_session())


def parse_matrix(src: str, session: T.Optional[Session] = None) -> SuperMatrix:
    """
    :raises GradingMismatch: If an entry has the wrong parity for its position.
    """
    grid = _parse(src, "matrix", session or default_session())
    return SuperMatrix(grid)


def vierbein_shorthands(session: Session) -> T.Dict[str, SuperNumber]:
    """``E_b`` stands for ``b_B + b_S*thetabar*theta``, ``E_gamma`` for
    ``gamma_th*theta + gamma_thb*thetabar`` and so on.

    The prefix keeps ``c`` free for the ghost generator."""
    shorthands = {
        SHORTHAND_PREFIX + slot: even_entry(session, slot) for slot in EVEN_SLOTS
    }
    shorthands.update(
        {SHORTHAND_PREFIX + slot: odd_entry(session, slot) for slot in ODD_SLOTS}
    )
    return shorthands


def parse_vierbein(src: str, session: T.Optional[Session] = None) -> VierbeinParams:
    """
    Parse ``[[E_a, E_alpha, E_beta], [E_gamma, E_b, E_c], [E_delta, E_d, E_e]]``.

    The slot names ``E_a``..``E_e`` and ``E_alpha``..``E_delta`` expand to their
    parametrized forms, see :func:`vierbein_shorthands`.

    :raises ParityMismatch: Naming the offending slot.
    """
    session = session or default_session()
    grid = _parse(src, "matrix", session, vierbein_shorthands(session))
    return VierbeinParams.from_matrix(grid)


def parse_bindings(
    src: str, session: T.Optional[Session] = None
) -> T.Dict[str, RatFunc]:
    """
    Parse ``name = value, ...`` into scalar bindings.

    :raises ParityMismatch: If a value contains odd generators.
    """
    result = {}
    for name, value in _parse(src, "bindings", session or default_session()).items():
        if value.soul:
            raise ParityMismatch(f"binding {name!r} must be a scalar, got {value}")
        result[name] = value.body
    return result


def print_expr(value: T.Union[SuperNumber, SuperMatrix, RatFunc]) -> str:
    """Plain text that :func:`parse_expr` (or :func:`parse_matrix`) reads back."""
    return value.to_text()
