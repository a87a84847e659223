from fractions import Fraction

import pytest

from supertime.actions import VierbeinParams
from supertime.errors import (
    DivisionByZero,
    ExprSyntaxError,
    GradingMismatch,
    ParityMismatch,
    UnknownSymbol,
    ZeroBody,
)
from supertime.grassmann import THETA, THETABAR, default_session
from supertime.parser import (
    parse_bindings,
    parse_expr,
    parse_matrix,
    parse_vierbein,
    print_expr,
)
from supertime.supermatrix import SuperMatrix

GENERIC = "[[E_a, E_alpha, E_beta], [E_gamma, E_b, E_c], [E_delta, E_d, E_e]]"


@pytest.fixture
def session():
    return default_session()


def test_parse_expr(session):
    theta, thetabar = session.odd(THETA), session.odd(THETABAR)
    assert parse_expr("1 + theta*thetabar") == session.one + theta * thetabar
    assert parse_expr("x^2 - 1") == session.even("x") ** 2 - 1
    assert parse_expr("-x^2") == -(session.even("x") ** 2)
    assert parse_expr("i*i") == -1
    assert parse_expr("sqrt2*sqrt2/2") == 1
    assert parse_expr("thetabar*theta") == -(theta * thetabar)


def test_division(session):
    assert parse_expr("x/2") == session.even("x") * Fraction(1, 2)
    inverse = parse_expr("1/(2 + theta*thetabar)")
    assert inverse * (session.scalar(2) + session.word(THETA, THETABAR)) == 1
    with pytest.raises(DivisionByZero):
        parse_expr("1/0")
    with pytest.raises(ZeroBody):
        parse_expr("1/(theta*thetabar)")


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        parse_expr("foo + 1")


@pytest.mark.parametrize(
    "src, line, column",
    [
        ("1 +", 1, 4),
        ("1 + * 2", 1, 5),
        ("1 +\n  $", 2, 3),
        ("(x", 1, 3),
    ],
)
def test_syntax_error_position(src, line, column):
    with pytest.raises(ExprSyntaxError) as error:
        parse_expr(src)
    assert (error.value.line, error.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(error.value)


def test_parse_matrix(session):
    matrix = parse_matrix("[[1, 0, 0], [0, 1, 0], [0, 0, 1]]")
    assert matrix == SuperMatrix.identity(session)
    with pytest.raises(GradingMismatch):
        parse_matrix("[[theta, 0, 0], [0, 1, 0], [0, 0, 1]]")


def test_parse_vierbein(session):
    generic = parse_vierbein(GENERIC)
    assert generic == VierbeinParams.generic(session)
    identity = parse_vierbein("[[1, 0, 0], [0, 1, 0], [0, 0, 1]]")
    assert identity == VierbeinParams.identity(session)


def test_parse_vierbein_keeps_ghost_generator(session):
    frame = parse_vierbein("[[1, 0, 0], [0, 1, 0], [c, 0, 1]]")
    assert frame.delta == session.odd("c")
    assert frame.c == 0
    with pytest.raises(UnknownSymbol):
        parse_vierbein("[[a, 0, 0], [0, 1, 0], [0, 0, 1]]")


def test_parse_vierbein_names_slot():
    with pytest.raises(ParityMismatch) as error:
        parse_vierbein("[[1, E_a, 0], [0, 1, 0], [0, 0, 1]]")
    assert "(alpha)" in str(error.value)


def test_parse_bindings(session):
    bindings = parse_bindings("eps = 1/2, hbar = 3")
    assert bindings == {
        "eps": session.scalars.const(Fraction(1, 2)),
        "hbar": session.scalars.const(3),
    }
    with pytest.raises(ParityMismatch):
        parse_bindings("eps = theta")


@pytest.mark.parametrize(
    "src",
    [
        "0",
        "x^2/(x + 1)",
        "-1/2*theta + i*thetabar*theta*lambda",
        "(eps - 1)*c*cbar + sqrt2",
        "x/(hbar + 1)*theta - x'",
    ],
)
def test_print_round_trip(src):
    value = parse_expr(src)
    assert parse_expr(print_expr(value)) == value


def test_print_matrix_round_trip(session):
    matrix = parse_matrix(
        "[[1 + x*thetabar*theta, theta, 0], [0, 2, 0], [eps*c, 0, 1]]"
    )
    assert parse_matrix(print_expr(matrix)) == matrix
