import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.lark import from_lark

from supertime.errors import DivisionByZero, ZeroBody
from supertime.lib.grammar import STARTS, expression_parser
from supertime.parser import parse_expr, print_expr

NAMES = ["x", "eps", "hbar", "theta", "thetabar", "c", "i", "sqrt2"]

expressions = from_lark(
    expression_parser("expr"),
    start="expr",
    explicit={
        "NAME": st.sampled_from(NAMES),
        "INT": st.integers(min_value=0, max_value=3).map(str),
    },
)


@pytest.mark.parametrize("start", STARTS)
def test_parser_per_start(start):
    assert expression_parser(start) is expression_parser(start)


def test_precedence():
    tree = expression_parser("expr").parse("-x^2*y")
    assert tree.data == "mul"
    assert tree.children[0].data == "neg"
    assert tree.children[0].children[0].data == "pow"


@settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
@given(expressions)
def test_printed_expressions_parse_back(src):
    try:
        value = parse_expr(src)
    except (DivisionByZero, ZeroBody):
        assume(False)
    assert parse_expr(print_expr(value)) == value
