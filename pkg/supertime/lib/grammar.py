import functools

from lark import Lark

#: infix syntax with explicit ``*``; unary minus binds tighter than ``*`` and ``/``
EXPRESSION_GRAMMAR = r"""
?expr: sum

matrix: "[" row "," row "," row "]"
row: "[" sum "," sum "," sum "]"

bindings: binding ("," binding)*
binding: NAME "=" sum

?sum: product
    | sum "+" product -> add
    | sum "-" product -> sub

?product: unary
    | product "*" unary -> mul
    | product "/" unary -> div

?unary: power
    | "-" unary -> neg

?power: atom
    | atom "^" INT -> pow

?atom: INT -> number
    | NAME -> name
    | "(" sum ")"

NAME: /[A-Za-z][A-Za-z0-9_]*'*/
INT: /[0-9]+/

%import common.WS
%ignore WS
"""

STARTS = ("expr", "matrix", "bindings")


@functools.lru_cache(maxsize=None)
def expression_parser(start: str = "expr") -> Lark:
    """
    :param start: One of :data:`STARTS`.
    :return: A LALR parser for the rule ``start``.
    """
    return Lark(EXPRESSION_GRAMMAR, parser="lalr", start=start)
