"""Functions on supertime, field jets and first-order super-differential operators."""

import typing as T
from fractions import Fraction

from supertime.coeff_ring import POTENTIAL_SYMBOLS, RatFunc
from supertime.errors import NotFirstOrder, ParityMismatch, UnknownSymbol
from supertime.grassmann import (
    THETA,
    THETABAR,
    Session,
    SuperNumber,
    bit_indices,
    left_derive,
)
from supertime.lib.linalg import solve
from supertime.supermatrix import INDICES

TIME = "t"
EVEN_JET_ROOTS = ("x", "lambda")
ODD_JET_ROOTS = ("c", "cbar")

#: a superfunction is a :class:`SuperNumber` whose coefficients may hold ``t``
#: and even jets, and whose generators may include odd jets
SuperFunction = SuperNumber


class JetSymbol(T.NamedTuple):
    root: str
    parity: int
    deriv_order: int = 0

    @property
    def name(self) -> str:
        return self.root + "'" * self.deriv_order

    def prolong(self) -> "JetSymbol":
        return self._replace(deriv_order=self.deriv_order + 1)


def parse_jet(name: str) -> T.Optional[JetSymbol]:
    root = name.rstrip("'")
    order = len(name) - len(root)
    if root in EVEN_JET_ROOTS:
        return JetSymbol(root, 0, order)
    if root in ODD_JET_ROOTS:
        return JetSymbol(root, 1, order)
    return None


def _prolong_even(name: str) -> T.Optional[T.Tuple[str, T.Optional[str]]]:
    """Time derivative of an even symbol as ``(symbol, factor)`` or None for 0."""
    if name == TIME:
        return None
    jet = parse_jet(name)
    if jet is not None:
        return jet.prolong().name, None
    if name in POTENTIAL_SYMBOLS:
        position = POTENTIAL_SYMBOLS.index(name)
        if position + 1 == len(POTENTIAL_SYMBOLS):
            raise UnknownSymbol(f"no derivative registered after {name!r}")
        return POTENTIAL_SYMBOLS[position + 1], "x'"
    return None


def dt_scalar(f: RatFunc) -> RatFunc:
    """
    Total time derivative of an even coefficient.

    ``t`` differentiates to one, jets prolong (``x -> x'``) and the potential
    family follows the chain rule ``d/dt V = dV * x'``; other symbols are
    constants.
    """
    scalars = f.scalars
    result = scalars.zero
    for name in sorted(f.free_symbols()):
        slope = f.diff(name)
        if not slope:
            continue
        if name == TIME:
            result = result + slope
            continue
        step = _prolong_even(name)
        if step is None:
            continue
        target, factor = step
        if target not in scalars:
            raise UnknownSymbol(f"jet {target!r} is not registered")
        rate = scalars.symbol(target)
        if factor is not None:
            rate = rate * scalars.symbol(factor)
        result = result + slope * rate
    return result


def dt(f: SuperFunction) -> SuperFunction:
    """Total time derivative, prolonging even and odd jets alike."""
    session = f.session
    result = session.zero
    names = [g.name for g in session.generators]
    for mask, coeff in f.terms.items():
        word = [names[k] for k in bit_indices(mask)]
        rate = dt_scalar(coeff)
        if rate:
            result = result + session.word(*word) * rate
        for position, name in enumerate(word):
            jet = parse_jet(name)
            if jet is None:
                continue
            target = jet.prolong().name
            if target not in session:
                raise UnknownSymbol(f"jet {target!r} is not registered")
            moved = word[:position] + [target] + word[position + 1 :]
            result = result + session.word(*moved) * coeff
    return result


def partial(index: int, f: SuperFunction) -> SuperFunction:
    """``d_t``, ``d_theta`` or ``d_thetabar`` for index 0, 1 or 2."""
    if index == 0:
        return dt(f)
    return left_derive(f, INDICES[index].label)


class DiffOperator:
    """
    First-order operator ``sum(coeff_M * d_M)`` over ``M = t, theta, thetabar``.

    Coefficients act from the left.
    """

    __slots__ = ("coeffs",)

    def __init__(
        self,
        coeff_t: SuperNumber,
        coeff_theta: SuperNumber,
        coeff_thetabar: SuperNumber,
    ):
        self.coeffs = (coeff_t, coeff_theta, coeff_thetabar)

    @classmethod
    def from_coeffs(cls, coeffs: T.Sequence[SuperNumber]) -> "DiffOperator":
        return cls(*coeffs)

    @property
    def coeff_t(self) -> SuperNumber:
        return self.coeffs[0]

    @property
    def coeff_theta(self) -> SuperNumber:
        return self.coeffs[1]

    @property
    def coeff_thetabar(self) -> SuperNumber:
        return self.coeffs[2]

    @property
    def session(self) -> Session:
        return self.coeffs[0].session

    @property
    def parity(self) -> int:
        """
        Overall parity.

        :raises ParityMismatch: If the operator is not parity homogeneous.
        """
        parities = set()
        for index, coeff in zip(INDICES, self.coeffs):
            if not coeff:
                continue
            if coeff.parity is None:
                raise ParityMismatch(
                    f"coefficient of d_{index.label} is inhomogeneous"
                )
            parities.add((coeff.parity + index.parity) % 2)
        if len(parities) > 1:
            raise ParityMismatch(f"operator {self} mixes parities")
        return parities.pop() if parities else 0

    def __call__(self, f: SuperFunction) -> SuperFunction:
        return apply(self, f)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator.from_coeffs(
            [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator.from_coeffs(
            [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def scale(self, factor) -> "DiffOperator":
        return DiffOperator.from_coeffs([c * factor for c in self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"DiffOperator({self})"

    def __str__(self) -> str:
        parts = [
            f"({coeff})*d_{index.label}"
            for index, coeff in zip(INDICES, self.coeffs)
            if coeff
        ]
        return " + ".join(parts) or "0"


def apply(d: DiffOperator, f: SuperFunction) -> SuperFunction:
    """
    Apply a first-order operator.

    :param d: Operator.
    :param f: Superfunction.
    :return: ``sum(coeff_M * d_M f)``.
    """
    result = f.session.zero
    for index, coeff in enumerate(d.coeffs):
        if coeff:
            result = result + coeff * partial(index, f)
    return result


def invariant_distance(session: Session) -> SuperFunction:
    """``t^2 - 2*thetabar*theta``."""
    t = session.even(TIME)
    return t * t - session.word(THETABAR, THETA) * 2


def osp_generators(session: Session) -> T.List[DiffOperator]:
    """The five orthosymplectic generators, ``1/sqrt2`` written as ``sqrt2/2``."""
    scalars = session.scalars
    zero = session.zero
    theta, thetabar = session.odd(THETA), session.odd(THETABAR)
    t = session.even(TIME)
    half = Fraction(1, 2)
    root = scalars.sqrt2 * half
    return [
        DiffOperator(zero, -thetabar, zero),
        DiffOperator(zero, zero, theta),
        DiffOperator(zero, theta * half, -(thetabar * half)),
        DiffOperator(-(thetabar * root), t * root, zero),
        DiffOperator(theta * root, zero, t * root),
    ]


def _second_order_terms(
    first: DiffOperator, second: DiffOperator, sign: int, acc: T.Dict
) -> None:
    # first o second contributes a_M (-1)^{|M||b_N|} b_N d_M d_N
    for m, a in enumerate(first.coeffs):
        if not a:
            continue
        for n, b in enumerate(second.coeffs):
            if not b:
                continue
            pm, pn = INDICES[m].parity, INDICES[n].parity
            term = a * b
            if pm * (b.parity or 0) % 2:
                term = -term
            if m == n:
                if pm:
                    continue
                key = (m, n)
            elif m < n:
                key = (m, n)
            else:
                key = (n, m)
                if pm * pn:
                    term = -term
            term = term if sign > 0 else -term
            acc[key] = acc[key] + term if key in acc else term


def graded_bracket(d1: DiffOperator, d2: DiffOperator) -> DiffOperator:
    """
    ``d1 o d2 - (-1)^{|d1||d2|} d2 o d1`` reduced to first order.

    :raises ParityMismatch: If an operand is not parity homogeneous.
    :raises NotFirstOrder: If second-order parts survive.
    """
    sign = -1 if d1.parity * d2.parity else 1
    second: T.Dict[T.Tuple[int, int], SuperNumber] = {}
    _second_order_terms(d1, d2, 1, second)
    _second_order_terms(d2, d1, -sign, second)
    leftover = {key: value for key, value in second.items() if value}
    if leftover:
        labels = ", ".join(
            f"d_{INDICES[m].label} d_{INDICES[n].label}" for m, n in sorted(leftover)
        )
        raise NotFirstOrder(f"second-order terms survive: {labels}")
    coeffs = []
    for n in range(3):
        forward = apply(d1, d2.coeffs[n])
        backward = apply(d2, d1.coeffs[n])
        coeffs.append(forward + backward if sign < 0 else forward - backward)
    return DiffOperator.from_coeffs(coeffs)


def expand_in_span(
    target: DiffOperator, basis: T.Sequence[DiffOperator]
) -> T.Optional[T.List[RatFunc]]:
    """
    Constant coefficients ``k`` with ``target = sum(k_i * basis_i)``.

    Coefficients are matched per derivative slot, generator monomial and power
    of ``t``, so the solution is ``t`` independent by construction.

    :return: The coefficients, or None if ``target`` is outside the span.
    """
    scalars = target.session.scalars
    rows: T.Dict[tuple, T.List[RatFunc]] = {}
    rhs: T.Dict[tuple, RatFunc] = {}

    def components(op: DiffOperator) -> T.Dict[tuple, RatFunc]:
        found = {}
        for slot, coeff in enumerate(op.coeffs):
            for mask, value in coeff.terms.items():
                for power, part in value.coefficients_in(TIME).items():
                    found[(slot, mask, power)] = part
        return found

    for k, op in enumerate(basis):
        for key, value in components(op).items():
            rows.setdefault(key, [scalars.zero] * len(basis))[k] = value
    for key, value in components(target).items():
        rows.setdefault(key, [scalars.zero] * len(basis))
        rhs[key] = value
    if not rows:
        return [scalars.zero] * len(basis)
    keys = sorted(rows)
    matrix = [rows[key] for key in keys]
    return solve(matrix, [rhs.get(key, scalars.zero) for key in keys])


def superfield(
    session: Session,
    x: str = "x",
    c: str = "c",
    cbar: str = "cbar",
    lam: str = "lambda",
) -> SuperFunction:
    """
    ``X = x + theta*c + thetabar*cbar + i*thetabar*theta*lambda``.

    :raises ParityMismatch: If ``x``/``lam`` are not even symbols or ``c``/``cbar``
        are not odd generators.
    """
    scalars = session.scalars
    for name in (x, lam):
        if name not in scalars:
            raise ParityMismatch(f"{name!r} must be a registered even symbol")
    for name in (c, cbar):
        if name not in session:
            raise ParityMismatch(f"{name!r} must be a registered odd generator")
    return (
        session.even(x)
        + session.word(THETA, c)
        + session.word(THETABAR, cbar)
        + session.word(THETABAR, THETA) * (scalars.i * scalars.symbol(lam))
    )


def compose_potential(x_field: SuperFunction, root: str = "V") -> SuperFunction:
    """
    Taylor expansion ``V(X) = V + (X - x)*dV + (X - x)^2/2*d2V + ...``.

    The series stops once a power of the nilpotent ``X - x`` vanishes, so the
    result is exact.
    """
    session = x_field.session
    scalars = session.scalars
    soul = x_field.soul
    position = POTENTIAL_SYMBOLS.index(root)
    result = session.zero
    power = session.one
    factorial = 1
    order = 0
    while power:
        if position + order >= len(POTENTIAL_SYMBOLS):
            raise UnknownSymbol(f"no derivative of {root!r} of order {order}")
        name = POTENTIAL_SYMBOLS[position + order]
        result = result + power * (scalars.symbol(name) * Fraction(1, factorial))
        order += 1
        factorial *= order
        power = power * soul
    return result
