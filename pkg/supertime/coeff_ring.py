"""Exact commutative coefficients.

Every even quantity of the engine is a :class:`RatFunc`: a quotient of two sparse
polynomials over the rationals in the registered even symbols, with the imaginary
unit ``i`` and ``sqrt2`` adjoined as extra generators reduced by ``i^2 = -1`` and
``sqrt2^2 = 2``.  Values are kept in a canonical form (denominator free of the
adjoined units, coprime to the numerator and with leading coefficient one) so
that structural equality is mathematical equality.
"""

import functools
import typing as T
from fractions import Fraction

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from supertime.errors import DivisionByZero, PoleAtSubstitution, UnknownSymbol

IMAGINARY_UNIT = "i"
SQRT2 = "sqrt2"

VIERBEIN_SYMBOLS = (
    "a_B",
    "a_S",
    "b_B",
    "b_S",
    "c_B",
    "c_S",
    "d_B",
    "d_S",
    "e_B",
    "e_S",
    "alpha_th",
    "alpha_thb",
    "beta_th",
    "beta_thb",
    "gamma_th",
    "gamma_thb",
    "delta_th",
    "delta_thb",
)
PI_SYMBOLS = ("pi1", "pi2", "pi3", "pi4", "pi5")
SCALAR_SYMBOLS = ("eps", "hbar") + VIERBEIN_SYMBOLS + PI_SYMBOLS + ("p", "q", "r", "t")
EVEN_JETS = (
    "x",
    "x'",
    "x''",
    "x'''",
    "lambda",
    "lambda'",
    "lambda''",
    "lambda'''",
)
POTENTIAL_SYMBOLS = ("V", "dV", "d2V", "d3V", "d4V")
DEFAULT_SYMBOLS = SCALAR_SYMBOLS + EVEN_JETS + POTENTIAL_SYMBOLS

Scalar = T.Union["RatFunc", int, Fraction]


class ScalarRing:
    """
    Registry of even symbols and the polynomial ring they generate.

    :param names: Symbol names in registration order; the order fixes the
        graded lexicographic monomial order.
    :raises ValueError: If a name is repeated or clashes with an adjoined unit.
    """

    def __init__(self, names: T.Sequence[str] = DEFAULT_SYMBOLS):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"symbol names must be unique: {names!r}")
        if IMAGINARY_UNIT in names or SQRT2 in names:
            raise ValueError(f"{IMAGINARY_UNIT!r} and {SQRT2!r} are reserved")
        self.names = names + (IMAGINARY_UNIT, SQRT2)
        self.ring = PolyRing([Symbol(name) for name in self.names], QQ, grlex)
        self._index = {name: idx for idx, name in enumerate(self.names)}
        self._unit_i = self._index[IMAGINARY_UNIT]
        self._unit_s = self._index[SQRT2]
        self.zero = RatFunc(self, self.ring.zero, self.ring.one)
        self.one = RatFunc(self, self.ring.one, self.ring.one)
        self.i = RatFunc(self, self.ring.gens[self._unit_i], self.ring.one)
        self.sqrt2 = RatFunc(self, self.ring.gens[self._unit_s], self.ring.one)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self.names) - 2} symbols)"

    def __contains__(self, name: str) -> bool:
        return name in self._index and name not in (IMAGINARY_UNIT, SQRT2)

    @property
    def symbols(self) -> T.Tuple[str, ...]:
        return self.names[:-2]

    def index(self, name: str) -> int:
        if name not in self:
            raise UnknownSymbol(f"unknown scalar symbol {name!r}")
        return self._index[name]

    def symbol(self, name: str) -> "RatFunc":
        if name == IMAGINARY_UNIT:
            return self.i
        if name == SQRT2:
            return self.sqrt2
        return RatFunc(self, self.ring.gens[self.index(name)], self.ring.one)

    def const(self, value: T.Union[int, Fraction], imag: T.Union[int, Fraction] = 0):
        """
        Build a constant ``value + imag*i``.

        :param value: Real part.
        :param imag: Imaginary part.
        :return: Canonical constant.
        """
        real = _fraction(value)
        num = self.ring.ground_new(QQ(real.numerator, real.denominator))
        if imag:
            imag = _fraction(imag)
            unit = self.ring.gens[self._unit_i]
            num = num + unit * QQ(imag.numerator, imag.denominator)
        return RatFunc(self, num, self.ring.one)

    def coerce(self, value: Scalar) -> "RatFunc":
        if isinstance(value, RatFunc):
            if value.scalars is not self:
                if value.scalars.names != self.names:
                    raise ValueError("scalar from an incompatible ring")
                return RatFunc(self, value.num, value.den)
            return value
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        raise TypeError(f"cannot use {value!r} as a scalar")

    def _reduce_units(self, poly: PolyElement) -> PolyElement:
        i, s = self._unit_i, self._unit_s
        if all(m[i] < 2 and m[s] < 2 for m in poly.itermonoms()):
            return poly
        terms: T.Dict[tuple, T.Any] = {}
        for monom, coeff in poly.terms():
            ei, es = monom[i], monom[s]
            factor = (-1) ** (ei // 2) * 2 ** (es // 2)
            key = list(monom)
            key[i], key[s] = ei % 2, es % 2
            key = tuple(key)
            terms[key] = terms.get(key, QQ.zero) + coeff * factor
        return self.ring.from_dict(terms)

    def _conjugate(self, poly: PolyElement, unit: int) -> PolyElement:
        return self.ring.from_dict(
            {m: (-c if m[unit] % 2 else c) for m, c in poly.terms()}
        )

    def _canonical(self, num: PolyElement, den: PolyElement) -> "RatFunc":
        if not den:
            raise DivisionByZero("denominator is zero")
        ring = self.ring
        if not num:
            return self.zero
        for unit in (self._unit_i, self._unit_s):
            if any(m[unit] for m in den.itermonoms()):
                conj = self._conjugate(den, unit)
                num = self._reduce_units(num * conj)
                den = self._reduce_units(den * conj)
        if den.is_ground:
            lc = den.LC
            if lc != QQ.one:
                num = num.quo_ground(lc)
            return RatFunc(self, num, ring.one)
        if len(den) == 1:
            ((dm, dc),) = den.terms()
            common = list(dm)
            for monom in num.itermonoms():
                common = [min(a, b) for a, b in zip(common, monom)]
            if any(common):
                num = ring.from_dict(
                    {_monom_div(m, common): c for m, c in num.terms()}
                )
                den = ring.from_dict({_monom_div(dm, common): dc})
        else:
            num, den = num.cancel(den)
        lc = den.LC
        if lc != QQ.one:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return RatFunc(self, num, den)


@functools.lru_cache(maxsize=None)
def default_scalar_ring() -> ScalarRing:
    return ScalarRing()


def _fraction(value: T.Union[int, Fraction]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {value!r}")


def _monom_div(a: tuple, b: T.Sequence[int]) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _degree(poly: PolyElement, index: int) -> int:
    return max((m[index] for m in poly.itermonoms()), default=0)


def _qq_to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class RatFunc:
    """An immutable rational function in canonical form."""

    __slots__ = ("scalars", "num", "den")

    def __init__(self, scalars: ScalarRing, num: PolyElement, den: PolyElement):
        self.scalars = scalars
        self.num = num
        self.den = den

    def _other(self, other: Scalar) -> "RatFunc":
        if isinstance(other, RatFunc) and other.scalars is self.scalars:
            return other
        return self.scalars.coerce(other)

    def __add__(self, other: Scalar) -> "RatFunc":
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            num = self.num + other.num
            if self.den.is_ground:
                return RatFunc(self.scalars, num, self.den)
            return self.scalars._canonical(num, self.den)
        return self.scalars._canonical(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(self.scalars, -self.num, self.den)

    def __sub__(self, other: Scalar) -> "RatFunc":
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "RatFunc":
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        num = self.scalars._reduce_units(self.num * other.num)
        if self.den.is_ground and other.den.is_ground:
            return RatFunc(self.scalars, num, self.den)
        return self.scalars._canonical(num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        """
        Multiplicative inverse.

        :raises DivisionByZero: When inverting the zero function.
        """
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return self.scalars._canonical(self.den, self.num)

    def __truediv__(self, other: Scalar) -> "RatFunc":
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: Scalar) -> "RatFunc":
        return self.inv() * other

    def __pow__(self, exponent: int) -> "RatFunc":
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = self.scalars.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.scalars.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return bool(self.num)

    def __repr__(self) -> str:
        return f"RatFunc({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    @property
    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def free_symbols(self) -> T.FrozenSet[str]:
        names = self.scalars.names
        used = set()
        for poly in (self.num, self.den):
            for monom in poly.itermonoms():
                used.update(names[k] for k, e in enumerate(monom) if e)
        used.discard(IMAGINARY_UNIT)
        used.discard(SQRT2)
        return frozenset(used)

    def complex_value(self) -> T.Tuple[Fraction, Fraction]:
        """
        Return ``(re, im)`` of a numeric value.

        :raises ValueError: If symbols or ``sqrt2`` remain.
        """
        if self.free_symbols() or not self.den.is_ground:
            raise ValueError(f"{self} is not a number")
        re, im = Fraction(0), Fraction(0)
        unit_i, unit_s = self.scalars._unit_i, self.scalars._unit_s
        for monom, coeff in self.num.terms():
            if monom[unit_s]:
                raise ValueError(f"{self} is not a Gaussian rational")
            if monom[unit_i]:
                im = _qq_to_fraction(coeff)
            else:
                re = _qq_to_fraction(coeff)
        den = _qq_to_fraction(self.den.LC)
        return re / den, im / den

    def substitute(self, bindings: T.Mapping[str, Scalar]) -> "RatFunc":
        """
        Simultaneously replace symbols by values.

        :param bindings: Symbol name to replacement value.
        :return: Canonical result.
        :raises PoleAtSubstitution: If the denominator vanishes under the bindings.
        """
        scalars = self.scalars
        bound = {}
        for name, value in bindings.items():
            index = scalars.index(name)
            if _degree(self.num, index) or _degree(self.den, index):
                bound[index] = scalars.coerce(value)
        if not bound:
            return self
        degrees = {
            k: max(_degree(self.num, k), _degree(self.den, k)) for k in bound
        }
        powers: T.Dict[T.Tuple[int, bool, int], PolyElement] = {}
        num = _homogenize(scalars, self.num, bound, degrees, powers)
        den = _homogenize(scalars, self.den, bound, degrees, powers)
        if not den:
            raise PoleAtSubstitution(
                f"denominator of {self} vanishes at "
                + ", ".join(f"{scalars.names[k]}={v}" for k, v in bound.items())
            )
        return scalars._canonical(num, den)

    def diff(self, name: str) -> "RatFunc":
        scalars = self.scalars
        gen = scalars.ring.gens[scalars.index(name)]
        dnum = self.num.diff(gen)
        if self.den.is_ground:
            return RatFunc(scalars, dnum, self.den)
        dden = self.den.diff(gen)
        return scalars._canonical(
            scalars._reduce_units(dnum * self.den - self.num * dden),
            self.den * self.den,
        )

    def coefficients_in(self, name: str) -> T.Dict[int, "RatFunc"]:
        """
        Split into powers of one symbol.

        :param name: Symbol that must not occur in the denominator.
        :return: Exponent to coefficient, zero coefficients omitted.
        """
        scalars = self.scalars
        index = scalars.index(name)
        if _degree(self.den, index):
            raise ValueError(f"{name!r} occurs in the denominator of {self}")
        grouped: T.Dict[int, T.Dict[tuple, T.Any]] = {}
        for monom, coeff in self.num.terms():
            rest = list(monom)
            rest[index] = 0
            grouped.setdefault(monom[index], {})[tuple(rest)] = coeff
        return {
            power: scalars._canonical(scalars.ring.from_dict(terms), self.den)
            for power, terms in sorted(grouped.items())
        }

    def to_text(self) -> str:
        num = _poly_text(self.scalars, self.num)
        if self.den.is_ground:
            return num
        if len(self.num) > 1:
            num = f"({num})"
        return f"{num}/({_poly_text(self.scalars, self.den)})"


def _homogenize(
    scalars: ScalarRing,
    poly: PolyElement,
    bound: T.Mapping[int, RatFunc],
    degrees: T.Mapping[int, int],
    powers: T.Dict[T.Tuple[int, bool, int], PolyElement],
) -> PolyElement:
    ring = scalars.ring

    def power(index: int, numerator: bool, exponent: int) -> PolyElement:
        if not exponent:
            return ring.one
        key = (index, numerator, exponent)
        if key not in powers:
            value = bound[index]
            powers[key] = (value.num if numerator else value.den) ** exponent
        return powers[key]

    result = ring.zero
    for monom, coeff in poly.terms():
        rest = list(monom)
        factor = ring.one
        for index in bound:
            exponent = monom[index]
            rest[index] = 0
            factor = factor * power(index, True, exponent)
            factor = factor * power(index, False, degrees[index] - exponent)
        result = result + ring.from_dict({tuple(rest): coeff}) * factor
    return scalars._reduce_units(result)


def _coeff_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _poly_text(scalars: ScalarRing, poly: PolyElement) -> str:
    if not poly:
        return "0"
    names = scalars.names
    out = ""
    for monom, coeff in poly.terms():
        factors = [
            names[k] if e == 1 else f"{names[k]}^{e}"
            for k, e in enumerate(monom)
            if e
        ]
        value = _qq_to_fraction(coeff)
        negative = value < 0
        magnitude = -value if negative else value
        if factors and magnitude == 1:
            term = "*".join(factors)
        else:
            term = "*".join([_coeff_text(magnitude)] + factors)
        if not out:
            out = f"-{term}" if negative else term
        else:
            out += f" - {term}" if negative else f" + {term}"
    return out
