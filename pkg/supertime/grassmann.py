"""Finite Grassmann algebra over an ordered set of odd generators."""

import functools
import typing as T
from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from supertime.coeff_ring import RatFunc, Scalar, ScalarRing, default_scalar_ring
from supertime.errors import SessionMismatch, UnknownSymbol, ZeroBody

THETA = "theta"
THETABAR = "thetabar"
ODD_GENERATORS = (THETA, THETABAR, "c", "cbar", "c'", "cbar'", "c''", "cbar''")


class OddGenerator(T.NamedTuple):
    id: int
    name: str


class BodySoul(T.NamedTuple):
    body: RatFunc
    soul: "SuperNumber"


class Session:
    """
    Odd generator registry on top of a :class:`ScalarRing`.

    :param scalars: Ring of even coefficients.
    :param generators: Odd generator names; the position is the generator id and
        fixes canonical term signs.
    """

    def __init__(
        self,
        scalars: T.Optional[ScalarRing] = None,
        generators: T.Sequence[str] = ODD_GENERATORS,
    ):
        self.scalars = scalars or default_scalar_ring()
        generators = tuple(generators)
        if len(set(generators)) != len(generators):
            raise ValueError(f"generator names must be unique: {generators!r}")
        clash = set(generators) & set(self.scalars.names)
        if clash:
            raise ValueError(f"generators clash with scalar symbols: {sorted(clash)}")
        self.generators = tuple(
            OddGenerator(idx, name) for idx, name in enumerate(generators)
        )
        self._by_name = {g.name: g for g in self.generators}
        self.zero = SuperNumber(self, {})
        self.one = SuperNumber(self, {0: self.scalars.one})

    def __repr__(self) -> str:
        names = ", ".join(g.name for g in self.generators)
        return f"{type(self).__name__}({names})"

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def generator(self, name: str) -> OddGenerator:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSymbol(f"unknown odd generator {name!r}") from None

    def odd(self, name: str) -> "SuperNumber":
        """The generator called ``name`` as a :class:`SuperNumber`."""
        return SuperNumber(self, {1 << self.generator(name).id: self.scalars.one})

    def even(self, name: str) -> "SuperNumber":
        return SuperNumber(self, {0: self.scalars.symbol(name)})

    def scalar(self, value: Scalar) -> "SuperNumber":
        value = self.scalars.coerce(value)
        return SuperNumber(self, {0: value} if value else {})

    def word(self, *names: str) -> "SuperNumber":
        """Ordered product of generators, e.g. ``word("thetabar", "theta")``."""
        result = self.one
        for name in names:
            result = result * self.odd(name)
        return result

    def coerce(self, value: T.Union["SuperNumber", Scalar]) -> "SuperNumber":
        if isinstance(value, SuperNumber):
            if value.session is not self:
                raise SessionMismatch("values belong to different sessions")
            return value
        return self.scalar(value)


@functools.lru_cache(maxsize=None)
def default_session() -> Session:
    return Session()


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def merge_sign(left: int, right: int) -> int:
    """
    Sign of the product of two canonically ordered disjoint monomials.

    Counts the pairs ``(a, b)`` with ``a`` in ``left``, ``b`` in ``right`` and
    ``a > b``; each such pair is one transposition.
    """
    swaps = 0
    rest = right
    while rest:
        low = rest & -rest
        swaps += _popcount(left & ~((low << 1) - 1))
        rest ^= low
    return -1 if swaps % 2 else 1


def bit_indices(mask: int) -> T.Iterator[int]:
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


class SuperNumber:
    """
    Immutable element of the Grassmann algebra.

    ``terms`` maps a bitmask of generator ids to its nonzero coefficient; a set
    bit ``k`` means generator ``k`` occurs, and the monomial is read in
    increasing id order.
    """

    __slots__ = ("session", "terms")

    def __init__(self, session: Session, terms: T.Mapping[int, RatFunc]):
        self.session = session
        self.terms = {mask: coeff for mask, coeff in terms.items() if coeff}

    def _other(self, other) -> "SuperNumber":
        if isinstance(other, SuperNumber):
            if other.session is not self.session:
                raise SessionMismatch("values belong to different sessions")
            return other
        return self.session.scalar(other)

    def __add__(self, other) -> "SuperNumber":
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for mask, coeff in other.terms.items():
            terms[mask] = terms[mask] + coeff if mask in terms else coeff
        return SuperNumber(self.session, terms)

    __radd__ = __add__

    def __neg__(self) -> "SuperNumber":
        return SuperNumber(self.session, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "SuperNumber":
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SuperNumber":
        return (-self) + other

    def __mul__(self, other) -> "SuperNumber":
        if not isinstance(other, SuperNumber):
            try:
                scalar = self.session.scalars.coerce(other)
            except TypeError:
                return NotImplemented
            return SuperNumber(
                self.session, {m: c * scalar for m, c in self.terms.items()}
            )
        return gmul(self, other)

    def __rmul__(self, other) -> "SuperNumber":
        # scalars are even
        return self.__mul__(other)

    def __truediv__(self, other: Scalar) -> "SuperNumber":
        scalar = self.session.scalars.coerce(other).inv()
        return self * scalar

    def __pow__(self, exponent: int) -> "SuperNumber":
        if exponent < 0:
            return ginv(self) ** (-exponent)
        result = self.session.one
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (RatFunc, int, Fraction)):
            other = self.session.scalar(other)
        if not isinstance(other, SuperNumber):
            return NotImplemented
        return self.session is other.session and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"SuperNumber({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    @property
    def parity(self) -> T.Optional[int]:
        """0 or 1 for homogeneous values (zero counts as even), else None."""
        parities = {_popcount(mask) % 2 for mask in self.terms}
        if not parities:
            return 0
        if len(parities) > 1:
            return None
        return parities.pop()

    @property
    def body(self) -> RatFunc:
        return self.terms.get(0, self.session.scalars.zero)

    @property
    def soul(self) -> "SuperNumber":
        return SuperNumber(self.session, {m: c for m, c in self.terms.items() if m})

    @property
    def mask(self) -> int:
        """Union of the generators occurring in any term."""
        used = 0
        for mask in self.terms:
            used |= mask
        return used

    def generators(self) -> T.List[OddGenerator]:
        return [self.session.generators[k] for k in bit_indices(self.mask)]

    def free_symbols(self) -> T.FrozenSet[str]:
        used: T.Set[str] = set()
        for coeff in self.terms.values():
            used |= coeff.free_symbols()
        return frozenset(used)

    def coefficient(self, *names: str) -> RatFunc:
        """
        Coefficient of the ordered word ``names``.

        ``coefficient("thetabar", "theta")`` is minus the coefficient of the
        canonical monomial ``theta*thetabar``.
        """
        word = self.session.word(*names)
        if not word:
            raise ValueError(f"word {names!r} vanishes")
        ((mask, sign),) = word.terms.items()
        return self.terms.get(mask, self.session.scalars.zero) * sign

    def map_coefficients(self, fn: T.Callable[[RatFunc], RatFunc]) -> "SuperNumber":
        return SuperNumber(self.session, {m: fn(c) for m, c in self.terms.items()})

    def substitute(self, bindings: T.Mapping[str, Scalar]) -> "SuperNumber":
        return self.map_coefficients(lambda coeff: coeff.substitute(bindings))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.session.generators
        out = ""
        for mask in sorted(self.terms, key=lambda m: (_popcount(m), m)):
            coeff = self.terms[mask]
            word = "*".join(names[k].name for k in bit_indices(mask))
            if not word:
                term = coeff.to_text()
            elif coeff == 1:
                term = word
            elif coeff == -1:
                term = f"-{word}"
            else:
                text = coeff.to_text()
                if coeff.den.is_ground and len(coeff.num) > 1:
                    text = f"({text})"
                term = f"{text}*{word}"
            if not out:
                out = term
            elif term.startswith("-"):
                out += f" - {term[1:]}"
            else:
                out += f" + {term}"
        return out


def gmul(a: SuperNumber, b: SuperNumber) -> SuperNumber:
    """
    Exterior product.

    :param a: Left factor.
    :param b: Right factor.
    :return: ``a*b`` with transposition signs; repeated generators vanish.
    :raises SessionMismatch: If the factors come from different sessions.
    """
    if a.session is not b.session:
        raise SessionMismatch("values belong to different sessions")
    terms: T.Dict[int, RatFunc] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb:
                continue
            coeff = ca * cb
            if merge_sign(ma, mb) < 0:
                coeff = -coeff
            mask = ma | mb
            terms[mask] = terms[mask] + coeff if mask in terms else coeff
    return SuperNumber(a.session, terms)


def body_soul(a: SuperNumber) -> BodySoul:
    return BodySoul(a.body, a.soul)


def ginv(a: SuperNumber) -> SuperNumber:
    """
    Inverse through the nilpotent series ``(1/b) * sum((-s/b)**k)``.

    :param a: Value with nonzero body.
    :return: Two-sided inverse.
    :raises ZeroBody: When the body of ``a`` is zero.
    """
    body = a.body
    if not body:
        raise ZeroBody(f"{a} has zero body and no inverse")
    inv_body = body.inv()
    step = a.soul * (-inv_body)
    result = a.session.one
    power = a.session.one
    while True:
        power = power * step
        if not power:
            break
        result = result + power
    return result * inv_body


def left_derive(a: SuperNumber, g: T.Union[OddGenerator, str]) -> SuperNumber:
    """
    Left derivative with respect to one generator.

    The generator is anticommuted to the front of each term, collecting one sign
    per generator with a smaller id, and then removed.
    """
    if isinstance(g, str):
        g = a.session.generator(g)
    bit = 1 << g.id
    below = bit - 1
    terms = {}
    for mask, coeff in a.terms.items():
        if mask & bit:
            terms[mask ^ bit] = -coeff if _popcount(mask & below) % 2 else coeff
    return SuperNumber(a.session, terms)


def berezin_integrate(
    a: SuperNumber, measure: T.Sequence[T.Union[OddGenerator, str]]
) -> SuperNumber:
    """
    Integrate over the written measure, rightmost differential first.

    With this convention ``berezin_integrate(thetabar*theta, [theta, thetabar])``
    is ``1``.
    """
    result = a
    for g in reversed(list(measure)):
        result = left_derive(result, g)
    return result


def _creation_matrix(position: int, size: int) -> DomainMatrix:
    dim = 1 << size
    rows = [[QQ_I.zero] * dim for _ in range(dim)]
    below = (1 << position) - 1
    for state in range(dim):
        if state >> position & 1:
            continue
        phase = -1 if _popcount(state & below) % 2 else 1
        rows[state | 1 << position][state] = QQ_I(phase)
    return DomainMatrix(rows, (dim, dim), QQ_I)


def to_matrix_rep(
    a: SuperNumber,
    numeric_bindings: T.Mapping[str, Scalar],
    generators: T.Optional[T.Iterable[T.Union[OddGenerator, str]]] = None,
) -> DomainMatrix:
    """
    Represent ``a`` by fermionic creation operators.

    Generator ``k`` of the chosen set becomes the creation operator on slot ``k``
    of a ``2**n`` dimensional Fock space, with the sign string over earlier slots.
    The map is an algebra homomorphism, so it serves as an independent check of
    :func:`gmul`.

    :param a: Value to represent.
    :param numeric_bindings: Values for every scalar symbol occurring in ``a``.
    :param generators: Generators spanning the representation; defaults to
        those occurring in ``a``. Must cover them.
    :return: Dense square matrix over the Gaussian rationals.
    :raises PoleAtSubstitution: If a coefficient has a pole at the bindings.
    """
    session = a.session
    mask = 0
    for g in generators or ():
        if isinstance(g, str):
            g = session.generator(g)
        mask |= 1 << g.id
    if a.mask & ~mask:
        mask |= a.mask
    slots = list(bit_indices(mask))
    size = len(slots)
    dim = 1 << size
    creators = {gid: _creation_matrix(pos, size) for pos, gid in enumerate(slots)}
    result = DomainMatrix.zeros((dim, dim), QQ_I)
    for term_mask, coeff in a.terms.items():
        re, im = coeff.substitute(numeric_bindings).complex_value()
        value = QQ_I(
            QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator)
        )
        monomial = DomainMatrix.eye(dim, QQ_I)
        for gid in bit_indices(term_mask):
            monomial = monomial * creators[gid]
        result = result + monomial * value
    return result.to_dense()
