"""Invariant superspace actions and their reduction to component Lagrangians."""

import logging
import typing as T
from fractions import Fraction

from supertime.coeff_ring import RatFunc
from supertime.errors import ParityMismatch
from supertime.grassmann import (
    THETA,
    THETABAR,
    Session,
    SuperNumber,
    berezin_integrate,
    ginv,
)
from supertime.supermatrix import INDICES, SuperMatrix, sdet
from supertime.superspace import (
    DiffOperator,
    SuperFunction,
    apply,
    compose_potential,
    partial,
    superfield,
)

_logger = logging.getLogger(__name__)

#: kinetic term built from ``D_t X D_t X``
KINETIC_DT = "dt"
#: kinetic term built from ``D_theta X D_thetabar X``
KINETIC_DTHETA = "dtheta"
KINETIC_FORMS = (KINETIC_DT, KINETIC_DTHETA)

MEASURE = (THETA, THETABAR)

EVEN_SLOTS = ("a", "b", "c", "d", "e")
ODD_SLOTS = ("alpha", "beta", "gamma", "delta")

#: matrix position ``(row A, column M)`` of every slot of ``E^M_A``
SLOT_POSITIONS = {
    "a": (0, 0),
    "alpha": (0, 1),
    "beta": (0, 2),
    "gamma": (1, 0),
    "b": (1, 1),
    "c": (1, 2),
    "delta": (2, 0),
    "d": (2, 1),
    "e": (2, 2),
}

ODD_SLOT_SYMBOLS = {
    "alpha": ("alpha_th", "alpha_thb"),
    "beta": ("beta_th", "beta_thb"),
    "gamma": ("gamma_th", "gamma_thb"),
    "delta": ("delta_th", "delta_thb"),
}


def slot_label(slot: str) -> str:
    row, col = SLOT_POSITIONS[slot]
    return f"({INDICES[row].label}, {INDICES[col].label})"


def even_entry(session: Session, slot: str) -> SuperNumber:
    """``x_B + x_S*thetabar*theta`` for an even slot ``x``."""
    scalars = session.scalars
    return session.scalar(scalars.symbol(f"{slot}_B")) + session.word(
        THETABAR, THETA
    ) * scalars.symbol(f"{slot}_S")


def odd_entry(session: Session, slot: str) -> SuperNumber:
    """``x_th*theta + x_thb*thetabar`` for an odd slot ``x``."""
    scalars = session.scalars
    along_theta, along_thetabar = ODD_SLOT_SYMBOLS[slot]
    return session.odd(THETA) * scalars.symbol(along_theta) + session.odd(
        THETABAR
    ) * scalars.symbol(along_thetabar)


class VierbeinParams(T.NamedTuple):
    """
    Entries of ``E^M_A = [[a, alpha, beta], [gamma, b, c], [delta, d, e]]``.

    Row ``A`` is the flat index and column ``M`` the curved one, so
    ``D_A = sum(E^M_A d_M)``.
    """

    a: SuperNumber
    b: SuperNumber
    c: SuperNumber
    d: SuperNumber
    e: SuperNumber
    alpha: SuperNumber
    beta: SuperNumber
    gamma: SuperNumber
    delta: SuperNumber

    @classmethod
    def generic(cls, session: Session, **overrides: T.Any) -> "VierbeinParams":
        """
        Body/soul parametrized vierbein; ``overrides`` replace whole slots.

        :raises ParityMismatch: If an override has the wrong parity.
        """
        entries = {slot: even_entry(session, slot) for slot in EVEN_SLOTS}
        entries.update({slot: odd_entry(session, slot) for slot in ODD_SLOTS})
        for slot, value in overrides.items():
            if slot not in SLOT_POSITIONS:
                raise ValueError(f"unknown vierbein slot {slot!r}")
            entries[slot] = session.coerce(value)
        return cls(**entries).checked()

    @classmethod
    def identity(cls, session: Session) -> "VierbeinParams":
        one, zero = session.one, session.zero
        return cls(one, one, zero, zero, one, zero, zero, zero, zero)

    @classmethod
    def from_matrix(cls, matrix: T.Union[SuperMatrix, T.Sequence]) -> "VierbeinParams":
        grid = matrix.entries if isinstance(matrix, SuperMatrix) else matrix
        entries = {slot: grid[i][j] for slot, (i, j) in SLOT_POSITIONS.items()}
        return cls(**entries).checked()

    @property
    def session(self) -> Session:
        return self.a.session

    def checked(self) -> "VierbeinParams":
        """
        :raises ParityMismatch: Naming the first slot with the wrong parity.
        """
        for slot, (row, col) in SLOT_POSITIONS.items():
            value = getattr(self, slot)
            expected = (INDICES[row].parity + INDICES[col].parity) % 2
            if value and value.parity != expected:
                kind = "odd" if expected else "even"
                raise ParityMismatch(
                    f"slot {slot_label(slot)} ({slot}) must be {kind}, got {value}"
                )
        return self

    def matrix(self) -> SuperMatrix:
        return SuperMatrix(
            [
                [self.a, self.alpha, self.beta],
                [self.gamma, self.b, self.c],
                [self.delta, self.d, self.e],
            ]
        )

    def substitute(self, bindings: T.Mapping[str, T.Any]) -> "VierbeinParams":
        return VierbeinParams(*(entry.substitute(bindings) for entry in self))


class ComponentLagrangian(T.NamedTuple):
    """A jet expression free of ``theta``/``thetabar`` times a scalar prefactor."""

    expr: SuperFunction
    prefactor: RatFunc

    def total(self) -> SuperFunction:
        return self.expr * self.prefactor

    def diff(self, other: "ComponentLagrangian") -> SuperFunction:
        """``self - other`` as a single jet expression; zero iff equal."""
        return self.total() - other.total()

    def __str__(self) -> str:
        if self.prefactor == 1:
            return str(self.expr)
        return f"({self.prefactor})*({self.expr})"


class EpsilonLimits(T.NamedTuple):
    at_zero: ComponentLagrangian
    at_one: ComponentLagrangian


def covariant_dt(e: VierbeinParams) -> DiffOperator:
    """``D_t = a*d_t + alpha*d_theta + beta*d_thetabar``."""
    return DiffOperator(e.a, e.alpha, e.beta)


def covariant_dtheta(e: VierbeinParams) -> DiffOperator:
    return DiffOperator(e.gamma, e.b, e.c)


def covariant_dthetabar(e: VierbeinParams) -> DiffOperator:
    return DiffOperator(e.delta, e.d, e.e)


def kinetic_dtdt(e: VierbeinParams, x_field: SuperFunction) -> SuperFunction:
    """The full product ``(D_t X)(D_t X)``."""
    dx = apply(covariant_dt(e), x_field)
    return dx * dx


def printed_dtdt(e: VierbeinParams, x_field: SuperFunction) -> SuperFunction:
    """``a^2 X_t X_t + 2 a alpha X_t X_theta + 2 a beta X_t X_thetabar``."""
    x_t, x_th, x_thb = (partial(k, x_field) for k in range(3))
    return (
        e.a * e.a * x_t * x_t
        + e.a * e.alpha * x_t * x_th * 2
        + e.a * e.beta * x_t * x_thb * 2
    )


def dtdt_cross_term(e: VierbeinParams, x_field: SuperFunction) -> SuperFunction:
    """``2 (alpha X_theta)(beta X_thetabar)``, the part the three-term form omits."""
    x_th, x_thb = partial(1, x_field), partial(2, x_field)
    return e.alpha * x_th * (e.beta * x_thb) * 2


def kinetic_dtheta_dthetabar(
    e: VierbeinParams, x_field: SuperFunction
) -> SuperFunction:
    """The full product ``(D_theta X)(D_thetabar X)``."""
    return apply(covariant_dtheta(e), x_field) * apply(covariant_dthetabar(e), x_field)


def printed_dtheta_dthetabar(
    e: VierbeinParams, x_field: SuperFunction
) -> SuperFunction:
    x_t, x_th, x_thb = (partial(k, x_field) for k in range(3))
    return (
        e.gamma * e.delta * x_t * x_t
        + (e.gamma * e.d - e.delta * e.b) * x_t * x_th
        + (e.gamma * e.e - e.delta * e.c) * x_t * x_thb
        + (e.c * e.d - e.b * e.e) * x_thb * x_th
    )


def superdeterminant(e: VierbeinParams) -> SuperNumber:
    """
    The density factor ``E = sdet(E^A_M) = 1 / sdet(E^M_A)``.

    :raises SingularOddBlock: From :func:`sdet`.
    :raises ZeroBody: When ``sdet(E^M_A)`` has zero body.
    """
    return ginv(sdet(e.matrix()))


def lagrangian_density(
    e: VierbeinParams, x_field: SuperFunction, form: str = KINETIC_DT
) -> SuperFunction:
    """``1/2 * kinetic - V(X)``."""
    if form == KINETIC_DT:
        kinetic = kinetic_dtdt(e, x_field)
    elif form == KINETIC_DTHETA:
        kinetic = kinetic_dtheta_dthetabar(e, x_field)
    else:
        raise ValueError(f"unknown kinetic form {form!r}, expected {KINETIC_FORMS}")
    return kinetic * Fraction(1, 2) - compose_potential(x_field)


def build_action(
    e: VierbeinParams,
    x_field: T.Optional[SuperFunction] = None,
    form: str = KINETIC_DT,
    sdet_override: T.Optional[SuperNumber] = None,
) -> SuperFunction:
    """
    Pre-integration superdensity ``i * E * [kinetic/2 - V(X)]``.

    :param e: Vierbein.
    :param x_field: Superfield; the standard one by default.
    :param form: :data:`KINETIC_DT` or :data:`KINETIC_DTHETA`.
    :param sdet_override: Replaces the computed ``E``.
    :raises SingularOddBlock: When ``E`` must be computed and ``det D`` is singular.
    """
    session = e.session
    if x_field is None:
        x_field = superfield(session)
    factor = superdeterminant(e) if sdet_override is None else sdet_override
    return factor * lagrangian_density(e, x_field, form) * session.scalars.i


def berezin_reduce(
    density: SuperFunction, prefactor: T.Optional[RatFunc] = None
) -> ComponentLagrangian:
    """
    ``integral dtheta dthetabar`` of a density.

    :param prefactor: Scalar pulled out of the result, if any.
    """
    reduced = berezin_integrate(density, MEASURE)
    scalars = density.session.scalars
    if prefactor is None:
        return ComponentLagrangian(reduced, scalars.one)
    return ComponentLagrangian(reduced / prefactor, prefactor)


def regularized_sdet(session: Session) -> SuperNumber:
    """``eps - i*thetabar*theta/hbar``."""
    scalars = session.scalars
    soul = scalars.i / scalars.symbol("hbar")
    return session.even("eps") - session.word(THETABAR, THETA) * soul


def interpolating_sdet(session: Session) -> SuperNumber:
    """``eps - (1 - eps)*i*thetabar*theta/hbar``."""
    scalars = session.scalars
    eps = scalars.symbol("eps")
    soul = (1 - eps) * scalars.i / scalars.symbol("hbar")
    return session.even("eps") - session.word(THETABAR, THETA) * soul


def split_regularized(
    e: VierbeinParams, x_field: T.Optional[SuperFunction] = None
) -> T.Tuple[SuperFunction, SuperFunction]:
    """
    The two pieces ``i*eps*L`` and ``(1/hbar)*thetabar*theta*L`` of the density
    with ``E = eps - i*thetabar*theta/hbar``.
    """
    session = e.session
    scalars = session.scalars
    if x_field is None:
        x_field = superfield(session)
    density = lagrangian_density(e, x_field)
    first = density * (scalars.i * scalars.symbol("eps"))
    second = session.word(THETABAR, THETA) * density / scalars.symbol("hbar")
    return first, second


def qpi_weight(session: Session, a_body: T.Any = 1) -> ComponentLagrangian:
    """``(1/hbar) * [a_B^2 x' x'/2 - V]``."""
    scalars = session.scalars
    a_body = scalars.coerce(a_body)
    velocity = scalars.symbol("x'")
    expr = session.scalar(
        a_body * a_body * velocity * velocity * Fraction(1, 2) - scalars.symbol("V")
    )
    return ComponentLagrangian(expr, scalars.symbol("hbar").inv())


def cpi_reference(session: Session) -> ComponentLagrangian:
    """Reduction of the density with ``alpha = beta = 0``, ``a = 1`` and ``E = 1``."""
    return berezin_reduce(build_action(VierbeinParams.identity(session)))


def epsilon_limits(
    e_family: VierbeinParams,
    x_field: T.Optional[SuperFunction] = None,
    sdet_override: T.Optional[SuperNumber] = None,
) -> EpsilonLimits:
    """
    Reduce the action and substitute ``eps -> 0`` and ``eps -> 1``.

    Substitution happens after canonical cancellation, so removable factors of
    ``eps`` are gone by then.

    :raises PoleAtSubstitution: If a genuine pole at either limit survives.
    """
    density = build_action(e_family, x_field, sdet_override=sdet_override)
    reduced = berezin_reduce(density)
    one = e_family.session.scalars.one
    limits = []
    for value in (0, 1):
        _logger.debug("substituting eps=%s into %s", value, reduced.expr)
        at_value = reduced.total().substitute({"eps": value})
        limits.append(ComponentLagrangian(at_value, one))
    return EpsilonLimits(*limits)
