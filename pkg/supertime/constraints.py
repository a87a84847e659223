"""Body/soul constraint systems on the vierbein and their closed-form solutions."""

import logging
import typing as T

import numpy as np

from supertime.actions import VierbeinParams
from supertime.coeff_ring import RatFunc, ScalarRing
from supertime.errors import RankDeficient, SingularOddBlock
from supertime.grassmann import (
    THETA,
    THETABAR,
    Session,
    SuperNumber,
    default_session,
    ginv,
)
from supertime.lib.linalg import rank
from supertime.lib.sampling import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    make_rng,
    random_bindings,
)
from supertime.supermatrix import (
    GRADING_ON_LEFT,
    GRADING_PLACEMENTS,
    SuperMatrix,
    odd_block_inverse,
    sdet,
    sinv,
    vierbein_to_metric,
)

_logger = logging.getLogger(__name__)

PLUS = 1
MINUS = -1
SIGNS = (PLUS, MINUS)

E_BODY_NONZERO = "eB_nonzero"
E_BODY_ZERO = "eB_zero"
FAMILY_BRANCHES = (E_BODY_NONZERO, E_BODY_ZERO)

#: the sign of the soul equation follows the sign of ``q``
PAIRING_SAME = 1
#: the sign of the soul equation is opposite to the sign of ``q``
PAIRING_OPPOSITE = -1
PAIRINGS = (PAIRING_SAME, PAIRING_OPPOSITE)

#: entries left free once ``a = +-1`` and ``alpha = beta = 0``
FRAME_UNKNOWNS = (
    "b_B",
    "b_S",
    "c_B",
    "c_S",
    "d_B",
    "d_S",
    "e_B",
    "e_S",
    "gamma_th",
    "gamma_thb",
    "delta_th",
    "delta_thb",
)


def sign_name(sign: int) -> str:
    return "plus" if sign > 0 else "minus"


class Equation(T.NamedTuple):
    label: str
    lhs: RatFunc
    rhs: RatFunc

    @property
    def residual(self) -> RatFunc:
        return self.lhs - self.rhs

    def substitute(self, bindings: T.Mapping[str, T.Any]) -> "Equation":
        return Equation(
            self.label, self.lhs.substitute(bindings), self.rhs.substitute(bindings)
        )


class ConstraintSystem(T.NamedTuple):
    """
    Scalar equations ``lhs = rhs`` between vierbein components.

    :param tag: Short descriptive name of the system.
    :param equations: The equations, in a fixed order.
    :param sign: Branch the system was built for.
    """

    tag: str
    equations: T.Tuple[Equation, ...]
    sign: int = PLUS

    def substitute(self, bindings: T.Mapping[str, T.Any]) -> "ConstraintSystem":
        """
        :raises PoleAtSubstitution: If a binding zeroes a denominator in use.
        """
        return self._replace(
            equations=tuple(eq.substitute(bindings) for eq in self.equations)
        )

    def residuals(self) -> T.Tuple[RatFunc, ...]:
        return tuple(eq.residual for eq in self.equations)

    @property
    def satisfied(self) -> bool:
        return not any(self.residuals())

    def free_symbols(self) -> T.FrozenSet[str]:
        used: T.Set[str] = set()
        for eq in self.equations:
            used |= eq.lhs.free_symbols() | eq.rhs.free_symbols()
        return frozenset(used)


class SolutionFamily(T.NamedTuple):
    """
    Closed-form solution of a constraint system.

    ``bindings`` express some vierbein components through the remaining free
    ones; together with ``a = sign`` and ``alpha = beta = 0`` they fix a frame.
    """

    tag: str
    sign: int
    branch: str
    bindings: T.Dict[str, RatFunc]

    @property
    def free_symbols(self) -> T.Tuple[str, ...]:
        used: T.Set[str] = set()
        for value in self.bindings.values():
            used |= value.free_symbols()
        return tuple(sorted(used - set(self.bindings)))

    def vierbein(self, session: Session) -> VierbeinParams:
        frame = VierbeinParams.generic(session, a=self.sign, alpha=0, beta=0)
        return frame.substitute(self.bindings)

    def sample(
        self, rng: np.random.Generator, keep: T.Iterable[str] = ()
    ) -> T.Dict[str, RatFunc]:
        """
        A random rational point of the family.

        :param keep: Free symbols left symbolic.
        :return: Values for the bound and the sampled free symbols.
        """
        scalars = next(iter(self.bindings.values())).scalars
        names = [name for name in self.free_symbols if name not in set(keep)]
        point = random_bindings(rng, scalars, names)
        for name, value in self.bindings.items():
            point[name] = value.substitute(point)
        return point


class FamilyResiduals(T.NamedTuple):
    family: SolutionFamily
    system: ConstraintSystem
    residuals: T.Tuple[RatFunc, ...]

    @property
    def passed(self) -> bool:
        return not any(self.residuals)


class PiParameters(T.NamedTuple):
    pi1: RatFunc
    pi2: RatFunc
    pi3: RatFunc
    pi4: RatFunc
    pi5: RatFunc

    @classmethod
    def symbolic(cls, scalars: ScalarRing) -> "PiParameters":
        return cls(*(scalars.symbol(f"pi{k}") for k in range(1, 6)))

    def bindings(self) -> T.Dict[str, RatFunc]:
        return {f"pi{k}": value for k, value in enumerate(self, start=1)}


class PQR(T.NamedTuple):
    """``p*thetabar*theta = B D^-1 C`` and ``q + r*thetabar*theta = det(D)^-1``."""

    p: RatFunc
    q: RatFunc
    r: RatFunc

    def bindings(self) -> T.Dict[str, RatFunc]:
        return {"p": self.p, "q": self.q, "r": self.r}


class Witness(T.NamedTuple):
    """
    One contradiction of an infeasibility certificate.

    ``expression`` must equal ``required`` (or be invertible when ``required``
    is None) while its body is zero.
    """

    label: str
    expression: SuperNumber
    required: T.Optional[SuperNumber]
    frame: T.Optional[SuperMatrix] = None

    def holds(self) -> bool:
        if self.expression.body:
            return False
        if self.required is None:
            if self.frame is None:
                return True
            try:
                sdet(self.frame)
            except SingularOddBlock:
                return True
            return False
        return bool(self.required.body)


class InfeasibilityCertificate(T.NamedTuple):
    witnesses: T.Tuple[Witness, ...]
    narrative: str

    def revalidate(self) -> bool:
        """Recompute every witness; True iff all contradictions reproduce."""
        return bool(self.witnesses) and all(w.holds() for w in self.witnesses)


def _soul(value: SuperNumber) -> RatFunc:
    return value.coefficient(THETABAR, THETA)


def odd_block_det(e: VierbeinParams) -> SuperNumber:
    return e.b * e.e - e.c * e.d


def cpi_constraints(e: VierbeinParams, sign: int = PLUS) -> ConstraintSystem:
    """
    ``be - cd = sign`` split into body and soul.

    :param e: Frame with ``alpha = beta = 0`` and ``a = sign`` already imposed.
    """
    det = odd_block_det(e)
    scalars = e.session.scalars
    return ConstraintSystem(
        "odd-determinant",
        (
            Equation("body", det.body, scalars.const(sign)),
            Equation("soul", _soul(det), scalars.zero),
        ),
        sign,
    )


def _family(
    scalars: ScalarRing,
    tag: str,
    sign: int,
    branch: str,
    body: RatFunc,
    extra_soul: RatFunc,
) -> SolutionFamily:
    sym = scalars.symbol
    b_b, c_b, d_b, e_b = sym("b_B"), sym("c_B"), sym("d_B"), sym("e_B")
    c_s, d_s, e_s = sym("c_S"), sym("d_S"), sym("e_S")
    if branch == E_BODY_NONZERO:
        bindings = {
            "b_B": (body * sign + c_b * d_b) / e_b,
            "b_S": (
                -(body * e_s * sign)
                - c_b * d_b * e_s
                + c_b * d_s * e_b
                + c_s * d_b * e_b
                - extra_soul * e_b * sign
            )
            / (e_b * e_b),
        }
    elif branch == E_BODY_ZERO:
        bindings = {
            "e_B": scalars.zero,
            "c_B": -(body * sign) / d_b,
            "c_S": (body * d_s * sign + b_b * d_b * e_s + extra_soul * d_b * sign)
            / (d_b * d_b),
        }
    else:
        raise ValueError(f"unknown family branch {branch!r}")
    return SolutionFamily(tag, sign, branch, bindings)


def cpi_family(scalars: ScalarRing, sign: int, branch: str) -> SolutionFamily:
    """The closed-form solutions of ``be - cd = sign``."""
    return _family(scalars, "cpi", sign, branch, scalars.one, scalars.zero)


def qpi_family(scalars: ScalarRing, sign: int, branch: str) -> SolutionFamily:
    """
    The regularized family with ``det D = sign*eps - sign*(1 - eps)*i/hbar``.

    Its frames have ``sdet(E^A_M) = eps - (1 - eps)*i*thetabar*theta/hbar``.
    """
    eps = scalars.symbol("eps")
    extra = (1 - eps) * scalars.i / scalars.symbol("hbar")
    return _family(scalars, "qpi", sign, branch, eps, extra)


def verify_family(
    family: SolutionFamily,
    system: ConstraintSystem,
    limit: T.Optional[T.Mapping[str, T.Any]] = None,
) -> FamilyResiduals:
    """
    Substitute a family into a system.

    :param limit: Extra bindings applied to the residuals afterwards, e.g.
        ``{"eps": 0}``.
    :raises PoleAtSubstitution: If a binding zeroes a denominator in use.
    """
    residuals = system.substitute(family.bindings).residuals()
    if limit:
        residuals = tuple(value.substitute(limit) for value in residuals)
    _logger.debug(
        "%s/%s/%s against %s: %s",
        family.tag,
        sign_name(family.sign),
        family.branch,
        system.tag,
        ", ".join(str(value) for value in residuals),
    )
    return FamilyResiduals(family, system, residuals)


def pi_parameters(e: VierbeinParams) -> PiParameters:
    gamma_th, gamma_thb = e.gamma.coefficient(THETA), e.gamma.coefficient(THETABAR)
    delta_th, delta_thb = e.delta.coefficient(THETA), e.delta.coefficient(THETABAR)
    b_b, c_b, d_b, e_b = e.b.body, e.c.body, e.d.body, e.e.body
    return PiParameters(
        gamma_th * e_b - delta_th * c_b,
        gamma_thb * e_b - delta_thb * c_b,
        delta_th * b_b - gamma_th * d_b,
        delta_thb * b_b - gamma_thb * d_b,
        gamma_thb * delta_th - gamma_th * delta_thb,
    )


def pi_metric(session: Session, pis: PiParameters, sign: int = PLUS) -> SuperMatrix:
    """
    The five-parameter metric of the classical frames.

    ``g_tt = 1``, ``g_t,theta = -sign*(pi1*theta + pi2*thetabar)``,
    ``g_t,thetabar = -sign*(pi3*theta + pi4*thetabar)`` and
    ``g_theta,thetabar = -sign*(1 + pi5*thetabar*theta)``, graded symmetric.
    """
    theta, thetabar = session.odd(THETA), session.odd(THETABAR)
    first = (theta * pis.pi1 + thetabar * pis.pi2) * sign
    second = (theta * pis.pi3 + thetabar * pis.pi4) * sign
    pair = (session.one + session.word(THETABAR, THETA) * pis.pi5) * sign
    zero = session.zero
    return SuperMatrix(
        [
            [session.one, -first, -second],
            [first, zero, -pair],
            [second, pair, zero],
        ]
    )


def frame_metric(e: VierbeinParams, placement: str = GRADING_ON_LEFT) -> SuperMatrix:
    """``g_MN`` of a frame given as ``E^M_A``."""
    return vierbein_to_metric(sinv(e.matrix()), placement)


def matching_placements(e: VierbeinParams, sign: int = PLUS) -> T.List[str]:
    """Grading placements whose metric equals :func:`pi_metric` on ``e``."""
    target = pi_metric(e.session, pi_parameters(e), sign)
    found = [p for p in GRADING_PLACEMENTS if frame_metric(e, p) == target]
    _logger.debug("placements reproducing the pi metric: %s", found)
    return found


def pqr_definitions(e: VierbeinParams) -> PQR:
    """
    ``p``, ``q`` and ``r`` of a frame.

    :raises SingularOddBlock: When ``det D`` has zero body.
    """
    d_inv, det = odd_block_inverse(e.matrix())
    row = (e.alpha, e.beta)
    col = (e.gamma, e.delta)
    product = e.session.zero
    for i in range(2):
        for j in range(2):
            product = product + row[i] * d_inv[i][j] * col[j]
    inverse = ginv(det)
    return PQR(_soul(product), inverse.body, _soul(inverse))


def qpi_constraints(
    e: VierbeinParams, sign: int = PLUS, pairing: int = PAIRING_SAME
) -> ConstraintSystem:
    """
    Conditions for ``sdet(E^M_A) = 1/eps + i*thetabar*theta/(eps^2*hbar)``.

    Written in the symbols ``p, q, r``: ``q = sign/eps``,
    ``pairing*sign*(a_S/eps - p/eps + r) = i/(eps^2*hbar)``, and
    ``det D = sign*eps - eps^2*r*thetabar*theta`` split in body and soul.
    Substitute :func:`pqr_definitions` to express them through the frame.
    """
    scalars = e.session.scalars
    eps, hbar = scalars.symbol("eps"), scalars.symbol("hbar")
    p, q, r = scalars.symbol("p"), scalars.symbol("q"), scalars.symbol("r")
    a_soul = _soul(e.a)
    det = odd_block_det(e)
    return ConstraintSystem(
        "regularized-sdet",
        (
            Equation("q", q, scalars.const(sign) / eps),
            Equation(
                "soul",
                (a_soul / eps - p / eps + r) * (pairing * sign),
                scalars.i / (eps * eps * hbar),
            ),
            Equation("det-body", det.body, eps * sign),
            Equation("det-soul", _soul(det), -(eps * eps * r)),
        ),
        sign,
    )


def resolve_pqr(system: ConstraintSystem, e: VierbeinParams) -> ConstraintSystem:
    """Replace ``p, q, r`` by their values on the frame."""
    return system.substitute(pqr_definitions(e).bindings())


def reduced_qpi_constraints(
    session: Session, sign: int = PLUS, pairing: int = PAIRING_SAME
) -> ConstraintSystem:
    """
    Eliminate ``r`` with ``a_S = alpha = beta = 0``.

    Then ``p = 0``, the soul condition fixes ``r`` and the determinant's soul
    equation becomes ``b_S e_B + b_B e_S - c_S d_B - c_B d_S = -eps^2*r``.
    """
    frame = VierbeinParams.generic(session, a=sign, alpha=0, beta=0)
    full = qpi_constraints(frame, sign, pairing).substitute({"p": 0})
    _, soul_eq, body_eq, det_soul_eq = full.equations
    # soul_eq is linear in r with slope pairing*sign
    r_value = (soul_eq.rhs - soul_eq.lhs.substitute({"r": 0})) / (pairing * sign)
    det_soul_eq = det_soul_eq.substitute({"r": r_value})
    _logger.debug("eliminated r = %s", r_value)
    return ConstraintSystem("regularized-sdet-reduced", (body_eq, det_soul_eq), sign)


def printed_reduced_qpi_constraints(
    session: Session, sign: int = PLUS
) -> ConstraintSystem:
    """The reduced system with the body and soul right-hand sides exchanged."""
    derived = reduced_qpi_constraints(session, sign)
    body_eq, soul_eq = derived.equations
    return ConstraintSystem(
        "regularized-sdet-swapped",
        (body_eq._replace(rhs=soul_eq.rhs), soul_eq._replace(rhs=body_eq.rhs)),
        sign,
    )


def interpolating_constraints(session: Session, sign: int = PLUS) -> ConstraintSystem:
    """``det D = sign*eps - sign*(1 - eps)*(i/hbar)*thetabar*theta``."""
    scalars = session.scalars
    frame = VierbeinParams.generic(session, a=sign, alpha=0, beta=0)
    det = odd_block_det(frame)
    eps = scalars.symbol("eps")
    soul = (1 - eps) * scalars.i / scalars.symbol("hbar")
    return ConstraintSystem(
        "interpolating-det",
        (
            Equation("det-body", det.body, eps * sign),
            Equation("det-soul", _soul(det), -(soul * sign)),
        ),
        sign,
    )


SuperCondition = T.Tuple[str, SuperNumber, SuperNumber]


def dtheta_conditions(e: VierbeinParams) -> T.List[SuperCondition]:
    """
    Conditions for ``D_theta X D_thetabar X`` to reduce to ``d_t X d_t X``.

    :return: ``(label, lhs, rhs)`` triples with super-number sides.
    """
    session = e.session
    return [
        ("gamma-delta", e.gamma * e.delta, session.one),
        ("gamma-d", e.gamma * e.d - e.delta * e.b, session.zero),
        ("gamma-e", e.gamma * e.e - e.delta * e.c, session.zero),
        ("cd-be", e.c * e.d - e.b * e.e, session.zero),
    ]


def printed_sdet(e: VierbeinParams) -> SuperNumber:
    """
    Superdeterminant in closed form.

    ``a/(be - dc) - K/(be - dc)^2`` with the bracket ``K`` of :func:`sdet_bracket`.

    :raises ZeroBody: When ``be - dc`` has zero body.
    """
    inv_det = ginv(e.b * e.e - e.d * e.c)
    bracket = sdet_bracket(e)
    return e.a * inv_det - bracket * inv_det * inv_det


def sdet_bracket(e: VierbeinParams) -> SuperNumber:
    """``alpha*(e*gamma - c*delta) - beta*(d*gamma - b*delta)``."""
    return e.alpha * (e.e * e.gamma - e.c * e.delta) - e.beta * (
        e.d * e.gamma - e.b * e.delta
    )


def bracket_on_conditions(e: VierbeinParams) -> SuperNumber:
    """
    The bracket of :func:`printed_sdet` minus its expression through the
    ``gamma-d`` and ``gamma-e`` conditions; zero identically.
    """
    conditions = {label: lhs for label, lhs, _ in dtheta_conditions(e)}
    return sdet_bracket(e) - (
        e.alpha * conditions["gamma-e"] - e.beta * conditions["gamma-d"]
    )


def dtheta_infeasibility(
    session: T.Optional[Session] = None, with_sdet: bool = True
) -> InfeasibilityCertificate:
    """
    Certificate that the ``D_theta X D_thetabar X`` conditions have no solution.

    ``gamma*delta`` is a product of odd elements and has zero body, so it cannot
    be ``1``. With ``with_sdet``, ``cd - be = 0`` solved for ``e`` makes ``det D``
    vanish, which ``sdet = 1`` forbids.
    """
    session = session or default_session()
    frame = VierbeinParams.generic(session)
    conditions = dtheta_conditions(frame)
    label, lhs, rhs = conditions[0]
    witnesses = [Witness(label, lhs, rhs)]
    lines = [f"{label}: body of {lhs} is 0 but it must equal {rhs}"]
    if with_sdet:
        solved = frame._replace(e=frame.c * frame.d * ginv(frame.b))
        det = odd_block_det(solved)
        witnesses.append(Witness("sdet", det, None, solved.matrix()))
        lines.append(
            "sdet: a/(be - dc) needs be - dc invertible, "
            f"but cd - be = 0 leaves det D = {det}"
        )
    return InfeasibilityCertificate(tuple(witnesses), "; ".join(lines))


def dtheta_control_frame(session: Session) -> VierbeinParams:
    """A frame meeting every condition except ``gamma-delta`` and ``cd-be``."""
    return VierbeinParams.identity(session)


def dtheta_control_residuals(e: VierbeinParams) -> T.Dict[str, SuperNumber]:
    residuals = {
        label: lhs - rhs
        for label, lhs, rhs in dtheta_conditions(e)
        if label not in ("gamma-delta", "cd-be")
    }
    residuals["sdet"] = sdet(e.matrix()) - 1
    return residuals


def free_parameter_count(
    system: ConstraintSystem,
    total: int,
    unknowns: T.Sequence[str] = FRAME_UNKNOWNS,
    family: T.Optional[SolutionFamily] = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> int:
    """
    ``total`` minus the number of independent equations.

    Independence is checked through the rank of the Jacobian with respect to
    ``unknowns`` at random rational points of ``family`` (or of the unknowns
    when no family is given).

    :raises RankDeficient: When the Jacobian is rank deficient at every sample.
    """
    if not system.equations:
        return total
    rng = make_rng(seed)
    scalars = system.equations[0].lhs.scalars
    residuals = system.residuals()
    jacobian = [[value.diff(name) for name in unknowns] for value in residuals]
    extra = sorted(system.free_symbols() - set(unknowns))
    best = 0
    for _ in range(samples):
        point = family.sample(rng) if family is not None else {}
        missing = [n for n in list(unknowns) + extra if n not in point]
        point.update(random_bindings(rng, scalars, missing))
        at_point = [[d.substitute(point) for d in row] for row in jacobian]
        best = max(best, rank(at_point))
        if best == len(residuals):
            return total - best
    raise RankDeficient(
        f"{system.tag}: Jacobian rank {best} < {len(residuals)} equations"
    )
