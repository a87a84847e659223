"""Graded Levi-Civita geometry of supermetrics and the curvature convention scan."""

import itertools
import logging
import typing as T
from fractions import Fraction

from supertime.actions import ODD_SLOT_SYMBOLS
from supertime.coeff_ring import RatFunc, ScalarRing
from supertime.constraints import (
    E_BODY_NONZERO,
    PLUS,
    SIGNS,
    PiParameters,
    frame_metric,
    pi_metric,
    qpi_family,
    sign_name,
)
from supertime.errors import (
    NotGradedSymmetric,
    PoleAtSubstitution,
    SingularBlock,
    SingularMetric,
)
from supertime.grassmann import Session, SuperNumber
from supertime.lib.sampling import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    make_rng,
    random_bindings,
)
from supertime.supermatrix import GRADING, SuperMatrix, eta, sinv, smul
from supertime.superspace import partial

_logger = logging.getLogger(__name__)

#: lowered metric ``(-1)**|M| * g_MN``
SIGN_ON_ROW = "row"
#: lowered metric ``(-1)**|N| * g_MN``
SIGN_ON_COLUMN = "column"
DERIVATIVE_LEFT = "left"
DERIVATIVE_RIGHT = "right"
#: Ricci tensor from the upper and first lower index of the Riemann tensor
CONTRACT_FIRST = "first"
#: Ricci tensor from the upper and second lower index of the Riemann tensor
CONTRACT_SECOND = "second"

VERDICT_EXACT = "exact"
VERDICT_OVERALL_SIGN = "near-miss:overall-sign"
VERDICT_BRANCH_SWAP = "near-miss:branch-swap"
VERDICT_BOTH = "near-miss:sign-and-branch"
VERDICT_RESIDUAL = "residual"

PI_NAMES = ("pi1", "pi2", "pi3", "pi4", "pi5")

Tensor3 = T.List[T.List[T.List[SuperNumber]]]
Tensor4 = T.List[Tensor3]


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class ConventionConfig(T.NamedTuple):
    metric_sign: str = SIGN_ON_ROW
    derivative: str = DERIVATIVE_LEFT
    contraction: str = CONTRACT_FIRST
    overall: int = PLUS

    @property
    def label(self) -> str:
        return ".".join(
            (
                self.metric_sign,
                self.derivative,
                self.contraction,
                "pos" if self.overall > 0 else "neg",
            )
        )


def all_conventions() -> T.List[ConventionConfig]:
    return [
        ConventionConfig(*choice)
        for choice in itertools.product(
            (SIGN_ON_ROW, SIGN_ON_COLUMN),
            (DERIVATIVE_LEFT, DERIVATIVE_RIGHT),
            (CONTRACT_FIRST, CONTRACT_SECOND),
            SIGNS,
        )
    ]


class CurvatureResult(T.NamedTuple):
    scalar: SuperNumber
    body: RatFunc
    config: ConventionConfig


class SuperMetric:
    """
    A metric ``g_MN`` on supertime with its lowered forms and their inverses.

    :param g: Matrix with invertible body and
        ``g_NM = (-1)**(|M| + |N| + |M||N|) * g_MN``.
    :raises NotGradedSymmetric: Naming the first pair that breaks the symmetry.
    :raises SingularMetric: When ``g`` has no inverse.
    """

    def __init__(self, g: SuperMatrix):
        for m, n in itertools.combinations_with_replacement(range(3), 2):
            exponent = GRADING[m] + GRADING[n] + GRADING[m] * GRADING[n]
            if g[n, m] != g[m, n] * _sign(exponent):
                raise NotGradedSymmetric(
                    f"g[{n}, {m}] = {g[n, m]} does not match g[{m}, {n}] = {g[m, n]}"
                )
        self.g = g
        try:
            self.inverse = sinv(g)
        except SingularBlock as error:
            raise SingularMetric(f"metric is not invertible: {error}") from None
        self._lowered: T.Dict[str, T.Tuple[SuperMatrix, SuperMatrix]] = {}

    @property
    def session(self) -> Session:
        return self.g.session

    def lowered(self, metric_sign: str) -> T.Tuple[SuperMatrix, SuperMatrix]:
        """
        The graded symmetric form ``G`` and its inverse.

        :param metric_sign: :data:`SIGN_ON_ROW` or :data:`SIGN_ON_COLUMN`.
        """
        if metric_sign not in self._lowered:
            if metric_sign == SIGN_ON_ROW:
                factor = [[_sign(GRADING[m]) for _ in range(3)] for m in range(3)]
            elif metric_sign == SIGN_ON_COLUMN:
                factor = [[_sign(GRADING[n]) for n in range(3)] for _ in range(3)]
            else:
                raise ValueError(f"unknown metric sign placement {metric_sign!r}")
            lowered = SuperMatrix(
                [
                    [self.g[m, n] * factor[m][n] for n in range(3)]
                    for m in range(3)
                ]
            )
            self._lowered[metric_sign] = (lowered, sinv(lowered))
        return self._lowered[metric_sign]

    def is_inverse_exact(self) -> bool:
        return smul(self.g, self.inverse) == SuperMatrix.identity(self.session)


def _derive(index: int, f: SuperNumber, parity: int, side: str) -> SuperNumber:
    """``d_index f`` for ``f`` of the given parity, from the chosen side."""
    out = partial(index, f)
    if side == DERIVATIVE_RIGHT and GRADING[index] * (parity + 1) % 2:
        return -out
    return out


def koszul(metric: SuperMetric, conv: ConventionConfig) -> Tensor3:
    """``K_NPQ``, the Christoffel symbols with the upper index lowered."""
    lowered, _ = metric.lowered(conv.metric_sign)
    par = GRADING
    slope = [
        [
            [
                _derive(x, lowered[y, z], par[y] + par[z], conv.derivative)
                for z in range(3)
            ]
            for y in range(3)
        ]
        for x in range(3)
    ]
    half = Fraction(1, 2)
    return [
        [
            [
                (
                    slope[n][p][q]
                    + slope[p][q][n] * _sign(par[n] * (par[p] + par[q]))
                    - slope[q][n][p] * _sign(par[q] * (par[n] + par[p]))
                )
                * half
                for q in range(3)
            ]
            for p in range(3)
        ]
        for n in range(3)
    ]


def christoffel(
    metric: SuperMetric, conv: ConventionConfig = ConventionConfig()
) -> Tensor3:
    """
    Christoffel symbols ``gamma[m][n][p]`` of the Levi-Civita connection.

    Built from the graded Koszul combination
    ``K_NPQ = 1/2 (d_N G_PQ + (-1)^{n(p+q)} d_P G_QN - (-1)^{q(n+p)} d_Q G_NP)``
    raised with the inverse of ``G``.
    """
    lowered_inv = metric.lowered(conv.metric_sign)[1]
    combination = koszul(metric, conv)
    zero = metric.session.zero
    result = []
    for m in range(3):
        plane = []
        for n in range(3):
            row = []
            for p in range(3):
                acc = zero
                for q in range(3):
                    acc = acc + combination[n][p][q] * lowered_inv[q, m]
                row.append(acc)
            plane.append(row)
        result.append(plane)
    return result


def lower_christoffel(metric: SuperMetric, gamma: Tensor3, metric_sign: str) -> Tensor3:
    """``sum_M gamma^M_NP G_MQ``; equals the Koszul combination."""
    lowered = metric.lowered(metric_sign)[0]
    zero = metric.session.zero
    result = []
    for n in range(3):
        plane = []
        for p in range(3):
            row = []
            for q in range(3):
                acc = zero
                for m in range(3):
                    acc = acc + gamma[m][n][p] * lowered[m, q]
                row.append(acc)
            plane.append(row)
        result.append(plane)
    return result


def symmetry_defects(gamma: Tensor3) -> T.List[T.Tuple[int, int, int]]:
    """Index triples violating ``gamma^M_NP = (-1)^{np} gamma^M_PN``."""
    return [
        (m, n, p)
        for m in range(3)
        for n in range(3)
        for p in range(n + 1, 3)
        if gamma[m][n][p] != gamma[m][p][n] * _sign(GRADING[n] * GRADING[p])
    ]


def riemann(
    metric: SuperMetric, conv: ConventionConfig = ConventionConfig()
) -> Tensor4:
    """
    ``R^M_NPQ = d_N gamma^M_PQ + sum_S (-1)^{n(p+q+s)} gamma^S_PQ gamma^M_NS
    - (-1)^{np} (N <-> P)``.
    """
    gamma = christoffel(metric, conv)
    par = GRADING
    side = conv.derivative

    def half(m: int, n: int, p: int, q: int) -> SuperNumber:
        acc = _derive(n, gamma[m][p][q], par[m] + par[p] + par[q], side)
        for s in range(3):
            term = gamma[s][p][q] * gamma[m][n][s]
            if term:
                acc = acc + term * _sign(par[n] * (par[p] + par[q] + par[s]))
        return acc

    return [
        [
            [
                [
                    half(m, n, p, q) - half(m, p, n, q) * _sign(par[n] * par[p])
                    for q in range(3)
                ]
                for p in range(3)
            ]
            for n in range(3)
        ]
        for m in range(3)
    ]


def ricci_tensor(riem: Tensor4, contraction: str) -> T.List[T.List[SuperNumber]]:
    session = riem[0][0][0][0].session
    result = []
    for a in range(3):
        row = []
        for q in range(3):
            acc = session.zero
            for m in range(3):
                if contraction == CONTRACT_FIRST:
                    acc = acc + riem[m][m][a][q]
                elif contraction == CONTRACT_SECOND:
                    acc = acc + riem[m][a][m][q] * _sign(GRADING[m] * GRADING[a])
                else:
                    raise ValueError(f"unknown contraction {contraction!r}")
            row.append(acc)
        result.append(row)
    return result


def _scalar_from(
    metric: SuperMetric, riem: Tensor4, conv: ConventionConfig
) -> SuperNumber:
    ricci = ricci_tensor(riem, conv.contraction)
    lowered_inv = metric.lowered(conv.metric_sign)[1]
    acc = metric.session.zero
    for p in range(3):
        for q in range(3):
            acc = acc + ricci[p][q] * lowered_inv[q, p] * _sign(GRADING[p])
    return acc * conv.overall


def ricci_scalar(
    metric: SuperMetric, conv: ConventionConfig = ConventionConfig()
) -> CurvatureResult:
    """
    :raises SingularMetric: From :class:`SuperMetric` for non-invertible metrics.
    """
    scalar = _scalar_from(metric, riemann(metric, conv), conv)
    return CurvatureResult(scalar, scalar.body, conv)


def ricci_body_target(scalars: ScalarRing, sign: int = PLUS) -> RatFunc:
    """The five-parameter polynomial the body of ``R`` is compared with."""
    p1, p2, p3, p4, p5 = (scalars.symbol(name) for name in PI_NAMES)
    half = Fraction(1, 2)
    return (
        -(p2 * p2 * half)
        - p3 * p3 * half
        + p2 * p3 * 5
        - p2 * p2 * p5
        - p3 * p3 * p5
        - p2 * p3 * p5 * 2
        - p1 * p4 * 4
        + p1 * p4 * p5 * 4
        + p5 * (6 * sign)
    )


class ScanRow(T.NamedTuple):
    config: ConventionConfig
    sign: int
    sample_matches: int
    samples: int
    verdict: str
    residual: RatFunc
    pi5_line: RatFunc
    flat_scalar: SuperNumber

    @property
    def label(self) -> str:
        return f"{self.config.label}.{sign_name(self.sign)}"


def _verdict(body: RatFunc, scalars: ScalarRing, sign: int) -> str:
    target = ricci_body_target(scalars, sign)
    swapped = ricci_body_target(scalars, -sign)
    if body == target:
        return VERDICT_EXACT
    if body == -target:
        return VERDICT_OVERALL_SIGN
    if body == swapped:
        return VERDICT_BRANCH_SWAP
    if body == -swapped:
        return VERDICT_BOTH
    return VERDICT_RESIDUAL


def convention_scan(
    session: Session,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    signs: T.Sequence[int] = SIGNS,
) -> T.List[ScanRow]:
    """
    Compare the body of ``R`` of the five-parameter metric with the target
    polynomial under every convention.

    The Riemann tensor depends on the metric sign placement and the derivative
    side only, so it is computed once per pair and branch; contraction and
    overall sign are applied afterwards.
    """
    scalars = session.scalars
    rng = make_rng(seed)
    points = [random_bindings(rng, scalars, PI_NAMES) for _ in range(samples)]
    flat = SuperMetric(eta(session))
    pis = PiParameters.symbolic(scalars)
    pi5_only = {name: 0 for name in PI_NAMES[:4]}
    rows = []
    for sign in signs:
        metric = SuperMetric(pi_metric(session, pis, sign))
        target = ricci_body_target(scalars, sign)
        expected = [target.substitute(point) for point in points]
        by_pair: T.Dict[T.Tuple[str, str], T.Tuple[Tensor4, Tensor4]] = {}
        for conv in all_conventions():
            pair = (conv.metric_sign, conv.derivative)
            if pair not in by_pair:
                _logger.debug("riemann tensor for %s (%s)", pair, sign_name(sign))
                by_pair[pair] = (riemann(metric, conv), riemann(flat, conv))
            riem, flat_riem = by_pair[pair]
            body = _scalar_from(metric, riem, conv).body
            matches = sum(
                body.substitute(point) == value
                for point, value in zip(points, expected)
            )
            rows.append(
                ScanRow(
                    conv,
                    sign,
                    matches,
                    samples,
                    _verdict(body, scalars, sign),
                    body - target,
                    body.substitute(pi5_only),
                    _scalar_from(flat, flat_riem, conv),
                )
            )
    return rows


class RegularizedCurvature(T.NamedTuple):
    body: RatFunc
    pole_at_zero: bool
    at_one: T.Optional[RatFunc]


def regularized_curvature(
    session: Session,
    sign: int = PLUS,
    seed: int = DEFAULT_SEED,
    conv: ConventionConfig = ConventionConfig(),
) -> RegularizedCurvature:
    """
    Body of ``R`` for the regularized frames as a function of ``eps``.

    Every other free parameter of the family takes a seeded rational value.
    """
    family = qpi_family(session.scalars, sign, E_BODY_NONZERO)
    rng = make_rng(seed)
    point = family.sample(rng, keep=("eps",))
    odd_names = ODD_SLOT_SYMBOLS["gamma"] + ODD_SLOT_SYMBOLS["delta"]
    point.update(random_bindings(rng, session.scalars, odd_names))
    frame = family.vierbein(session).substitute(point)
    body = ricci_scalar(SuperMetric(frame_metric(frame)), conv).body
    try:
        body.substitute({"eps": 0})
        pole = False
    except PoleAtSubstitution:
        pole = True
    try:
        at_one: T.Optional[RatFunc] = body.substitute({"eps": 1})
    except PoleAtSubstitution:
        at_one = None
    return RegularizedCurvature(body, pole, at_one)
