import logging
import typing as T

from supertime.actions import (
    VierbeinParams,
    berezin_reduce,
    build_action,
    regularized_sdet,
)
from supertime.coeff_ring import DEFAULT_SYMBOLS, ScalarRing
from supertime.errors import ZeroBody
from supertime.grassmann import (
    ODD_GENERATORS,
    THETA,
    THETABAR,
    Session,
    SuperNumber,
    ginv,
    to_matrix_rep,
)
from supertime.interfaces import BaseSection, RunContext
from supertime.lib.sampling import (
    make_rng,
    random_bindings,
    random_super_number,
    random_supermatrix,
)
from supertime.parser import parse_expr
from supertime.report import ReportEntry, check, report_only
from supertime.supermatrix import SuperMatrix, sdet, sinv, smul

_logger = logging.getLogger(__name__)

INVERSE_SYMBOLS = ("f0", "f1", "f2", "f3")
#: word carrying the top coefficient ``f3``
ORDERINGS = {
    "theta-thetabar": (THETA, THETABAR),
    "thetabar-theta": (THETABAR, THETA),
}
#: generators of the homomorphism oracle
ORACLE_GENERATORS = (THETA, THETABAR, "c", "cbar")


def inverse_session() -> Session:
    """A session whose scalars also know ``f0``..``f3``."""
    return Session(ScalarRing(DEFAULT_SYMBOLS + INVERSE_SYMBOLS))


def generic_element(session: Session, ordering: str) -> SuperNumber:
    """``f0 + f1*theta + f2*thetabar + f3*<top word>``."""
    f0, f1, f2, f3 = (session.scalars.symbol(name) for name in INVERSE_SYMBOLS)
    top = session.word(*ORDERINGS[ordering])
    return (
        session.scalar(f0)
        + session.odd(THETA) * f1
        + session.odd(THETABAR) * f2
        + top * f3
    )


def printed_inverse(session: Session, ordering: str) -> SuperNumber:
    """``1/f0 - (f1*theta + f2*thetabar + f3*<top word>)/f0^2``."""
    f0, f1, f2, f3 = (session.scalars.symbol(name) for name in INVERSE_SYMBOLS)
    top = session.word(*ORDERINGS[ordering])
    soul = session.odd(THETA) * f1 + session.odd(THETABAR) * f2 + top * f3
    return session.scalar(f0.inv()) - soul / (f0 * f0)


def permuted_session() -> Session:
    """The default generators with ``thetabar`` ordered before ``theta``."""
    rest = [name for name in ODD_GENERATORS if name not in (THETA, THETABAR)]
    return Session(generators=[THETABAR, THETA] + rest)


def _homomorphic(a: SuperNumber, b: SuperNumber, point: T.Mapping) -> bool:
    def rep(value: SuperNumber):
        return to_matrix_rep(value, point, ORACLE_GENERATORS)

    product = rep(a * b) - rep(a) * rep(b)
    total = rep(a + b) - rep(a) - rep(b)
    return product.is_zero_matrix and total.is_zero_matrix


class AlgebraSection(BaseSection):
    """Grassmann inverse, homomorphism oracle and graded matrix identities."""

    name = "algebra"

    def checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        entries = self._inverse_checks()
        entries.extend(self._oracle_checks(ctx))
        entries.extend(self._matrix_checks(ctx))
        entries.append(self._permuted_order(ctx.session))
        return entries

    def _inverse_checks(self) -> T.List[ReportEntry]:
        session = inverse_session()
        entries = []
        reproducing = []
        for ordering in ORDERINGS:
            f = generic_element(session, ordering)
            computed = ginv(f)
            printed = printed_inverse(session, ordering)
            if computed == printed:
                reproducing.append(ordering)
            entries.append(
                check(
                    f"algebra.inverse.printed.{ordering}",
                    "grassmann.ginv",
                    computed == printed,
                    computed,
                    printed,
                )
            )
            product = f * computed
            entries.append(
                check(
                    f"algebra.inverse.two-sided.{ordering}",
                    "grassmann.ginv",
                    product == session.one and computed * f == session.one,
                    product,
                    session.one,
                )
            )
        entries.append(
            report_only(
                "algebra.inverse.orderings",
                "grassmann.ginv",
                ", ".join(reproducing) or "none",
                notes="orderings of the top word that reproduce the closed form",
            )
        )
        zero_body = session.word(THETABAR, THETA)
        try:
            ginv(zero_body)
            raised = "no error"
        except ZeroBody as error:
            raised = f"ZeroBody: {error}"
        entries.append(
            check(
                "algebra.inverse.zero-body",
                "grassmann.ginv",
                raised.startswith("ZeroBody"),
                raised,
                "ZeroBody",
            )
        )
        return entries

    def _oracle_checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        session = ctx.session
        rng = make_rng(ctx.seed)
        symbols = ("eps", "hbar")
        mismatches = 0
        trials = ctx.samples * 10
        for _ in range(trials):
            a = random_super_number(rng, session, ORACLE_GENERATORS, symbols=symbols)
            b = random_super_number(rng, session, ORACLE_GENERATORS, symbols=symbols)
            point = random_bindings(rng, session.scalars, symbols)
            if not _homomorphic(a, b, point):
                mismatches += 1
        _logger.debug("matrix oracle: %d of %d mismatches", mismatches, trials)
        return [
            check(
                "algebra.product.matrix-oracle",
                "grassmann.to_matrix_rep",
                mismatches == 0,
                f"{trials - mismatches}/{trials} products agree",
                f"{trials}/{trials} products agree",
            )
        ]

    def _matrix_checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        session = ctx.session
        rng = make_rng(ctx.seed + 1)
        identity = SuperMatrix.identity(session)
        bad_sdet = bad_inverse = 0
        trials = ctx.samples * 5
        for _ in range(trials):
            m = random_supermatrix(rng, session)
            n = random_supermatrix(rng, session)
            if sdet(smul(m, n)) != sdet(m) * sdet(n):
                bad_sdet += 1
            inverse = sinv(m)
            if smul(m, inverse) != identity or smul(inverse, m) != identity:
                bad_inverse += 1
        return [
            check(
                "algebra.sdet.multiplicative",
                "supermatrix.sdet",
                bad_sdet == 0,
                f"{trials - bad_sdet}/{trials} pairs agree",
                f"{trials}/{trials} pairs agree",
            ),
            check(
                "algebra.sinv.two-sided",
                "supermatrix.sinv",
                bad_inverse == 0,
                f"{trials - bad_inverse}/{trials} inverses exact",
                f"{trials}/{trials} inverses exact",
            ),
        ]

    def _permuted_order(self, session: Session) -> ReportEntry:
        """Repeat a regularized inverse and its reduction with swapped generators."""
        results = []
        for current in (session, permuted_session()):
            inverse = ginv(regularized_sdet(current))
            frame = VierbeinParams.identity(current)
            density = build_action(frame, sdet_override=regularized_sdet(current))
            reduced = berezin_reduce(density).total().substitute({"eps": 0})
            results.append((inverse.to_text(), reduced.to_text()))
        (inverse, reduced), (permuted_inverse, permuted_reduced) = results
        same = parse_expr(permuted_inverse, session) == parse_expr(
            inverse, session
        ) and parse_expr(permuted_reduced, session) == parse_expr(reduced, session)
        return check(
            "algebra.order.permuted",
            "grassmann.Session",
            same,
            f"{permuted_inverse}; {permuted_reduced}",
            f"{inverse}; {reduced}",
        )
