from fractions import Fraction

import pytest

from supertime.errors import GradingMismatch, SingularBlock, SingularOddBlock
from supertime.grassmann import THETA, THETABAR, default_session
from supertime.lib.sampling import make_rng, random_supermatrix
from supertime.supermatrix import (
    GRADING_PLACEMENTS,
    SuperMatrix,
    eta,
    sdet,
    sinv,
    vierbein_to_metric,
)


@pytest.fixture
def session():
    return default_session()


def _diagonal(session, *values):
    zero = session.zero
    return SuperMatrix(
        [
            [session.scalar(values[i]) if i == j else zero for j in range(3)]
            for i in range(3)
        ]
    )


def test_grading_is_checked(session):
    zero, one, theta = session.zero, session.one, session.odd(THETA)
    with pytest.raises(GradingMismatch):
        SuperMatrix([[theta, zero, zero], [zero, one, zero], [zero, zero, one]])
    with pytest.raises(GradingMismatch):
        SuperMatrix([[one, one, zero], [zero, one, zero], [zero, zero, one]])
    with pytest.raises(GradingMismatch):
        SuperMatrix([[one, zero], [zero, one]])


def test_identity(session):
    identity = SuperMatrix.identity(session)
    assert sdet(identity) == 1
    assert sinv(identity) == identity
    assert identity * identity == identity


def test_sdet_of_diagonal(session):
    assert sdet(_diagonal(session, 2, 3, 5)) == Fraction(2, 15)


def test_sdet_singular_odd_block(session):
    zero, one, theta = session.zero, session.one, session.odd(THETA)
    matrix = SuperMatrix([[one, theta, zero], [theta, zero, zero], [zero, zero, zero]])
    with pytest.raises(SingularOddBlock):
        sdet(matrix)


def test_sinv_singular_even_block(session):
    zero, one = session.zero, session.one
    nilpotent = session.word(THETABAR, THETA)
    matrix = SuperMatrix(
        [[nilpotent, zero, zero], [zero, one, zero], [zero, zero, one]]
    )
    with pytest.raises(SingularBlock):
        sinv(matrix)


def test_blocks(session):
    blocks = _diagonal(session, 2, 3, 5).blocks()
    assert blocks.A == 2
    assert blocks.B == (session.zero, session.zero)
    assert blocks.D[1][1] == 5


def test_sdet_is_multiplicative(session):
    rng = make_rng(3)
    for _ in range(4):
        m = random_supermatrix(rng, session)
        n = random_supermatrix(rng, session)
        assert sdet(m * n) == sdet(m) * sdet(n)


def test_sinv_is_two_sided(session):
    rng = make_rng(5)
    for _ in range(4):
        m = random_supermatrix(rng, session, symbols=("eps",))
        identity = SuperMatrix.identity(session)
        assert m * sinv(m) == identity
        assert sinv(m) * m == identity


def test_substitute(session):
    eps = session.even("eps")
    zero, one = session.zero, session.one
    matrix = SuperMatrix([[eps, zero, zero], [zero, one, zero], [zero, zero, one]])
    assert matrix.substitute({"eps": 4}) == _diagonal(session, 4, 1, 1)


@pytest.mark.parametrize("placement", GRADING_PLACEMENTS)
def test_identity_frame_gives_flat_metric(session, placement):
    identity = SuperMatrix.identity(session)
    assert vierbein_to_metric(identity, placement) == eta(session)


def test_unknown_placement(session):
    with pytest.raises(ValueError):
        vierbein_to_metric(SuperMatrix.identity(session), "middle")
