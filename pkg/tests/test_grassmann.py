from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supertime.errors import SessionMismatch, UnknownSymbol, ZeroBody
from supertime.grassmann import (
    THETA,
    THETABAR,
    Session,
    berezin_integrate,
    default_session,
    ginv,
    left_derive,
    merge_sign,
    to_matrix_rep,
)
from supertime.lib.sampling import make_rng, random_super_number

GENERATORS = (THETA, THETABAR, "c", "cbar")
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def session():
    return default_session()


def _random(seed, session, **kwargs):
    return random_super_number(make_rng(seed), session, GENERATORS, **kwargs)


def test_session_validation():
    with pytest.raises(ValueError):
        Session(generators=(THETA, THETA))
    with pytest.raises(ValueError):
        Session(generators=(THETA, "eps"))


def test_unknown_generator(session):
    with pytest.raises(UnknownSymbol):
        session.odd("psi")
    assert THETA in session
    assert "psi" not in session


def test_anticommutation(session):
    theta, thetabar = session.odd(THETA), session.odd(THETABAR)
    assert theta * theta == 0
    assert theta * thetabar == -(thetabar * theta)
    assert session.word(THETABAR, THETA).coefficient(THETA, THETABAR) == -1
    assert session.word(THETABAR, THETA).coefficient(THETABAR, THETA) == 1


def test_merge_sign():
    assert merge_sign(0b01, 0b10) == 1
    assert merge_sign(0b10, 0b01) == -1
    assert merge_sign(0b101, 0b010) == -1


def test_parity(session):
    theta, thetabar = session.odd(THETA), session.odd(THETABAR)
    assert theta.parity == 1
    assert (theta * thetabar).parity == 0
    assert session.one.parity == 0
    assert (session.one + theta).parity is None


def test_body_and_soul(session):
    value = session.scalar(3) + session.word(THETA, "c") * 2
    assert value.body == 3
    assert value.soul == session.word(THETA, "c") * 2
    assert {g.name for g in value.generators()} == {THETA, "c"}


def test_sessions_do_not_mix(session):
    other = Session()
    with pytest.raises(SessionMismatch):
        session.odd(THETA) + other.odd(THETA)


def test_scalar_division(session):
    value = session.odd(THETA) * 3 / 6
    assert value == session.odd(THETA) * Fraction(1, 2)


def test_ginv(session):
    value = session.scalar(2) + session.odd(THETA)
    assert ginv(value) == session.scalar(Fraction(1, 2)) - session.odd(THETA) / 4
    assert value ** -1 == ginv(value)


def test_ginv_zero_body(session):
    with pytest.raises(ZeroBody):
        ginv(session.word(THETABAR, THETA))


def test_left_derive(session):
    word = session.word(THETA, THETABAR)
    assert left_derive(word, THETABAR) == -session.odd(THETA)
    assert left_derive(word, THETA) == session.odd(THETABAR)
    assert left_derive(session.odd("c"), THETA) == 0


def test_berezin_integrate(session):
    measure = [THETA, THETABAR]
    assert berezin_integrate(session.word(THETABAR, THETA), measure) == 1
    assert berezin_integrate(session.word(THETA, THETABAR), measure) == -1
    assert berezin_integrate(session.odd(THETA) + 5, measure) == 0
    paired = session.word(THETABAR, THETA, "c'", "cbar'")
    assert berezin_integrate(paired, measure) == session.word("c'", "cbar'")


def test_substitute(session):
    value = session.odd(THETA) * session.scalars.symbol("eps")
    assert value.substitute({"eps": 2}) == session.odd(THETA) * 2


def test_compares_with_exact_scalars(session):
    half = session.scalar(Fraction(1, 2))
    assert half == Fraction(1, 2)
    assert half != Fraction(1, 3)
    assert session.odd(THETA) != 0
    assert (half + session.odd(THETA)).body == Fraction(1, 2)


def test_matrix_rep_nilpotent(session):
    rep = to_matrix_rep(session.odd(THETA), {}, GENERATORS)
    assert rep.shape == (16, 16)
    assert not rep.is_zero_matrix
    assert (rep * rep).is_zero_matrix


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_associativity(seed):
    session = default_session()
    a, b, c = (_random(seed + k, session) for k in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_graded_commutativity(seed):
    session = default_session()
    a = _random(seed, session, parity=1)
    b = _random(seed + 1, session, parity=1)
    c = _random(seed + 2, session, parity=0)
    assert a * b == -(b * a)
    assert a * c == c * a


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_inverse_is_two_sided(seed):
    session = default_session()
    a = _random(seed, session, nonzero_body=True)
    assert a * ginv(a) == 1
    assert ginv(a) * a == 1


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_matrix_representation_is_homomorphic(seed):
    session = default_session()
    a = _random(seed, session)
    b = _random(seed + 1, session)
    rep = {name: to_matrix_rep(v, {}, GENERATORS) for name, v in (("a", a), ("b", b))}
    product = to_matrix_rep(a * b, {}, GENERATORS) - rep["a"] * rep["b"]
    assert product.is_zero_matrix
    total = to_matrix_rep(a + b, {}, GENERATORS) - rep["a"] - rep["b"]
    assert total.is_zero_matrix
