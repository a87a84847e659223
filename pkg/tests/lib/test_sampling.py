from supertime.grassmann import THETA, THETABAR, default_session
from supertime.lib.sampling import (
    DEFAULT_BOUND,
    make_rng,
    random_bindings,
    random_fraction,
    random_super_number,
    random_supermatrix,
)
from supertime.supermatrix import sdet


def test_random_fraction_bounds():
    rng = make_rng(1)
    for _ in range(50):
        value = random_fraction(rng, nonzero=True)
        assert value
        assert abs(value.numerator) <= DEFAULT_BOUND
        assert value.denominator <= DEFAULT_BOUND


def test_seed_reproduces():
    first = [random_fraction(make_rng(11)) for _ in range(3)]
    second = [random_fraction(make_rng(11)) for _ in range(3)]
    assert first == second


def test_random_bindings_avoid():
    scalars = default_session().scalars
    bindings = random_bindings(make_rng(2), scalars, ["eps", "hbar"], avoid=[1])
    assert sorted(bindings) == ["eps", "hbar"]
    assert all(value != 1 and value != 0 for value in bindings.values())


def test_random_super_number_parity():
    session = default_session()
    rng = make_rng(3)
    for parity in (0, 1):
        value = random_super_number(rng, session, (THETA, THETABAR, "c"), parity)
        assert not value or value.parity == parity


def test_random_super_number_body():
    session = default_session()
    value = random_super_number(make_rng(4), session, nonzero_body=True)
    assert value.body


def test_random_supermatrix_is_invertible():
    session = default_session()
    rng = make_rng(5)
    for _ in range(3):
        assert sdet(random_supermatrix(rng, session)).body
