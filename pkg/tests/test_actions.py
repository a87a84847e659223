import pytest

from supertime.actions import (
    KINETIC_DTHETA,
    VierbeinParams,
    berezin_reduce,
    build_action,
    cpi_reference,
    dtdt_cross_term,
    epsilon_limits,
    interpolating_sdet,
    kinetic_dtdt,
    kinetic_dtheta_dthetabar,
    lagrangian_density,
    printed_dtdt,
    printed_dtheta_dthetabar,
    qpi_weight,
    regularized_sdet,
    slot_label,
    split_regularized,
    superdeterminant,
)
from supertime.errors import ParityMismatch
from supertime.grassmann import THETA, THETABAR, default_session
from supertime.parser import parse_expr
from supertime.superspace import superfield


@pytest.fixture
def session():
    return default_session()


@pytest.fixture
def generic(session):
    return VierbeinParams.generic(session)


def test_slot_label():
    assert slot_label("a") == "(t, t)"
    assert slot_label("beta") == "(t, thetabar)"


def test_generic_frame_parities(session, generic):
    assert generic.a.parity == 0
    assert generic.alpha.parity == 1
    assert generic.matrix()[0, 1] == generic.alpha
    assert VierbeinParams.from_matrix(generic.matrix()) == generic


def test_override_with_wrong_parity(session):
    with pytest.raises(ParityMismatch) as error:
        VierbeinParams.generic(session, a=session.odd(THETA))
    assert "(a)" in str(error.value)
    assert "(t, t)" in str(error.value)


def test_override_unknown_slot(session):
    with pytest.raises(ValueError):
        VierbeinParams.generic(session, zeta=1)


def test_identity_superdeterminant(session):
    assert superdeterminant(VierbeinParams.identity(session)) == 1


def test_three_term_kinetic_misses_cross_term(generic):
    x_field = superfield(generic.session)
    full = kinetic_dtdt(generic, x_field)
    printed = printed_dtdt(generic, x_field)
    assert dtdt_cross_term(generic, x_field)
    assert full - printed == dtdt_cross_term(generic, x_field)


def test_three_term_kinetic_without_alpha(session):
    frame = VierbeinParams.generic(session, alpha=0)
    x_field = superfield(session)
    assert kinetic_dtdt(frame, x_field) == printed_dtdt(frame, x_field)


def test_dtheta_dthetabar_expansion(generic):
    x_field = superfield(generic.session)
    full = kinetic_dtheta_dthetabar(generic, x_field)
    assert full == printed_dtheta_dthetabar(generic, x_field)


def test_unknown_kinetic_form(generic):
    with pytest.raises(ValueError):
        lagrangian_density(generic, superfield(generic.session), form="dx")


def test_cpi_reference(session):
    expected = parse_expr(
        "-lambda'*x' + lambda*dV + i*c'*cbar' - i*d2V*c*cbar", session
    )
    reduced = cpi_reference(session)
    assert reduced.total() == expected
    assert not reduced.total().free_symbols() & {"eps", "hbar"}


def test_reduction_is_free_of_theta(generic):
    reduced = berezin_reduce(build_action(generic, form=KINETIC_DTHETA))
    names = {g.name for g in reduced.total().generators()}
    assert not names & {THETA, THETABAR}


def test_berezin_reduce_prefactor(session):
    density = build_action(VierbeinParams.identity(session))
    hbar = session.scalars.symbol("hbar")
    pulled = berezin_reduce(density, prefactor=hbar.inv())
    assert pulled.prefactor == hbar.inv()
    assert pulled.total() == berezin_reduce(density).total()


def test_split_regularized(session):
    frame = VierbeinParams.identity(session)
    first, second = split_regularized(frame)
    override = regularized_sdet(session)
    assert first + second == build_action(frame, sdet_override=override)


def test_regularized_weight_limits(session):
    frame = VierbeinParams.identity(session)
    limits = epsilon_limits(frame, sdet_override=regularized_sdet(session))
    assert limits.at_zero.diff(qpi_weight(session)) == 0
    surplus = parse_expr("(x'^2/2 - V)/hbar", session)
    assert limits.at_one.total() - cpi_reference(session).total() == surplus


def test_interpolating_weight_limits(session):
    frame = VierbeinParams.identity(session)
    limits = epsilon_limits(frame, sdet_override=interpolating_sdet(session))
    assert limits.at_zero.diff(qpi_weight(session)) == 0
    assert limits.at_one.diff(cpi_reference(session)) == 0


def test_qpi_weight_scales_with_a_body(session):
    weight = qpi_weight(session, a_body=-1)
    assert weight.total() == qpi_weight(session).total()
    assert "hbar" in str(weight)
