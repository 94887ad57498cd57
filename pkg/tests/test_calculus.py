import pytest

from chromahopf.calculus import (
    OMEGA, S_PARAM, CalculusContext, check_leibniz_and_ideal, check_closed_form_derivatives, closed_form_derivatives,
    compare_derivatives, derivative_table,
)
from chromahopf.coordalg import A, B, C, D, ColouredGLq2, Palette, letter
from chromahopf.dualfun import COLOUR_PAIR, SWAPPED_PAIR, Pairing
from chromahopf.scalars import ONE, ZERO, qpow


@pytest.fixture(scope="module")
def alg():
    return ColouredGLq2(Palette.symbolic(2))


@pytest.fixture(scope="module")
def swapped(alg):
    return Pairing(alg, SWAPPED_PAIR)


def test_swapped_generator_assignment_mismatches(swapped):
    r = check_closed_form_derivatives(swapped, assignment="generator")
    assert r.verdict == "FAIL" and r.required
    assert r.details["mismatches"]["right"] == 8
    labels = {m.split(" (")[0] for m in r.details["mismatched"]}
    assert labels == {"da ω¹", "dc ω¹", "db ω²", "dd ω²"}


def test_mismatched_diagonals_are_colour_blind(swapped):
    # measured ω¹ of da, dc and ω² of db, dd: s·q⁻² − 1 for every colour pair
    want = S_PARAM * qpow(-2) - ONE
    for gc, fc in ((0, 1), (1, 0), (0, 0)):
        got = derivative_table(CalculusContext(swapped, fc), gc, "right")
        for kind, ij in ((A, (0, 0)), (C, (0, 0)), (B, (1, 1)), (D, (1, 1))):
            assert list(got[(kind, ij)].values()) == [want]


def test_colour_pair_functional_assignment_matches(alg):
    r = check_closed_form_derivatives(Pairing(alg, COLOUR_PAIR), assignment="functional")
    assert r.verdict == "PASS"
    assert r.details["coefficients"] == 32 and not r.required


def test_s_dependence(swapped):
    ctx = CalculusContext(swapped, 1)
    a = letter(A, 0)
    # dA has an ω² coefficient (s - 1)·a, which vanishes exactly when c+ = c-
    got = derivative_table(ctx, 0, "right")[(A, (1, 1))]
    assert got == {(a,): S_PARAM - ONE}
    assert (S_PARAM - ONE).specialise_c(3, 3) == ZERO


def test_d_ideal_leibniz_bimodule(swapped):
    res = {r.id.split("[")[0]: r for r in check_leibniz_and_ideal(swapped)}
    for k, r in res.items():
        assert r.verdict == "PASS", k
    assert res["calculus.leibniz"].details["pairs"] == 64


def test_d_of_unit_vanishes(swapped):
    assert CalculusContext(swapped, 0).d({(): ONE}) == {}
