import pytest

from chromahopf.coordalg import A, B, ColouredGLq2, Palette, letter
from chromahopf.dualfun import SWAPPED_PAIR, Pairing
from chromahopf.geodual import (
    TANGENTS, BasisMonomial, MixedColourUnsupported, basis_enumerate, check_pairing_formulas,
    check_product_examples, commutator_colourless, cross_validate, geo_pair, geo_pair_derivative,
    geo_pair_formula, gram_rank, matrix_unit_check, pair_product,
)
from chromahopf.scalars import Scalar


@pytest.fixture(scope="module")
def alg():
    return ColouredGLq2(Palette.symbolic(2))


def test_basis_size():
    assert len(basis_enumerate(0, 4)) == 70


def test_both_routes_agree():
    for g in basis_enumerate(1, 4):
        for t in TANGENTS + (None,):
            assert geo_pair_formula(t, g) == geo_pair_derivative(t, g)


def test_delta_values():
    assert geo_pair("A", BasisMonomial(0, k=3)) == 3
    assert geo_pair("A", BasisMonomial(0, k=3, m=1)) == 0
    assert geo_pair("B", BasisMonomial(0, k=2, l=1, m=1)) == 1
    assert geo_pair("C", BasisMonomial(0, n=2)) == 0
    assert geo_pair(None, BasisMonomial(0, k=1, l=2)) == 1
    assert geo_pair(None, BasisMonomial(0, n=1)) == 0


def test_checks_pass(alg):
    assert check_pairing_formulas(4).verdict == "PASS"
    assert matrix_unit_check().verdict == "PASS"
    assert check_product_examples(alg).verdict == "PASS"
    assert commutator_colourless(ColouredGLq2(Palette.colourless(2))).verdict == "PASS"


def test_square_of_A(alg):
    assert pair_product(alg, ("A", "A"), BasisMonomial(0, k=2)) == Scalar.const(4)


def test_from_word():
    w = (letter(A, 0), letter(A, 0), letter(B, 0))
    assert BasisMonomial.from_word(w) == BasisMonomial(0, k=2, m=1)
    with pytest.raises(MixedColourUnsupported):
        BasisMonomial.from_word((letter(A, 0), letter(A, 1)))
    with pytest.raises(ValueError):
        BasisMonomial.from_word((letter(B, 0), letter(A, 0)))


def test_gram_rank_is_a_finding(alg):
    r = gram_rank(alg)
    assert r.verdict == "FINDING" and not r.required


def test_cross_validation():
    col = Pairing(ColouredGLq2(Palette.colourless(2)), SWAPPED_PAIR)
    assert all(r.verdict == "PASS" for r in cross_validate(col, 2, required=True))
