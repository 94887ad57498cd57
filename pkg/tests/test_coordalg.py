import pytest

from chromahopf.coordalg import (
    A, B, C, D, ColouredGLq2, NonTerminating, Palette, check_confluence, check_determinant,
    check_literal_hopf_data, check_word_counts, hopf_axiom_suite, letter, mixed_sector_dimensions, mono, pmul,
    word_key,
)
from chromahopf.scalars import ONE, Q, as_form, qpow


@pytest.fixture(scope="module")
def alg2():
    return ColouredGLq2(Palette.symbolic(2))


def test_confluence_and_counts(alg2):
    r = check_confluence(alg2, 4)
    assert r.verdict == "PASS"
    assert r.details["single_colour_counts"] == {0: 1, 1: 4, 2: 10, 3: 20, 4: 35}
    assert check_word_counts(alg2, 4).details["counts"] == [1, 4, 10, 20, 35]


def test_dropping_a_rule_breaks_confluence(alg2):
    lhs = (letter(B, 0), letter(A, 0))
    assert lhs in alg2.pair_rules
    broken = ColouredGLq2(Palette.symbolic(2), drop_rule=lhs, localise=False)
    r = check_confluence(broken, 3)
    assert r.verdict == "FAIL" and r.details["unresolved"] > 0


def test_three_colours_rule_count():
    alg = ColouredGLq2(Palette.symbolic(3), localise=False)
    assert alg.quadratic_rule_count == 84
    assert not alg.unorientable


def test_hopf_suite(alg2):
    res = hopf_axiom_suite(alg2, 2)
    assert res and all(r.verdict == "PASS" for r in res), [r.id for r in res if r.verdict != "PASS"]


def test_determinant(alg2):
    lam = alg2.palette.value(0)
    assert alg2.det_coeff[0] == qpow(1 - 2 * lam)
    grouplike, not_central = check_determinant(alg2, 0)
    assert grouplike.verdict == "PASS" and not_central.verdict == "PASS"
    assert not_central.details["non_commuting_generators"]


def test_determinant_inverse(alg2):
    a, d, b, c, dinv = (letter(k, 0) for k in (A, D, B, C, 4))
    det = alg2.determinants[0]
    assert alg2.normal_form(pmul(det, mono(dinv))) == {(): ONE}
    assert alg2.normal_form(pmul(mono(dinv), det)) == {(): ONE}


def test_antipode_is_inverse_on_generators(alg2):
    a, b = letter(A, 0), letter(B, 0)
    # S(a) a + S(b) c = 1
    lhs = pmul(alg2.antipode(mono(a)), mono(a))
    lhs2 = pmul(alg2.antipode(mono(b)), mono(letter(C, 0)))
    total = alg2.normal_form({**lhs, **{w: lhs.get(w, 0) + v for w, v in lhs2.items()}})
    assert total == {(): ONE}


def test_closed_form_antipode_literal_reading(alg2):
    # the literal base-q reading does not reproduce the derived Hopf data
    r = check_literal_hopf_data(alg2, 0, 1)
    assert r.verdict == "FAIL"
    assert r.details["derived_det_coefficient"] != r.details["closed_form_det_coefficient"]


def test_mixed_sector(alg2):
    r = mixed_sector_dimensions(alg2, 3)
    assert r.verdict == "FINDING" and not r.required


def test_normal_words_are_sorted_monomials(alg2):
    from chromahopf.coordalg import kind_of

    for w in alg2.normal_words(3, [0]):
        kinds = [kind_of(x) for x in w]
        assert kinds == sorted(kinds)
    assert word_key((letter(A, 0),)) < word_key((letter(A, 0),) * 2)


def test_step_budget():
    alg = ColouredGLq2(Palette.symbolic(2), step_budget=5, localise=False)
    with pytest.raises(NonTerminating):
        alg.nf_word(tuple(letter(C, 0) for _ in range(3)) + tuple(letter(A, 1) for _ in range(3)))
