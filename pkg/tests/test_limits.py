from fractions import Fraction

from chromahopf.coordalg import Palette
from chromahopf.limits import (
    LATTICE, check_colourless_limit, check_monochromatic, exponent_rank, lattice_search, template_R,
)
from chromahopf.rmatrix import build_R
from chromahopf.scalars import Q, qpow


def test_colourless_limit():
    res = check_colourless_limit(2)
    assert [r.verdict for r in res] == ["PASS"] * 4
    vals = res[2].details["colourless_values"]
    assert {vals["k1_0 on B_0"], vals["k1_0 on C_0"]} == {"q", "q^(-1)"}


def test_lattice_search_finds_unique_substitution():
    pal = Palette.monochromatic(2)
    hits = lattice_search(build_R(pal.value(0), pal.value(0)), pal.symbols[0])
    assert hits == [(Fraction(1), Fraction(0), Fraction(2))]
    assert len(LATTICE) == 9


def test_template_matches_colourless_R():
    assert template_R(Q, qpow(0)) == build_R(0, 0)


def test_monochromatic():
    sub, ybe, rels = check_monochromatic(2)
    assert sub.verdict == "PASS" and sub.details["substitution"] == {"Q": "q", "P": "q^(2λ)"}
    assert ybe.verdict == "PASS"
    assert rels.verdict == "PASS" and rels.details["exponent_lattice_rank"] == 2


def test_exponent_rank():
    from chromahopf.scalars import ONE

    assert exponent_rank([{(): Q}, {(): Q * Q}]) == 1
    assert exponent_rank([{(): ONE}]) == 0
