import pytest

from chromahopf.report import Point
from chromahopf.rmatrix import (
    build_R, build_Rminus, build_Rplus, check_cybe, check_cybe_all, check_nonadditive, check_R_pm_closed_form,
    colour_multisets, identity, inverse2, mat_mul, nonzero_entries, permutation_matrix,
)
from chromahopf.scalars import Q, ColourSymbol, ExponentForm

LAM, MU, NU = (ColourSymbol(i, n) for i, n in enumerate("λμν"))


def test_ybe_all_multisets():
    res = check_cybe_all([LAM, MU, NU, ExponentForm(0)])
    assert res and all(r.verdict == "PASS" for r in res)
    # 20 multisets of size 3 from 4 symbols, with all distinct orderings
    assert len(colour_multisets([LAM, MU, NU, ExponentForm(0)])) == 20


def test_ybe_detects_tampering():
    def bad(a, b):
        rows = [list(r) for r in build_R(a, b)]
        rows[1][2] = rows[1][2] + Q
        return tuple(tuple(r) for r in rows)

    r = check_cybe(LAM, MU, NU, builder=bad, point=Point.make(16, {0: "1/4", 1: "1/2", 2: "3/4"}))
    assert r.verdict == "FAIL"
    assert r.residual_example and r.specialization


def test_r_pm_closed_forms():
    assert [r.verdict for r in check_R_pm_closed_form(LAM, MU)] == ["PASS", "PASS"]


def test_r_minus_is_scaled_inverse():
    from chromahopf.scalars import CMINUS, CPLUS

    prod = mat_mul(build_Rminus(LAM, MU), build_R(LAM, MU))
    assert prod == tuple(tuple(CMINUS * x for x in row) for row in identity(4))
    flip = permutation_matrix([0, 2, 1, 3])
    r21 = mat_mul(mat_mul(flip, build_R(LAM, MU)), flip)
    assert build_Rplus(LAM, MU) == tuple(tuple(CPLUS * x for x in row) for row in r21)


def test_nonadditive():
    r = check_nonadditive(LAM, MU)
    assert r.verdict == "PASS"
    assert r.details["witness_entry"]


def test_inverse2_roundtrip():
    m = ((Q, Q - 1), (0, Q.inverse() * 2))
    from chromahopf.scalars import Scalar

    m = tuple(tuple(Scalar.coerce(x) for x in row) for row in m)
    assert not nonzero_entries(
        tuple(tuple(x - (1 if i == j else 0) for j, x in enumerate(row)) for i, row in enumerate(mat_mul(m, inverse2(m))))
    )
