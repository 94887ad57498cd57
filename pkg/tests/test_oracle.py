import random
from fractions import Fraction

import pytest

from chromahopf import oracle as O
from chromahopf.cli import SuiteConfig, run_suite
from chromahopf.report import CheckResult, Report
from chromahopf.scalars import Q


@pytest.fixture(scope="module")
def engine():
    return O.EngineData("swapped")


def ctx_for(engine, seed=1):
    return O.Ctx(O.random_point(random.Random(seed), 3), engine, SuiteConfig())


def test_points_are_exact():
    pt = O.random_point(random.Random(7), 3)
    assert 2 <= pt.q <= 100
    assert len(set(pt.cols.values())) == 3 and all(pt.cols.values())
    assert all((4 * v).denominator == 1 for v in pt.cols.values())
    assert pt.pw(Fraction(1, 4)) ** 4 == pt.q
    assert pt.scalar(Q * Q) == pt.q ** 2


@pytest.mark.parametrize("fam", [O.fam_cybe, O.fam_rpm, O.fam_det, O.fam_antipode, O.fam_well_defined])
def test_families_agree(engine, fam):
    assert fam(ctx_for(engine)) == []


def test_tampered_antipode_is_detected(engine):
    saved = engine.alg.antipode_coeffs[0]
    y, z = saved
    engine.alg.antipode_coeffs[0] = (y * Q, z)
    try:
        bad = O.fam_antipode(ctx_for(engine))
    finally:
        engine.alg.antipode_coeffs[0] = saved
    assert any("antipode coefficient b" in b for b in bad)


def test_tampered_determinant_is_detected(engine):
    saved = engine.alg.det_coeff[1]
    engine.alg.det_coeff[1] = saved * Q
    try:
        bad = O.fam_det(ctx_for(engine))
    finally:
        engine.alg.det_coeff[1] = saved
    assert bad


def test_oracle_confirms_inverted_exchange(engine):
    # the printed exchange scalars also fail numerically
    assert O.fam_exchange(ctx_for(engine))


def test_only_passes_are_reverified():
    rep = Report({})
    rep.add(CheckResult(id="rmatrix.cybe(λ,μ,ν)", paper_ref="x"))
    rep.add(CheckResult(id="rmatrix.nonadditive", paper_ref="x", verdict="FAIL"))
    rep.add(CheckResult(id="made.up.check", paper_ref="x"))
    out = {r.id: r for r in O.oracle_specialize(SuiteConfig(oracle_trials=2), rep)}
    assert set(out) == {"oracle.cybe", "oracle.coverage"}
    assert out["oracle.cybe"].verdict == "PASS"
    assert out["oracle.coverage"].details["uncovered"] == ["made.up.check"]
    assert out["oracle.coverage"].verdict == "FAIL"


def test_seeded_runs_repeat():
    cfg = SuiteConfig(suites=("ybe", "oracle"), oracle_trials=3, seed=5, timing=False)
    a, b = run_suite(cfg).dumps(False), run_suite(cfg).dumps(False)
    assert a == b
