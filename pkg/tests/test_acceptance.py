"""One test per acceptance criterion, all read from a single default run.

Each test records a pass/fail line (printed in the terminal summary) before
asserting, so failing criteria still show what was measured.
"""
import time
from math import comb

import pytest

from chromahopf.cli import SuiteConfig, run_ybe, Engine, run_suite
from chromahopf.geodual import TANGENTS, basis_enumerate, geo_pair_derivative, geo_pair_formula


@pytest.fixture(scope="session")
def run():
    t0 = time.perf_counter()
    report = run_suite(SuiteConfig())
    return report, time.perf_counter() - t0


def by_prefix(report, prefix):
    return [c for c in report.checks if c.id.startswith(prefix)]


def failing(checks):
    return [c.id for c in checks if c.verdict != "PASS"]


def test_full_run_within_budget(run):
    _, seconds = run
    assert seconds < 300


def test_criterion_1_coloured_ybe(run, record):
    report, _ = run
    cybe = by_prefix(report, "rmatrix.cybe")
    t0 = time.perf_counter()
    fresh = run_ybe(Engine(SuiteConfig(suites=("ybe",))))
    seconds = time.perf_counter() - t0
    bad = failing(cybe) + failing(fresh)
    # three distinct symbols plus the zero colour: every multiset of size 3
    ok = record(1, "coloured Yang-Baxter", not bad and len(cybe) >= 27 and seconds < 10,
                f"{len(cybe)} colour triples, {seconds:.2f} s")
    assert ok, bad


def test_criterion_2_r_plus_minus(run, record):
    report, _ = run
    checks = [report.by_id("rmatrix.R+_closed_form"), report.by_id("rmatrix.R-_closed_form")]
    ok = record(2, "R-plus and R-minus entries", not failing(checks))
    assert ok


def test_criterion_3_coordinate_hopf_algebra(run, record):
    report, _ = run
    ids = ["coordalg.confluence", "coordalg.single_colour_counts", "coordalg.closed_form_antipode[r=q,λ]"]
    checks = [report.by_id(i) for i in ids]
    checks += by_prefix(report, "coordalg.hopf.") + by_prefix(report, "coordalg.det_grouplike")
    checks += by_prefix(report, "coordalg.det_not_central")
    counts = report.by_id("coordalg.single_colour_counts").details["counts"]
    counts_ok = counts == [comb(d + 3, 3) for d in range(5)]
    bad = failing(checks)
    ok = record(3, "coordinate Hopf algebra", not bad and counts_ok, f"failing: {', '.join(bad)}" if bad else "")
    assert ok, bad


def test_criterion_4_rll(run, record):
    report, _ = run
    rll = [c for c in by_prefix(report, "dualfun.rll[") if c.required]
    deg = report.by_id("dualfun.fixed_pair_degeneracy")
    entries = sum(c.details["entries"] for c in rll)
    ok = (len(rll) == 3 and not failing(rll) and entries == 3 * 16 * 3
          and deg.verdict == "FINDING" and deg.details["B_identical"] and deg.details["C_identical"])
    record(4, "RLL relations through degree 3", ok, f"{len(rll)} families, {entries} entries")
    assert ok


def test_criterion_5_dual_relations(run, record):
    report, _ = run
    checks = (by_prefix(report, "dualfun.exchange[") + by_prefix(report, "dualfun.cross_relation[")
              + by_prefix(report, "dualfun.conjugation_probes[") + by_prefix(report, "dualfun.hprime_central["))
    vals = by_prefix(report, "limits.colourless.dual_relations")[0].details["colourless_values"]
    q_ok = {vals["k1_0 on B_0"], vals["k1_0 on C_0"]} == {"q", "q^(-1)"}
    bad = failing(checks)
    ok = record(5, "dual algebra relations", not bad and q_ok, f"failing: {', '.join(bad)}" if bad else "")
    assert ok, bad


def test_criterion_6_dual_hopf_maps(run, record):
    report, _ = run
    checks = (by_prefix(report, "dualfun.twisting_character[") + by_prefix(report, "dualfun.colourless_twist_values[")
              + by_prefix(report, "dualfun.functional_antipode[") + by_prefix(report, "dualfun.dual_counit["))
    bad = failing(checks)
    ok = record(6, "dual coproduct, antipode and counit", len(checks) == 4 and not bad,
                f"failing: {', '.join(bad)}" if bad else "")
    assert ok, bad


def test_criterion_7_calculus(run, record):
    report, _ = run
    coeff = [c for c in by_prefix(report, "calculus.closed_form_derivatives[") if c.required]
    checks = coeff + by_prefix(report, "calculus.d_on_relations[") + by_prefix(report, "calculus.leibniz[")
    leibniz = by_prefix(report, "calculus.leibniz[")[0]
    bad = failing(checks)
    note = f"failing: {', '.join(bad)}; {coeff[0].details['mismatches']['right']} of 32 coefficients differ" if bad else ""
    ok = record(7, "first-order calculus", len(coeff) == 1 and not bad and leibniz.details["pairs"] == 64, note)
    assert ok, bad


def test_criterion_8_geometric_dual(run, record):
    report, _ = run
    checks = [report.by_id("geodual.delta_formulas"), report.by_id("geodual.matrix_units")]
    routes = all(geo_pair_formula(t, g) == geo_pair_derivative(t, g)
                 for c in (0, 1) for g in basis_enumerate(c, 4) for t in (None,) + TANGENTS)
    unit = all(geo_pair_formula(None, g) == int(g.m == 0 and g.n == 0) for g in basis_enumerate(0, 4))
    ok = record(8, "tangent-vector pairings", not failing(checks) and routes and unit,
                f"{checks[0].details['pairs']} pairings")
    assert ok


def test_criterion_9_limits(run, record):
    report, _ = run
    checks = by_prefix(report, "limits.")
    sub = report.by_id("limits.monochromatic.substitution").details.get("substitution")
    bad = failing(checks)
    ok = record(9, "colourless and monochromatic limits", len(checks) == 7 and not bad and sub is not None,
                f"substitution {sub}")
    assert ok, bad


def test_criterion_10_oracle(run, record):
    report, _ = run
    oracle = by_prefix(report, "oracle.")
    covered = {i for c in oracle for i in c.details.get("reverifies", [])}
    symbolic_pass = {c.id for c in report.checks if c.verdict == "PASS" and not c.id.startswith("oracle.")}
    trials = {c.details["trials"] for c in oracle}
    bad = failing(oracle)
    disagreements = sum(c.details.get("disagreements", 0) for c in oracle)
    ok = record(10, "oracle agreement", not bad and symbolic_pass <= covered and trials == {20},
                f"{len(covered)} checks over {len(oracle) - 1} families, {disagreements} disagreements")
    assert ok, bad
