"""``verify``: run the check suites and write JSON/markdown reports."""
from __future__ import annotations

import argparse
import sys
import time
import traceback
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import calculus, coordalg, dualfun, geodual, limits, rmatrix
from .coordalg import ColouredGLq2, Palette
from .report import CheckResult, Report
from .scalars import ExponentForm

SUITES = ("ybe", "hopf", "rll", "dual", "calculus", "geodual", "limits", "oracle")
CONVENTIONS = {"swapped": "swapped", "colour-pair": "colour", "fixed-pair": "fixed"}


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suites: tuple[str, ...] = SUITES
    max_degree: int = 3
    convention: str = "swapped"
    colours: int = 3
    cplus: str = "sym"
    cminus: str = "sym"
    oracle_trials: int = 20
    seed: int = 0
    hopf_degree: int = 4
    timing: bool = True

    def __post_init__(self):
        self.suites = tuple(self.suites)
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite(s): {', '.join(bad)}")
        if not 2 <= self.max_degree <= 5:
            raise ConfigError("max_degree must lie in [2, 5]")
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"unknown convention {self.convention!r}")
        if not 2 <= self.colours <= 5:
            raise ConfigError("colour count must lie in [2, 5]")
        if self.oracle_trials < 1:
            raise ConfigError("oracle trials must be >= 1")
        for v in (self.cplus, self.cminus):
            if v != "sym":
                parse_rational(v)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["suites"] = list(self.suites)
        d.pop("timing")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteConfig":
        return cls(**d)


def parse_rational(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"not a rational: {text!r}") from e
    if not v:
        raise ConfigError("c± must be nonzero")
    return v


def _pairing_convention(cfg: SuiteConfig, pal: Palette) -> dualfun.PairingConvention:
    kind = CONVENTIONS[cfg.convention]
    if kind == "fixed":
        return dualfun.FIXED_PAIR(pal.value(0), pal.value(1))
    return dualfun.PairingConvention(kind)


class Engine:
    """Lazily built shared objects for one run."""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.palette = Palette.symbolic(cfg.colours)
        self._alg = None
        self._pairing = None

    @property
    def alg(self) -> ColouredGLq2:
        if self._alg is None:
            self._alg = ColouredGLq2(self.palette)
        return self._alg

    @property
    def pairing(self) -> dualfun.Pairing:
        if self._pairing is None:
            self._pairing = dualfun.Pairing(self.alg, _pairing_convention(self.cfg, self.palette))
        return self._pairing


def run_ybe(eng: Engine) -> list[CheckResult]:
    syms = list(eng.palette.symbols[:3])
    out = rmatrix.check_cybe_all(syms + [ExponentForm(0)])
    lam, mu = eng.palette.symbols[:2]
    out += rmatrix.check_R_pm_closed_form(lam, mu)
    out.append(rmatrix.check_nonadditive(lam, mu))
    return out


def run_hopf(eng: Engine) -> list[CheckResult]:
    alg = eng.alg
    out = [coordalg.check_confluence(alg, eng.cfg.hopf_degree), coordalg.check_word_counts(alg, eng.cfg.hopf_degree)]
    out += coordalg.hopf_axiom_suite(alg, 2)
    for c in range(alg.n):
        out += coordalg.check_determinant(alg, c)
    out.append(coordalg.check_literal_hopf_data(alg, 0, 1))
    inv = coordalg.check_literal_hopf_data(alg, 0, -1)
    inv.required = False
    out.append(inv)
    out.append(coordalg.mixed_sector_dimensions(alg, 3))
    return out


def run_rll(eng: Engine) -> list[CheckResult]:
    p = eng.pairing
    out = [dualfun.check_well_defined(p)]
    out += dualfun.check_rll(p, eng.cfg.max_degree, "ml")
    out += dualfun.check_rll(p, 2, "lm")
    return out


def run_dual(eng: Engine) -> list[CheckResult]:
    p = eng.pairing
    out = dualfun.check_dual_relations(p, eng.cfg.max_degree, 2)
    out += dualfun.check_twisting(p, 0)
    col = Palette.colourless(2)
    out.append(dualfun.check_colourless_twist(dualfun.Pairing(ColouredGLq2(col), _pairing_convention(eng.cfg, col))))
    out += dualfun.functional_antipode_check(p, 0, 2)
    out.append(dualfun.fixed_pair_degeneracy(eng.alg))
    return out


def run_calculus(eng: Engine) -> list[CheckResult]:
    p = eng.pairing
    out = [calculus.check_closed_form_derivatives(p, assignment="generator"),
           calculus.check_closed_form_derivatives(p, assignment="functional")]
    out += calculus.check_leibniz_and_ideal(p)
    return out


def run_geodual(eng: Engine) -> list[CheckResult]:
    alg = eng.alg
    out = [
        geodual.check_pairing_formulas(max(4, eng.cfg.max_degree)),
        geodual.matrix_unit_check(),
        geodual.check_product_examples(alg),
        geodual.commutator_colourless(ColouredGLq2(Palette.colourless(2))),
        geodual.gram_rank(alg),
    ]
    col = dualfun.Pairing(ColouredGLq2(Palette.colourless(2)), _pairing_convention(eng.cfg, Palette.colourless(2)))
    out += geodual.cross_validate(col, eng.cfg.max_degree, required=True)
    out += geodual.cross_validate(eng.pairing, eng.cfg.max_degree, required=False)
    return out


def run_limits(eng: Engine) -> list[CheckResult]:
    conv = _pairing_convention(eng.cfg, Palette.symbolic(2))
    return limits.check_colourless_limit(2, conv) + limits.check_monochromatic(2)


RUNNERS = {
    "ybe": run_ybe, "hopf": run_hopf, "rll": run_rll, "dual": run_dual,
    "calculus": run_calculus, "geodual": run_geodual, "limits": run_limits,
}


def run_suite(cfg: SuiteConfig) -> Report:
    eng = Engine(cfg)
    report = Report(cfg.to_dict())
    for name in SUITES:
        if name in cfg.suites and name in RUNNERS:
            t0 = time.perf_counter()
            results = RUNNERS[name](eng)
            for r in results:
                r.details.setdefault("suite", name)
            report.extend(results)
            report.config.setdefault("suite_seconds", {})[name] = round(time.perf_counter() - t0, 2) if cfg.timing else 0
    if "oracle" in cfg.suites:
        from .oracle import oracle_specialize

        report.extend(oracle_specialize(cfg, report))
    return report


def write_report(report: Report, directory: Path, fmt: str, timing: bool) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    if fmt in ("json", "both"):
        p = directory / "report.json"
        p.write_text(report.dumps(timing), encoding="utf-8")
        paths.append(p)
    if fmt in ("md", "both"):
        p = directory / "report.md"
        p.write_text(report.markdown(), encoding="utf-8")
        paths.append(p)
    return paths


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="verify", description="Exact verification of the coloured GL_q(2) quantum group.")
    ap.add_argument("--suite", default="all", help="comma list of %s, or 'all'" % ",".join(SUITES))
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--convention", default="swapped", choices=sorted(CONVENTIONS))
    ap.add_argument("--colours", type=int, default=3)
    ap.add_argument("--cplus", default="sym")
    ap.add_argument("--cminus", default="sym")
    ap.add_argument("--oracle-trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--report", default="report")
    ap.add_argument("--format", default="both", choices=("json", "md", "both"))
    ap.add_argument("--no-timing", action="store_true", help="zero all timings so reports are byte-reproducible")
    return ap


def config_from_args(ns: argparse.Namespace) -> SuiteConfig:
    suites = SUITES if ns.suite == "all" else tuple(s.strip() for s in ns.suite.split(",") if s.strip())
    return SuiteConfig(
        suites=suites, max_degree=ns.max_degree, convention=ns.convention, colours=ns.colours,
        cplus=ns.cplus, cminus=ns.cminus, oracle_trials=ns.oracle_trials, seed=ns.seed,
        timing=not ns.no_timing,
    )


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
        cfg = config_from_args(ns)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    try:
        report = run_suite(cfg)
        paths = write_report(report, Path(ns.report), ns.format, cfg.timing)
    except Exception:
        traceback.print_exc()
        return 3
    s = report.summary()
    failing = report.required_failures()
    print(f"PASS {s['pass']}  FAIL {s['fail']}  FINDING {s['finding']}  -> {', '.join(map(str, paths))}")
    for r in failing:
        print(f"  required FAIL: {r.id}")
    return 1 if failing else 0


if __name__ == "__main__":
    sys.exit(main())
