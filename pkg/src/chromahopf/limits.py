"""Colourless and monochromatic specialisations.

The colourless comparison runs the engine twice, once with symbolic colours
(then sending every colour exponent to 0) and once on a palette whose colours
all carry the value 0 from the start, and demands identical results.

The monochromatic run identifies ``R(λ,λ)`` with the template

    diag(Q, P, P⁻¹, Q),   entry (3,2) = Q − Q⁻¹

by a search over ``Q = q^a``, ``P = q^(b + cλ)`` on a small exponent lattice.
"""
from __future__ import annotations

import itertools
import time
from fractions import Fraction

from .calculus import CalculusContext, derivative_table
from .coordalg import ColouredGLq2, NCPoly, Palette, derive_rtt_relations
from .dualfun import (
    FIXED_PAIR, SWAPPED_PAIR, Functional, Pairing, PairingConvention, extract_generators, measure_conjugation, primitive,
)
from .report import CheckResult
from .rmatrix import build_R, build_Rminus, build_Rplus, check_cybe, zeros
from .scalars import ColourSymbol, ExponentForm, Scalar, as_form, qpow

LATTICE = tuple(Fraction(k, 2) for k in range(-4, 5))


def poly_limit(p: NCPoly, fn) -> NCPoly:
    out = {}
    for w, c in p.items():
        v = fn(c)
        if v:
            out[w] = v
    return out


def _colourless(x: Scalar) -> Scalar:
    return x.limit_colourless()


def _relation_functionals(lam: int, mu: int) -> dict[str, Functional]:
    gl, gm = extract_generators(lam), extract_generators(mu)
    return {
        "B_λ∗B_μ": gl.B * gm.B, "B_μ∗B_λ": gm.B * gl.B,
        "C_λ∗C_μ": gl.C * gm.C, "C_μ∗C_λ": gm.C * gl.C,
        "C_λ∗B_μ": gl.C * gm.B, "B_μ∗C_λ": gm.B * gl.C,
        "k2_λ∗kt1_μ": gl.k2 * gm.kt1, "k1_λ∗kt2_μ": gl.k1 * gm.kt2,
    }


def _conjugation_table(pairing: Pairing, words) -> dict[str, Scalar | None]:
    g0, g1 = extract_generators(0), extract_generators(1)
    out = {}
    for kn in ("k1", "k2", "kt1", "kt2"):
        for fn in ("B", "C"):
            for (kc, gk), (fc, gf) in itertools.product(((0, g0), (1, g1)), repeat=2):
                out[f"{kn}_{kc} on {fn}_{fc}"] = measure_conjugation(pairing, getattr(gk, kn), getattr(gf, fn), words)
    return out


def check_colourless_limit(max_degree: int = 2, convention: PairingConvention = SWAPPED_PAIR) -> list[CheckResult]:
    """Symbolic run sent to λ=μ=0 versus a run built colourless from the start."""
    sym = ColouredGLq2(Palette.symbolic(2))
    col = ColouredGLq2(Palette.colourless(2))
    col_conv = convention
    if convention.kind == "fixed":
        col_conv = FIXED_PAIR(*(ExponentForm(f.const) for f in convention.fixed))
    ps, pc = Pairing(sym, convention), Pairing(col, col_conv)
    out = []
    lab = convention.label()
    req = convention.kind == "swapped"

    # R and R±
    t0 = time.perf_counter()
    bad = []
    for a, b in itertools.product(range(2), repeat=2):
        for name, build in (("R", build_R), ("R+", build_Rplus), ("R-", build_Rminus)):
            ms = build(sym.palette.value(a), sym.palette.value(b))
            mc = build(col.palette.value(a), col.palette.value(b))
            for i, j in itertools.product(range(4), repeat=2):
                if ms[i][j].limit_colourless() != mc[i][j]:
                    bad.append((name, a, b, i, j))
    out.append(_result("limits.colourless.R", "colourless limit λ = μ = 0 of the coloured R-matrix", bad,
                       {"matrices": 12}, t0))

    words = sym.monomials_up_to(max_degree)
    cwords = col.monomials_up_to(max_degree)

    # L± values on monomials
    t0 = time.perf_counter()
    bad = []
    prims = [primitive(s, i, j, g) for s in (1, -1) for g in range(2) for i in range(2) for j in range(2)]
    for f in prims:
        for w in words:
            if ps.evaluate(f, w).limit_colourless() != pc.evaluate(f, w):
                bad.append((f, w))
    out.append(_result(f"limits.colourless.L_values[{lab}]", "colourless limit of the L-plus/L-minus pairings",
                       bad, {"primitives": len(prims), "monomials": len(words)}, t0, req))

    # dual relations: the products entering the exchange and cross relations, and the conjugation scalars
    t0 = time.perf_counter()
    bad = []
    for name, f in _relation_functionals(0, 1).items():
        for w in words:
            if ps.evaluate(f, w).limit_colourless() != pc.evaluate(f, w):
                bad.append((name, w))
    cs, cc = _conjugation_table(ps, words), _conjugation_table(pc, cwords)
    for k in cs:
        a, b = cs[k], cc[k]
        if (a is None) != (b is None) or (a is not None and a.limit_colourless() != b):
            bad.append((k,))
    out.append(_result(f"limits.colourless.dual_relations[{lab}]", "colourless limit of the dual algebra relations",
                       bad, {"products": 8, "conjugation_scalars": len(cs),
                             "colourless_values": {k: v.render() if v is not None else None for k, v in cc.items()}},
                       t0, req))

    # calculus: derivative tables for every (generator, functional) colour pair
    t0 = time.perf_counter()
    bad = []
    for fc in range(2):
        cts, ctc = CalculusContext(ps, fc), CalculusContext(pc, fc)
        for gc in range(2):
            ts, tc = derivative_table(cts, gc, "right"), derivative_table(ctc, gc, "right")
            for key in ts:
                if poly_limit(ts[key], _colourless) != tc[key]:
                    bad.append((gc, fc, key))
    out.append(_result(f"limits.colourless.calculus[{lab}]", "colourless limit of the exterior derivative", bad,
                       {"coefficients": 64}, t0, req))
    return out


def _result(cid: str, ref: str, bad: list, details: dict, t0: float, required: bool = True) -> CheckResult:
    return CheckResult(
        id=cid, paper_ref=ref, verdict="PASS" if not bad else "FAIL", required=required,
        millis=(time.perf_counter() - t0) * 1000,
        details={**details, "mismatches": len(bad), "first": repr(bad[0]) if bad else None},
    )


# ------------------------------------------------------------- monochromatic

def template_R(Q: Scalar, P: Scalar):
    R = zeros(4)
    R[0][0] = R[3][3] = Q
    R[1][1], R[2][2] = P, P.inverse()
    R[2][1] = Q - Q.inverse()
    return tuple(tuple(r) for r in R)


def lattice_search(target, kept: ColourSymbol, lattice=LATTICE) -> list[tuple[Fraction, Fraction, Fraction]]:
    """All ``(a, b, c)`` with ``template(q^a, q^(b+cλ)) == target``."""
    hits = []
    for a, b, c in itertools.product(lattice, repeat=3):
        Q = qpow(a)
        P = qpow(ExponentForm(b, {kept.id: c} if c else {}))
        if template_R(Q, P) == tuple(tuple(r) for r in target):
            hits.append((a, b, c))
    return hits


def exponent_rank(polys) -> int:
    """Rank of the lattice spanned by the exponent forms occurring as coefficients."""
    vecs = set()
    for p in polys:
        for c in p.values():
            for (e, _, _), _v in c.terms.items():
                vecs.add((e.const,) + tuple(v for _, v in sorted(e.coeffs)))
    rows = [list(v) for v in vecs if any(v)]
    width = max((len(r) for r in rows), default=0)
    rows = [r + [Fraction(0)] * (width - len(r)) for r in rows]
    rank = 0
    for col in range(width):
        piv = next((r for r in rows[rank:] if r[col]), None)
        if piv is None:
            continue
        idx = rows.index(piv, rank)
        rows[rank], rows[idx] = rows[idx], rows[rank]
        for r in rows[rank + 1:]:
            if r[col]:
                f = r[col] / piv[col]
                for k in range(col, width):
                    r[k] -= f * piv[k]
        rank += 1
    return rank


def check_monochromatic(n_colours: int = 2) -> list[CheckResult]:
    t0 = time.perf_counter()
    pal = Palette.monochromatic(n_colours)
    kept = pal.symbols[0]
    lam = pal.value(0)
    R = build_R(lam, lam)
    hits = lattice_search(R, kept)
    found = hits[0] if len(hits) == 1 else None
    out = []
    details = {"lattice": [str(x) for x in LATTICE], "solutions": [[str(x) for x in h] for h in hits]}
    sub = None
    if found:
        a, b, c = found
        Qs, Ps = qpow(a), qpow(ExponentForm(b, {kept.id: c} if c else {}))
        sub = {"Q": Qs.render(pal.names), "P": Ps.render(pal.names)}
        details["substitution"] = sub
    out.append(CheckResult(
        id="limits.monochromatic.substitution",
        paper_ref="monochromatic limit λ = μ ≠ 0 giving the two-parameter GL_{p,q}(2)",
        verdict="PASS" if found else "FAIL", required=True,
        millis=(time.perf_counter() - t0) * 1000, details=details,
    ))

    # the template with an independent second unit is itself a braiding
    t0 = time.perf_counter()
    free = ColourSymbol(99, "π")
    res = check_cybe(free, free, free, builder=lambda x, y: template_R(qpow(1), qpow(as_form(free))))
    res.id = "limits.monochromatic.template_ybe"
    res.paper_ref = "two-parameter R-matrix template"
    res.required = True
    out.append(res)

    # monochromatic relations are the template relations, and carry exactly two independent units
    t0 = time.perf_counter()
    alg = ColouredGLq2(pal)
    bad = []
    if found:
        for x, y in itertools.product(range(n_colours), repeat=2):
            mine = derive_rtt_relations(x, y, pal)
            theirs = derive_rtt_relations(x, y, pal, R=template_R(Qs, Ps))
            if sorted(map(_canon, mine)) != sorted(map(_canon, theirs)):
                bad.append((x, y))
    rank = exponent_rank(r for rels in alg.relations.values() for r in rels)
    out.append(CheckResult(
        id="limits.monochromatic.relations",
        paper_ref="monochromatic limit λ = μ ≠ 0 giving the two-parameter GL_{p,q}(2)",
        verdict="PASS" if found and not bad and rank == 2 else "FAIL", required=True,
        millis=(time.perf_counter() - t0) * 1000,
        details={"exponent_lattice_rank": rank, "colour_pairs_mismatching": len(bad),
                 "quadratic_rules": alg.quadratic_rule_count},
    ))
    return out


def _canon(p: NCPoly) -> tuple:
    return tuple(sorted((w, repr(sorted(c.terms.items(), key=repr))) for w, c in p.items()))
