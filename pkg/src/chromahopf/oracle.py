"""Numeric re-verification at random exact rational points.

The symbolic kernel is not used for any arithmetic here.  R-matrices, the
defining relations, the quotient algebra in low degree, functionals, the
antipode and the calculus are rebuilt over ``Fraction`` at a point
``q = s⁴`` (so quarter-integer colour exponents stay rational).  Only the
letter numbering is shared with the engine, so that normal words and
symbolic values can be compared.  Symbolic outputs (coefficients, counts,
tables) are evaluated with this module's own term evaluator.

Every family below re-checks one group of symbolic PASS verdicts; a family
disagrees when its numeric residual is nonzero or a symbolic value differs
from the numeric one.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .coordalg import (
    A, B, C, D, DINV, RANK_POS, ColouredGLq2, Palette, T, colour_of, kind_of, letter, word_key,
)
from .report import CheckResult, Report
from .scalars import ExponentForm, NonRationalPower, Scalar

F0, F1 = Fraction(0), Fraction(1)
Poly = dict  # word -> Fraction


# ------------------------------------------------------------------ points

@dataclass
class NPoint:
    s: Fraction
    cols: dict
    cp: Fraction
    cm: Fraction

    @property
    def q(self) -> Fraction:
        return self.s ** 4

    def pw(self, e) -> Fraction:
        n = Fraction(e) * 4
        if n.denominator != 1:
            raise NonRationalPower(f"q^{e} at q = {self.q}")
        return self.s ** int(n)

    def form(self, e: ExponentForm) -> Fraction:
        return e.const + sum((v * self.cols[k] for k, v in e.coeffs), F0)

    def scalar(self, x: Scalar) -> Fraction:
        total = F0
        for (e, p, m), c in x.terms.items():
            total += c * self.pw(self.form(e)) * self.cp ** p * self.cm ** m
        return total

    def with_colours(self, cols: dict) -> "NPoint":
        return NPoint(self.s, dict(cols), self.cp, self.cm)

    def describe(self) -> str:
        cs = ", ".join(f"c{k}={v}" for k, v in sorted(self.cols.items()))
        return f"q={self.q}, {cs}, c+={self.cp}, c-={self.cm}"


def random_point(rng: random.Random, n: int, cplus=None, cminus=None) -> NPoint:
    """q a fourth power in [2, 81]; distinct nonzero quarter-integer colours."""
    s = Fraction(rng.randint(6, 15), 5)
    vals = rng.sample([k for k in range(-8, 9) if k], n)
    cols = {i: Fraction(v, 4) for i, v in enumerate(vals)}

    def unit():
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))

    cp = Fraction(cplus) if cplus is not None else unit()
    cm = Fraction(cminus) if cminus is not None else unit()
    return NPoint(s, cols, cp, cm)


# ---------------------------------------------------------------- matrices

def mmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), F0) for j in range(len(b[0]))] for i in range(len(a))]


def msub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mscale(c, a):
    return [[c * x for x in r] for r in a]


def eye(n):
    return [[F1 if i == j else F0 for j in range(n)] for i in range(n)]


def kron(a, b):
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


def minv(a):
    n = len(a)
    m = [list(r) + e for r, e in zip(a, eye(n))]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c])
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [r[n:] for r in m]


def is_zero(a) -> bool:
    return all(not x for r in a for x in r)


FLIP = [[F1 if j == 2 * (i % 2) + i // 2 else F0 for j in range(4)] for i in range(4)]


def num_R(pt: NPoint, x: Fraction, y: Fraction):
    q = pt.q
    m = [[F0] * 4 for _ in range(4)]
    m[0][0] = pt.pw(1 - (x - y))
    m[1][1] = pt.pw(x + y)
    m[2][2] = pt.pw(-(x + y))
    m[3][3] = pt.pw(1 + (x - y))
    m[2][1] = q - 1 / q
    return m


def num_Rplus(pt, x, y):
    return mscale(pt.cp, mmul(mmul(FLIP, num_R(pt, x, y)), FLIP))


def num_Rminus(pt, x, y):
    return mscale(pt.cm, minv(num_R(pt, x, y)))


def template(pt: NPoint, Qv: Fraction, Pv: Fraction):
    m = [[F0] * 4 for _ in range(4)]
    m[0][0] = m[3][3] = Qv
    m[1][1], m[2][2] = Pv, 1 / Pv
    m[2][1] = Qv - 1 / Qv
    return m


def ybe_residual(r12, r13, r23):
    i2 = eye(2)
    perm = [4 * i + 2 * k + j for i in range(2) for j in range(2) for k in range(2)]
    p23 = [[F1 if perm[i] == j else F0 for j in range(8)] for i in range(8)]
    e12, e23 = kron(r12, i2), kron(i2, r23)
    e13 = mmul(mmul(p23, kron(r13, i2)), p23)
    return msub(mmul(mmul(e12, e13), e23), mmul(mmul(e23, e13), e12))


# ------------------------------------------------------------- polynomials

def padd(p: Poly, q: Poly, c=F1) -> Poly:
    out = dict(p)
    for w, v in q.items():
        s = out.get(w, F0) + c * v
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = w1 + w2
            s = out.get(w, F0) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def rtt_relations(pt: NPoint, al: int, be: int, R=None) -> list[Poly]:
    R = R if R is not None else num_R(pt, pt.cols[al], pt.cols[be])
    rels = []
    for i, j, k, l in itertools.product(range(2), repeat=4):
        rel: Poly = {}
        for m, n in itertools.product(range(2), repeat=2):
            if R[2 * i + j][2 * m + n]:
                rel = padd(rel, {(T(al, m, k), T(be, n, l)): R[2 * i + j][2 * m + n]})
            if R[2 * m + n][2 * k + l]:
                rel = padd(rel, {(T(be, j, n), T(al, i, m)): -R[2 * m + n][2 * k + l]})
        if rel:
            rels.append(rel)
    return rels


class Quotient:
    """Degree-d piece of the polynomial quotient over a set of colours.

    The ideal component is put in echelon form with the largest word as
    pivot; reducing a vector leaves it supported on non-pivot words, which
    are the normal words of a confluent rewriting system for the same order.
    """

    def __init__(self, pt: NPoint, colours: tuple, degree: int):
        self.degree = degree
        self.letters = sorted(T(c, i, k) for c in colours for i in range(2) for k in range(2))
        rels = [r for a in colours for b in colours for r in rtt_relations(pt, a, b)]
        self.piv: dict[tuple, Poly] = {}
        for p in range(degree - 1):
            for u in itertools.product(self.letters, repeat=p):
                for v in itertools.product(self.letters, repeat=degree - 2 - p):
                    for r in rels:
                        self._insert({u + w + v: c for w, c in r.items()})

    def _lead(self, p: Poly):
        return max(p, key=word_key)

    def _insert(self, row: Poly) -> None:
        row = self.reduce(row)
        if row:
            lw = self._lead(row)
            c = row[lw]
            self.piv[lw] = {w: v / c for w, v in row.items()}

    def reduce(self, p: Poly) -> Poly:
        p = dict(p)
        while True:
            hits = [w for w in p if w in self.piv]
            if not hits:
                return p
            w = max(hits, key=word_key)
            p = padd(p, self.piv[w], -p[w])

    @property
    def dimension(self) -> int:
        return len(self.letters) ** self.degree - len(self.piv)


class Algebra:
    """Quotients by degree and colour set, plus numerically derived Hopf data."""

    def __init__(self, pt: NPoint):
        self.pt = pt
        self._q: dict = {}
        self._hopf: dict = {}

    def quotient(self, colours, degree) -> Quotient:
        key = (tuple(sorted(set(colours))), degree)
        if key not in self._q:
            self._q[key] = Quotient(self.pt, key[0], degree)
        return self._q[key]

    def reduce(self, p: Poly) -> Poly:
        """Normal coordinates of a homogeneous-by-degree polynomial without Dinv letters."""
        out: Poly = {}
        by_deg: dict[int, Poly] = {}
        for w, c in p.items():
            by_deg.setdefault(len(w), {})[w] = c
        for d, part in by_deg.items():
            if d < 2:
                out = padd(out, part)
                continue
            cols = {colour_of(x) for w in part for x in w}
            out = padd(out, self.quotient(cols, d).reduce(part))
        return out

    def reduce_tensor(self, t: dict) -> dict:
        """(π⊗π) on a dict ``(w1, w2) -> c``."""
        left: dict = {}
        for (w1, w2), c in t.items():
            left.setdefault(w2, {})
            left[w2] = padd(left[w2], {w1: c})
        stage: dict = {}
        for w2, p in left.items():
            for u1, c in self.reduce(p).items():
                stage.setdefault(u1, {})
                stage[u1] = padd(stage[u1], {w2: c})
        out: dict = {}
        for u1, p in stage.items():
            for u2, c in self.reduce(p).items():
                out[(u1, u2)] = c
        return out

    # numerically derived Hopf data
    def det_coeff(self, al: int) -> Fraction:
        key = ("x", al)
        if key not in self._hopf:
            a, d, b, c = (letter(k, al) for k in (A, D, B, C))
            e0 = padd(coproduct_poly({(a, d): F1}), tensor({(a, d): F1}, {(a, d): F1}), -F1)
            e1 = padd(padd(coproduct_poly({(c, b): -F1}), tensor({(a, d): F1}, {(c, b): F1})),
                      tensor({(c, b): F1}, {(a, d): F1}))
            e2 = tensor({(c, b): F1}, {(c, b): F1}, -F1)
            e0, e1, e2 = (self.reduce_tensor(e) for e in (e0, e1, e2))
            x = next(-e0.get(k, F0) / v for k, v in e1.items() if v and k not in e2)
            self._hopf[key] = x
        return self._hopf[key]

    def determinant(self, al: int) -> Poly:
        a, d, b, c = (letter(k, al) for k in (A, D, B, C))
        return {(a, d): F1, (c, b): -self.det_coeff(al)}

    def ratio(self, p: Poly, q: Poly) -> Fraction | None:
        """k with π(p) = k π(q), or None."""
        rp, rq = self.reduce(p), self.reduce(q)
        if not rq:
            return None
        w = next(iter(rq))
        k = rp.get(w, F0) / rq[w]
        return k if not padd(rp, rq, -k) else None

    def antipode_coeffs(self, al: int) -> tuple[Fraction, Fraction]:
        key = ("yz", al)
        if key not in self._hopf:
            a, d, b, c = (letter(k, al) for k in (A, D, B, C))
            self._hopf[key] = (self.ratio({(d, b): F1}, {(b, d): F1}), self.ratio({(a, c): F1}, {(c, a): F1}))
        return self._hopf[key]

    def kappa(self, al: int, y: int) -> Fraction | None:
        """κ with D_α y = κ y D_α."""
        key = ("k", al, y)
        if key not in self._hopf:
            det = self.determinant(al)
            self._hopf[key] = self.ratio(pmul(det, {(y,): F1}), pmul({(y,): F1}, det))
        return self._hopf[key]

    def antipode_letter(self, x: int) -> Poly:
        k, al = kind_of(x), colour_of(x)
        dv = letter(DINV, al)
        if k == DINV:
            return self.determinant(al)
        y, z = self.antipode_coeffs(al)
        return {A: {(dv, letter(D, al)): F1}, D: {(dv, letter(A, al)): F1},
                B: {(dv, letter(B, al)): -y}, C: {(dv, letter(C, al)): -z}}[k]

    def antipode(self, p: Poly) -> Poly:
        out: Poly = {}
        for w, c in p.items():
            acc: Poly = {(): c}
            for x in w:
                acc = pmul(self.antipode_letter(x), acc)
            out = padd(out, acc)
        return out


def tensor(p: Poly, q: Poly, c=F1) -> dict:
    return {(w1, w2): c * c1 * c2 for w1, c1 in p.items() for w2, c2 in q.items()}


def letter_split(x: int) -> list[tuple[int, int]]:
    if kind_of(x) == DINV:
        return [(x, x)]
    i, k = RANK_POS[kind_of(x)]
    c = colour_of(x)
    return [(T(c, i, m), T(c, m, k)) for m in range(2)]


def word_coproduct(w: tuple) -> list[tuple[tuple, tuple]]:
    out = [((), ())]
    for x in w:
        out = [(l + (a,), r + (b,)) for l, r in out for a, b in letter_split(x)]
    return out


def coproduct_poly(p: Poly) -> dict:
    out: dict = {}
    for w, c in p.items():
        for k in word_coproduct(w):
            out[k] = out.get(k, F0) + c
    return {k: v for k, v in out.items() if v}


def counit_word(w: tuple) -> Fraction:
    for x in w:
        k = kind_of(x)
        if k in (B, C):
            return F0
    return F1


# ------------------------------------------------------------- functionals

@dataclass(frozen=True)
class Char:
    """Diagonal character by its values on a and d of every colour."""

    values: tuple  # ((letter, value), ...)

    def value(self, x: int) -> Fraction:
        k = kind_of(x)
        vals = dict(self.values)
        if k in (A, D):
            return vals[x]
        if k == DINV:
            al = colour_of(x)
            return 1 / (vals[letter(A, al)] * vals[letter(D, al)])
        return F0

    def inverse(self) -> "Char":
        return Char(tuple((x, 1 / v) for x, v in self.values))


class Evaluator:
    """Functionals as lists ``[(coeff, atoms)]``; atoms are L entries or Chars."""

    def __init__(self, alg: Algebra, convention: str, fixed=None, colours: int = 3):
        self.alg = alg
        self.pt = alg.pt
        self.convention = convention
        self.fixed = fixed
        self.n = colours
        self._rho: dict = {}
        self._cache: dict = {}

    def R_instance(self, sign: int, gamma: int, beta: int):
        pt = self.pt
        if self.convention == "fixed":
            g, b = (pt.form(e) for e in self.fixed)
        elif self.convention == "colour" or sign < 0:
            g, b = pt.cols[gamma], pt.cols[beta]
        else:
            g, b = pt.cols[beta], pt.cols[gamma]
        return num_Rplus(pt, g, b) if sign > 0 else num_Rminus(pt, g, b)

    def rho(self, sign: int, gamma: int, x: int):
        key = (sign, gamma, x)
        if key not in self._rho:
            k = kind_of(x)
            if k == DINV:
                al = colour_of(x)
                det = self.alg.determinant(al)
                m = [[F0, F0], [F0, F0]]
                for w, c in det.items():
                    m = [[u + c * v for u, v in zip(r1, r2)]
                         for r1, r2 in zip(m, mmul(self.rho(sign, gamma, w[0]), self.rho(sign, gamma, w[1])))]
                self._rho[key] = minv(m)
            else:
                M = self.R_instance(sign, gamma, colour_of(x))
                kk, ll = RANK_POS[k]
                self._rho[key] = [[M[2 * i + kk][2 * j + ll] for j in range(2)] for i in range(2)]
        return self._rho[key]

    def char_of(self, sign: int, i: int, gamma: int) -> Char:
        vals = []
        for al in range(self.n):
            for k in (A, D):
                x = letter(k, al)
                vals.append((x, self.rho(sign, gamma, x)[i][i]))
        return Char(tuple(vals))

    def atoms_value(self, atoms: tuple, w: tuple) -> Fraction:
        key = (atoms, w)
        if key in self._cache:
            return self._cache[key]
        if not atoms:
            v = counit_word(w)
        else:
            # every coproduct chain of the word, one leg per atom
            legs = [((),) * len(atoms)]
            for x in w:
                if kind_of(x) == DINV:
                    legs = [tuple(l + (x,) for l in lg) for lg in legs]
                    continue
                i, k = RANK_POS[kind_of(x)]
                c = colour_of(x)
                nxt = []
                for idx in self._chains(atoms, i, k):
                    lets = [T(c, idx[t], idx[t + 1]) for t in range(len(atoms))]
                    for lg in legs:
                        nxt.append(tuple(l + (y,) for l, y in zip(lg, lets)))
                legs = nxt
            v = F0
            for lg in legs:
                term = F1
                for a, leg in zip(atoms, lg):
                    term *= self.atom_on_word(a, leg)
                    if not term:
                        break
                v += term
        self._cache[key] = v
        return v

    @staticmethod
    def _chains(atoms: tuple, i: int, k: int) -> list[tuple]:
        """Index paths i = j0, ..., jm = k; a character leg cannot change index."""
        paths = [(i,)]
        for t, a in enumerate(atoms):
            last = t == len(atoms) - 1
            nxt = []
            for p in paths:
                for j in ((k,) if last else range(2)):
                    if isinstance(a, Char) and j != p[-1]:
                        continue
                    nxt.append(p + (j,))
            paths = nxt
        return paths

    def atom_on_word(self, atom, w: tuple) -> Fraction:
        if isinstance(atom, Char):
            v = F1
            for x in w:
                v *= atom.value(x)
            return v
        sign, i, j, gamma = atom
        m = eye(2)
        for x in w:
            m = mmul(m, self.rho(sign, gamma, x))
        return m[i][j]

    def value(self, f: list, p) -> Fraction:
        if isinstance(p, tuple):
            p = {p: F1}
        return sum((c * cw * self.atoms_value(atoms, w) for c, atoms in f for w, cw in p.items()), F0)


def fn_atom(atom, c=F1) -> list:
    return [(c, (atom,))]


def fn_mul(f: list, g: list) -> list:
    return [(c1 * c2, a1 + a2) for c1, a1 in f for c2, a2 in g]


def fn_add(f: list, g: list, c=F1) -> list:
    return f + [(c * x, a) for x, a in g]


def fn_scale(f: list, c) -> list:
    return [(c * x, a) for x, a in f]


class Gens:
    def __init__(self, ev: Evaluator, al: int):
        pt = ev.pt
        q, h = pt.q, pt.pw(Fraction(1, 2))
        self.B = fn_atom((-1, 1, 0, al), 1 / (pt.cm * (1 / q - q)))
        self.C = fn_atom((1, 0, 1, al), 1 / (pt.cp * (q - 1 / q)))
        self.k1 = fn_atom(ev.char_of(1, 0, al), 1 / (pt.cp * h))
        self.k2 = fn_atom(ev.char_of(1, 1, al), 1 / (pt.cp * h))
        self.kt1 = fn_atom(ev.char_of(-1, 0, al), h / pt.cm)
        self.kt2 = fn_atom(ev.char_of(-1, 1, al), h / pt.cm)
        self.chars = {
            "k1": (ev.char_of(1, 0, al), 1 / (pt.cp * h)), "k2": (ev.char_of(1, 1, al), 1 / (pt.cp * h)),
            "kt1": (ev.char_of(-1, 0, al), h / pt.cm), "kt2": (ev.char_of(-1, 1, al), h / pt.cm),
        }

    def inv(self, name: str) -> list:
        ch, c = self.chars[name]
        return fn_atom(ch.inverse(), 1 / c)


# ------------------------------------------------------------------ context

@dataclass
class Ctx:
    pt: NPoint
    engine: "EngineData"
    cfg: object
    _alg: Algebra | None = None
    _ev: dict = field(default_factory=dict)

    @property
    def alg(self) -> Algebra:
        if self._alg is None:
            self._alg = Algebra(self.pt)
        return self._alg

    def ev(self, convention: str | None = None, colours: int = 3) -> Evaluator:
        conv = convention or self.engine.convention
        key = (conv, colours)
        if key not in self._ev:
            fixed = None
            if conv == "fixed":
                fixed = (ExponentForm(0, {0: 1}), ExponentForm(0, {1: 1}))
            self._ev[key] = Evaluator(self.alg, conv, fixed, colours)
        return self._ev[key]


class EngineData:
    """Symbolic objects the oracle compares against, built once."""

    def __init__(self, convention: str, colours: int = 3):
        self.convention = convention
        self.colours = colours
        self.alg = ColouredGLq2(Palette.symbolic(colours))
        self._tables: dict = {}

    def monomials(self, degree: int, colours=None):
        return self.alg.monomials_up_to(degree, colours)


Family = Callable[[Ctx], list]


def _disagree(where: str, got, want) -> list:
    return [] if got == want else [f"{where}: oracle {got} vs claim {want}"]


# ----------------------------------------------------------------- families

def fam_cybe(ctx: Ctx) -> list:
    pt = ctx.pt
    vals = [pt.cols[i] for i in range(3)] + [F0]
    bad = []
    for x, y, z in itertools.product(vals, repeat=3):
        res = ybe_residual(num_R(pt, x, y), num_R(pt, x, z), num_R(pt, y, z))
        if not is_zero(res):
            bad.append(f"YBE residual at colours {x},{y},{z}")
    return bad


def fam_rpm(ctx: Ctx) -> list:
    pt = ctx.pt
    l, m = pt.cols[0], pt.cols[1]
    q, h, hi = pt.q, pt.pw(Fraction(1, 2)), pt.pw(Fraction(-1, 2))
    plus = [[F0] * 4 for _ in range(4)]
    plus[0][0] = hi * pt.pw(1 - l + m)
    plus[1][1] = hi * pt.pw(-(l + m))
    plus[1][2] = hi * (q - 1 / q)
    plus[2][2] = hi * pt.pw(l + m)
    plus[3][3] = hi * pt.pw(1 + l - m)
    minus = [[F0] * 4 for _ in range(4)]
    minus[0][0] = h * pt.pw(-(1 - l + m))
    minus[1][1] = h * pt.pw(-(l + m))
    minus[2][1] = -h * (q - 1 / q)
    minus[2][2] = h * pt.pw(l + m)
    minus[3][3] = h * pt.pw(-(1 + l - m))
    bad = []
    if num_Rplus(pt, l, m) != mscale(pt.cp * h, plus):
        bad.append("R+ entries")
    if num_Rminus(pt, l, m) != mscale(pt.cm * hi, minus):
        bad.append("R- entries")
    return bad


def fam_nonadditive(ctx: Ctx) -> list:
    pt = ctx.pt
    l, m = pt.cols[0], pt.cols[1]
    return ["R(λ,μ) = R(λ-μ,0) numerically"] if num_R(pt, l, m) == num_R(pt, l - m, F0) else []


def fam_dimensions(ctx: Ctx) -> list:
    bad = []
    eng = ctx.engine.alg
    for cols, top in (((0,), 4), ((0, 1), 3)):
        for d in range(2, top + 1):
            dim = ctx.alg.quotient(cols, d).dimension
            bad += _disagree(f"dim A_{d} colours {cols}", dim, len(eng.normal_words(d, list(cols))))
    return bad


def fam_coalgebra(ctx: Ctx) -> list:
    """Coassociativity and counit on free words, then reduced."""
    alg = ctx.alg
    bad = []
    for w in ctx.engine.monomials(2, [0, 1]):
        left: dict = {}
        right: dict = {}
        for l1, l2 in word_coproduct(w):
            for a, b in word_coproduct(l1):
                left[(a, b, l2)] = left.get((a, b, l2), F0) + 1
            for a, b in word_coproduct(l2):
                right[(l1, a, b)] = right.get((l1, a, b), F0) + 1
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            bad.append(f"coassociativity on {w}")
        lc: Poly = {}
        rc: Poly = {}
        for l1, l2 in word_coproduct(w):
            lc = padd(lc, {l2: counit_word(l1)})
            rc = padd(rc, {l1: counit_word(l2)})
        if alg.reduce(lc) != alg.reduce({w: F1}) or alg.reduce(rc) != alg.reduce({w: F1}):
            bad.append(f"counit on {w}")
    return bad


def fam_relations_coalgebra(ctx: Ctx) -> list:
    alg = ctx.alg
    bad = []
    for a, b in itertools.product(range(2), repeat=2):
        for r in rtt_relations(ctx.pt, a, b):
            if alg.reduce_tensor(coproduct_poly(r)):
                bad.append(f"Δ of a relation of colours {a},{b}")
            if sum((c * counit_word(w) for w, c in r.items()), F0):
                bad.append(f"ε of a relation of colours {a},{b}")
    return bad


def fam_antipode(ctx: Ctx) -> list:
    """S∗id and id∗S on generators, with Dinv cleared by D q-commutation."""
    alg = ctx.alg
    bad = []
    eng = ctx.engine.alg
    for al in range(2):
        y, z = alg.antipode_coeffs(al)
        ye, ze = (ctx.pt.scalar(v) for v in eng.antipode_coeffs[al])
        bad += _disagree(f"antipode coefficient b, colour {al}", y, ye)
        bad += _disagree(f"antipode coefficient c, colour {al}", z, ze)
        bad += _disagree(f"determinant coefficient, colour {al}", alg.det_coeff(al), ctx.pt.scalar(eng.det_coeff[al]))
        Tm = [[T(al, i, k) for k in range(2)] for i in range(2)]
        X = [[{(letter(D, al),): F1}, {(letter(B, al),): -y}], [{(letter(C, al),): -z}, {(letter(A, al),): F1}]]
        det = alg.determinant(al)
        for i, j in itertools.product(range(2), repeat=2):
            target = det if i == j else {}
            s_id: Poly = {}
            id_s: Poly = {}
            for k in range(2):
                s_id = padd(s_id, pmul(X[i][k], {(Tm[k][j],): F1}))
                kap = alg.kappa(al, Tm[i][k])
                if kap is None:
                    bad.append(f"D does not q-commute with T[{i}{k}]")
                    continue
                id_s = padd(id_s, pmul({(Tm[i][k],): kap}, X[k][j]))
            if alg.reduce(padd(s_id, target, -F1)):
                bad.append(f"S*id entry ({i},{j}), colour {al}")
            if alg.reduce(padd(id_s, target, -F1)):
                bad.append(f"id*S entry ({i},{j}), colour {al}")
    return bad


def fam_antipode_relations(ctx: Ctx) -> list:
    """S(xy) = S(y)S(x) = κ Dinv² X_y X_x; the polynomial part must vanish."""
    alg = ctx.alg
    bad = []
    for al in range(2):
        y, z = alg.antipode_coeffs(al)
        X = {A: ({(letter(D, al),): F1}), D: ({(letter(A, al),): F1}),
             B: {(letter(B, al),): -y}, C: {(letter(C, al),): -z}}
        for r in rtt_relations(ctx.pt, al, al):
            acc: Poly = {}
            for (u, v), c in r.items():
                xv = X[kind_of(v)]
                (gl,) = next(iter(xv))
                # X_v Dinv = κ Dinv X_v with D g = κ g D
                acc = padd(acc, pmul(xv, X[kind_of(u)]), c * alg.kappa(al, gl))
            if alg.reduce(acc):
                bad.append(f"S of a colour-{al} relation")
    return bad


def fam_det(ctx: Ctx) -> list:
    alg = ctx.alg
    bad = []
    for al in range(3):
        det = alg.determinant(al)
        diff = coproduct_poly(det)
        for k, v in tensor(det, det).items():
            diff[k] = diff.get(k, F0) - v
        if alg.reduce_tensor({k: v for k, v in diff.items() if v}):
            bad.append(f"Δ(D) ≠ D⊗D, colour {al}")
        bad += _disagree(f"determinant coefficient, colour {al}", alg.det_coeff(al),
                         ctx.pt.scalar(ctx.engine.alg.det_coeff[al]))
    return bad


def fam_det_not_central(ctx: Ctx) -> list:
    alg = ctx.alg
    bad = []
    for al in range(3):
        det = alg.determinant(al)
        b = {(letter(B, al),): F1}
        if not alg.reduce(padd(pmul(det, b), pmul(b, det), -F1)):
            bad.append(f"D commutes with b, colour {al}")
    return bad


def fam_well_defined(ctx: Ctx) -> list:
    ev = ctx.ev()
    bad = []
    for a, b in itertools.product(range(3), repeat=2):
        for r in rtt_relations(ctx.pt, a, b):
            for sign, g in itertools.product((1, -1), range(3)):
                m = [[F0, F0], [F0, F0]]
                for (u, v), c in r.items():
                    m = [[x + c * y for x, y in zip(r1, r2)]
                         for r1, r2 in zip(m, mmul(ev.rho(sign, g, u), ev.rho(sign, g, v)))]
                if not is_zero(m):
                    bad.append(f"L{sign:+d}_{g} on a relation of colours {a},{b}")
    return bad


def _rll(ctx: Ctx, fam: str, order: str, degree: int = 2) -> list:
    ev = ctx.ev()
    pt = ctx.pt
    s1, s2 = {"++": (1, 1), "--": (-1, -1), "+-": (1, -1)}[fam]
    words = ctx.engine.monomials(degree)
    bad = []
    for lam, mu in ((0, 1), (1, 0), (0, 0)):
        x, y = pt.cols[lam], pt.cols[mu]
        R = num_R(pt, x, y) if order == "lm" else num_R(pt, y, x)

        def l2(I, J):
            i, j = divmod(I, 2)
            k, l = divmod(J, 2)
            return fn_atom((s1, j, l, lam)) if i == k else []

        def l1(I, J):
            i, j = divmod(I, 2)
            k, l = divmod(J, 2)
            return fn_atom((s2, i, k, mu)) if j == l else []

        for I, K in itertools.product(range(4), repeat=2):
            f: list = []
            for J, M in itertools.product(range(4), repeat=2):
                if R[I][J]:
                    f += fn_scale(fn_mul(l2(J, M), l1(M, K)), R[I][J])
                if R[M][K]:
                    f += fn_scale(fn_mul(l1(I, J), l2(J, M)), -R[M][K])
            for w in words:
                if ev.value(f, w):
                    bad.append(f"RLL {fam} entry ({I},{K}) colours ({lam},{mu}) on {w}")
                    break
    return bad


def _conj_ratio(ev, lhs, F, words):
    s = None
    for w in words:
        fv, lv = ev.value(F, w), ev.value(lhs, w)
        if fv:
            r = lv / fv
            if s is None:
                s = r
            elif r != s:
                return None
        elif lv:
            return None
    return s


def fam_conjugation(ctx: Ctx) -> list:
    ev = ctx.ev()
    words = ctx.engine.monomials(2)
    g = [Gens(ev, 0), Gens(ev, 1)]
    bad = []
    for kg in g:
        for name in ("k1", "k2", "kt1", "kt2"):
            K = getattr(kg, name)
            for fg in g:
                for F in (fg.B, fg.C):
                    if _conj_ratio(ev, fn_mul(fn_mul(K, F), kg.inv(name)), F, words) is None:
                        bad.append(f"{name} conjugation is not scalar")
    chars = [getattr(x, n) for x in g for n in ("k1", "k2", "kt1", "kt2")]
    for K1, K2 in itertools.combinations(chars, 2):
        if any(ev.value(fn_add(fn_mul(K1, K2), fn_mul(K2, K1), -F1), w) for w in words):
            bad.append("characters do not commute")
    # colourless values q^{±1} for k1 on B and C
    col = Ctx(ctx.pt.with_colours({i: F0 for i in ctx.pt.cols}), ctx.engine, ctx.cfg)
    cev = col.ev()
    cg = Gens(cev, 0)
    for F, want in ((cg.B, ctx.pt.q), (cg.C, 1 / ctx.pt.q)):
        got = _conj_ratio(cev, fn_mul(fn_mul(cg.k1, F), cg.inv("k1")), F, words)
        bad += _disagree("colourless k1 conjugation", got, want)
    return bad


def fam_cross(ctx: Ctx) -> list:
    ev = ctx.ev()
    pt = ctx.pt
    gl, gm = Gens(ev, 0), Gens(ev, 1)
    vl, vm = pt.cols[0], pt.cols[1]
    q = pt.q
    lhs = fn_add(fn_scale(fn_mul(gl.C, gm.B), pt.pw(-(vl + vm))), fn_scale(fn_mul(gm.B, gl.C), -pt.pw(vl + vm)))
    rhs = fn_scale(fn_add(fn_mul(gl.k2, gm.kt1), fn_mul(gl.k1, gm.kt2), -F1), 1 / (q - 1 / q))
    f = fn_add(lhs, rhs, -F1)
    return [f"cross relation on {w}" for w in ctx.engine.monomials(2) if ev.value(f, w)][:1]


def fam_hprime(ctx: Ctx) -> list:
    ev = ctx.ev()
    bad = []
    words = ctx.engine.monomials(2)
    for c in (0, 1):
        g = Gens(ev, c)
        P = fn_mul(fn_mul(fn_mul(g.kt2, g.inv("kt1")), g.k2), g.inv("k1"))
        for bc in range(3):
            gb = Gens(ev, bc)
            for F in (gb.B, gb.C):
                f = fn_add(fn_mul(P, F), fn_mul(F, P), -F1)
                if any(ev.value(f, w) for w in words):
                    bad.append(f"H' product fails to commute, colours {c},{bc}")
    return bad


def _twist(ev: Evaluator, F: list, al: int) -> tuple[Char, Char]:
    x0 = next(w for w in ((letter(B, al),), (letter(C, al),)) if ev.value(F, w))
    f0 = ev.value(F, x0)
    chi, psi = [], []
    for c in range(ev.n):
        for k in (A, D):
            y = letter(k, c)
            chi.append((y, ev.value(F, x0 + (y,)) / f0))
            psi.append((y, ev.value(F, (y,) + x0) / f0))
    return Char(tuple(psi)), Char(tuple(chi))


def fam_colourless_twist(ctx: Ctx) -> list:
    sub = Ctx(ctx.pt.with_colours({0: F0, 1: F0}), ctx.engine, ctx.cfg)
    ev = sub.ev(colours=2)
    g = Gens(ev, 0)
    a, d = letter(A, 0), letter(D, 0)
    bad = []
    for nm in ("B", "C"):
        psi, chi = _twist(ev, getattr(g, nm), 0)
        got = (chi.value(a) / psi.value(a), chi.value(d) / psi.value(d))
        bad += _disagree(f"normalised twist of {nm}", got, (ctx.pt.q, 1 / ctx.pt.q))
    return bad


def fam_two_sided_antipode(ctx: Ctx) -> list:
    ev = ctx.ev()
    alg = ctx.alg
    g = Gens(ev, 0)
    bad = []
    for nm in ("B", "C"):
        F = getattr(g, nm)
        psi, chi = _twist(ev, F, 0)
        closed = fn_scale(fn_mul(fn_mul(fn_atom(psi.inverse()), F), fn_atom(chi.inverse())), -F1)
        for w in ctx.engine.monomials(2):
            if ev.value(F, alg.antipode({w: F1})) != ev.value(closed, w):
                bad.append(f"S({nm}) on {w}")
                break
    return bad


def fam_one_sided_antipode(ctx: Ctx) -> list:
    ev = ctx.ev()
    alg = ctx.alg
    g = Gens(ev, 0)
    bad = []
    for nm in ("B", "C"):
        F = getattr(g, nm)
        _, chi = _twist(ev, F, 0)
        closed = fn_scale(fn_mul(F, fn_atom(chi.inverse())), -F1)
        for w in ctx.engine.monomials(2):
            if ev.value(F, alg.antipode({w: F1})) != ev.value(closed, w):
                bad.append(f"S({nm}) on {w}")
                break
    return bad


def fam_primitive_antipode(ctx: Ctx) -> list:
    ev = ctx.ev()
    alg = ctx.alg
    bad = []
    for sign, i, j in itertools.product((1, -1), range(2), range(2)):
        for w in ctx.engine.monomials(2):
            acc = F0
            for w1, w2 in word_coproduct(w):
                s1 = alg.antipode({w1: F1})
                for k in range(2):
                    acc += ev.value(fn_atom((sign, i, k, 0)), s1) * ev.value(fn_atom((sign, k, j, 0)), w2)
            if acc != (counit_word(w) if i == j else F0):
                bad.append(f"L{sign:+d}[{i}{j}] on {w}")
                break
    return bad


def fam_dual_counit(ctx: Ctx) -> list:
    ev = ctx.ev()
    g = Gens(ev, 0)
    return [nm for nm in ("B", "C") if ev.value(getattr(g, nm), ())]


def fam_exchange(ctx: Ctx) -> list:
    ev = ctx.ev()
    pt = ctx.pt
    gl, gm = Gens(ev, 0), Gens(ev, 1)
    vl, vm = pt.cols[0], pt.cols[1]
    bad = []
    for nm, f in (
        ("B", fn_add(fn_mul(gl.B, gm.B), fn_mul(gm.B, gl.B), -pt.pw(2 * (vm - vl)))),
        ("C", fn_add(fn_mul(gl.C, gm.C), fn_mul(gm.C, gl.C), -pt.pw(2 * (vl - vm)))),
    ):
        if any(ev.value(f, w) for w in ctx.engine.monomials(2)):
            bad.append(f"{nm} exchange")
    return bad


# calculus ---------------------------------------------------------------

OMEGA = ((0, 0), (0, 1), (1, 0), (1, 1))


class NumCalculus:
    def __init__(self, ev: Evaluator, colour: int, star: str = "right"):
        self.ev = ev
        self.alg = ev.alg
        self.colour = colour
        self.star = star
        self._c: dict = {}

    def s_lplus(self, i: int, k: int, w: tuple) -> Fraction:
        return self.ev.value(fn_atom((1, i, k, self.colour)), self.alg.antipode({w: F1}))

    def chi(self, ij, w: tuple) -> Fraction:
        key = ("chi", ij, w)
        if key not in self._c:
            i, j = ij
            v = F0
            for w1, w2 in word_coproduct(w):
                for k in range(2):
                    v += self.s_lplus(i, k, w1) * self.ev.value(fn_atom((-1, k, j, self.colour)), w2)
            if i == j:
                v -= counit_word(w)
            self._c[key] = v
        return self._c[key]

    def f(self, ij, kl, w: tuple) -> Fraction:
        key = ("f", ij, kl, w)
        if key not in self._c:
            (i, j), (k, l) = ij, kl
            self._c[key] = sum((self.s_lplus(k, i, w1) * self.ev.value(fn_atom((-1, j, l, self.colour)), w2)
                                for w1, w2 in word_coproduct(w)), F0)
        return self._c[key]

    def d(self, p: Poly, star: str | None = None) -> dict:
        star = star or self.star
        out = {}
        for ij in OMEGA:
            acc: Poly = {}
            for w, c in p.items():
                for w1, w2 in word_coproduct(w):
                    keep, feed = (w1, w2) if star == "right" else (w2, w1)
                    v = self.chi(ij, feed)
                    if v:
                        acc = padd(acc, {keep: c * v})
            out[ij] = acc
        return out

    def commute(self, ij, p: Poly) -> dict:
        """ω p as left coefficients."""
        out = {}
        for kl in OMEGA:
            acc: Poly = {}
            for w, c in p.items():
                for w1, w2 in word_coproduct(w):
                    v = self.f(ij, kl, w2)
                    if v:
                        acc = padd(acc, {w1: c * v})
            out[kl] = acc
        return out

    def right_mul(self, g: dict, p: Poly) -> dict:
        out = {kl: {} for kl in OMEGA}
        for ij, c in g.items():
            for kl, v in self.commute(ij, p).items():
                out[kl] = padd(out[kl], pmul(c, v))
        return out

    def reduced(self, g: dict) -> dict:
        return {k: self.alg.reduce(v) for k, v in g.items() if self.alg.reduce(v)}


def fam_d_relations(ctx: Ctx) -> list:
    nc = NumCalculus(ctx.ev(), 1)
    bad = []
    for a, b in itertools.product(range(3), repeat=2):
        for r in rtt_relations(ctx.pt, a, b):
            if nc.reduced(nc.d(r)):
                bad.append(f"d of a relation of colours {a},{b}")
    return bad


def fam_leibniz(ctx: Ctx) -> list:
    nc = NumCalculus(ctx.ev(), 1)
    gens = [T(c, i, k) for c in range(3) for i in range(2) for k in range(2)]
    bad = []
    for x, y in itertools.product(gens, repeat=2):
        lhs = nc.d({(x, y): F1})
        rhs = nc.right_mul(nc.d({(x,): F1}), {(y,): F1})
        for ij, v in nc.d({(y,): F1}).items():
            rhs[ij] = padd(rhs.get(ij, {}), pmul({(x,): F1}, v))
        if nc.reduced({k: padd(lhs[k], rhs.get(k, {}), -F1) for k in OMEGA}):
            bad.append(f"Leibniz on {x},{y}")
    return bad


def fam_bimodule(ctx: Ctx) -> list:
    nc = NumCalculus(ctx.ev(), 1)
    gens = [T(c, i, k) for c in range(3) for i in range(2) for k in range(2)]
    bad = []
    for x, y in itertools.product(gens, repeat=2):
        for ij in OMEGA:
            step = nc.right_mul(nc.commute(ij, {(x,): F1}), {(y,): F1})
            direct = nc.commute(ij, {(x, y): F1})
            if nc.reduced({k: padd(step[k], direct[k], -F1) for k in OMEGA}):
                bad.append(f"ω(xy) ≠ (ωx)y on {x},{y}")
    return bad


def fam_s_lplus(ctx: Ctx) -> list:
    """S(L⁺) is the convolution inverse of L⁺."""
    nc = NumCalculus(ctx.ev(), 1)
    ev = nc.ev
    bad = []
    for i, j in itertools.product(range(2), repeat=2):
        for w in ctx.engine.monomials(2):
            v = F0
            for w1, w2 in word_coproduct(w):
                for k in range(2):
                    v += nc.s_lplus(i, k, w1) * ev.value(fn_atom((1, k, j, 1)), w2)
            if v != (counit_word(w) if i == j else F0):
                bad.append(f"S(L+)L+ entry ({i},{j}) on {w}")
                break
    return bad


def closed_derivatives(pt: NPoint, gen_colour: int, x: Fraction, y: Fraction) -> dict:
    s = pt.cm / pt.cp
    q = pt.q
    qi = 1 / q - q
    a, b, c, d = (letter(k, gen_colour) for k in (A, B, C, D))
    lm = s * pt.pw(-2 + 2 * (x - y)) - 1
    ml = s * pt.pw(-2 + 2 * (y - x)) - 1
    sq = s * qi * qi + s - 1
    up = s * qi * pt.pw(x + y)
    down = s * qi * pt.pw(-(x + y))

    def m(l, k):
        return {(l,): k} if k else {}

    w1, wp, wm, w2 = OMEGA
    return {
        A: {w1: m(a, lm), wp: m(b, up), wm: {}, w2: m(a, s - 1)},
        B: {w1: m(b, sq), wp: {}, wm: m(a, down), w2: m(b, ml)},
        C: {w1: m(c, lm), wp: m(d, up), wm: {}, w2: m(c, s - 1)},
        D: {w1: m(d, sq), wp: {}, wm: m(c, down), w2: m(d, ml)},
    }


def fam_derivatives(ctx: Ctx, assignment: str, star: str) -> list:
    ev = ctx.ev()
    pt = ctx.pt
    bad = []
    for gc, fc in ((0, 1), (1, 0)):
        nc = NumCalculus(ev, fc, star)
        g, h = pt.cols[gc], pt.cols[fc]
        x, y = (g, h) if assignment == "generator" else (h, g)
        expected = closed_derivatives(pt, gc, x, y)
        for k in (A, B, C, D):
            got = nc.d({(letter(k, gc),): F1})
            for ij in OMEGA:
                if got[ij] != expected[k][ij]:
                    bad.append(f"d of kind {k}, ω{ij}, colours ({gc},{fc})")
    return bad


# geodual ----------------------------------------------------------------

def _exps(w: tuple) -> tuple:
    return tuple(sum(1 for x in w if kind_of(x) == k) for k in (A, D, B, C))


def tangent_value(t: str, e: tuple) -> int:
    """Classical derivative in the tangent's letter, then the counit."""
    slot = {"A": 0, "D": 1, "B": 2, "C": 3}[t]
    e = list(e)
    c = e[slot]
    if not c:
        return 0
    e[slot] -= 1
    return c if e[2] == 0 and e[3] == 0 else 0


def fam_delta(ctx: Ctx) -> list:
    from .geodual import basis_enumerate, geo_pair_formula

    bad = []
    for col in (0, 1):
        for g in basis_enumerate(col, 4):
            for t in "ABCD":
                if tangent_value(t, g.exps) != geo_pair_formula(t, g):
                    bad.append(f"<{t}, {g.exps}>")
            if geo_pair_formula(None, g) != int(g.m == 0 and g.n == 0):
                bad.append(f"<1, {g.exps}>")
    return bad


def fam_matrix_units(ctx: Ctx) -> list:
    bad = []
    for t, pos in zip("ABCD", ((0, 0), (0, 1), (1, 0), (1, 1))):
        for kind in (A, B, C, D):
            e = _exps((letter(kind, 0),))
            want = 1 if RANK_POS[kind] == pos else 0
            if tangent_value(t, e) != want:
                bad.append(f"<{t}, T{RANK_POS[kind]}>")
    return bad


def pair_tangents(alg: Algebra, tangents: tuple, w: tuple) -> Fraction:
    """⟨Y₁⋯Y_r, w⟩ via the numeric r-fold coproduct with reduced legs."""
    terms = {((),) * len(tangents): F1}
    for x in w:
        i, k = RANK_POS[kind_of(x)]
        c = colour_of(x)
        nxt: dict = {}
        for chain in itertools.product(range(2), repeat=len(tangents) - 1):
            idx = (i,) + chain + (k,)
            lets = [T(c, idx[t], idx[t + 1]) for t in range(len(tangents))]
            for key, v in terms.items():
                nk = tuple(l + (y,) for l, y in zip(key, lets))
                nxt[nk] = nxt.get(nk, F0) + v
        terms = nxt
    total = F0
    for legs, v in terms.items():
        term = v
        for t, leg in zip(tangents, legs):
            term *= sum((c * tangent_value(t, _exps(u)) for u, c in alg.reduce({leg: F1}).items()), F0)
            if not term:
                break
        total += term
    return total


def fam_products(ctx: Ctx) -> list:
    alg = ctx.alg
    a = letter(A, 0)
    bad = _disagree("<AA, a²>", pair_tangents(alg, ("A", "A"), (a, a)), Fraction(4))
    for t in "ABCD":
        if pair_tangents(alg, (t,), ()):
            bad.append(f"<{t}, 1>")
    return bad


def fam_commutator(ctx: Ctx) -> list:
    pt = NPoint(F1, {i: F0 for i in range(3)}, ctx.pt.cp, ctx.pt.cm)
    alg = Algebra(pt)
    bad = []
    a, d = letter(A, 0), letter(D, 0)
    for k, l in itertools.product(range(4), repeat=2):
        if k + l > 3:
            continue
        w = (a,) * k + (d,) * l
        v = pair_tangents(alg, ("B", "C"), w) - pair_tangents(alg, ("C", "B"), w)
        bad += _disagree(f"<[B,C], a^{k} d^{l}>", v, Fraction(k - l))
    return bad


def fam_cross_validate(ctx: Ctx) -> list:
    from .geodual import basis_enumerate, geo_pair_formula

    pt = ctx.pt.with_colours({i: F0 for i in ctx.pt.cols})
    sub = Ctx(pt, ctx.engine, ctx.cfg)
    ev = sub.ev(colours=2)
    bad = []
    deg = getattr(ctx.cfg, "max_degree", 3)
    for fc in range(2):
        g = Gens(ev, fc)
        for nm in ("B", "C"):
            F = getattr(g, nm)
            psi, _ = _twist(ev, F, fc)
            Fn = fn_mul(fn_atom(psi.inverse()), F)
            own = (letter(B if nm == "B" else C, fc),)
            Fn = fn_scale(Fn, ev.value(F, own) / ev.value(Fn, own))
            for mc in range(2):
                for m in basis_enumerate(mc, deg):
                    got = ev.value(Fn, m.word())
                    if got != geo_pair_formula(nm, m):
                        bad.append(f"normalised {nm}_{fc} on {m.exps} colour {mc}")
    return bad


# limits -----------------------------------------------------------------

def fam_limit_R(ctx: Ctx) -> list:
    from .rmatrix import build_R, build_Rminus, build_Rplus

    pal = Palette.symbolic(2)
    zero = ctx.pt.with_colours({0: F0, 1: F0})
    bad = []
    for name, build, num in (("R", build_R, num_R), ("R+", build_Rplus, num_Rplus), ("R-", build_Rminus, num_Rminus)):
        m = build(pal.value(0), pal.value(1))
        got = [[zero.scalar(x) for x in r] for r in m]
        if got != num(zero, F0, F0):
            bad.append(f"{name} at zero colour")
    return bad


class _LimitCache:
    data: dict = {}


def _sym_limit_data(convention: str):
    """Symbolic values from a two-colour symbolic run, computed once per convention."""
    if convention in _LimitCache.data:
        return _LimitCache.data[convention]
    from . import dualfun
    from .calculus import CalculusContext, derivative_table

    alg = ColouredGLq2(Palette.symbolic(2))
    conv = dualfun.PairingConvention(convention) if convention != "fixed" else dualfun.FIXED_PAIR(
        alg.palette.value(0), alg.palette.value(1))
    p = dualfun.Pairing(alg, conv)
    words = alg.monomials_up_to(2)
    prim = {(s, i, j, g): {w: p.evaluate(dualfun.primitive(s, i, j, g), w) for w in words}
            for s in (1, -1) for g in range(2) for i in range(2) for j in range(2)}
    gl, gm = dualfun.extract_generators(0), dualfun.extract_generators(1)
    prods = {"BB": gl.B * gm.B, "CB": gl.C * gm.B, "CC": gl.C * gm.C}
    prod_vals = {k: {w: p.evaluate(f, w) for w in words} for k, f in prods.items()}
    tables = {}
    for fc in range(2):
        ctx = CalculusContext(p, fc)
        for gc in range(2):
            tables[(gc, fc)] = derivative_table(ctx, gc, "right")
    _LimitCache.data[convention] = (words, prim, prod_vals, tables)
    return _LimitCache.data[convention]


def fam_limit_values(ctx: Ctx) -> list:
    words, prim, prods, tables = _sym_limit_data(ctx.engine.convention)
    zero = ctx.pt.with_colours({0: F0, 1: F0})
    sub = Ctx(zero, ctx.engine, ctx.cfg)
    ev = sub.ev(colours=2)
    bad = []
    for atom, vals in prim.items():
        for w, v in vals.items():
            bad += _disagree(f"L{atom} on {w}", ev.value(fn_atom(atom), w), zero.scalar(v))
    g0, g1 = Gens(ev, 0), Gens(ev, 1)
    num = {"BB": fn_mul(g0.B, g1.B), "CB": fn_mul(g0.C, g1.B), "CC": fn_mul(g0.C, g1.C)}
    for k, vals in prods.items():
        for w, v in vals.items():
            bad += _disagree(f"{k} on {w}", ev.value(num[k], w), zero.scalar(v))
    for (gc, fc), table in tables.items():
        nc = NumCalculus(ev, fc)
        for kind in (A, B, C, D):
            got = {k: sub.alg.reduce(v) for k, v in nc.d({(letter(kind, gc),): F1}).items()}
            for ij in OMEGA:
                want = {w: v for w, c in table[(kind, ij)].items() if (v := zero.scalar(c))}
                bad += _disagree(f"d kind {kind} ω{ij} colours {gc},{fc}", got[ij], want)
    return bad[:5]


def fam_mono_substitution(ctx: Ctx) -> list:
    pt = ctx.pt
    v = pt.cols[0]
    return [] if template(pt, pt.q, pt.pw(2 * v)) == num_R(pt, v, v) else ["template(q, q^2λ) ≠ R(λ,λ)"]


def fam_mono_ybe(ctx: Ctx) -> list:
    pt = ctx.pt
    Rt = template(pt, pt.q, pt.pw(pt.cols[1] - pt.cols[2]))
    return [] if is_zero(ybe_residual(Rt, Rt, Rt)) else ["template Yang-Baxter residual"]


def fam_mono_relations(ctx: Ctx) -> list:
    pt = ctx.pt
    v = pt.cols[0]
    mono = pt.with_colours({i: v for i in pt.cols})
    Rt = template(pt, pt.q, pt.pw(2 * v))
    bad = []
    for a, b in itertools.product(range(2), repeat=2):
        if rtt_relations(mono, a, b) != rtt_relations(mono, a, b, Rt):
            bad.append(f"relations of colours {a},{b}")
    return bad


# --------------------------------------------------------------- dispatcher

def _family_for(check: CheckResult):
    """(family key, callable) re-verifying a symbolic check, or None."""
    cid = check.id
    simple = [
        ("rmatrix.cybe", "cybe", fam_cybe),
        ("rmatrix.R+_closed_form", "R_pm", fam_rpm),
        ("rmatrix.R-_closed_form", "R_pm", fam_rpm),
        ("rmatrix.nonadditive", "nonadditive", fam_nonadditive),
        ("coordalg.confluence", "dimensions", fam_dimensions),
        ("coordalg.single_colour_counts", "dimensions", fam_dimensions),
        ("coordalg.hopf.coassociativity", "coalgebra", fam_coalgebra),
        ("coordalg.hopf.counit_on_relations", "relations_coalgebra", fam_relations_coalgebra),
        ("coordalg.hopf.coproduct_on_relations", "relations_coalgebra", fam_relations_coalgebra),
        ("coordalg.hopf.counit", "coalgebra", fam_coalgebra),
        ("coordalg.hopf.antipode_axioms", "antipode", fam_antipode),
        ("coordalg.hopf.antipode_on_relations", "antipode_relations", fam_antipode_relations),
        ("coordalg.det_grouplike", "determinant", fam_det),
        ("coordalg.det_not_central", "det_not_central", fam_det_not_central),
        ("dualfun.well_defined", "well_defined", fam_well_defined),
        ("dualfun.conjugation_probes", "conjugation", fam_conjugation),
        ("dualfun.cross_relation", "cross_relation", fam_cross),
        ("dualfun.hprime_central", "hprime", fam_hprime),
        ("dualfun.functional_antipode_two_sided", "two_sided_antipode", fam_two_sided_antipode),
        ("dualfun.functional_antipode[", "one_sided_antipode", fam_one_sided_antipode),
        ("dualfun.primitive_antipode", "primitive_antipode", fam_primitive_antipode),
        ("dualfun.dual_counit", "dual_counit", fam_dual_counit),
        ("dualfun.exchange", "exchange", fam_exchange),
        ("dualfun.colourless_twist_values", "colourless_twist", fam_colourless_twist),
        ("calculus.d_on_relations", "d_relations", fam_d_relations),
        ("calculus.leibniz", "leibniz", fam_leibniz),
        ("calculus.bimodule", "bimodule", fam_bimodule),
        ("calculus.S_Lplus_cross_check", "S_Lplus", fam_s_lplus),
        ("geodual.delta_formulas", "delta", fam_delta),
        ("geodual.matrix_units", "matrix_units", fam_matrix_units),
        ("geodual.product_pairings", "products", fam_products),
        ("geodual.classical_commutator", "commutator", fam_commutator),
        ("geodual.cross_validate", "cross_validate", fam_cross_validate),
        ("limits.colourless.R", "limit_R", fam_limit_R),
        ("limits.colourless.", "limit_values", fam_limit_values),
        ("limits.monochromatic.substitution", "mono_substitution", fam_mono_substitution),
        ("limits.monochromatic.template_ybe", "mono_ybe", fam_mono_ybe),
        ("limits.monochromatic.relations", "mono_relations", fam_mono_relations),
    ]
    for prefix, key, fn in simple:
        if cid.startswith(prefix):
            return key, fn
    if cid.startswith("dualfun.rll["):
        fam, order = cid[len("dualfun.rll["):].split(",")[:2]
        order = order[2:4]
        return f"rll_{fam}_{order}", lambda ctx, f=fam, o=order: _rll(ctx, f, o)
    if cid.startswith("calculus.closed_form_derivatives["):
        assignment = cid.split("[")[1].split("-")[0]
        star = check.details.get("star_order", "right")
        return f"derivatives_{assignment}_{star}", lambda ctx, a=assignment, s=star: fam_derivatives(ctx, a, s)
    return None


def oracle_specialize(cfg, report: Report, progress: Callable | None = None) -> list[CheckResult]:
    """Re-run every symbolic PASS of ``report`` at ``cfg.oracle_trials`` random points."""
    from .cli import CONVENTIONS

    t0 = time.perf_counter()
    engine = EngineData(CONVENTIONS[cfg.convention], max(3, cfg.colours))
    families: dict[str, tuple[Callable, list[str]]] = {}
    gating: set[str] = set()
    uncovered = []
    for chk in sorted(report.checks, key=lambda c: c.id):
        if chk.verdict != "PASS" or chk.id.startswith("oracle."):
            continue
        hit = _family_for(chk)
        if hit is None:
            uncovered.append(chk.id)
            continue
        key, fn = hit
        families.setdefault(key, (fn, []))[1].append(chk.id)
        if chk.required:
            gating.add(key)

    rng = random.Random(cfg.seed)
    cp = None if cfg.cplus == "sym" else Fraction(cfg.cplus)
    cm = None if cfg.cminus == "sym" else Fraction(cfg.cminus)
    points = []
    retries = 0
    while len(points) < cfg.oracle_trials:
        pt = random_point(rng, engine.colours, cp, cm)
        try:
            pt.pw(Fraction(1, 4))
        except NonRationalPower:
            retries += 1
            continue
        points.append(pt)

    found: dict[str, list] = {k: [] for k in families}
    millis: dict[str, float] = {k: 0.0 for k in families}
    for n, pt in enumerate(points):
        ctx = Ctx(pt, engine, cfg)
        for key, (fn, _) in sorted(families.items()):
            t1 = time.perf_counter()
            try:
                bad = fn(ctx)
            except NonRationalPower as e:
                bad = [f"non-rational power: {e}"]
            millis[key] += (time.perf_counter() - t1) * 1000
            for b in bad:
                found[key].append(f"trial {n} ({pt.describe()}): {b}")
        if progress:
            progress(n)

    out = []
    for key, (_, ids) in sorted(families.items()):
        bad = found[key]
        out.append(CheckResult(
            id=f"oracle.{key}",
            paper_ref="numeric specialisation of " + ", ".join(sorted({i.split("[")[0] for i in ids})),
            verdict="PASS" if not bad else "FAIL",
            required=key in gating,
            residual_example=bad[0] if bad else None,
            specialization=bad[0].split(": ")[0] if bad else None,
            millis=millis[key],
            details={"trials": len(points), "reverifies": ids, "disagreements": len(bad)},
        ))
    out.append(CheckResult(
        id="oracle.coverage",
        paper_ref="every symbolic PASS has a numeric re-check",
        verdict="PASS" if not uncovered else "FAIL",
        required=True,
        millis=(time.perf_counter() - t0) * 1000,
        details={"uncovered": uncovered, "families": len(families), "trials": len(points), "retries": retries,
                 "seed": cfg.seed},
    ))
    return out
