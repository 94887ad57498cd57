"""Coloured R-matrices, their R± companions and the coloured Yang–Baxter check.

Composite index convention (used everywhere in the package): the pair
``(i, j)`` with ``i, j in {0, 1}`` maps to row/column ``2*i + j``.
"""
from __future__ import annotations

import itertools
import time
from typing import Callable, Sequence

from .report import CheckResult
from .scalars import CMINUS, CPLUS, ONE, Q, ZERO, Scalar, as_form, qpow

Matrix = tuple  # tuple of row tuples of Scalar


def composite(i: int, j: int) -> int:
    return 2 * i + j


def zeros(n: int, m: int | None = None) -> list[list[Scalar]]:
    return [[ZERO] * (m if m is not None else n) for _ in range(n)]


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def freeze(rows) -> Matrix:
    return tuple(tuple(Scalar.coerce(x) for x in r) for r in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = ZERO
            for t in range(k):
                x = ai[t]
                if x:
                    y = b[t][j]
                    if y:
                        acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(s: Scalar, a: Matrix) -> Matrix:
    return tuple(tuple(s * x for x in r) for r in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def kron(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for ra in a:
        for rb in b:
            rows.append(tuple(x * y for x in ra for y in rb))
    return tuple(rows)


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for r in a for x in r)


def nonzero_entries(a: Matrix) -> list[tuple[int, int, Scalar]]:
    return [(i, j, x) for i, r in enumerate(a) for j, x in enumerate(r) if x]


def triangular_inverse(a: Matrix) -> Matrix:
    """Inverse of a triangular matrix with unit (monomial) diagonal."""
    n = len(a)
    lower = all(not a[i][j] for i in range(n) for j in range(i + 1, n))
    upper = all(not a[i][j] for i in range(n) for j in range(i))
    if not (lower or upper):
        raise ValueError("matrix is not triangular")
    if upper:
        return transpose(triangular_inverse(transpose(a)))
    inv = zeros(n)
    for j in range(n):
        inv[j][j] = a[j][j].inverse()
        for i in range(j + 1, n):
            acc = ZERO
            for k in range(j, i):
                if a[i][k]:
                    acc = acc + a[i][k] * inv[k][j]
            inv[i][j] = -acc * a[i][i].inverse()
    return freeze(inv)


def inverse2(a: Matrix) -> Matrix:
    """Exact inverse of a 2×2 matrix (determinant must divide the adjugate)."""
    (x, y), (z, w) = a
    det = x * w - y * z
    if not det:
        raise ZeroDivisionError("singular 2x2 matrix")
    return freeze([[w / det, -y / det], [-z / det, x / det]])


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix P with ``P[perm[i]][i] = 1`` (sends basis vector i to perm[i])."""
    n = len(perm)
    return tuple(tuple(ONE if perm[j] == i else ZERO for j in range(n)) for i in range(n))


FLIP = permutation_matrix([composite(j, i) for i in range(2) for j in range(2)])


# --------------------------------------------------------------------- R family

def build_R(alpha, beta) -> Matrix:
    """Coloured R-matrix for colour values ``alpha``, ``beta``.

    The arguments are colour symbols, rationals or affine exponent forms.
    """
    a, b = as_form(alpha), as_form(beta)
    m = zeros(4)
    m[0][0] = qpow(1 - (a - b))
    m[1][1] = qpow(a + b)
    m[2][2] = qpow(-(a + b))
    m[3][3] = qpow(1 + (a - b))
    m[2][1] = Q - Q.inverse()
    return freeze(m)


def build_Rplus(alpha, beta) -> Matrix:
    """``c⁺ · P R(α,β) P``."""
    return mat_scale(CPLUS, mat_mul(mat_mul(FLIP, build_R(alpha, beta)), FLIP))


def build_Rminus(alpha, beta) -> Matrix:
    """``c⁻ · R(α,β)⁻¹``."""
    return mat_scale(CMINUS, triangular_inverse(build_R(alpha, beta)))


def closed_form_Rplus(lam, mu) -> Matrix:
    """Closed-form R⁺: prefactor ``c⁺ q^{1/2}`` times entries carrying ``q^{-1/2}``."""
    l, m = as_form(lam), as_form(mu)
    pre = CPLUS * _qhalf(1)
    e = zeros(4)
    e[0][0] = _qhalf(-1) * qpow(1 - l + m)
    e[1][1] = _qhalf(-1) * qpow(-(l + m))
    e[1][2] = _qhalf(-1) * (Q - Q.inverse())
    e[2][2] = _qhalf(-1) * qpow(l + m)
    e[3][3] = _qhalf(-1) * qpow(1 + l - m)
    return mat_scale(pre, freeze(e))


def closed_form_Rminus(lam, mu) -> Matrix:
    """Closed-form R⁻: prefactor ``c⁻ q^{-1/2}`` times entries carrying ``q^{1/2}``."""
    l, m = as_form(lam), as_form(mu)
    pre = CMINUS * _qhalf(-1)
    e = zeros(4)
    e[0][0] = _qhalf(1) * qpow(-(1 - l + m))
    e[1][1] = _qhalf(1) * qpow(-(l + m))
    e[2][1] = -_qhalf(1) * (Q - Q.inverse())
    e[2][2] = _qhalf(1) * qpow(l + m)
    e[3][3] = _qhalf(1) * qpow(-(1 + l - m))
    return mat_scale(pre, freeze(e))


def _qhalf(sign: int) -> Scalar:
    from fractions import Fraction

    return qpow(Fraction(sign, 2))


# ------------------------------------------------------------ Yang–Baxter check

def leg_embeddings(r12: Matrix, r13: Matrix, r23: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Embed three 4×4 matrices into legs 12, 13, 23 of the 8-dim triple space."""
    i2 = identity(2)
    e12 = kron(r12, i2)
    e23 = kron(i2, r23)
    # P23 swaps tensor legs 2 and 3: basis (i,j,k) -> (i,k,j)
    perm = [4 * i + 2 * k + j for i in range(2) for j in range(2) for k in range(2)]
    p23 = permutation_matrix(perm)
    e13 = mat_mul(mat_mul(p23, kron(r13, i2)), p23)
    return e12, e13, e23


def cybe_residual(alpha, beta, gamma, builder: Callable = build_R) -> Matrix:
    e12, e13, e23 = leg_embeddings(builder(alpha, beta), builder(alpha, gamma), builder(beta, gamma))
    lhs = mat_mul(mat_mul(e12, e13), e23)
    rhs = mat_mul(mat_mul(e23, e13), e12)
    return mat_sub(lhs, rhs)


def check_cybe(alpha, beta, gamma, builder: Callable = build_R, point=None) -> CheckResult:
    t0 = time.perf_counter()
    res = cybe_residual(alpha, beta, gamma, builder)
    bad = nonzero_entries(res)
    names = "(" + ",".join(as_form(x).render() for x in (alpha, beta, gamma)) + ")"
    out = CheckResult(
        id=f"rmatrix.cybe{names}",
        paper_ref="coloured Yang-Baxter equation",
        verdict="PASS" if not bad else "FAIL",
        millis=(time.perf_counter() - t0) * 1000,
    )
    if bad:
        i, j, x = bad[0]
        out.set_witness(x, point, where=f"entry ({i},{j})")
    return out


def colour_multisets(symbols: Sequence) -> list[tuple]:
    return list(itertools.combinations_with_replacement(list(symbols), 3))


def check_cybe_all(symbols: Sequence, point=None) -> list[CheckResult]:
    """Yang–Baxter on every ordered arrangement of every colour multiset."""
    results = []
    for ms in colour_multisets(symbols):
        for triple in sorted(set(itertools.permutations(ms)), key=lambda t: [as_form(x).key() for x in t]):
            results.append(check_cybe(*triple, point=point))
    return results


def check_R_pm_closed_form(lam, mu) -> list[CheckResult]:
    out = []
    for sign, built, printed in (
        ("+", build_Rplus(lam, mu), closed_form_Rplus(lam, mu)),
        ("-", build_Rminus(lam, mu), closed_form_Rminus(lam, mu)),
    ):
        diff = mat_sub(built, printed)
        bad = nonzero_entries(diff)
        r = CheckResult(
            id=f"rmatrix.R{sign}_closed_form",
            paper_ref="R-plus = c+ R21, R-minus = c- R12^-1",
            verdict="PASS" if not bad else "FAIL",
        )
        if bad:
            r.set_witness(bad[0][2], None, where=f"entry ({bad[0][0]},{bad[0][1]})")
        out.append(r)
    return out


def check_nonadditive(lam, mu) -> CheckResult:
    """R(λ,μ) differs from R(λ−μ, 0) as a symbolic matrix."""
    diff = mat_sub(build_R(lam, mu), build_R(as_form(lam) - as_form(mu), 0))
    bad = nonzero_entries(diff)
    r = CheckResult(
        id="rmatrix.nonadditive",
        paper_ref="non-additivity of the coloured R-matrix",
        verdict="PASS" if bad else "FAIL",
    )
    if bad:
        r.details["witness_entry"] = [bad[0][0], bad[0][1], bad[0][2].render()]
    return r
