"""Exact coefficient arithmetic.

A :class:`Scalar` is a finite sum of rational multiples of monomials

    q^(c0 + c1*λ1 + c2*λ2 + ...) * cplus^i * cminus^j

where the exponent of ``q`` is an affine form with rational coefficients in
the colour symbols.  All units of this ring are the single-term elements, so
division is exact division: it either produces a Laurent quotient or raises
:class:`NotDivisible`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "ColourSymbol",
    "ExponentForm",
    "Scalar",
    "NotDivisible",
    "NonRationalPower",
    "as_form",
    "qpow",
    "ZERO",
    "ONE",
    "Q",
    "CPLUS",
    "CMINUS",
    "rational_power",
    "exact_div",
]

Rational = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient does not exist in the term ring."""


class NonRationalPower(ArithmeticError):
    """Raised when a specialised power cannot be evaluated exactly."""


@dataclass(frozen=True, order=True)
class ColourSymbol:
    id: int
    name: str

    def __str__(self) -> str:
        return self.name


def _clean(pairs: Iterable[tuple[int, Fraction]]) -> tuple[tuple[int, Fraction], ...]:
    acc: dict[int, Fraction] = {}
    for cid, c in pairs:
        acc[cid] = acc.get(cid, 0) + c
    return tuple(sorted((cid, Fraction(c)) for cid, c in acc.items() if c))


class ExponentForm:
    """Affine form ``const + sum(coeff * colour)`` with rational coefficients."""

    __slots__ = ("const", "coeffs", "_hash")

    def __init__(self, const: Rational = 0, coeffs: Mapping[int, Rational] | Iterable = ()):
        self.const = Fraction(const)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self.coeffs = _clean((int(k), Fraction(v)) for k, v in items)
        self._hash = hash((self.const, self.coeffs))

    @classmethod
    def _raw(cls, const: Fraction, coeffs: tuple) -> "ExponentForm":
        obj = cls.__new__(cls)
        obj.const = const
        obj.coeffs = coeffs
        obj._hash = hash((const, coeffs))
        return obj

    @classmethod
    def colour(cls, c: ColourSymbol, coeff: Rational = 1) -> "ExponentForm":
        return cls(0, {c.id: coeff})

    def key(self) -> tuple:
        return (self.const, self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExponentForm(other)
        return isinstance(other, ExponentForm) and self.key() == other.key()

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other) -> "ExponentForm":
        other = as_form(other)
        return ExponentForm._raw(self.const + other.const, _clean(self.coeffs + other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "ExponentForm":
        return ExponentForm._raw(-self.const, tuple((k, -v) for k, v in self.coeffs))

    def __sub__(self, other) -> "ExponentForm":
        return self + (-as_form(other))

    def __rsub__(self, other) -> "ExponentForm":
        return as_form(other) - self

    def __mul__(self, k: Rational) -> "ExponentForm":
        k = Fraction(k)
        if not k:
            return ExponentForm()
        return ExponentForm._raw(self.const * k, tuple((c, v * k) for c, v in self.coeffs))

    __rmul__ = __mul__

    def is_constant(self) -> bool:
        return not self.coeffs

    def colour_ids(self) -> set[int]:
        return {k for k, _ in self.coeffs}

    def coefficient(self, cid: int) -> Fraction:
        for k, v in self.coeffs:
            if k == cid:
                return v
        return Fraction(0)

    def evaluate(self, colour_values: Mapping[int, Rational]) -> Fraction:
        return self.const + sum((v * Fraction(colour_values[k]) for k, v in self.coeffs), Fraction(0))

    def substitute(self, mapping: Mapping[int, "ExponentForm"]) -> "ExponentForm":
        """Affine substitution of colour symbols; unmapped symbols are kept."""
        out = ExponentForm(self.const)
        for k, v in self.coeffs:
            out = out + (mapping[k] * v if k in mapping else ExponentForm(0, {k: v}))
        return out

    def render(self, names: Mapping[int, str] | None = None) -> str:
        parts = []
        if self.const:
            parts.append(_frac_str(self.const))
        for k, v in self.coeffs:
            nm = names.get(k, f"x{k}") if names else _default_name(k)
            if v == 1:
                t = nm
            elif v == -1:
                t = "-" + nm
            else:
                t = f"{_frac_str(v)}{nm}"
            parts.append(t)
        if not parts:
            return "0"
        s = parts[0]
        for p in parts[1:]:
            s += p if p.startswith("-") else "+" + p
        return s

    def __repr__(self) -> str:
        return f"ExponentForm({self.render()})"


_NAMES = {0: "λ", 1: "μ", 2: "ν"}


def _default_name(k: int) -> str:
    return _NAMES.get(k, f"κ{k}")


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_form(x) -> ExponentForm:
    if isinstance(x, ExponentForm):
        return x
    if isinstance(x, ColourSymbol):
        return ExponentForm.colour(x)
    if isinstance(x, (int, Fraction)):
        return ExponentForm(x)
    raise TypeError(f"cannot interpret {x!r} as an exponent form")


# term key: (ExponentForm, cplus power, cminus power)
_Key = tuple


class Scalar:
    """Immutable exact coefficient (see module docstring)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        t = {}
        if terms:
            for k, c in terms.items():
                if c:
                    t[k] = Fraction(c)
        self.terms: dict[_Key, Fraction] = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def const(cls, c: Rational) -> "Scalar":
        return cls._raw({(_ZERO_FORM, 0, 0): Fraction(c)} if c else {})

    @classmethod
    def monomial(cls, exp=0, cplus: int = 0, cminus: int = 0, coeff: Rational = 1) -> "Scalar":
        if not coeff:
            return cls._raw({})
        return cls._raw({(as_form(exp), int(cplus), int(cminus)): Fraction(coeff)})

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.const(x)
        raise TypeError(f"cannot coerce {x!r} to Scalar")

    # ring operations
    def __add__(self, other) -> "Scalar":
        other = Scalar.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v += c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return Scalar._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Scalar._raw({k: c * other for k, c in self.terms.items()})
        if not self.terms or not other.terms:
            return ZERO
        t: dict = {}
        for (e1, p1, m1), c1 in self.terms.items():
            for (e2, p2, m2), c2 in other.terms.items():
                k = (_form_add(e1, e2), p1 + p2, m1 + m2)
                v = t.get(k)
                c = c1 * c2
                if v is None:
                    t[k] = c
                else:
                    v += c
                    if v:
                        t[k] = v
                    else:
                        del t[k]
        return Scalar._raw(t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other) -> "Scalar":
        return exact_div(self, Scalar.coerce(other))

    def __rtruediv__(self, other) -> "Scalar":
        return exact_div(Scalar.coerce(other), self)

    # predicates
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(e.is_constant() and e.const == 0 and p == 0 and m == 0 for (e, p, m) in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()))

    def inverse(self) -> "Scalar":
        if len(self.terms) != 1:
            raise NotDivisible(f"{self} is not a unit")
        ((e, p, m), c), = self.terms.items()
        return Scalar._raw({(-e, -p, -m): 1 / c})

    def colour_ids(self) -> set[int]:
        s: set[int] = set()
        for e, _, _ in self.terms:
            s |= e.colour_ids()
        return s

    # maps
    def map_exponents(self, fn) -> "Scalar":
        out = ZERO
        for (e, p, m), c in self.terms.items():
            out = out + Scalar._raw({(fn(e), p, m): c})
        return out

    def substitute_colours(self, mapping: Mapping[int, ExponentForm]) -> "Scalar":
        return self.map_exponents(lambda e: e.substitute(mapping))

    def limit_colourless(self) -> "Scalar":
        return self.map_exponents(lambda e: ExponentForm(e.const))

    def limit_monochromatic(self, kept: ColourSymbol) -> "Scalar":
        return self.map_exponents(
            lambda e: ExponentForm(e.const, {kept.id: sum((v for _, v in e.coeffs), Fraction(0))})
        )

    def specialise_c(self, cplus: Rational | None = None, cminus: Rational | None = None) -> "Scalar":
        out = ZERO
        for (e, p, m), c in self.terms.items():
            cc = c
            if cplus is not None:
                cc *= Fraction(cplus) ** p
                p = 0
            if cminus is not None:
                cc *= Fraction(cminus) ** m
                m = 0
            out = out + Scalar._raw({(e, p, m): cc})
        return out

    def substitute(self, q_value, colour_values: Mapping[int, Rational], cplus=1, cminus=1) -> Fraction:
        """Exact rational value at a numeric point."""
        total = Fraction(0)
        q_value = Fraction(q_value)
        for (e, p, m), c in self.terms.items():
            total += (
                c
                * rational_power(q_value, e.evaluate(colour_values))
                * Fraction(cplus) ** p
                * Fraction(cminus) ** m
            )
        return total

    # rendering
    def render(self, names: Mapping[int, str] | None = None) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (e, p, m), c in sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]), reverse=True):
            factors = []
            if not (e.is_constant() and e.const == 0):
                ex = e.render(names)
                factors.append("q" if ex == "1" else f"q^({ex})")
            if p:
                factors.append("c+" if p == 1 else f"c+^{p}")
            if m:
                factors.append("c-" if m == 1 else f"c-^{m}")
            mono = "*".join(factors)
            if not mono:
                pieces.append(_frac_str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{_frac_str(c)}*{mono}")
        s = pieces[0]
        for piece in pieces[1:]:
            s += " - " + piece[1:] if piece.startswith("-") else " + " + piece
        return s

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Scalar({self.render()})"


_ZERO_FORM = ExponentForm()
_form_cache: dict = {}


def _form_add(a: ExponentForm, b: ExponentForm) -> ExponentForm:
    if not b.coeffs and not b.const:
        return a
    if not a.coeffs and not a.const:
        return b
    key = (a, b)
    r = _form_cache.get(key)
    if r is None:
        r = a + b
        if len(_form_cache) > 200_000:
            _form_cache.clear()
        _form_cache[key] = r
    return r


def _vector(key, ids: list[int]) -> tuple:
    e, p, m = key
    return (e.const, *(e.coefficient(i) for i in ids), Fraction(p), Fraction(m))


def _order_key(key) -> tuple:
    e, p, m = key
    return (e.const, e.coeffs, p, m)


def exact_div(num: Scalar, den: Scalar) -> Scalar:
    """Exact quotient ``num / den`` or :class:`NotDivisible`.

    Long division by leading terms under a lexicographic group order.  Every
    quotient term must lie in the per-coordinate box determined by the
    degree extents of ``num`` and ``den``; leaving the box proves that no
    exact quotient exists, which also bounds the loop.
    """
    if not den.terms:
        raise ZeroDivisionError("division by the zero Scalar")
    if not num.terms:
        return ZERO
    if len(den.terms) == 1:
        return num * den.inverse()
    ids = sorted(num.colour_ids() | den.colour_ids())
    dvecs = {k: _vector(k, ids) for k in den.terms}
    nvecs = [_vector(k, ids) for k in num.terms]
    dim = len(ids) + 3
    lo = [min(v[i] for v in nvecs) - min(v[i] for v in dvecs.values()) for i in range(dim)]
    hi = [max(v[i] for v in nvecs) - max(v[i] for v in dvecs.values()) for i in range(dim)]
    lead_key = max(den.terms, key=lambda k: dvecs[k])
    lead_vec = dvecs[lead_key]
    lead_c = den.terms[lead_key]
    rem = num
    quot = ZERO
    while rem.terms:
        rvecs = {k: _vector(k, ids) for k in rem.terms}
        rk = max(rem.terms, key=lambda k: rvecs[k])
        tv = tuple(a - b for a, b in zip(rvecs[rk], lead_vec))
        if any(t < l or t > h for t, l, h in zip(tv, lo, hi)):
            raise NotDivisible(f"{num} is not divisible by {den}")
        const, *cs, p, m = tv
        if p.denominator != 1 or m.denominator != 1:
            raise NotDivisible(f"{num} is not divisible by {den}")
        form = ExponentForm(const, dict(zip(ids, cs)))
        t = Scalar._raw({(form, int(p), int(m)): rem.terms[rk] / lead_c})
        quot = quot + t
        rem = rem - t * den
    return quot


def rational_power(base: Fraction, exponent: Fraction) -> Fraction:
    """``base ** exponent`` for rational exponent, exactly, or NonRationalPower."""
    base = Fraction(base)
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base ** exponent.numerator
    if base <= 0:
        raise NonRationalPower(f"{base}^{exponent}")
    d = exponent.denominator
    num = _iroot(base.numerator, d)
    den = _iroot(base.denominator, d)
    if num is None or den is None:
        raise NonRationalPower(f"{base}^{exponent} is not rational")
    return Fraction(num, den) ** exponent.numerator


def _iroot(n: int, d: int) -> int | None:
    r = round(n ** (1.0 / d))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**d == n:
            return cand
    # large values: integer Newton iteration
    lo, hi = 0, 1 << (n.bit_length() // d + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**d < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**d == n else None


ZERO = Scalar._raw({})
ONE = Scalar.const(1)


def qpow(exp) -> Scalar:
    """``q`` raised to an affine exponent (int, Fraction, colour or form)."""
    return Scalar.monomial(as_form(exp))


Q = qpow(1)
CPLUS = Scalar.monomial(0, 1, 0)
CMINUS = Scalar.monomial(0, 0, 1)
