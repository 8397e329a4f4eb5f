"""Exact arithmetic in cyclotomic fields.

A value is an element of some Q(zeta_n), stored as the residue of a
polynomial in zeta_n modulo the n-th cyclotomic polynomial, in the power
basis zeta^0 .. zeta^(phi(n)-1).  The conductor n is minimized every time a
value is normalized, so the representation is canonical: two values are
equal iff their (conductor, coefficients) data coincide, and hashing is
structural.  Coefficients are `fractions.Fraction`; no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n, ascending."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    r = n
    for p in prime_factors(n):
        r = r // p * (p - 1)
    return r


def _int_poly_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # exact division of integer polynomials, constant term first, den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, dc in enumerate(den):
                num[i - dd + j] -= c * dc
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant first."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce_mod_phi(n: int, vec: list[Fraction]) -> list[Fraction]:
    # vec has length n (exponents 0..n-1); returns length phi(n)
    phi = cyclotomic_polynomial(n)
    k = len(phi) - 1
    for i in range(len(vec) - 1, k - 1, -1):
        c = vec[i]
        if c:
            vec[i] = _F0
            base = i - k
            for j in range(k):
                if phi[j]:
                    vec[base + j] -= c * phi[j]
    return vec[:k]


@lru_cache(maxsize=None)
def _descent_data(n: int, m: int):
    """Solve/check rows for membership of Q(zeta_n) vectors in Q(zeta_m), m | n.

    Returns (sol_rows, chk_rows): x_j = sol_rows[j] . v gives the coordinates
    over the power basis of zeta_m, valid iff chk_rows . v vanishes.
    """
    phin, phim = euler_phi(n), euler_phi(m)
    step = n // m
    cols = []
    for j in range(phim):
        vec = [_F0] * n
        vec[step * j] = _F1
        cols.append(_reduce_mod_phi(n, vec))
    rows = [
        [cols[j][i] for j in range(phim)]
        + [(_F1 if t == i else _F0) for t in range(phin)]
        for i in range(phin)
    ]
    r = 0
    for c in range(phim):
        piv = next(i for i in range(r, phin) if rows[i][c])
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(phin):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    sol_rows = [tuple(rows[c][phim:]) for c in range(phim)]
    chk_rows = [tuple(rows[i][phim:]) for i in range(phim, phin)]
    return sol_rows, chk_rows


def _dot(row, vec) -> Fraction:
    s = _F0
    for r, v in zip(row, vec):
        if r and v:
            s += r * v
    return s


def _try_descent(n: int, m: int, vec: list[Fraction]):
    sol, chk = _descent_data(n, m)
    for row in chk:
        if _dot(row, vec):
            return None
    return [_dot(row, vec) for row in sol]


def _normal_form(n: int, items) -> tuple[int, tuple[tuple[int, Fraction], ...]]:
    if n < 1:
        raise ValueError("conductor must be >= 1")
    acc: dict[int, Fraction] = {}
    for e, c in items:
        if c:
            e %= n
            acc[e] = acc.get(e, _F0) + c
    if n == 1:
        c = acc.get(0, _F0)
        return 1, (((0, c),) if c else ())
    vec = [_F0] * n
    for e, c in acc.items():
        vec[e] = c
    vec = _reduce_mod_phi(n, vec)
    while n > 1:
        for p in prime_factors(n):
            nv = _try_descent(n, n // p, vec)
            if nv is not None:
                n, vec = n // p, nv
                break
        else:
            break
    return n, tuple((e, c) for e, c in enumerate(vec) if c)


def _coerce_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


class Cyclotomic:
    """An exact element of a cyclotomic field, always in canonical form."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, value=0):
        c = _coerce_fraction(value)
        self.n = 1
        self.coeffs = ((0, c),) if c else ()
        self._hash = hash((1, self.coeffs))

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> "Cyclotomic":
        # trusted constructor: (n, coeffs) must already be canonical
        obj = object.__new__(cls)
        obj.n = n
        obj.coeffs = coeffs
        obj._hash = hash((n, coeffs))
        return obj

    @classmethod
    def from_terms(cls, n: int, terms) -> "Cyclotomic":
        """Build sum of c * zeta_n^e from (e, c) pairs, then normalize."""
        nn, coeffs = _normal_form(n, ((e, _coerce_fraction(c)) for e, c in terms))
        return cls._raw(nn, coeffs)

    # ------------------------------------------------------------------ basics

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_rational(self) -> bool:
        return self.n == 1

    def as_rational(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0][1] if self.coeffs else _F0

    def as_int(self) -> int:
        q = self.as_rational()
        if q.denominator != 1:
            raise ValueError(f"{self!r} is not an integer")
        return q.numerator

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.n == 1 and self.as_rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    @property
    def sort_key(self):
        # deterministic total order; negated numerators so that 1 sorts
        # before -1 and the all-positive row of a table comes first
        return (self.n, tuple((e, -c.numerator, c.denominator) for e, c in self.coeffs))

    # -------------------------------------------------------------- arithmetic

    def _scaled(self, c: Fraction) -> "Cyclotomic":
        if not c:
            return CYC_ZERO
        return Cyclotomic._raw(self.n, tuple((e, v * c) for e, v in self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(other)
        elif not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self, other
        if a.n == 1 and b.n == 1:
            return Cyclotomic(a.as_rational() + b.as_rational())
        if a.n == 1 or b.n == 1:
            # adding a rational never changes the conductor
            if b.n == 1:
                a, b = b, a
            d = dict(b.coeffs)
            d[0] = d.get(0, _F0) + a.as_rational()
            if not d[0]:
                del d[0]
            return Cyclotomic._raw(b.n, tuple(sorted(d.items())))
        if a.n == b.n:
            d = dict(a.coeffs)
            for e, c in b.coeffs:
                s = d.get(e, _F0) + c
                if s:
                    d[e] = s
                else:
                    del d[e]
            n, coeffs = _normal_form(a.n, d.items()) if d else (1, ())
            return Cyclotomic._raw(n, coeffs)
        n = lcm(a.n, b.n)
        sa, sb = n // a.n, n // b.n
        terms = [(e * sa, c) for e, c in a.coeffs]
        terms += [(e * sb, c) for e, c in b.coeffs]
        return Cyclotomic.from_terms(n, terms)

    __radd__ = __add__

    def __neg__(self):
        return self._scaled(Fraction(-1))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(other)
        elif not isinstance(other, Cyclotomic):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scaled(_coerce_fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self, other
        if a.n == 1:
            return b._scaled(a.as_rational())
        if b.n == 1:
            return a._scaled(b.as_rational())
        n = lcm(a.n, b.n)
        sa, sb = n // a.n, n // b.n
        terms: dict[int, Fraction] = {}
        for e1, c1 in a.coeffs:
            e1s = e1 * sa
            for e2, c2 in b.coeffs:
                e = (e1s + e2 * sb) % n
                terms[e] = terms.get(e, _F0) + c1 * c2
        return Cyclotomic.from_terms(n, terms.items())

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                return NotImplemented
            other = other.as_rational()
        c = _coerce_fraction(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self._scaled(1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = CYC_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation: the field map fixing rationals, zeta -> zeta^-1."""
        if self.n == 1:
            return self
        return Cyclotomic.from_terms(self.n, (((-e) % self.n, c) for e, c in self.coeffs))

    # ------------------------------------------------------------------ output

    def __repr__(self) -> str:
        if self.n == 1:
            return f"Cyc({self.as_rational()})"
        terms = " + ".join(f"{c}*z{self.n}^{e}" for e, c in self.coeffs)
        return f"Cyc({terms})"

    def to_json(self):
        return {
            "n": self.n,
            "coeffs": [[e, f"{c.numerator}/{c.denominator}"] for e, c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> "Cyclotomic":
        return cls.from_terms(obj["n"], ((e, Fraction(s)) for e, s in obj["coeffs"]))


CYC_ZERO = Cyclotomic(0)
CYC_ONE = Cyclotomic(1)


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k in canonical form; root_of_unity(n, 0) == 1."""
    if n < 1:
        raise ValueError("order of a root of unity must be >= 1")
    return Cyclotomic.from_terms(n, ((k % n, _F1),))


def embed_coordinates(value: Cyclotomic, n: int) -> tuple[Fraction, ...]:
    """Coordinates of `value` over the power basis of Q(zeta_n); n must be a
    multiple of the conductor.  No conductor minimization is performed."""
    if n % value.n:
        raise ValueError(f"conductor {value.n} does not divide {n}")
    step = n // value.n
    vec = [_F0] * n
    for e, c in value.coeffs:
        vec[e * step] = c
    if n == 1:
        return tuple(vec)
    return tuple(_reduce_mod_phi(n, vec))


def multiplicative_order(value: Cyclotomic, bound: int = 10**6) -> int:
    """Order of a root of unity; raises if `value` is not one of finite order."""
    acc = value
    for o in range(1, bound + 1):
        if acc == CYC_ONE:
            return o
        acc = acc * value
    raise ValueError("value does not have small multiplicative order")
