"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/M)).

Rationals are stdlib `fractions.Fraction` throughout the package.  This
module adds the single field extension needed for root coordinates of
Coxeter systems with arbitrary finite bond labels: elements are stored as
coefficient vectors in the power basis of x = 2cos(pi/M) modulo its minimal
polynomial, so equality and the zero test are exact, and sign determination
is exact via rational interval refinement around the real embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .errors import InputError

__all__ = [
    "CycloReal",
    "minimal_polynomial_of_2cos",
    "embed_2cos",
    "sign",
]


# ---------------------------------------------------------------------------
# Integer polynomial helpers (dense, ascending coefficients)
# ---------------------------------------------------------------------------


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divexact(p: list[int], q: list[int]) -> list[int]:
    """Exact division of integer polynomials (remainder must vanish)."""
    p = list(p)
    dq = len(q) - 1
    lead = q[-1]
    out = [0] * (len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        c = p[k]
        if c % lead != 0:
            raise ArithmeticError("inexact polynomial division")
        f = c // lead
        out[k - dq] = f
        if f:
            for j in range(dq + 1):
                p[k - dq + j] -= f * q[j]
    if any(p):
        raise ArithmeticError("nonzero remainder in exact division")
    return out


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """n-th cyclotomic polynomial, by dividing x^n - 1 by the proper divisors'."""
    f = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            f = _poly_divexact(f, list(_cyclotomic(d)))
    return tuple(f)


def _euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def minimal_polynomial_of_2cos(M: int) -> tuple[int, ...]:
    """Monic minimal polynomial of 2cos(pi/M) over Q, ascending coefficients.

    For M >= 2 the polynomial has degree phi(2M)/2 and is obtained from the
    cyclotomic polynomial of order 2M: writing Phi_{2M}(z) (palindromic of
    degree 2k) as z^k * P(z + 1/z) yields P via the coefficient recurrence
    for the polynomials C_j with C_j(y + 1/y) = y^j + y^-j.
    """
    if M < 1:
        raise InputError("modulus must be a positive integer")
    if M == 1:
        return (2, 1)  # 2cos(pi) = -2
    phi = list(_cyclotomic(2 * M))
    deg = len(phi) - 1
    if deg % 2 != 0:
        raise ArithmeticError("cyclotomic polynomial of order >= 3 must have even degree")
    k = deg // 2
    # C_0 = 2, C_1 = y, C_{j+1} = y*C_j - C_{j-1}
    out = [0] * (k + 1)
    out[0] = phi[k]
    prev, cur = [2], [0, 1]
    for j in range(1, k + 1):
        c = phi[k + j]
        if c:
            for idx, coeff in enumerate(cur):
                out[idx] += c * coeff
        if j < k:
            nxt = [0] + cur
            for idx, coeff in enumerate(prev):
                nxt[idx] -= coeff
            prev, cur = cur, nxt
    expected = _euler_phi(2 * M) // 2
    if len(out) - 1 != expected or out[-1] != 1:
        raise ArithmeticError(f"minimal polynomial construction failed for M={M}")
    return tuple(out)


# ---------------------------------------------------------------------------
# Field elements
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _field_data(M: int):
    """Degree and x^k reduction rows (deg <= k <= 2deg-2) for the modulus M."""
    poly = minimal_polynomial_of_2cos(M)
    deg = len(poly) - 1
    rows = []
    # x^deg = -(poly[0] + ... + poly[deg-1] x^{deg-1})
    row = [Fraction(-c) for c in poly[:deg]]
    rows.append(tuple(row))
    for _ in range(deg - 2):
        shifted = [Fraction(0)] + row[:-1]
        top = row[-1]
        if top:
            base = rows[0]
            shifted = [shifted[i] + top * base[i] for i in range(deg)]
        row = shifted
        rows.append(tuple(row))
    return deg, tuple(rows)


def _reduce(M: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    deg, rows = _field_data(M)
    if len(coeffs) < deg:
        coeffs = coeffs + [Fraction(0)] * (deg - len(coeffs))
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            row = rows[k - deg]
            for i in range(deg):
                coeffs[i] += c * row[i]
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class CycloReal:
    """An element of Q(2cos(pi/M)), as a power-basis coefficient vector.

    Immutable and hashable; arithmetic is exact.  Mixed arithmetic with int
    and Fraction scalars is supported.
    """

    modulus: int
    coeffs: tuple[Fraction, ...]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(M: int) -> "CycloReal":
        deg, _ = _field_data(M)
        return CycloReal(M, (Fraction(0),) * deg)

    @staticmethod
    def from_rational(M: int, value) -> "CycloReal":
        deg, _ = _field_data(M)
        head = (Fraction(value),)
        return CycloReal(M, head + (Fraction(0),) * (deg - 1))

    @staticmethod
    def generator(M: int) -> "CycloReal":
        """The element 2cos(pi/M) itself."""
        deg, _ = _field_data(M)
        if deg == 1:
            # field is Q; the generator is the rational root of the minpoly
            poly = minimal_polynomial_of_2cos(M)
            return CycloReal(M, (Fraction(-poly[0], poly[1]),))
        vec = [Fraction(0)] * deg
        vec[1] = Fraction(1)
        return CycloReal(M, tuple(vec))

    # -- basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InputError("element is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "CycloReal | None":
        if isinstance(other, CycloReal):
            if other.modulus != self.modulus:
                raise InputError("mixed cyclotomic moduli")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloReal.from_rational(self.modulus, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloReal(self.modulus, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloReal(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloReal(self.modulus, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloReal(self.modulus, tuple(a * f for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_rational():
            return o * self.coeffs[0]
        if o.is_rational():
            return self * o.coeffs[0]
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloReal(self.modulus, _reduce(self.modulus, prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / f)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycloReal.from_rational(self.modulus, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "CycloReal":
        """Multiplicative inverse via the extended euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloReal.from_rational(self.modulus, 1 / self.coeffs[0])
        minpoly = [Fraction(c) for c in minimal_polynomial_of_2cos(self.modulus)]
        r0, r1 = minpoly, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                return CycloReal(
                    self.modulus, _reduce(self.modulus, [c * inv for c in s1])
                )
            q, rem = _q_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _q_sub(s0, _q_mul(q, s1))

    # -- sign and ordering ---------------------------------------------------

    def sign(self) -> int:
        return sign(self)

    def __repr__(self):
        return f"CycloReal(M={self.modulus}, {list(self.coeffs)})"


def _q_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    while b and not b[-1]:
        b = b[:-1]
        db -= 1
    q = [Fraction(0)] * max(len(a) - db, 1)
    inv = 1 / b[-1]
    for k in range(len(a) - 1, db - 1, -1):
        f = a[k] * inv
        if f:
            q[k - db] = f
            for j in range(db + 1):
                a[k - db + j] -= f * b[j]
    while a and not a[-1]:
        a.pop()
    return q, (a or [Fraction(0)])


def _q_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _q_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def embed_2cos(m: int, M: int) -> CycloReal:
    """2cos(pi/m) as an element of Q(2cos(pi/M)); requires m | M and m >= 2.

    Uses the Chebyshev-style identity 2cos(k*theta) = C_k(2cos theta) with
    k = M/m, where C_k(y + 1/y) = y^k + y^-k.
    """
    if m < 2:
        raise InputError("bond label must be >= 2")
    if M % m != 0:
        raise InputError(f"{m} does not divide the modulus {M}")
    k = M // m
    x = CycloReal.generator(M)
    if k == 1:
        return x
    prev = CycloReal.from_rational(M, 2)
    cur = x
    for _ in range(k - 1):
        prev, cur = cur, x * cur - prev
    return cur


# ---------------------------------------------------------------------------
# Exact sign determination
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _generator_enclosure(M: int, prec: int) -> tuple[Fraction, Fraction]:
    """Rational interval around 2cos(pi/M), verified by an exact sign change.

    The centre comes from mpmath at `prec` bits; the half-width 2^(8-prec)
    dwarfs mpmath's rounding error.  For degree > 1 fields the enclosure is
    certified by checking that the minimal polynomial changes sign across it.
    """
    with mpmath.workprec(prec):
        value = 2 * mpmath.cos(mpmath.pi / M)
        centre = _mpf_to_fraction(value)
    eps = Fraction(1, 2 ** (prec - 8))
    lo, hi = centre - eps, centre + eps
    poly = minimal_polynomial_of_2cos(M)
    if len(poly) > 2 and _eval_int_poly(poly, lo) * _eval_int_poly(poly, hi) >= 0:
        raise ArithmeticError(f"enclosure of 2cos(pi/{M}) failed certification")
    return lo, hi


def _mpf_to_fraction(x) -> Fraction:
    sign_bit, man, exp, _ = mpmath.mpf(x)._mpf_
    frac = Fraction(man) * (Fraction(2) ** exp)
    return -frac if sign_bit else frac


def _eval_int_poly(poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def sign(x: CycloReal) -> int:
    """Exact sign of x under the real embedding 2cos(pi/M) -> its real value.

    Zero iff the coefficient vector is zero (the power basis is faithful);
    otherwise the precision of the interval around the generator is doubled
    until the interval evaluation of the polynomial excludes zero, which
    terminates because a nonzero algebraic number has nonzero value.
    """
    if x.is_zero():
        return 0
    if x.is_rational():
        c = x.coeffs[0]
        return -1 if c < 0 else 1
    prec = 64
    while True:
        lo, hi = _generator_enclosure(x.modulus, prec)
        vlo, vhi = _eval_interval(x.coeffs, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        prec *= 2
        if prec > 1 << 20:
            raise ArithmeticError("sign determination failed to converge")


def _eval_interval(coeffs, lo: Fraction, hi: Fraction):
    total_lo, total_hi = coeffs[0], coeffs[0]
    pow_lo, pow_hi = Fraction(1), Fraction(1)
    for c in coeffs[1:]:
        products = (pow_lo * lo, pow_lo * hi, pow_hi * lo, pow_hi * hi)
        pow_lo, pow_hi = min(products), max(products)
        if c > 0:
            total_lo += c * pow_lo
            total_hi += c * pow_hi
        elif c < 0:
            total_lo += c * pow_hi
            total_hi += c * pow_lo
    return total_lo, total_hi


def primitive_vector(vec) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction."""
    fracs = [Fraction(v) for v in vec]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)
