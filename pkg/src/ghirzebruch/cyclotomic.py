"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1), i.e. as
polynomials reduced modulo the n-th cyclotomic polynomial.  Internally the
coefficients are kept as an integer vector over a single positive common
denominator, which keeps multiplication in integer arithmetic.

The module also evaluates the two families of root-of-unity sums that show up
in the equivariant index computations, and a high-precision numeric oracle
(mpmath) that checks them along an independent route.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

import mpmath

MAX_ORDER = 512

Number = Union[int, Fraction]


class OrderMismatchError(ValueError):
    """Raised when combining elements of different cyclotomic fields."""


class NonRationalError(ArithmeticError):
    """A value that must be rational reduced to an irrational field element.

    This always indicates an internal consistency failure, never bad input.
    """


def _check_order(n: int, cap: int = MAX_ORDER) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic order must be a positive integer, got {n!r}")
    if n > cap:
        raise ValueError(f"cyclotomic order {n} exceeds the cap {cap}")


# -- integer polynomial helpers (coefficient lists, lowest degree first) -----

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod_exact(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials where ``den`` is monic."""
    num = list(num)
    assert den[-1] == 1
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quo = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quo[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    rem = _trim(num[:dd]) or [0]
    return quo, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Obtained by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    _check_order(n, cap=max(MAX_ORDER, n))
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p, rem = _poly_divmod_exact(p, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise AssertionError(f"Phi_{d} does not divide x^{n}-1")
    return tuple(p)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce_int(p: Sequence[int], n: int) -> list[int]:
    """Reduce an integer polynomial modulo Phi_n; result has length phi(n)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    out = list(p)
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            for j in range(deg + 1):
                out[i - deg + j] -= c * phi[j]
    out = out[:deg]
    out.extend([0] * (deg - len(out)))
    return out


# -- rational polynomial helpers for the extended Euclidean algorithm -------

def _qdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [Fraction(0)], a
    quo = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return quo, (_trim(a[:db]) or [Fraction(0)])


def _qmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    m = max(len(a), len(b))
    a = a + [Fraction(0)] * (m - len(a))
    b = b + [Fraction(0)] * (m - len(b))
    return _trim([x - y for x, y in zip(a, b)]) or [Fraction(0)]


def _qinverse_mod(f: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Inverse of f modulo m over Q via the extended Euclidean algorithm."""
    r0, r1 = m, f
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(_trim(list(r1))) > 0 and any(r1):
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
    # r0 is the gcd; a unit iff it is a nonzero constant
    if len(r0) != 1 or r0[0] == 0:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    c = r0[0]
    return [x / c for x in s0]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class CyclotomicNumber:
    """An exact element of Q(zeta_n).

    Two values are equal iff their reduced coefficient vectors agree.
    """

    __slots__ = ("order", "_num", "_den")

    def __init__(self, order: int, coeffs: Iterable[Number]):
        _check_order(order)
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > euler_phi(order):
            raise ValueError("too many coefficients; use from_polynomial to reduce")
        fr.extend([Fraction(0)] * (euler_phi(order) - len(fr)))
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        self._set(order, [int(c * den) for c in fr], den)

    def _set(self, order: int, num: list[int], den: int) -> None:
        g = den
        for c in num:
            g = gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_num", tuple(num))
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    @classmethod
    def _raw(cls, order: int, num: Sequence[int], den: int) -> "CyclotomicNumber":
        obj = object.__new__(cls)
        obj._set(order, list(num), den)
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_polynomial(cls, order: int, coeffs: Iterable[Number]) -> "CyclotomicNumber":
        """Reduce an arbitrary polynomial in zeta (lowest degree first)."""
        _check_order(order)
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        return cls._raw(order, _reduce_int([int(c * den) for c in fr], order), den)

    @classmethod
    def rational(cls, order: int, value: Number) -> "CyclotomicNumber":
        v = Fraction(value)
        num = [0] * euler_phi(order)
        num[0] = v.numerator
        return cls._raw(order, num, v.denominator)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CyclotomicNumber":
        """zeta^k; exponents are taken mod n."""
        _check_order(order)
        return _zeta_power(order, k % order)

    # -- accessors ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NonRationalError(f"value in Q(zeta_{self.order}) is not rational: {self!r}")
        return Fraction(self._num[0], self._den)

    def __complex__(self) -> complex:
        z = complex(mpmath.exp(2j * mpmath.pi / self.order))
        return sum(float(c) * z ** i for i, c in enumerate(self.coeffs))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"cannot combine Q(zeta_{self.order}) with Q(zeta_{other.order})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = _lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return CyclotomicNumber._raw(
            self.order, [x * fa + y * fb for x, y in zip(self._num, other._num)], den
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.order, [-x for x in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._num, other._num
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber._raw(
            self.order, _reduce_int(prod, self.order), self._den * other._den
        )

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        f = _trim([Fraction(c) for c in self._num])
        inv = _qinverse_mod(f, phi)
        # the stored value is num/den, so its inverse is den * inv(num)
        return CyclotomicNumber.from_polynomial(self.order, [c * self._den for c in inv])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.order == other.order and self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self.order, self._num, self._den))

    def __repr__(self):
        terms = [str(c) if i == 0 else f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CyclotomicNumber({self.order}: {' + '.join(terms) or '0'})"


def cyclo_arith(x: CyclotomicNumber, y: CyclotomicNumber, op: str) -> CyclotomicNumber:
    """Apply ``op`` in {add, sub, mul, div} to two elements of the same field."""
    if x.order != y.order:
        raise OrderMismatchError(f"order mismatch: {x.order} vs {y.order}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=4096)
def _zeta_power(n: int, k: int) -> CyclotomicNumber:
    poly = [0] * (k + 1)
    poly[k] = 1
    return CyclotomicNumber._raw(n, _reduce_int(poly, n), 1)


@lru_cache(maxsize=4096)
def _one_minus_zeta_inverse(n: int, k: int) -> CyclotomicNumber:
    """1 / (1 - zeta^k) for k not divisible by n."""
    if k % n == 0:
        raise ZeroDivisionError(f"1 - zeta^{k} vanishes in Q(zeta_{n})")
    return (1 - _zeta_power(n, k % n)).inverse()


# -- the two root-of-unity sums -----------------------------------------------

def _check_sum_order(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"sum order must be an integer >= 2, got {n!r}")
    _check_order(n)


def eval_sum_reciprocal(n: int, k: int) -> Fraction:
    """Exact value of sum_{x=1}^{n-1} zeta^(k x) / (1 - zeta^x)."""
    _check_sum_order(n)
    total = CyclotomicNumber.rational(n, 0)
    for x in range(1, n):
        total = total + _zeta_power(n, (k * x) % n) * _one_minus_zeta_inverse(n, x)
    return total.to_rational()


def reciprocal_sum_closed_form(n: int, k: int) -> Fraction:
    """Closed form (2k' - n - 1)/2 with k' = ((k - 1) mod n) + 1.

    Cross-checked against :func:`eval_sum_reciprocal` in the test suite.
    """
    _check_sum_order(n)
    kk = (k - 1) % n + 1
    return Fraction(2 * kk - n - 1, 2)


def index_contribution(n: int, p: int, q: int, w: int) -> Fraction:
    """Fixed-point contribution (1/n) sum_x 2(zeta^(wx) - 1) / ((1 - zeta^(-px))(1 - zeta^(-qx))).

    ``p`` and ``q`` are the tangent weights at an isolated fixed point and
    ``w`` is the weight on the bundle fiber.  Both tangent weights must be
    units mod n.
    """
    _check_sum_order(n)
    if gcd(p, n) != 1 or gcd(q, n) != 1:
        raise ValueError(
            f"weights ({p}, {q}) must be coprime to n={n} at an isolated fixed point"
        )
    total = CyclotomicNumber.rational(n, 0)
    for x in range(1, n):
        num = _zeta_power(n, (w * x) % n) - 1
        if num.is_zero():
            continue
        total = total + num * _one_minus_zeta_inverse(n, (-p * x) % n) * _one_minus_zeta_inverse(
            n, (-q * x) % n
        )
    return (total * Fraction(2, n)).to_rational()


# -- numeric oracle -------------------------------------------------------------

@dataclass(frozen=True)
class ReciprocalSum:
    """Term description for sum_x zeta^(kx) / (1 - zeta^x)."""

    k: int


@dataclass(frozen=True)
class IndexSum:
    """Term description for the fixed-point contribution with weights (p, q; w)."""

    p: int
    q: int
    w: int


ORACLE_DPS = 60


def numeric_oracle(n: int, term: Union[ReciprocalSum, IndexSum], dps: int = ORACLE_DPS) -> mpmath.mpf:
    """Evaluate a sum by floating summation over the complex roots of unity.

    Works at ``dps`` decimal digits (default 60); returns the real part.
    """
    _check_sum_order(n)
    with mpmath.workdps(dps):
        two_pi_i = 2j * mpmath.pi
        root = lambda e: mpmath.exp(two_pi_i * mpmath.mpf(e % n) / n)  # noqa: E731
        total = mpmath.mpc(0)
        if isinstance(term, ReciprocalSum):
            for x in range(1, n):
                total += root(term.k * x) / (1 - root(x))
        elif isinstance(term, IndexSum):
            if gcd(term.p, n) != 1 or gcd(term.q, n) != 1:
                raise ValueError("tangent weights must be coprime to n")
            for x in range(1, n):
                total += 2 * (root(term.w * x) - 1) / (
                    (1 - root(-term.p * x)) * (1 - root(-term.q * x))
                )
            total /= n
        else:
            raise TypeError(f"unknown term description {term!r}")
        return +total.real
