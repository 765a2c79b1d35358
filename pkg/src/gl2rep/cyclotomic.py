"""Exact arithmetic in rings of cyclotomic integers Z[zeta_N].

Elements are stored as integer coordinate vectors in the power basis
1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic
polynomial.  Because the cyclotomic polynomial is monic with integer
coefficients, reduction is exact integer arithmetic throughout: equality,
conjugation and integrality tests are all decidable without floating
point.  Values of characters of the groups handled by this package are
always of this form.

Mixed orders are supported by promoting both operands into Z[zeta_L]
with L = lcm of the orders.  Elements whose reduced form is a rational
integer are demoted to order 1, so integers coming out of different
computations compare equal structurally.
"""

from __future__ import annotations

import cmath
import math
import threading
from typing import Iterable, Sequence

from .errors import NonIntegral, OrderTooLarge

MAX_ORDER = 2**31

_lock = threading.Lock()
_cyclotomic_cache: dict[int, tuple[int, ...]] = {}
_power_table_cache: dict[int, tuple[tuple[int, ...], ...]] = {}


def euler_phi(n: int) -> int:
    """Euler totient of a positive integer."""
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Quotient of num by monic den; remainder must vanish."""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dn]
        if c:
            quot[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return quot


def _check_order(n: int) -> None:
    if n < 1:
        raise ValueError("root-of-unity order must be >= 1")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"order {n} exceeds cap {MAX_ORDER}")


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the monic N-th cyclotomic polynomial.

    Computed by exact division of x^n - 1 by the product of the d-th
    cyclotomic polynomials over proper divisors d of n.
    """
    _check_order(n)
    with _lock:
        cached = _cyclotomic_cache.get(n)
    if cached is not None:
        return cached
    if n == 1:
        poly = (-1, 1)
    else:
        num = [-1] + [0] * (n - 1) + [1]
        den = [1]
        for d in range(1, n):
            if n % d == 0:
                den = _poly_mul(den, cyclotomic_polynomial(d))
        poly = tuple(_poly_divmod_exact(num, den))
    with _lock:
        _cyclotomic_cache[n] = poly
    return poly


def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Power-basis coordinates of zeta_n^j for every j in range(n)."""
    with _lock:
        cached = _power_table_cache.get(n)
    if cached is not None:
        return cached
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    rows: list[tuple[int, ...]] = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        shifted = [0] + cur[:-1]
        lead = cur[-1]
        if lead:
            for i in range(deg):
                shifted[i] -= lead * phi_poly[i]
        cur = shifted
    table = tuple(rows)
    with _lock:
        _power_table_cache[n] = table
    return table


class Cyclotomic:
    """An element of Z[zeta_N] in reduced power-basis form.

    Instances are immutable; all operations return new values.  Two
    values are equal iff their coordinate vectors agree after promotion
    to the lcm of their orders.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[int]):
        _check_order(order)
        coeffs = tuple(int(c) for c in coeffs)
        deg = euler_phi(order)
        if len(coeffs) != deg:
            raise ValueError(f"expected {deg} coordinates for order {order}")
        if order > 1 and not any(coeffs[1:]):
            order, coeffs = 1, coeffs[:1]
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    @staticmethod
    def from_int(value: int) -> "Cyclotomic":
        return Cyclotomic(1, (value,))

    @staticmethod
    def zero() -> "Cyclotomic":
        return Cyclotomic(1, (0,))

    @staticmethod
    def one() -> "Cyclotomic":
        return Cyclotomic(1, (1,))

    def coords_at(self, order: int) -> list[int]:
        """Raw power-basis coordinates in Z[zeta_order]; no demotion applied."""
        if order == self.order:
            return list(self.coeffs)
        if order % self.order:
            raise ValueError("can only promote to a multiple of the order")
        _check_order(order)
        step = order // self.order
        table = _power_table(order)
        out = [0] * euler_phi(order)
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(i * step) % order]
                for k, r in enumerate(row):
                    if r:
                        out[k] += c * r
        return out

    @staticmethod
    def _coerce(value) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, int):
            return Cyclotomic.from_int(value)
        return NotImplemented

    def __add__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        l = math.lcm(self.order, other.order)
        va, vb = self.coords_at(l), other.coords_at(l)
        return Cyclotomic(l, tuple(x + y for x, y in zip(va, vb)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclotomic(self.order, tuple(other * c for c in self.coeffs))
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = math.lcm(self.order, other.order)
        va, vb = self.coords_at(n), other.coords_at(n)
        prod = _poly_mul(va, vb)
        deg = len(va)
        out = list(prod[:deg]) + [0] * (deg - min(deg, len(prod)))
        if len(prod) > deg:
            table = _power_table(n)
            for i in range(deg, len(prod)):
                c = prod[i]
                if c:
                    row = table[i % n]
                    for k, r in enumerate(row):
                        if r:
                            out[k] += c * r
        return Cyclotomic(n, out)

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        """Image under zeta -> zeta^(-1); an involutive ring automorphism."""
        n = self.order
        if n == 1:
            return self
        table = _power_table(n)
        out = [0] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(n - i) % n]
                for k, r in enumerate(row):
                    if r:
                        out[k] += c * r
        return Cyclotomic(n, out)

    def is_integer(self) -> bool:
        return self.order == 1

    def as_integer(self) -> int:
        """The value as a rational integer, or NonIntegral if it is not one."""
        if self.order != 1:
            raise NonIntegral(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 0

    def __eq__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        l = math.lcm(self.order, other.order)
        return self.coords_at(l) == other.coords_at(l)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __complex__(self) -> complex:
        n = self.order
        return sum(
            c * cmath.exp(2j * cmath.pi * i / n)
            for i, c in enumerate(self.coeffs)
            if c
        ) or complex(0)

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self.coeffs})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Textual form "c0 + c1*z + ..." with z = zeta_N."""
        if self.order == 1:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        text = parts[0]
        for part in parts[1:]:
            text += " - " + part[1:] if part.startswith("-") else " + " + part
        return f"{text}  (z = zeta_{self.order})"

    def as_json(self) -> dict:
        """JSON encoding: exact coordinates plus an advisory float."""
        z = complex(self)
        return {
            "order": self.order,
            "coeffs": list(self.coeffs),
            "approx": [float(f"{z.real:.12g}"), float(f"{z.imag:.12g}")],
        }


def root(n: int, e: int) -> Cyclotomic:
    """The root of unity zeta_n**e in reduced form; root(n, 0) is 1."""
    _check_order(n)
    if n == 1:
        return Cyclotomic.one()
    row = _power_table(n)[e % n]
    return Cyclotomic(n, row)


def root_coords(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of zeta_n**e for e in range(n).

    Shared by the multiplicity engines, which accumulate large sums of
    roots of unity as dense exponent vectors and reduce them once.
    """
    return _power_table(n)


def reduce_root_sum(n: int, weights: Sequence[int]) -> Cyclotomic:
    """Exact value of sum(weights[e] * zeta_n**e for e in range(n))."""
    if len(weights) != n:
        raise ValueError("need one weight per exponent")
    table = _power_table(n)
    out = [0] * euler_phi(n)
    for e, w in enumerate(weights):
        if w:
            row = table[e]
            for k, r in enumerate(row):
                if r:
                    out[k] += w * r
    return Cyclotomic(n, out)
