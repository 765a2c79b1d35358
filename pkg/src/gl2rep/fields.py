"""Concrete finite-field towers F_p < F_q < F_{q^2} for the brute-force oracle.

Elements of F_{p^m} are encoded as integers in [0, p^m): the base-p
digits are the coefficients of a residue polynomial modulo a fixed
irreducible monic polynomial of degree m.  Moduli are the encoding-wise
smallest irreducible polynomials, so towers are reproducible without
external tables.  The tower keeps primitive elements sigma of F_{q^2}
and rho = sigma^(q+1) of F_q together with dense discrete-log tables on
both multiplicative groups; this is what lets the oracle read class
parameters straight off matrix eigenvalues.

Scale is capped at q <= 16, so all arithmetic tables stay tiny.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, NotPrime, ZeroElement

MAX_Q = 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class GF:
    """Arithmetic in F_{p^m} with integer-encoded elements."""

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.size = p**m
        self.modulus = modulus  # monic, length m + 1, constant term first
        self._mul: list[list[int]] | None = None

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, digits: list[int]) -> int:
        val = 0
        for d in reversed(digits):
            val = val * self.p + (d % self.p)
        return val

    def add(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        return self.encode([x + y for x, y in zip(da, db)])

    def sub(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        return self.encode([x - y for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self.encode([-x for x in self.digits(a)])

    def _mul_slow(self, a: int, b: int) -> int:
        p = self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the monic modulus
        for i in range(len(prod) - 1, self.m - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.m + 1):
                    prod[i - self.m + j] = (prod[i - self.m + j] - c * self.modulus[j]) % p
        return self.encode(prod[: self.m])

    def mul(self, a: int, b: int) -> int:
        if self._mul is None:
            self._mul = [
                [self._mul_slow(x, y) for y in range(self.size)] for x in range(self.size)
            ]
        return self._mul[a][b]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.size - 2)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("zero has no multiplicative order")
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n


def _poly_from_encoding(p: int, m: int, enc: int) -> tuple[int, ...]:
    """Monic degree-m polynomial whose lower coefficients encode enc base p."""
    coeffs = []
    for _ in range(m):
        coeffs.append(enc % p)
        enc //= p
    return tuple(coeffs) + (1,)


def _poly_mod(num: list[int], den: tuple[int, ...], p: int) -> list[int]:
    num = [c % p for c in num]
    dn = len(den) - 1
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            for j in range(dn + 1):
                num[i - dn + j] = (num[i - dn + j] - c * den[j]) % p
    return num[:dn]


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every lower-degree monic polynomial."""
    m = len(poly) - 1
    for deg in range(1, m // 2 + 1):
        for enc in range(p**deg):
            den = _poly_from_encoding(p, deg, enc)
            rem = _poly_mod(list(poly), den, p)
            if not any(rem):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """The irreducible monic polynomial of degree m with smallest encoding."""
    for enc in range(p**m):
        poly = _poly_from_encoding(p, m, enc)
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {m} over F_{p}")


@dataclass
class FieldTower:
    """F_q inside F_{q^2} with compatible primitive elements and dlog tables."""

    p: int
    ell: int
    q: int
    gf_q: GF
    gf_q2: GF
    embed: list[int]  # F_q element -> its image in F_{q^2}
    sigma: int  # primitive in F_{q^2}, order rs
    rho: int  # primitive in F_q (as an F_q element), order r; sigma^s = embed[rho]
    dlog_q_table: dict[int, int] = field(repr=False, default_factory=dict)
    dlog_q2_table: dict[int, int] = field(repr=False, default_factory=dict)

    @property
    def r(self) -> int:
        return self.q - 1

    @property
    def s(self) -> int:
        return self.q + 1

    def dlog_q(self, x: int) -> int:
        """Exponent k with rho^k = x, for nonzero x in F_q."""
        if x == 0:
            raise ZeroElement("dlog of zero")
        return self.dlog_q_table[x]

    def dlog_q2(self, x: int) -> int:
        """Exponent k with sigma^k = x, for nonzero x in F_{q^2}."""
        if x == 0:
            raise ZeroElement("dlog of zero")
        return self.dlog_q2_table[x]


def build_tower(p: int, ell: int) -> FieldTower:
    """Construct the tower for q = p^ell; oracle budget caps q at 16."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    q = p**ell
    if q > MAX_Q:
        raise BudgetExceeded(f"q={q} exceeds the oracle budget {MAX_Q}")

    gf_q = GF(p, ell, smallest_irreducible(p, ell))
    gf_q2 = GF(p, 2 * ell, smallest_irreducible(p, 2 * ell))

    # Embed F_q into F_{q^2} by sending the residue-class generator to a
    # root of the F_q modulus; constants map to constants.
    if ell == 1:
        theta = 0  # unused beyond theta^0
    else:
        theta = next(
            x for x in range(gf_q2.size) if _eval_poly(gf_q2, gf_q.modulus, x) == 0
        )
    powers = [1]
    for _ in range(ell - 1):
        powers.append(gf_q2.mul(powers[-1], theta))
    embed = []
    for a in range(gf_q.size):
        img = 0
        for digit, power in zip(gf_q.digits(a), powers):
            img = gf_q2.add(img, gf_q2.mul(digit % p, power))
        embed.append(img)
    assert len(set(embed)) == q, "embedding must be injective"

    rs = q * q - 1
    sigma = next(x for x in range(1, gf_q2.size) if gf_q2.mult_order(x) == rs)
    rho_image = gf_q2.pow(sigma, q + 1)
    rho = embed.index(rho_image)

    tower = FieldTower(p=p, ell=ell, q=q, gf_q=gf_q, gf_q2=gf_q2, embed=embed, sigma=sigma, rho=rho)

    x = 1
    for k in range(q - 1):
        tower.dlog_q_table[x] = k
        x = gf_q.mul(x, rho)
    assert x == 1 or q == 1
    y = 1
    for k in range(rs):
        tower.dlog_q2_table[y] = k
        y = gf_q2.mul(y, sigma)
    assert y == 1
    return tower


def _eval_poly(gf: GF, poly: tuple[int, ...], x: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = gf.add(gf.mul(acc, x), c % gf.p)
    return acc
