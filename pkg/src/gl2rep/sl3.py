"""Restriction from SL3(q) to GL2(q) embedded via g -> diag(g, det(g)^-1).

Only the three irreducible families of SL3(q) needed to exhibit
multiplicity >= 2 witnesses are carried: pi_qs (dimension q*s),
pi_t^(u) (dimension t = q^2 + q + 1) and pi_rt^(u) (dimension r*t).
Their character values are known on all eight class types C1..C8 of
SL3(q); the embedded copy of GL2(q) only ever meets C1..C7.

Class parameter conventions, with omega = rho^(r/d), d = gcd(3, r):

    C1(k), C2(k)      1 <= k <= d (k = d is the identity coset)
    C3(k, l)          1 <= k, l <= d; character values depend on k only
    C4(k), C5(k)      k in Z_r with k != 0 mod r/d
    C6({k, l})        distinct eigenvalue exponents {k, l, -k-l} mod r
    C7(k)             k in Z_rs, k != 0 mod s, orbit k ~ q*k
    C8(k)             k in Z_t, k != 0 mod t/d, orbit k ~ q*k ~ q^2*k

The pi_rt value on C7(k) is -(phi_u(sigma^-k) + phi_u(sigma^-qk)).
"""

from __future__ import annotations

from .cyclotomic import Cyclotomic, reduce_root_sum
from .errors import InvalidLabel, MismatchedQ, NonIntegral, WitnessFailed
from .gl2 import (
    GL2Class,
    GL2Irrep,
    GroupParams,
    char_terms,
    enumerate_irreps,
    params,
    w_pairs,
    x_canonical,
    x_orbit_reps,
)

SL3_IRREP_KINDS = ("piQS", "piT", "piRT")


class SL3Class:
    """Canonical label of a conjugacy class of SL3(q)."""

    __slots__ = ("q", "kind", "data")

    def __init__(self, q: int, kind: str, data: tuple[int, ...]):
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("labels are immutable")

    def __eq__(self, other):
        if not isinstance(other, SL3Class):
            return NotImplemented
        if self.q != other.q:
            raise MismatchedQ(f"comparing labels for q={self.q} and q={other.q}")
        return (self.kind, self.data) == (other.kind, other.data)

    def __hash__(self):
        return hash(("SL3Class", self.q, self.kind, self.data))

    def label(self) -> str:
        return f"{self.kind}:{','.join(str(v) for v in self.data)}"

    def __repr__(self):
        return f"SL3Class({self.label()!r}, q={self.q})"

    @staticmethod
    def C1(pr: GroupParams, k: int) -> "SL3Class":
        return SL3Class(pr.q, "C1", (_central_param(k, pr),))

    @staticmethod
    def C2(pr: GroupParams, k: int) -> "SL3Class":
        return SL3Class(pr.q, "C2", (_central_param(k, pr),))

    @staticmethod
    def C3(pr: GroupParams, k: int, l: int) -> "SL3Class":
        if not (1 <= l <= pr.d):
            raise InvalidLabel(f"C3 second parameter {l} outside 1..{pr.d}")
        return SL3Class(pr.q, "C3", (_central_param(k, pr), l))

    @staticmethod
    def C4(pr: GroupParams, k: int) -> "SL3Class":
        return SL3Class(pr.q, "C4", (_noncentral_param(k, pr),))

    @staticmethod
    def C5(pr: GroupParams, k: int) -> "SL3Class":
        return SL3Class(pr.q, "C5", (_noncentral_param(k, pr),))

    @staticmethod
    def C6(pr: GroupParams, k: int, l: int) -> "SL3Class":
        r = pr.r
        k, l = k % r, l % r
        third = (-k - l) % r
        triple = sorted({k, l, third})
        if len(triple) != 3:
            raise InvalidLabel(
                f"C6 eigenvalue exponents {{{k},{l},{third}}} must be pairwise distinct"
            )
        return SL3Class(pr.q, "C6", (triple[0], triple[1]))

    @staticmethod
    def C7(pr: GroupParams, k: int) -> "SL3Class":
        return SL3Class(pr.q, "C7", (x_canonical(k, pr),))

    @staticmethod
    def C8(pr: GroupParams, k: int) -> "SL3Class":
        t, q = pr.t, pr.q
        k %= t
        if pr.d * k % t == 0:
            raise InvalidLabel(f"C8 parameter {k} is 0 mod t/d")
        return SL3Class(pr.q, "C8", (min(k, q * k % t, q * q * k % t),))


def _central_param(k: int, pr: GroupParams) -> int:
    if not (1 <= k <= pr.d):
        raise InvalidLabel(f"central class parameter {k} outside 1..{pr.d}")
    return k


def _noncentral_param(k: int, pr: GroupParams) -> int:
    k %= pr.r
    if k * pr.d % pr.r == 0:
        raise InvalidLabel(f"parameter {k} is 0 mod r/d={pr.r // pr.d}")
    return k


class SL3Irrep:
    """One of the three partial-table irreducibles of SL3(q)."""

    __slots__ = ("q", "kind", "data")

    def __init__(self, q: int, kind: str, data: tuple[int, ...]):
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("labels are immutable")

    def __eq__(self, other):
        if not isinstance(other, SL3Irrep):
            return NotImplemented
        if self.q != other.q:
            raise MismatchedQ(f"comparing labels for q={self.q} and q={other.q}")
        return (self.kind, self.data) == (other.kind, other.data)

    def __hash__(self):
        return hash(("SL3Irrep", self.q, self.kind, self.data))

    def label(self) -> str:
        if not self.data:
            return self.kind
        return f"{self.kind}:{','.join(str(v) for v in self.data)}"

    def __repr__(self):
        return f"SL3Irrep({self.label()!r}, q={self.q})"

    @staticmethod
    def QS(pr: GroupParams) -> "SL3Irrep":
        return SL3Irrep(pr.q, "piQS", ())

    @staticmethod
    def T(pr: GroupParams, u: int) -> "SL3Irrep":
        u %= pr.r
        if u == 0:
            raise InvalidLabel("piT parameter must be nonzero mod r")
        return SL3Irrep(pr.q, "piT", (u,))

    @staticmethod
    def RT(pr: GroupParams, u: int) -> "SL3Irrep":
        return SL3Irrep(pr.q, "piRT", (x_canonical(u, pr),))

    def dim(self) -> int:
        pr = params(self.q)
        if self.kind == "piQS":
            return pr.q * pr.s
        if self.kind == "piT":
            return pr.t
        return pr.r * pr.t


def embed_class(c: GL2Class, pr: GroupParams) -> SL3Class:
    """The SL3(q) class met by the image of a GL2(q) class under the embedding."""
    if c.q != pr.q:
        raise MismatchedQ(f"{c!r} does not live over q={pr.q}")
    r, d = pr.r, pr.d
    unit = r // d
    if c.kind == "c1":
        k = c.data[0]
        if k % unit == 0:
            return SL3Class.C1(pr, _omega_exponent(k, pr))
        return SL3Class.C4(pr, k)
    if c.kind == "c2":
        k = c.data[0]
        if k % unit == 0:
            return SL3Class.C2(pr, _omega_exponent(k, pr))
        return SL3Class.C5(pr, k)
    if c.kind == "c3":
        k, l = c.data
        if (2 * k + l) % r == 0:
            return SL3Class.C4(pr, k)
        if (2 * l + k) % r == 0:
            return SL3Class.C4(pr, l)
        return SL3Class.C6(pr, k, l)
    return SL3Class.C7(pr, -c.data[0])


def _omega_exponent(k: int, pr: GroupParams) -> int:
    """Translate a scalar exponent k (multiple of r/d) to the omega scale 1..d."""
    j = (k * pr.d // pr.r) % pr.d
    return j if j else pr.d


def sl3_char_terms(pi: SL3Irrep, c: SL3Class, pr: GroupParams) -> tuple[tuple[int, int], ...]:
    """Character value as terms coef * zeta_rs^exp; alpha lives at zeta_r = zeta_rs^s."""
    if pi.q != pr.q or c.q != pr.q:
        raise MismatchedQ(f"{pi!r}, {c!r} must both live over q={pr.q}")
    q, r, s, rs, t, d = pr.q, pr.r, pr.s, pr.rs, pr.t, pr.d
    unit = r // d
    kind = pi.kind
    if kind == "piQS":
        scalar = {"C1": q * s, "C2": q, "C3": 0, "C4": s, "C5": 1, "C6": 2, "C7": 0, "C8": -1}[
            c.kind
        ]
        return ((scalar, 0),) if scalar else ()
    u = pi.data[0]
    if c.kind in ("C1", "C2", "C3"):
        omega_exp = (u * c.data[0] * unit * s) % rs
        if kind == "piT":
            scalar = {"C1": t, "C2": s, "C3": 1}[c.kind]
            return ((scalar, omega_exp),)
        scalar = {"C1": r * t, "C2": -1, "C3": -1}[c.kind]
        return ((scalar, omega_exp),)
    if c.kind == "C4":
        k = c.data[0]
        if kind == "piT":
            return ((s, (u * k * s) % rs), (1, (-2 * u * k * s) % rs))
        return ((r, (u * k * s) % rs),)
    if c.kind == "C5":
        k = c.data[0]
        if kind == "piT":
            return ((1, (u * k * s) % rs), (1, (-2 * u * k * s) % rs))
        return ((-1, (u * k * s) % rs),)
    if c.kind == "C6":
        k, l = c.data
        if kind == "piT":
            return (
                (1, (u * k * s) % rs),
                (1, (u * l * s) % rs),
                (1, (-u * (k + l) * s) % rs),
            )
        return ()
    if c.kind == "C7":
        k = c.data[0]
        if kind == "piT":
            return ((1, (u * k * s) % rs),)
        return ((-1, (-u * k) % rs), (-1, (-u * q * k) % rs))
    if kind == "piT":
        return ()
    return ()


def sl3_char_value(pi: SL3Irrep, c: SL3Class, pr: GroupParams) -> Cyclotomic:
    """Exact partial character table entry for SL3(q)."""
    weights = [0] * pr.rs
    for coef, exp in sl3_char_terms(pi, c, pr):
        weights[exp] += coef
    return reduce_root_sum(pr.rs, weights)


def _embedded_class_pairs(pr: GroupParams):
    """(GL2 class, weight, embedded SL3 class) for every GL2(q) class."""
    out = []
    for k in range(pr.r):
        c = GL2Class.C1(pr, k)
        out.append((c, 1, embed_class(c, pr)))
    for k in range(pr.r):
        c = GL2Class.C2(pr, k)
        out.append((c, pr.rs, embed_class(c, pr)))
    for k, l in w_pairs(pr):
        c = GL2Class.C3(pr, k, l)
        out.append((c, pr.q * pr.s, embed_class(c, pr)))
    for m in x_orbit_reps(pr):
        c = GL2Class.C4(pr, m)
        out.append((c, pr.q * pr.r, embed_class(c, pr)))
    return out


def restriction_mult(pi: SL3Irrep, tau: GL2Irrep, pr: GroupParams) -> int:
    """Multiplicity of tau in the restriction of pi to the embedded GL2(q)."""
    if pi.q != pr.q or tau.q != pr.q:
        raise MismatchedQ(f"{pi!r}, {tau!r} must both live over q={pr.q}")
    rs = pr.rs
    acc = [0] * rs
    for c, weight, big in _embedded_class_pairs(pr):
        for a1, e1 in sl3_char_terms(pi, big, pr):
            for a2, e2 in char_terms(tau, c, pr):
                acc[(e1 - e2) % rs] += weight * a1 * a2
    total = reduce_root_sum(rs, acc).as_integer()
    if total % pr.order:
        raise NonIntegral(
            f"restriction sum {total} for [{pi.label()} | : {tau.label()}] "
            f"is not divisible by |GL2(q)|={pr.order}"
        )
    return total // pr.order


def witness_irrep(tau: GL2Irrep, pr: GroupParams) -> SL3Irrep:
    """The designated SL3(q) irreducible containing tau with multiplicity >= 2."""
    r, s, rs = pr.r, pr.s, pr.rs
    if tau.kind == "U":
        a = tau.data[0]
        if a == 0:
            return SL3Irrep.QS(pr)
        return SL3Irrep.T(pr, -a)
    if tau.kind == "V":
        a = tau.data[0]
        u = (-a) % rs
        if u % s == 0:  # only a = 0; shift down by r to leave the excluded coset
            u = (rs - r) % rs
        return SL3Irrep.RT(pr, u)
    if tau.kind == "W":
        a, b = tau.data
        for c in range(s):
            u = (b - 2 * a + c * r) % rs
            if u % s != 0:
                return SL3Irrep.RT(pr, u)
        raise AssertionError("no admissible shift c found; s >= 3 guarantees one")
    return SL3Irrep.RT(pr, tau.data[0])


def expected_witness_mult(tau: GL2Irrep, pr: GroupParams) -> int:
    """Closed-form witness multiplicity: 2, 2, d+1, 1+d (or 2+d), d+1."""
    d = pr.d
    if tau.kind == "U":
        return 2
    if tau.kind == "V":
        return d + 1
    if tau.kind == "W":
        a, b = tau.data
        bonus = 1 if (3 * (b - a)) % pr.r == 0 else 0
        return 1 + d + bonus
    return d + 1


def witness_no_gelfand(tau: GL2Irrep, pr: GroupParams) -> tuple[SL3Irrep, int]:
    """A verified (SL3 irrep, multiplicity >= 2) witness that tau is not Gelfand."""
    pi = witness_irrep(tau, pr)
    mult = restriction_mult(pi, tau, pr)
    if mult < 2:
        raise WitnessFailed(
            f"designated witness {pi.label()} for {tau.label()} at q={pr.q} "
            f"has multiplicity {mult} < 2"
        )
    return pi, mult


def witness_report(pr: GroupParams) -> list[dict]:
    """Witness table over all GL2(q) irreducibles, with the d = 3 caveat flagged.

    For X-type tau the bullet-list value (two) and the worked multiplicity
    (d + 1) differ when d = 3; the computed value is reported and the
    affected rows carry a note.
    """
    rows = []
    for tau in enumerate_irreps(pr):
        pi, mult = witness_no_gelfand(tau, pr)
        expected = expected_witness_mult(tau, pr)
        row = {
            "tau": tau.label(),
            "witness": pi.label(),
            "multiplicity": mult,
            "expected": expected,
            "ok": mult == expected and mult >= 2,
        }
        if tau.kind == "X" and pr.d == 3:
            row["note"] = (
                "d=3: computed multiplicity d+1 = 4 (the value two quoted for "
                "this family holds only when d = 1)"
            )
        rows.append(row)
    return rows
