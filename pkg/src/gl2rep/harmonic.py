"""Direct convolution-algebra verification on G' = GL2(q) x GL2(q).

For H = diag(GL2(q)) inside G', the H-class functions I(G') carry the
convolution product (f * g)(x) = (1/|G'|) sum_y f(y) g(y^-1 x).  For an
irreducible pi of H the two-sided projection

    I_pi(G') = xi_pi * I(G') * xi_pi,
    xi_pi(h) = [G':H] * dim(pi) * conj(chi_pi(h)) on H, zero elsewhere,

is a subalgebra whose commutativity is equivalent to pi inducing
multiplicity free from H to G'.  This module computes I_pi bases and
tests commutativity by explicit convolution, exactly, at q in {2, 3}.
The [G':H] factor makes xi_pi idempotent under the 1/|G'| normalisation.

Everything is exact: functions take values in (1/den) * Z[zeta_rs],
stored as integer coordinate vectors with one shared denominator.
Convolutions of H-class functions are evaluated through a precomputed
integer tensor

    N[k][i][j] = #{ y in orbit_i : y^-1 x_k in orbit_j }

over the H-conjugation orbits on G', which turns each convolution into
a small exact bilinear form.  When the values would overflow machine
integers, the same bilinear forms are rerun modulo several primes whose
product exceeds twice the a-priori bound, which pins the exact integers.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .cyclotomic import Cyclotomic, euler_phi, reduce_root_sum, root_coords
from .errors import BudgetExceeded, MismatchedGroup
from .gl2 import GL2Irrep, char_value, enumerate_classes, params
from .oracle import classify_element, enumerate_gl2, tower_for

HARMONIC_MAX_Q = 3


class PairGroupContext:
    """Cached structure of G' = G x G with H = diag(G), for one q <= 3."""

    def __init__(self, q: int):
        if q > HARMONIC_MAX_Q:
            raise BudgetExceeded(
                f"q={q} gives |G'| = {(q**2 - 1) ** 2 * q**2 * (q - 1) ** 2}; ceiling is q={HARMONIC_MAX_Q}"
            )
        self.q = q
        self.pr = params(q)
        self.tower = tower_for(q)
        elements = enumerate_gl2(self.tower)
        self.n = len(elements)
        index = {g: i for i, g in enumerate(elements)}
        gf = self.tower.gf_q

        def matmul(x, y):
            a, b, c, d = x
            e, f, g_, h = y
            return (
                gf.add(gf.mul(a, e), gf.mul(b, g_)),
                gf.add(gf.mul(a, f), gf.mul(b, h)),
                gf.add(gf.mul(c, e), gf.mul(d, g_)),
                gf.add(gf.mul(c, f), gf.mul(d, h)),
            )

        n = self.n
        self.mul = np.zeros((n, n), dtype=np.int32)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                self.mul[i, j] = index[matmul(x, y)]
        ident = index[(1, 0, 0, 1)]
        self.identity = ident
        self.inv = np.zeros(n, dtype=np.int32)
        for i in range(n):
            self.inv[i] = int(np.nonzero(self.mul[i] == ident)[0][0])

        self.classes = enumerate_classes(self.pr)
        class_index = {c: k for k, c in enumerate(self.classes)}
        self.cls = np.array(
            [class_index[classify_element(g, self.tower)] for g in elements], dtype=np.int32
        )

        self.n2 = n * n
        self.rs = self.pr.rs
        self.phi = euler_phi(self.rs)
        table = root_coords(self.rs)
        # zeta^c * zeta^d reduced back to the power basis
        self.reduction = np.array(
            [[table[(c + d) % self.rs] for d in range(self.phi)] for c in range(self.phi)],
            dtype=np.int64,
        )

        # H-conjugation orbits on G'; conjugating by all of H at once gives
        # the whole orbit in one step
        orb = np.full(self.n2, -1, dtype=np.int32)
        reps: list[int] = []
        hs = np.arange(n)
        inv_hs = self.inv[hs]
        for x in range(self.n2):
            if orb[x] >= 0:
                continue
            a, b = divmod(x, n)
            members = self.mul[self.mul[hs, a], inv_hs].astype(np.int64) * n + self.mul[
                self.mul[hs, b], inv_hs
            ].astype(np.int64)
            orb[members] = len(reps)
            reps.append(int(members.min()))
        self.orb = orb
        self.orbit_reps = reps
        self.K = len(reps)
        self.orbit_sizes = np.bincount(orb, minlength=self.K)
        self._n_tensor: np.ndarray | None = None
        self._pair_count: np.ndarray | None = None

    # -- pair-group arithmetic on flat indices ---------------------------------
    def pair_mul(self, x: int, y: int) -> int:
        n = self.n
        return int(self.mul[x // n, y // n]) * n + int(self.mul[x % n, y % n])

    def pair_inv(self, x: int) -> int:
        n = self.n
        return int(self.inv[x // n]) * n + int(self.inv[x % n])

    def diag_index(self, g: int) -> int:
        return g * self.n + g

    def n_tensor(self) -> np.ndarray:
        """N[k, i, j] = #{y in O_i with y^-1 x_k in O_j}; drives convolution."""
        if self._n_tensor is None:
            n, K = self.n, self.K
            N = np.zeros((K, K, K), dtype=np.int32)
            ys = np.arange(self.n2, dtype=np.int64)
            ya, yb = np.divmod(ys, n)
            inv_a, inv_b = self.inv[ya], self.inv[yb]
            orb_y = self.orb
            for k, xk in enumerate(self.orbit_reps):
                ka, kb = divmod(xk, n)
                u = self.mul[inv_a, ka].astype(np.int64) * n + self.mul[inv_b, kb]
                np.add.at(N[k], (orb_y, self.orb[u]), 1)
            self._n_tensor = N
        return self._n_tensor

    def pair_count(self) -> np.ndarray:
        """count[k, j, cy, cz] = #{(y,z) in H^2 : y^-1 x_k z^-1 in O_j, classes cy, cz}.

        This is the pi-independent part of the two-sided projection
        xi * 1_{O_j} * xi evaluated at the orbit representatives.
        """
        if self._pair_count is None:
            n, K = self.n, self.K
            nc = len(self.classes)
            count = np.zeros((K, K, nc, nc), dtype=np.int32)
            gs = np.arange(n)
            inv_g = self.inv[gs]
            cls_y = np.repeat(self.cls[gs], n)
            cls_z = np.tile(self.cls[gs], n)
            for k, xk in enumerate(self.orbit_reps):
                ka, kb = divmod(xk, n)
                wa = self.mul[inv_g, ka]  # y^-1 then x_k, first coordinate
                wb = self.mul[inv_g, kb]
                ua = self.mul[wa[:, None], inv_g[None, :]].astype(np.int64)
                ub = self.mul[wb[:, None], inv_g[None, :]]
                j = self.orb[ua * n + ub].ravel()
                np.add.at(count[k], (j, cls_y, cls_z), 1)
            self._pair_count = count
        return self._pair_count


@lru_cache(maxsize=None)
def pair_context(q: int) -> PairGroupContext:
    return PairGroupContext(q)


class GroupFunction:
    """An H-class function on G' with values in (1/den) Z[zeta_rs].

    Stored compressed: one integer coordinate row per H-orbit.
    """

    def __init__(self, ctx: PairGroupContext, orbit_coords: np.ndarray, den: int = 1):
        assert orbit_coords.shape == (ctx.K, ctx.phi)
        self.ctx = ctx
        g = den
        for v in orbit_coords.ravel():
            g = math.gcd(g, int(v))
            if g == 1:
                break
        if g > 1:
            orbit_coords = orbit_coords // g
            den //= g
        if den < 0:
            orbit_coords, den = -orbit_coords, -den
        if orbit_coords.dtype == object and all(
            abs(int(v)) < 2**62 for v in orbit_coords.ravel()
        ):
            orbit_coords = orbit_coords.astype(np.int64)
        self.coords = orbit_coords.copy()
        self.den = den

    def value(self, x: int) -> tuple[Cyclotomic, int]:
        """Exact value at element index x as (numerator, denominator)."""
        row = self.coords[self.ctx.orb[x]]
        weights = [0] * self.ctx.rs
        for e, c in enumerate(row):
            weights[e] += int(c)
        num = reduce_root_sum(self.ctx.rs, weights)
        return num, self.den

    def __eq__(self, other):
        if not isinstance(other, GroupFunction):
            return NotImplemented
        if self.ctx is not other.ctx:
            raise MismatchedGroup("functions live on different groups")
        return self.den == other.den and bool(np.all(self.coords == other.coords))

    def scaled(self, num: int) -> "GroupFunction":
        return GroupFunction(self.ctx, self.coords * num, self.den)

    def is_zero(self) -> bool:
        return not np.any(self.coords)


def delta_identity(ctx: PairGroupContext, scale: int = 1) -> GroupFunction:
    """scale * (indicator of the identity of G')."""
    coords = np.zeros((ctx.K, ctx.phi), dtype=np.int64)
    e = ctx.diag_index(ctx.identity)
    coords[ctx.orb[e], 0] = scale
    return GroupFunction(ctx, coords)


def orbit_indicator(ctx: PairGroupContext, k: int) -> GroupFunction:
    coords = np.zeros((ctx.K, ctx.phi), dtype=np.int64)
    coords[k, 0] = 1
    return GroupFunction(ctx, coords)


def xi_function(pi: GL2Irrep, ctx: PairGroupContext) -> GroupFunction:
    """The idempotent projector kernel [G':H] dim(pi) conj(chi_pi) on diag(H)."""
    coords = np.zeros((ctx.K, ctx.phi), dtype=np.int64)
    scale = ctx.n  # [G':H] = |G|
    for g in range(ctx.n):
        cls = ctx.classes[ctx.cls[g]]
        val = char_value(pi, cls, ctx.pr).conj() * (pi.dim() * scale)
        coords[ctx.orb[ctx.diag_index(g)]] = val.coords_at(ctx.rs)
    return GroupFunction(ctx, coords)


def _convolve_coords(
    ctx: PairGroupContext, f: np.ndarray, g: np.ndarray
) -> np.ndarray:
    """Integer part of (f * g) at orbit reps: sum_{i,j} N[k,i,j] f_i g_j, reduced."""
    N = ctx.n_tensor()
    max_f = int(np.abs(f).max() or 1)
    max_g = int(np.abs(g).max() or 1)
    bound = ctx.n2 * ctx.phi * max_f * max_g
    if bound < 2**62 and f.dtype != object and g.dtype != object:
        t1 = np.einsum("kij,ic->kjc", N, f, dtype=np.int64)
        s = np.einsum("kjc,jd->kcd", t1, g)
        return np.einsum("kcd,cde->ke", s, ctx.reduction)
    # CRT fallback: run modulo primes whose product exceeds twice the bound
    return _convolve_coords_crt(ctx, f, g, bound)


_CRT_PRIMES = [1_000_003, 1_000_033, 1_000_037, 1_000_039, 1_000_081, 1_000_099, 1_000_117]


def _convolve_coords_crt(ctx, f, g, bound: int) -> np.ndarray:
    N = ctx.n_tensor().astype(np.int64)
    primes = []
    prod = 1
    for p in _CRT_PRIMES:
        primes.append(p)
        prod *= p
        if prod > 2 * bound:
            break
    assert prod > 2 * bound, "CRT prime pool too small for this bound"
    residues = []
    for p in primes:
        fp = np.mod(f.astype(object), p).astype(np.int64)
        gp = np.mod(g.astype(object), p).astype(np.int64)
        t1 = np.mod(np.einsum("kij,ic->kjc", np.mod(N, p), fp), p)
        s = np.mod(np.einsum("kjc,jd->kcd", t1, gp), p)
        residues.append(np.mod(np.einsum("kcd,cde->ke", s, np.mod(ctx.reduction, p)), p))
    out = np.zeros(residues[0].shape, dtype=object)
    m = 1
    for p, res in zip(primes, residues):
        # incremental CRT lift
        if m == 1:
            out = res.astype(object)
        else:
            inv = pow(m % p, -1, p)
            diff = np.mod((res.astype(object) - out) * inv, p)
            out = out + diff * m
        m *= p
    half = m // 2
    out = np.where(out > half, out - m, out)
    return out


def convolve(f1: GroupFunction, f2: GroupFunction) -> GroupFunction:
    """Exact convolution (f1 * f2)(x) = (1/|G'|) sum_y f1(y) f2(y^-1 x)."""
    if f1.ctx is not f2.ctx:
        raise MismatchedGroup("functions live on different groups")
    ctx = f1.ctx
    coords = _convolve_coords(ctx, f1.coords, f2.coords)
    return GroupFunction(ctx, coords, f1.den * f2.den * ctx.n2)


def convolve_literal(f1: GroupFunction, f2: GroupFunction) -> GroupFunction:
    """The definition, summed element by element; cross-checks the tensor route."""
    if f1.ctx is not f2.ctx:
        raise MismatchedGroup("functions live on different groups")
    ctx = f1.ctx
    coords = np.zeros((ctx.K, ctx.phi), dtype=object)
    for k, xk in enumerate(ctx.orbit_reps):
        acc = np.zeros(ctx.phi, dtype=object)
        for y in range(ctx.n2):
            u = ctx.pair_mul(ctx.pair_inv(y), xk)
            fy = f1.coords[ctx.orb[y]]
            gu = f2.coords[ctx.orb[u]]
            prod = np.einsum("c,d,cde->e", fy.astype(object), gu.astype(object), ctx.reduction.astype(object))
            acc += prod
        coords[k] = acc
    return GroupFunction(ctx, coords, f1.den * f2.den * ctx.n2)


def _cyc_mul_matrix(vec: np.ndarray, reduction: np.ndarray) -> np.ndarray:
    """phi x phi integer matrix of multiplication by the cyclotomic vec."""
    return np.einsum("c,cde->de", vec, reduction)


def build_I_pi(pi: GL2Irrep, q: int) -> list[GroupFunction]:
    """A basis of I_pi(G') obtained by projecting H-orbit indicator sums.

    The projections of all K orbit indicators are computed in one pass
    from the pi-independent pair-count tensor; a maximal linearly
    independent subset over Q(zeta_rs) is selected by exact elimination.
    """
    ctx = pair_context(q)
    count = ctx.pair_count()
    # xi without the [G':H] scale; scaling does not change spans or products
    nc = len(ctx.classes)
    xi = np.zeros((nc, ctx.phi), dtype=np.int64)
    for ci, cls in enumerate(ctx.classes):
        val = char_value(pi, cls, ctx.pr).conj() * pi.dim()
        xi[ci] = val.coords_at(ctx.rs)
    # products xi(y) xi(z) for all class pairs, reduced to the power basis
    pair_products = np.einsum("ac,bd,cde->abe", xi, xi, ctx.reduction)
    # C[k, j, :] = sum over class pairs of count * product
    projections = np.einsum("kjab,abe->kje", count, pair_products.astype(np.int64))

    basis_cols = _independent_columns(ctx, projections)
    out = []
    for j in basis_cols:
        out.append(GroupFunction(ctx, projections[:, j, :].copy(), ctx.n2 * ctx.n**2))
    return out


def _independent_columns(ctx: PairGroupContext, projections: np.ndarray) -> list[int]:
    """Indices j whose projected columns form a basis of the column span.

    Exact echelon over Q(zeta_rs) on integer vectors: rows are kept
    content-reduced, elimination uses cross-multiplication by pivot
    values, and every multiplication is a small integer matrix product.
    """
    red = ctx.reduction
    echelon: list[tuple[int, np.ndarray, np.ndarray]] = []  # (pivot_idx, row, pivot_val)
    chosen = []
    for j in range(projections.shape[1]):
        v = projections[:, j, :].astype(object)
        if not np.any(v):
            continue
        for p, row, piv in echelon:
            if np.any(v[p]):
                coeff = v[p].copy()
                v = v @ _cyc_mul_matrix(piv, red.astype(object)) - row @ _cyc_mul_matrix(
                    coeff, red.astype(object)
                )
                g = int(np.gcd.reduce([abs(int(x)) for x in v.ravel()] or [0]))
                if g > 1:
                    v //= g
        nz = [k for k in range(ctx.K) if np.any(v[k])]
        if not nz:
            continue
        p = nz[0]
        g = int(np.gcd.reduce([abs(int(x)) for x in v.ravel()]))
        if g > 1:
            v //= g
        echelon.append((p, v, v[p].copy()))
        chosen.append(j)
        echelon.sort(key=lambda item: item[0])
    return chosen


def commutativity_check(basis: list[GroupFunction]) -> bool:
    """Whether f * g == g * f for every pair from the basis, exactly."""
    if not basis:
        return True
    ctx = basis[0].ctx
    for f in basis:
        if f.ctx is not ctx:
            raise MismatchedGroup("basis functions live on different groups")
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            fg = _convolve_coords(ctx, basis[i].coords, basis[j].coords)
            gf = _convolve_coords(ctx, basis[j].coords, basis[i].coords)
            if not np.array_equal(fg, gf):
                return False
    return True


def xi_idempotent(pi: GL2Irrep, q: int) -> bool:
    """Check xi_pi * xi_pi == xi_pi under the 1/|G'| normalisation."""
    ctx = pair_context(q)
    xi = xi_function(pi, ctx)
    return convolve(xi, xi) == xi
