"""Deterministic arithmetic for the finite fields F_{p^m}.

An element of F_{p^m} is a tuple of m ints in [0, p): the power-basis
coefficients, constant term first, of a residue modulo the field's
modulus.  The modulus is the first monic irreducible of degree m in the
enumeration that increments the constant coefficient fastest (candidate
k encodes the polynomial x^m + sum_i k_i x^i with k = sum_i k_i p^i),
so repeated constructions are identical across runs and platforms, and
serialized elements are byte-stable.

Semilinear operators model Frobenius-twisted actions: the operator with
matrix A sends v to A @ v^(p), where v^(p) raises every coordinate to
the p-th power.  Fixed vectors of such an operator form an F_p-subspace
computed exactly by flattening F_{p^m}^n to an F_p-space of dimension
n*m.  When an operator has too few fixed vectors over the base field,
`saturate_fixed_points` walks up the extension tower F_{p^{m*r}} until
the fixed space reaches full rank.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import BoundExceededError, CapExceededError, InvalidInputError

DEFAULT_ORDER_BOUND = 2**192
ENUMERATION_BOUND = 2**16
GENERATOR_BOUND = 2**20
DEFAULT_SATURATION_CAP = 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomials over F_p (little-endian int lists), used only to pick
# and validate the field modulus


def _pol_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pol_rem(a, f, p):
    a = [x % p for x in a]
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j, fj in enumerate(f[:-1]):
                a[i - df + j] = (a[i - df + j] - c * fj) % p
    return _pol_trim(a)


def _pol_mulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pol_rem(out, f, p)


def _pol_powmod(a, e, f, p):
    out = [1]
    base = _pol_rem(list(a), f, p)
    while e:
        if e & 1:
            out = _pol_mulmod(out, base, f, p)
        base = _pol_mulmod(base, base, f, p)
        e >>= 1
    return out


def _pol_gcd(a, b, p):
    a, b = _pol_trim([x % p for x in a]), _pol_trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        while len(r) >= len(b) and r:
            c = (r[-1] * inv) % p
            if c:
                off = len(r) - len(b)
                for j, y in enumerate(b):
                    r[off + j] = (r[off + j] - c * y) % p
            r.pop()
            _pol_trim(r)
        a, b = b, r
    return a


def _is_irreducible(f, p):
    """Monic f (little-endian, leading 1) irreducible over F_p."""
    m = len(f) - 1
    if m == 1:
        return True
    x = [0, 1]
    xp = list(x)
    for _ in range(m):
        xp = _pol_powmod(xp, p, f, p)
    diff = [(a - b) % p for a, b in zip(xp + [0] * 2, x + [0] * (len(xp)))]
    if _pol_trim(diff[: max(len(xp), 2)]):
        return False
    for ell in prime_factors(m):
        xq = list(x)
        for _ in range(m // ell):
            xq = _pol_powmod(xq, p, f, p)
        d = [(a - b) % p for a, b in zip(xq + [0, 0], x + [0] * len(xq))]
        g = _pol_gcd(_pol_trim(d[: max(len(xq), 2)]), f, p)
        if len(g) > 1:
            return False
    return True


# ---------------------------------------------------------------------------


class FieldCtx:
    """Arithmetic context for F_{p^m}.  Construct via make_field."""

    __slots__ = (
        "p",
        "m",
        "modulus",
        "order",
        "zero",
        "one",
        "_xred",
        "_frob_basis",
        "_gen",
    )

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.order = p**m
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        # x^(m+k) reduced mod the modulus, for k in [0, m-2]
        xred = []
        cur = tuple((-c) % p for c in modulus)
        xred.append(cur)
        for _ in range(m - 2):
            shifted = (0,) + cur[: m - 1]
            top = cur[m - 1]
            cur = tuple((s + top * r) % p for s, r in zip(shifted, xred[0]))
            xred.append(cur)
        self._xred = tuple(xred)
        self._frob_basis = None
        self._gen = None

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m})"

    def el(self, coeffs) -> tuple[int, ...]:
        """Normalize an int or coefficient sequence to an element."""
        if isinstance(coeffs, int):
            return self.from_int(coeffs)
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.m:
            raise InvalidInputError(f"too many coefficients for m={self.m}")
        return tuple(cs + [0] * (self.m - len(cs)))

    def from_int(self, k: int) -> tuple[int, ...]:
        return (k % self.p,) + (0,) * (self.m - 1)

    def is_zero(self, a) -> bool:
        return not any(a)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p = self.p
        m = self.m
        if m == 1:
            return ((a[0] * b[0]) % p,)
        conv = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = conv[:m]
        for k in range(m, 2 * m - 1):
            c = conv[k]
            if c:
                red = self._xred[k - m]
                for t in range(m):
                    out[t] += c * red[t]
        return tuple(x % p for x in out)

    def smul(self, c: int, a):
        p = self.p
        return tuple((c * x) % p for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        p, m = self.p, self.m
        if m == 1:
            return (pow(a[0], -1, p),)
        # extended Euclid over F_p[x] against the modulus
        f = list(self.modulus) + [1]
        r0, r1 = f, _pol_trim([x for x in a])
        s0, s1 = [], [1]
        while r1:
            inv_lead = pow(r1[-1], -1, p)
            q = [0] * (len(r0) - len(r1) + 1) if len(r0) >= len(r1) else []
            r = list(r0)
            while len(r) >= len(r1) and r:
                c = (r[-1] * inv_lead) % p
                off = len(r) - len(r1)
                if c:
                    q[off] = c
                    for j, y in enumerate(r1):
                        r[off + j] = (r[off + j] - c * y) % p
                r.pop()
                _pol_trim(r)
            s = [x % p for x in s0]
            prod = [0] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, x in enumerate(q):
                if x:
                    for j, y in enumerate(s1):
                        prod[i + j] = (prod[i + j] + x * y) % p
            ln = max(len(s), len(prod))
            s = [(s[i] if i < len(s) else 0) - (prod[i] if i < len(prod) else 0) for i in range(ln)]
            s = [x % p for x in s]
            r0, r1 = r1, r
            s0, s1 = s1, _pol_trim(s)
        lead_inv = pow(r0[-1], -1, p)
        out = [(x * lead_inv) % p for x in s0]
        return tuple(out[:m] + [0] * (m - len(out)))

    def pow(self, a, e: int):
        if self.is_zero(a):
            if e == 0:
                return self.one
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return self.zero
        e %= self.order - 1
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frob(self, a):
        """The p-power Frobenius, applied as an F_p-linear map."""
        if self.m == 1:
            return a
        fb = self._frob_basis
        if fb is None:
            x = (0, 1) + (0,) * (self.m - 2)
            fb = tuple(self.pow(x, self.p * t) for t in range(self.m))
            self._frob_basis = fb
        out = [0] * self.m
        for c, img in zip(a, fb):
            if c:
                for t in range(self.m):
                    out[t] += c * img[t]
        p = self.p
        return tuple(x % p for x in out)

    def frob_iter(self, a, k: int):
        for _ in range(k % self.m):
            a = self.frob(a)
        return a

    def encode(self, a) -> int:
        n = 0
        for c in reversed(a):
            n = n * self.p + c
        return n

    def decode(self, n: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            out.append(n % self.p)
            n //= self.p
        return tuple(out)

    def elements(self):
        if self.order > ENUMERATION_BOUND:
            raise BoundExceededError(
                f"refusing to enumerate {self.order} field elements"
            )
        return (self.decode(n) for n in range(self.order))

    @property
    def generator(self) -> tuple[int, ...]:
        """Smallest multiplicative generator in the encoding order."""
        if self._gen is not None:
            return self._gen
        if self.order > GENERATOR_BOUND:
            raise BoundExceededError(
                f"generator search disabled above order {GENERATOR_BOUND}"
            )
        n1 = self.order - 1
        exps = [n1 // ell for ell in prime_factors(n1)]
        for n in range(1, self.order):
            g = self.decode(n)
            if all(self.pow(g, e) != self.one for e in exps):
                self._gen = g
                return g
        raise InvalidInputError("no generator found (non-field modulus?)")

    def to_json(self):
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int, order_bound: int = DEFAULT_ORDER_BOUND) -> FieldCtx:
    """The field F_{p^m} with its canonical modulus.

    Deterministic: the modulus is the first irreducible in the fixed
    enumeration, so two calls anywhere agree coefficient for
    coefficient.  Raises for non-prime p, m < 1, or orders beyond
    order_bound.
    """
    if not is_prime(p):
        raise InvalidInputError(f"p={p} is not prime")
    if m < 1:
        raise InvalidInputError(f"m={m} must be >= 1")
    if p**m > order_bound:
        raise BoundExceededError(f"field order p^m={p**m} exceeds bound {order_bound}")
    for enc in range(p**m):
        coeffs = []
        n = enc
        for _ in range(m):
            coeffs.append(n % p)
            n //= p
        if _is_irreducible(coeffs + [1], p):
            return FieldCtx(p, m, tuple(coeffs))
    raise InvalidInputError("no irreducible modulus found")  # unreachable


def frobenius(ctx: FieldCtx, a):
    return ctx.frob(a)


def primitive_root_of_unity(ctx: FieldCtx, d: int):
    """The canonical primitive d-th root of unity g^((q-1)/d).

    Requires d >= 1 and d | q-1 (which forces gcd(d, p) = 1).
    """
    if d < 1:
        raise InvalidInputError(f"d={d} must be >= 1")
    if (ctx.order - 1) % d != 0:
        raise InvalidInputError(
            f"no primitive {d}-th root in F_{{{ctx.p}^{ctx.m}}}: {d} does not divide q-1={ctx.order - 1}"
        )
    return ctx.pow(ctx.generator, (ctx.order - 1) // d)


def mu_log(ctx: FieldCtx, x, xi, d: int) -> int:
    """The exponent k in [0, d) with xi^k = x, for x in the group mu_d."""
    if ctx.pow(x, d) != ctx.one:
        raise InvalidInputError(
            f"element {list(x)} is not a {d}-th root of unity (x^{d} != 1)"
        )
    acc = ctx.one
    for k in range(d):
        if acc == x:
            return k
        acc = ctx.mul(acc, xi)
    raise InvalidInputError(f"xi does not generate mu_{d}")


# ---------------------------------------------------------------------------
# semilinear operators


@dataclass(frozen=True)
class SemilinearOperator:
    """v |-> entries @ v^(p) on F_q^n, with v^(p) the coordinatewise p-power."""

    ctx: FieldCtx
    entries: tuple[tuple[tuple[int, ...], ...], ...]
    invertible: bool = dc_field(init=False, default=False)

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise InvalidInputError("operator matrix must be square")
        object.__setattr__(
            self, "invertible", linalg.is_invertible(self.ctx, self.entries)
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def apply(self, v):
        ctx = self.ctx
        return linalg.mat_vec(ctx, self.entries, tuple(ctx.frob(x) for x in v))

    def to_json(self):
        return {
            "field": self.ctx.to_json(),
            "entries": [[list(x) for x in row] for row in self.entries],
            "invertible": self.invertible,
        }


def _fixed_point_rows(ctx: FieldCtx, entries):
    """Echelonized F_p-basis (flat rows + pivots) of {v : v = A v^(p)}."""
    n = len(entries)
    p, m = ctx.p, ctx.m
    big_n = n * m
    # frobpow[t] = (x^t)^p; products of the image of x under Frobenius
    xp = ctx.frob((0, 1) + (0,) * (m - 2)) if m > 1 else ctx.one
    frobpow = [ctx.one]
    for _ in range(m - 1):
        frobpow.append(ctx.mul(frobpow[-1], xp))
    mat = [[0] * big_n for _ in range(big_n)]
    for j in range(n):
        for t in range(m):
            col = j * m + t
            mat[col][col] = 1
            for i in range(n):
                e = ctx.mul(entries[i][j], frobpow[t])
                for s in range(m):
                    if e[s]:
                        row = i * m + s
                        mat[row][col] = (mat[row][col] - e[s]) % p
    return kernel_int_rows(mat, p)


def kernel_int_rows(mat, p):
    return linalg.kernel_int(mat, p)


def _decode_flat(ctx: FieldCtx, flat, n: int):
    m = ctx.m
    return tuple(tuple(flat[j * m : (j + 1) * m]) for j in range(n))


def semilinear_fixed_points(ctx: FieldCtx, op) -> list:
    """Echelonized F_p-basis of the fixed vectors of a semilinear operator.

    Accepts a SemilinearOperator or a raw square matrix of elements.
    The flattened v |-> v - A v^(p) map is F_p-linear; its kernel is
    returned as vectors over ctx, echelonized in the flat coordinates.
    """
    entries = op.entries if isinstance(op, SemilinearOperator) else tuple(op)
    n = len(entries)
    rows, _ = _fixed_point_rows(ctx, entries)
    return [_decode_flat(ctx, r, n) for r in rows]


@dataclass(frozen=True)
class Embedding:
    """The canonical embedding F_{p^m} -> F_{p^{m*r}}."""

    small: FieldCtx
    big: FieldCtx
    theta_pows: tuple

    def map(self, a):
        big = self.big
        out = big.zero
        for c, tp in zip(a, self.theta_pows):
            if c:
                out = big.add(out, big.smul(c, tp))
        return out

    def map_matrix(self, mat):
        return tuple(tuple(self.map(x) for x in row) for row in mat)


@functools.lru_cache(maxsize=None)
def embed_field(small: FieldCtx, big: FieldCtx) -> Embedding:
    """Embed small into big along the smallest root of small's modulus.

    The subfield of big of degree small.m is the kernel of phi^m - id
    for phi the Frobenius matrix; its elements are enumerated (bounded
    by the small field's order) and the lexicographically smallest root
    of small's modulus picked, so the embedding is deterministic.
    """
    if small.p != big.p or big.m % small.m != 0:
        raise InvalidInputError(
            f"no embedding: F_{{{small.p}^{small.m}}} into F_{{{big.p}^{big.m}}}"
        )
    if small.order > ENUMERATION_BOUND:
        raise BoundExceededError(
            f"embedding search needs subfield enumeration; order {small.order} too large"
        )
    p, ms, mb = small.p, small.m, big.m
    if small.m == 1:
        return Embedding(small, big, (big.one,))
    # Frobenius as an mb x mb matrix over F_p, columns = frob(x^t)
    basis_imgs = []
    for t in range(mb):
        e = tuple(1 if i == t else 0 for i in range(mb))
        basis_imgs.append(big.frob(e))
    phi = [[basis_imgs[t][s] for t in range(mb)] for s in range(mb)]
    phim = linalg.mat_pow_int(phi, ms, p)
    diff = [[(phim[i][j] - (1 if i == j else 0)) % p for j in range(mb)] for i in range(mb)]
    sub_rows, _ = linalg.kernel_int(diff, p)
    if len(sub_rows) != ms:
        raise InvalidInputError("subfield has unexpected dimension")
    # enumerate the p^ms subfield elements, collect roots of the modulus
    f = list(small.modulus) + [1]
    roots = []
    for n in range(p**ms):
        coeffs = []
        k = n
        for _ in range(ms):
            coeffs.append(k % p)
            k //= p
        theta = big.zero
        for c, row in zip(coeffs, sub_rows):
            if c:
                theta = big.add(theta, big.smul(c, tuple(row)))
        acc = big.one
        val = big.zero
        for c in f:
            if c:
                val = big.add(val, big.smul(c, acc))
            acc = big.mul(acc, theta)
        if big.is_zero(val):
            roots.append(theta)
    if len(roots) != ms:
        raise InvalidInputError("modulus does not split in the subfield")
    theta = min(roots, key=big.encode)
    pows = [big.one]
    for _ in range(ms - 1):
        pows.append(big.mul(pows[-1], theta))
    return Embedding(small, big, tuple(pows))


@dataclass(frozen=True)
class SaturationResult:
    """Fixed points of a semilinear operator after base extension."""

    degree: int
    field: FieldCtx
    embedding: Embedding
    basis: tuple
    profile: tuple  # (r, fixed dimension) for every degree tried

    @property
    def dimension(self) -> int:
        return len(self.basis)


def saturate_fixed_points(
    ctx: FieldCtx, op, cap: int = DEFAULT_SATURATION_CAP
) -> SaturationResult:
    """Smallest extension degree r where the fixed space reaches rank n.

    Works up the tower F_{p^{m*r}}, r = 1, 2, ..., cap, recomputing the
    flattened fixed space each time.  Requires the operator matrix to
    be invertible (otherwise full rank is never reached).  Raises
    CapExceededError carrying the (r, dimension) profile when the cap
    runs out.
    """
    if not isinstance(op, SemilinearOperator):
        op = SemilinearOperator(ctx, tuple(tuple(row) for row in op))
    if not op.invertible:
        raise InvalidInputError("saturation requires an invertible operator matrix")
    n = op.n
    profile = []
    for r in range(1, cap + 1):
        big = ctx if r == 1 else make_field(ctx.p, ctx.m * r)
        emb = embed_field(ctx, big)
        entries = emb.map_matrix(op.entries)
        rows, _ = _fixed_point_rows(big, entries)
        profile.append((r, len(rows)))
        if len(rows) == n:
            basis = tuple(_decode_flat(big, fr, n) for fr in rows)
            return SaturationResult(r, big, emb, basis, tuple(profile))
    raise CapExceededError(
        f"fixed space did not reach rank {n} within {cap} extension degrees",
        tuple(profile),
    )
