"""Cyclic-group representations and the modules they induce on the
punctured formal disk.

A representation of Z/d on F_p^r (d prime to p) determines, over any
F_q containing the d-th roots of unity, a weight decomposition: the
generator acts on the weight-a eigenspace by xi^a.  Descending the
trivialized pullback along the degree-d Kummer cover packages this as
a KummerCrystal: each weight a carries a dimension, a shift
epsilon_a = (d - a) mod d locating its sections among the cover
coordinate's exponent classes, and an invertible transition matrix
B_a expressing the p-power images of the weight-a basis in the
weight-(p*a) basis.

ExtensionModule models extensions of the structure sheaf by the
delta module at the origin: pairs (f, g) with f a Laurent series and
g a finite combination of delta sections e_m (the class of t^(-m)),
with Frobenius (f, g) |-> (f^p, [t f^p c] + g^p) for a fixed Laurent
polynomial c.  The pole order of c enters through n = -v_t(c) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import CapExceededError, InvalidInputError
from .field import FieldCtx, is_prime, mu_log, primitive_root_of_unity
from .series import LaurentSeries

DEFAULT_DELTA_CAP = 4096


def _reduce_mat(mat, p: int):
    rows = tuple(tuple(int(x) % p for x in row) for row in mat)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InvalidInputError("representation matrix must be square")
    return rows


@dataclass(frozen=True)
class CyclicRep:
    """An action of Z/d on F_p^r: the generator acts by mat, mat^d = 1."""

    d: int
    p: int
    mat: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInputError(f"d={self.d} must be >= 1")
        if not is_prime(self.p):
            raise InvalidInputError(f"p={self.p} is not prime")
        if self.d % self.p == 0:
            raise InvalidInputError(f"d={self.d} must be prime to p={self.p}")
        object.__setattr__(self, "mat", _reduce_mat(self.mat, self.p))
        if self.rank == 0:
            raise InvalidInputError("representation must have positive rank")
        md = linalg.mat_pow_int(self.mat, self.d, self.p)
        if md != linalg.identity_int(self.rank):
            raise InvalidInputError(f"matrix does not have order dividing d={self.d}")

    @property
    def rank(self) -> int:
        return len(self.mat)

    @classmethod
    def trivial(cls, d: int, p: int, rank: int = 1) -> "CyclicRep":
        return cls(d, p, tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)))

    @classmethod
    def regular(cls, d: int, p: int) -> "CyclicRep":
        """The cyclic shift on F_p^d."""
        return cls(
            d, p, tuple(tuple(1 if j == (i - 1) % d else 0 for j in range(d)) for i in range(d))
        )

    @classmethod
    def companion(cls, d: int, p: int) -> "CyclicRep":
        """Companion matrix of 1 + x + ... + x^(d-1); faithful of rank d-1."""
        if d < 2:
            raise InvalidInputError("companion form needs d >= 2")
        r = d - 1
        rows = []
        for i in range(r):
            row = [0] * r
            if i > 0:
                row[i - 1] = 1
            row[r - 1] = (row[r - 1] - 1) % p
            rows.append(tuple(row))
        return cls(d, p, tuple(rows))

    def to_json(self):
        return {"d": self.d, "p": self.p, "mat": [list(r) for r in self.mat]}


def direct_sum(rep1: CyclicRep, rep2: CyclicRep) -> CyclicRep:
    if (rep1.d, rep1.p) != (rep2.d, rep2.p):
        raise InvalidInputError("direct sum needs matching d and p")
    r1, r2 = rep1.rank, rep2.rank
    rows = [tuple(row) + (0,) * r2 for row in rep1.mat]
    rows += [(0,) * r1 + tuple(row) for row in rep2.mat]
    return CyclicRep(rep1.d, rep1.p, tuple(rows))


# ---------------------------------------------------------------------------
# weight decomposition and Frobenius transition


@dataclass(frozen=True)
class WeightDecomposition:
    """Echelonized eigenbasis of the generator's action over F_q.

    bases[a] = (rows, pivots): rows are RREF basis vectors of the
    weight-a eigenspace (generator acts by xi^a); only nonzero weights
    appear.  The dimensions sum to the rank (the action is semisimple
    since d is prime to p).
    """

    ctx: FieldCtx
    d: int
    xi: tuple
    rank: int
    bases: dict

    @property
    def dims(self) -> dict:
        return {a: len(rows) for a, (rows, _) in self.bases.items()}

    def to_json(self):
        return {
            "field": self.ctx.to_json(),
            "d": self.d,
            "xi": list(self.xi),
            "dims": {str(a): len(rows) for a, (rows, _) in sorted(self.bases.items())},
            "bases": {
                str(a): [[list(x) for x in row] for row in rows]
                for a, (rows, _) in sorted(self.bases.items())
            },
        }


def weight_decompose(rep: CyclicRep, ctx: FieldCtx) -> WeightDecomposition:
    """Split F_q^r into eigenspaces of the generator's action.

    Requires the d-th roots of unity to live in ctx (d | q-1).
    """
    if ctx.p != rep.p:
        raise InvalidInputError("field characteristic does not match the representation")
    if (ctx.order - 1) % rep.d != 0:
        raise InvalidInputError(
            f"weights need mu_{rep.d} in the field: {rep.d} does not divide q-1={ctx.order - 1}"
        )
    xi = primitive_root_of_unity(ctx, rep.d)
    mat_q = tuple(tuple(ctx.from_int(x) for x in row) for row in rep.mat)
    bases = {}
    total = 0
    for a in range(rep.d):
        lam = ctx.pow(xi, a)
        shifted = tuple(
            tuple(ctx.sub(mat_q[i][j], lam) if i == j else mat_q[i][j] for j in range(rep.rank))
            for i in range(rep.rank)
        )
        rows, pivots = linalg.kernel(ctx, shifted)
        if rows:
            bases[a] = (tuple(rows), tuple(pivots))
            total += len(rows)
    if total != rep.rank:
        raise InvalidInputError("action is not diagonalizable over this field")
    return WeightDecomposition(ctx, rep.d, xi, rep.rank, bases)


def frobenius_on_weights(dec: WeightDecomposition) -> dict:
    """Transition matrices B_a with U_(p*a) B_a = U_a^(p).

    U_a has the weight-a basis vectors as columns and ^(p) is the
    coordinatewise p-power; each B_a is square and invertible.  B_a is
    returned row-major with shape dim(p*a) x dim(a).
    """
    ctx = dec.ctx
    p, d = ctx.p, dec.d
    out = {}
    for a, (rows, _) in dec.bases.items():
        ta = (p * a) % d
        if ta not in dec.bases:
            raise InvalidInputError(
                f"weight {a} maps to weight {ta} which is empty: not Frobenius-stable"
            )
        trows, tpiv = dec.bases[ta]
        if len(trows) != len(rows):
            raise InvalidInputError(
                f"weights {a} and {ta} in one orbit have dimensions {len(rows)} != {len(trows)}"
            )
        cols = []
        for u in rows:
            img = tuple(ctx.frob(x) for x in u)
            coords = linalg.express(ctx, trows, tpiv, img)
            if coords is None:
                raise InvalidInputError(
                    f"p-power image of weight-{a} basis leaves weight {ta}"
                )
            cols.append(coords)
        mat = tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(len(trows)))
        if not linalg.is_invertible(ctx, mat):
            raise InvalidInputError(f"transition matrix at weight {a} is singular")
        out[a] = mat
    return out


@dataclass(frozen=True)
class KummerCrystal:
    """Descent data of a representation along the degree-d Kummer cover.

    Per nonzero weight a: dims[a], the exponent shift
    shifts[a] = (d - a) mod d (weight-a sections live on cover
    exponents congruent to it), the echelonized weight basis, and the
    invertible transition matrix frob_mats[a] into weight p*a mod d.
    """

    rep: CyclicRep
    ctx: FieldCtx
    d: int
    rank: int
    xi: tuple
    dims: dict
    shifts: dict
    bases: dict
    frob_mats: dict

    def weight_of_shift(self, eps: int):
        a = (-eps) % self.d
        return a if a in self.dims else None

    def to_json(self):
        return {
            "field": self.ctx.to_json(),
            "d": self.d,
            "rank": self.rank,
            "xi": list(self.xi),
            "weights": {
                str(a): {
                    "dim": self.dims[a],
                    "shift": self.shifts[a],
                    "basis": [[list(x) for x in row] for row in self.bases[a][0]],
                    "frob_mat": [[list(x) for x in row] for row in self.frob_mats[a]],
                    "frob_target": (self.ctx.p * a) % self.d,
                }
                for a in sorted(self.dims)
            },
        }


def build_kummer_crystal(rep: CyclicRep, ctx: FieldCtx) -> KummerCrystal:
    dec = weight_decompose(rep, ctx)
    mats = frobenius_on_weights(dec)
    dims = dec.dims
    shifts = {a: (rep.d - a) % rep.d for a in dims}
    return KummerCrystal(
        rep=rep,
        ctx=ctx,
        d=rep.d,
        rank=rep.rank,
        xi=dec.xi,
        dims=dims,
        shifts=shifts,
        bases=dec.bases,
        frob_mats=mats,
    )


def galois_orbit_check(kc: KummerCrystal) -> bool:
    """Dimensions are constant along a |-> p*a orbits (transition matrices
    are square), the structural sanity the construction relies on."""
    p = kc.ctx.p
    return all(kc.dims[(p * a) % kc.d] == kc.dims[a] for a in kc.dims)


# ---------------------------------------------------------------------------
# delta sections and extensions


class DeltaElement:
    """A finite combination sum g_m e_m, with e_m the class of t^(-m).

    Frobenius sends e_m to e_(p*m) (coefficients to the p-th power);
    t-multiplication sends e_m to e_(m-1) and kills e_1.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs: dict):
        self.ctx = ctx
        self.coeffs = {m: c for m, c in coeffs.items() if not ctx.is_zero(c)}
        if any(m < 1 for m in self.coeffs):
            raise InvalidInputError("delta sections are indexed by m >= 1")

    @classmethod
    def zero(cls, ctx) -> "DeltaElement":
        return cls(ctx, {})

    @classmethod
    def basis(cls, ctx, m: int) -> "DeltaElement":
        return cls(ctx, {m: ctx.one})

    @classmethod
    def from_series_tail(cls, f: LaurentSeries) -> "DeltaElement":
        """The class of a series in the quotient: its pole part."""
        return cls(f.ctx, {-e: c for e, c in f.coeffs.items() if e <= -1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_support(self):
        return max(self.coeffs) if self.coeffs else None

    def add(self, other: "DeltaElement") -> "DeltaElement":
        ctx = self.ctx
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = ctx.add(out.get(m, ctx.zero), c)
        return DeltaElement(ctx, out)

    def neg(self) -> "DeltaElement":
        ctx = self.ctx
        return DeltaElement(ctx, {m: ctx.neg(c) for m, c in self.coeffs.items()})

    def sub(self, other: "DeltaElement") -> "DeltaElement":
        return self.add(other.neg())

    def smul(self, scalar) -> "DeltaElement":
        ctx = self.ctx
        return DeltaElement(ctx, {m: ctx.mul(scalar, c) for m, c in self.coeffs.items()})

    def frob(self) -> "DeltaElement":
        ctx = self.ctx
        return DeltaElement(ctx, {ctx.p * m: ctx.pow(c, ctx.p) for m, c in self.coeffs.items()})

    def mul_t(self) -> "DeltaElement":
        return DeltaElement(self.ctx, {m - 1: c for m, c in self.coeffs.items() if m > 1})

    def shift_up(self, k: int = 1) -> "DeltaElement":
        """Multiply by t^(-k): e_m to e_(m+k)."""
        return DeltaElement(self.ctx, {m + k: c for m, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, DeltaElement):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), tuple(sorted(self.coeffs.items()))))

    def to_json(self):
        return {"terms": [[m, list(self.coeffs[m])] for m in sorted(self.coeffs)]}

    def __repr__(self):
        if not self.coeffs:
            return "<delta 0>"
        parts = []
        for m in sorted(self.coeffs):
            c = self.ctx.encode(self.coeffs[m])
            parts.append(f"e_{m}" if c == 1 else f"{c}*e_{m}")
        return f"<delta {' + '.join(parts)}>"


@dataclass(frozen=True)
class ExtensionModule:
    """Extension of the structure sheaf by the delta module, twisted by c.

    Sections are pairs (f, g): f a Laurent series in t, g a delta
    combination.  Frobenius acts by (f, g) |-> (f^p, [t f^p c] + g^p)
    where [.] is the pole part.  For nonzero c the invariant
    n = -v_t(c) - 1 >= 0 controls the filtration; c = 0 is the split
    extension and carries n = None.
    """

    ctx: FieldCtx
    c: LaurentSeries
    n: object  # int or None
    delta_cap: int

    @property
    def split(self) -> bool:
        return self.n is None

    def section(self, f: LaurentSeries, g: DeltaElement):
        if f.ctx is not self.ctx or g.ctx is not self.ctx:
            raise InvalidInputError("section parts over the wrong field")
        return (f, g)

    def zero_section(self):
        return (LaurentSeries.zero(self.ctx), DeltaElement.zero(self.ctx))

    def _guard(self, g: DeltaElement) -> DeltaElement:
        ms = g.max_support()
        if ms is not None and ms > self.delta_cap:
            raise CapExceededError(
                f"delta support {ms} exceeds the cap {self.delta_cap}",
                [("delta_support", ms)],
            )
        return g

    def apply_F(self, sec):
        f, g = sec
        fp = f.frob()
        tail = DeltaElement.from_series_tail(fp.mul(self.c).shift(1))
        return (fp, self._guard(tail.add(g.frob())))

    def mul_t(self, sec):
        f, g = sec
        return (f.shift(1), g.mul_t())

    def add(self, s1, s2):
        return (s1[0].add(s2[0]), s1[1].add(s2[1]))

    def sub(self, s1, s2):
        return (s1[0].sub(s2[0]), s1[1].sub(s2[1]))

    def smul(self, scalar, sec):
        return (sec[0].smul(scalar), sec[1].smul(scalar))

    def eq(self, s1, s2) -> bool:
        return s1[0] == s2[0] and s1[1] == s2[1]

    def to_json(self):
        return {
            "field": self.ctx.to_json(),
            "c": self.c.to_json(),
            "n": self.n,
            "split": self.split,
            "delta_cap": self.delta_cap,
        }


def build_extension(ctx: FieldCtx, c: LaurentSeries, delta_cap: int = DEFAULT_DELTA_CAP) -> ExtensionModule:
    """The extension module twisted by the Laurent polynomial c.

    Requires c to be exactly known; nonzero c must have a pole
    (v_t(c) <= -1) so that n = -v_t(c) - 1 >= 0.
    """
    if c.ctx is not ctx:
        raise InvalidInputError("twist series over the wrong field")
    if not c.is_exact():
        raise InvalidInputError("twist series must be exactly known (no window)")
    v = c.valuation()
    if v is None:
        return ExtensionModule(ctx, c, None, delta_cap)
    if v >= 0:
        raise InvalidInputError(
            f"nonzero twist must have a pole: v_t(c) = {v} >= 0 gives n < 0"
        )
    return ExtensionModule(ctx, c, -v - 1, delta_cap)


@dataclass(frozen=True)
class SolutionReport:
    """Fixed sections under Frobenius, as an F_p-space."""

    dimension: int
    basis: tuple
    obstruction: object = None

    def to_json(self):
        out = {"dimension": self.dimension}
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        return out


def sol_extension(mod: ExtensionModule, chain_cap: int = 4096) -> SolutionReport:
    """F_p-dimension (0 or 1 for nonzero c) of Frobenius-fixed sections.

    A fixed pair (f, g) forces f = f^p, so f is a constant lambda in
    F_p, and lambda scales the whole problem: g must solve
    g = [lambda t c] + g^p, whose coefficients are determined by an
    ascending recursion along the p-adic chains m, p*m, p^2*m, ...
    Once past the support of [t c], a nonzero value propagates
    forever, so the solution is a genuine (finite) delta section
    exactly when every chain has died by then.
    """
    ctx = mod.ctx
    p = ctx.p
    if mod.split:
        return SolutionReport(1, ((LaurentSeries.one(ctx), DeltaElement.zero(ctx)),))
    h = DeltaElement.from_series_tail(mod.c.shift(1))
    bound = h.max_support() or 0
    if bound > chain_cap:
        raise CapExceededError(
            f"pole order {bound} exceeds the solution chain cap {chain_cap}",
            [("pole", bound)],
        )
    gamma: dict = {}
    for m in range(1, bound + 1):
        val = h.coeffs.get(m, ctx.zero)
        if m % p == 0 and m // p in gamma:
            val = ctx.add(val, ctx.pow(gamma[m // p], p))
        if not ctx.is_zero(val):
            gamma[m] = val
    # a chain keeps p-powering beyond the support bound; the last
    # in-range value must vanish for the support to stay finite
    blockers = sorted(m for m in gamma if m * p > bound)
    if blockers:
        return SolutionReport(
            0, (), obstruction=[[m, list(gamma[m])] for m in blockers]
        )
    g = DeltaElement(ctx, gamma)
    return SolutionReport(1, ((LaurentSeries.one(ctx), g),))
