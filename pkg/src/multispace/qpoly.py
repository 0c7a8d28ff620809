"""Linearized (q-)polynomials and their correspondence with multispaces.

A multispace W over GF(q)^n maps to the polynomial
prod_{v in W} (x - phi(v)) over the extension field GF(q^n), where phi
is the fixed coordinate isomorphism GF(q)^n -> GF(q^n).  The expansion
has nonzero coefficients only at q-power degrees, and its root multiset
recovers W: every root of the expansion has uniform multiplicity
q^height and the roots form the underlying subspace.
"""

import functools

import numpy as np

from .errors import (
    ContextMismatch,
    FormatError,
    LimitExceeded,
    NotAMultispace,
    RootsNotInField,
    ShapeViolation,
)
from .fields import Embedding, FieldCtx, FieldElement, extension, field, parse_field_spec
from .lattice import Multispace
from .linalg import FqVector, Subspace, rref_array

POLY_DEGREE_LIMIT = 1 << 16


# ---------------------------------------------------------------------------
# Dense polynomials (little-endian coefficient arrays)
# ---------------------------------------------------------------------------

class DensePoly:
    """Dense polynomial over a field context; index = exponent."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        a = np.asarray(coeffs, dtype=np.int64)
        nz = np.nonzero(a)[0]
        self.ctx = ctx
        self.coeffs = a[: int(nz[-1]) + 1].copy() if len(nz) else np.zeros(0, dtype=np.int64)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx):
        return cls(ctx, [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __eq__(self, other):
        return (
            isinstance(other, DensePoly)
            and self.ctx == other.ctx
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs.tobytes()))

    def __repr__(self):
        return f"DensePoly(deg {self.degree} over GF({self.ctx.p}^{self.ctx.e}))"

    def mul(self, other: "DensePoly") -> "DensePoly":
        self.ctx.check_same(other.ctx)
        if self.is_zero() or other.is_zero():
            return DensePoly.zero(self.ctx)
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        ctx = self.ctx
        for i in np.nonzero(a)[0]:
            term = ctx.mul_arr(np.full(len(b), a[i], dtype=np.int64), b)
            out[i : i + len(b)] = ctx.add_arr(out[i : i + len(b)], term)
        return DensePoly(ctx, out)

    def mul_linear(self, r: int) -> "DensePoly":
        """Multiply by the linear factor (x - r)."""
        c = self.coeffs
        out = np.zeros(len(c) + 1, dtype=np.int64)
        out[1:] = c
        out[:-1] = self.ctx.sub_arr(
            out[:-1], self.ctx.mul_arr(np.full(len(c), r, dtype=np.int64), c)
        )
        return DensePoly(self.ctx, out)

    def scale(self, c: int) -> "DensePoly":
        return DensePoly(self.ctx, self.ctx.mul_arr(np.full(len(self.coeffs), c, dtype=np.int64), self.coeffs))

    def char_power(self) -> "DensePoly":
        """The p-th power: coefficients to the p, exponents stretched by p."""
        p = self.ctx.p
        out = np.zeros((len(self.coeffs) - 1) * p + 1, dtype=np.int64) if len(self.coeffs) else np.zeros(0, dtype=np.int64)
        if len(self.coeffs):
            out[:: p] = self.ctx.pow_arr(self.coeffs, p)
        return DensePoly(self.ctx, out)

    def eval(self, x: int) -> int:
        acc = 0
        for c in self.coeffs[::-1]:
            acc = self.ctx.add(self.ctx.mul(acc, x), int(c))
        return acc

    def synthetic_divide(self, r: int) -> tuple["DensePoly", int]:
        """Divide by (x - r); returns (quotient, remainder scalar)."""
        ctx = self.ctx
        a = self.coeffs
        d = len(a) - 1
        if d < 0:
            return DensePoly.zero(ctx), 0
        b = [0] * d
        carry = 0
        add, mul = ctx.add, ctx.mul
        for i in range(d - 1, -1, -1):
            carry = add(int(a[i + 1]), mul(r, carry))
            b[i] = carry
        rem = add(int(a[0]), mul(r, b[0])) if d > 0 else int(a[0])
        return DensePoly(ctx, b), rem


def root_multiplicities_by_division(poly: DensePoly, roots=None) -> dict[int, int]:
    """Multiplicity of every root, by literal repeated synthetic division.

    Exact but quadratic in the degree; used as the test oracle and the
    slow diagnostic path of roots_multiset.
    """
    ctx = poly.ctx
    if roots is None:
        roots = [x for x in range(ctx.q) if poly.eval(x) == 0]
    out: dict[int, int] = {}
    g = poly
    for r in roots:
        mult = 0
        while not g.is_zero() and g.degree >= 1:
            quot, rem = g.synthetic_divide(r)
            if rem != 0:
                break
            g = quot
            mult += 1
        if mult:
            out[int(r)] = mult
    return out


# ---------------------------------------------------------------------------
# Coordinate isomorphism GF(q)^n <-> GF(q^n)
# ---------------------------------------------------------------------------

class VectorFieldIso:
    """The fixed vector-space isomorphism GF(q)^n -> GF(q^n).

    Coordinate vector (c_0, ..., c_{n-1}) maps to sum_i phi(c_i) * g^i,
    where g is the residue class of the big field's modulus variable and
    phi the deterministic subfield embedding.
    """

    def __init__(self, ctx: FieldCtx, n: int, big: FieldCtx):
        if big.p != ctx.p or big.e != ctx.e * n:
            raise ContextMismatch(f"{big} is not GF(q^{n}) for q = {ctx.q}")
        self.ctx = ctx
        self.n = n
        self.big = big
        self.emb = Embedding(ctx, big)
        gamma = big.p if big.e > 1 else 0  # residue class of x; unused when big == GF(p)
        if big.e == 1:
            # n == 1 and e == 1: the identity
            self._gamma_pows = np.array([1], dtype=np.int64)
        else:
            pows = [1]
            for _ in range(n - 1):
                pows.append(big.mul(pows[-1], gamma))
            self._gamma_pows = np.asarray(pows, dtype=np.int64)
        self._build_inverse()

    def _build_inverse(self):
        p, e, n = self.ctx.p, self.ctx.e, self.n
        en = e * n
        fp = field(p)
        # columns: base-p digits of phi(alpha^d) * gamma^i
        cols = np.zeros((en, en), dtype=np.int64)
        for i in range(n):
            for d in range(e):
                # basis element alpha^d of GF(q) has encoding p^d
                val = self.big.mul(self.emb.embed_int(p ** d), int(self._gamma_pows[i]))
                digs = []
                v = val
                for _ in range(en):
                    digs.append(v % p)
                    v //= p
                cols[:, i * e + d] = digs
        aug = np.hstack([cols, np.eye(en, dtype=np.int64)])
        red, rank, _ = rref_array(fp, aug)
        if rank != en:
            raise ShapeViolation("coordinate map is singular")  # cannot happen
        self._inv_digits = red[:, en:]

    # -- forward -------------------------------------------------------------

    def to_field_array(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.n)
        acc = np.zeros(rows.shape[0], dtype=np.int64)
        for i in range(self.n):
            term = self.big.mul_arr(
                self.emb.table[rows[:, i]],
                np.full(rows.shape[0], int(self._gamma_pows[i]), dtype=np.int64),
            )
            acc = self.big.add_arr(acc, term)
        return acc

    def to_field(self, v: FqVector) -> FieldElement:
        self.ctx.check_same(v.ctx)
        return FieldElement(int(self.to_field_array(v.coords[None, :])[0]), self.big)

    # -- backward ------------------------------------------------------------

    def to_vector_array(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64).reshape(-1)
        p, e, n = self.ctx.p, self.ctx.e, self.n
        en = e * n
        digs = np.empty((len(xs), en), dtype=np.int64)
        v = xs.copy()
        for d in range(en):
            digs[:, d] = v % p
            v //= p
        coeff_digs = (digs @ self._inv_digits.T) % p
        pvec = (p ** np.arange(e)).astype(np.int64)
        return (coeff_digs.reshape(-1, n, e) * pvec).sum(axis=2)

    def to_vector(self, x: FieldElement) -> FqVector:
        self.big.check_same(x.ctx)
        return FqVector(self.ctx, self.to_vector_array(np.asarray([x.value]))[0])


@functools.lru_cache(maxsize=None)
def vector_field_iso(ctx: FieldCtx, n: int, big: FieldCtx | None = None) -> VectorFieldIso:
    if big is None:
        big, _ = extension(ctx, n)
    return VectorFieldIso(ctx, n, big)


# ---------------------------------------------------------------------------
# Linearized polynomials
# ---------------------------------------------------------------------------

class LinearizedPoly:
    """sum_i a_i x^(q^i) with coefficients in a fixed big field GF(q^N)."""

    __slots__ = ("base_q", "ctx", "coeffs")

    def __init__(self, base_q: int, ctx: FieldCtx, coeffs: dict[int, int | FieldElement]):
        ctx._check_power_base(base_q)
        clean: dict[int, int] = {}
        for i, c in coeffs.items():
            v = c.value if isinstance(c, FieldElement) else int(c)
            ctx.check_value(v)
            if v:
                clean[int(i)] = v
        self.base_q = base_q
        self.ctx = ctx
        self.coeffs = clean

    def is_zero(self):
        return not self.coeffs

    @property
    def q_degree(self) -> int:
        """Largest i with a nonzero coefficient (the multispace rank)."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree as a plain polynomial: base_q ** q_degree."""
        return self.base_q ** self.q_degree

    def coefficient(self, i: int) -> FieldElement:
        return FieldElement(self.coeffs.get(i, 0), self.ctx)

    def __eq__(self, other):
        return (
            isinstance(other, LinearizedPoly)
            and self.base_q == other.base_q
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.base_q, self.ctx, tuple(sorted(self.coeffs.items()))))

    def eval(self, x: FieldElement | int) -> FieldElement:
        xv = x.value if isinstance(x, FieldElement) else int(x)
        ctx = self.ctx
        acc = 0
        for i, c in self.coeffs.items():
            acc = ctx.add(acc, ctx.mul(c, ctx.frobenius(xv, i, self.base_q)))
        return FieldElement(acc, ctx)

    __call__ = eval

    def eval_domain(self) -> np.ndarray:
        """Values on every element of the big field, as an encoding array."""
        ctx = self.ctx
        xs = np.arange(ctx.q, dtype=np.int64)
        acc = np.zeros(ctx.q, dtype=np.int64)
        for i, c in self.coeffs.items():
            powd = ctx.frobenius_arr(xs, i, self.base_q)
            acc = ctx.add_arr(acc, ctx.mul_arr(np.full(ctx.q, c, dtype=np.int64), powd))
        return acc

    def as_dense(self) -> DensePoly:
        if not self.coeffs:
            return DensePoly.zero(self.ctx)
        out = np.zeros(self.degree + 1, dtype=np.int64)
        for i, c in self.coeffs.items():
            out[self.base_q ** i] = c
        return DensePoly(self.ctx, out)

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        terms = [
            f"{c}*x^{self.base_q ** i}" for i, c in sorted(self.coeffs.items(), reverse=True)
        ]
        return " + ".join(terms)

    def coefficient_subfield_degree(self) -> int:
        """Smallest l dividing N with all coefficients in GF(base_q^l)."""
        n_over_base = self.ctx.e // _base_e(self.ctx, self.base_q)
        for ell in range(1, n_over_base + 1):
            if n_over_base % ell:
                continue
            if all(
                self.ctx.frobenius(c, ell, self.base_q) == c
                for c in self.coeffs.values()
            ):
                return ell
        return n_over_base

    def to_dict(self) -> dict:
        return {
            "base-q": self.base_q,
            "field": self.ctx.spec,
            "coeffs": {str(i): int(c) for i, c in sorted(self.coeffs.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LinearizedPoly":
        try:
            ctx = parse_field_spec(d["field"])
            base_q = int(d["base-q"])
            coeffs = {int(i): int(c) for i, c in d["coeffs"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad linearized polynomial object: {exc}") from exc
        return cls(base_q, ctx, coeffs)


def _base_e(ctx: FieldCtx, base_q: int) -> int:
    e = 0
    b = base_q
    while b > 1:
        b //= ctx.p
        e += 1
    return e


def evaluate(L: LinearizedPoly, x: FieldElement) -> FieldElement:
    return L.eval(x)


# ---------------------------------------------------------------------------
# The correspondence
# ---------------------------------------------------------------------------

def poly_from_multispace(
    w: Multispace, big: FieldCtx | None = None, state_limit: int = POLY_DEGREE_LIMIT
) -> LinearizedPoly:
    """Expand prod_{v in W} (x - phi(v)) and check its q-power shape.

    The product over the underlying subspace is expanded literally from
    linear factors; the multiset repetition enters as a q^height-th
    power, taken as iterated characteristic powers.
    """
    ctx = w.ctx
    deg = ctx.q ** w.rank
    if deg > state_limit:
        raise LimitExceeded(f"degree {deg} exceeds limit {state_limit}")
    iso = vector_field_iso(ctx, w.n, big)
    big_ctx = iso.big
    roots = iso.to_field_array(w.underlying.vector_array())
    poly = DensePoly.one(big_ctx)
    for r in roots:
        poly = poly.mul_linear(int(r))
    for _ in range(ctx.e * w.height):
        poly = poly.char_power()
    # shape check: nonzero coefficients only at exponents q^i
    exps = set(np.nonzero(poly.coeffs)[0].tolist())
    allowed = {ctx.q ** i for i in range(w.rank + 1)}
    if not exps <= allowed or (deg not in exps):
        raise ShapeViolation(f"expansion has non-q-power exponents: {sorted(exps)}")
    coeffs = {}
    for x in exps:
        i = 0
        while ctx.q ** i < x:
            i += 1
        coeffs[i] = int(poly.coeffs[x])
    return LinearizedPoly(ctx.q, big_ctx, coeffs)


def roots_multiset(L: LinearizedPoly, big: FieldCtx | None = None) -> Multispace:
    """Recover the multispace whose members are the roots of L.

    Roots are found by evaluating over the whole big field; the uniform
    multiplicity is certified by reconstructing the canonical product
    polynomial and comparing expansions (exact, by unique factorization).
    On mismatch the slow synthetic-division path diagnoses whether the
    polynomial fails to split or has a non-multispace root multiset.
    """
    ctx_big = L.ctx
    if big is not None:
        ctx_big.check_same(big)
    if L.is_zero():
        raise NotAMultispace("zero polynomial has no root multiset")
    if L.degree > POLY_DEGREE_LIMIT:
        raise LimitExceeded(f"degree {L.degree} exceeds limit {POLY_DEGREE_LIMIT}")
    q = L.base_q
    n = ctx_big.e // _base_e(ctx_big, q)
    small = field(ctx_big.p, _base_e(ctx_big, q))
    iso = vector_field_iso(small, n, ctx_big)
    values = L.eval_domain()
    roots = np.nonzero(values == 0)[0].astype(np.int64)
    vecs = iso.to_vector_array(roots)
    underlying = Subspace.from_array(small, n, vecs)
    rank = L.q_degree
    if small.q ** underlying.dim == len(roots) and rank >= underlying.dim:
        candidate = Multispace(underlying, rank - underlying.dim)
        lc = L.coeffs[rank]
        monic = L.as_dense().scale(ctx_big.inv(lc))
        if monic == poly_from_multispace(candidate, ctx_big).as_dense():
            return candidate
    # diagnose: literal multiplicity extraction
    dense = L.as_dense()
    mults = root_multiplicities_by_division(dense, roots=[int(r) for r in roots])
    if sum(mults.values()) < dense.degree:
        raise RootsNotInField(f"polynomial does not split over {ctx_big}")
    raise NotAMultispace(f"root multiset is not a multispace (multiplicities {sorted(set(mults.values()))})")
