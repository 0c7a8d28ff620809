"""Multisets of vectors closed under linear combinations ("multispaces").

A multispace over GF(q)^n is a multiset in which the support is a
subspace and every member has the same multiplicity q^t.  It is stored
losslessly as (underlying subspace, height t); rank = dim + height and
the multiset has q^rank members counted with multiplicity.

This module provides the multispan operator, the graded modular lattice
of all multispaces with meet/join/rank/distance, counting and cover
formulas, deterministic enumeration, Hasse-diagram export, and the
distance-2 graph with a distance-regularity checker.
"""

import functools
import hashlib
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import DimensionMismatch, FormatError, LimitExceeded, RankZero
from .fields import FieldCtx, parse_field_spec
from .linalg import (
    DEFAULT_STATE_LIMIT,
    FqVector,
    Subspace,
    _rows_array,
    enumerate_subspaces,
    matmul_arrays,
    span,
)

#: Counts are plain Python ints, i.e. exact arbitrary-precision integers.
BigCount = int


class VectorMultiset:
    """An ordered multiset of vectors in GF(q)^n (rows of a matrix).

    Order is irrelevant to the multispan but kept so channel transforms
    can act on positions.
    """

    __slots__ = ("ctx", "n", "matrix")

    def __init__(self, ctx: FieldCtx, n: int, rows):
        self.ctx = ctx
        self.n = n
        self.matrix = _rows_array(ctx, n, rows)
        self.matrix.flags.writeable = False

    @classmethod
    def from_vectors(cls, vectors, ctx=None, n=None):
        vectors = list(vectors)
        if not vectors:
            if ctx is None or n is None:
                raise ValueError("empty multiset needs explicit ctx and n")
            return cls(ctx, n, np.zeros((0, n), dtype=np.int64))
        c0, n0 = vectors[0].ctx, vectors[0].n
        for v in vectors[1:]:
            c0.check_same(v.ctx)
            if v.n != n0:
                raise DimensionMismatch("mixed vector lengths")
        return cls(c0, n0, np.stack([v.coords for v in vectors]))

    @property
    def vectors(self):
        return tuple(FqVector(self.ctx, row) for row in self.matrix)

    def __len__(self):
        return self.matrix.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, VectorMultiset)
            and self.ctx == other.ctx
            and self.n == other.n
            and self.matrix.shape == other.matrix.shape
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.ctx, self.n, self.matrix.tobytes()))

    def __repr__(self):
        return f"VectorMultiset({self.matrix.tolist()} over GF({self.ctx.p}^{self.ctx.e})^{self.n})"

    def to_dict(self) -> dict:
        return {
            "q-spec": self.ctx.spec,
            "n": self.n,
            "vectors": [[int(v) for v in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VectorMultiset":
        try:
            return cls(parse_field_spec(d["q-spec"]), int(d["n"]), d["vectors"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad vector multiset object: {exc}") from exc


class Multispace:
    """A multispace, canonically (underlying subspace, height)."""

    __slots__ = ("underlying", "height")

    def __init__(self, underlying: Subspace, height: int):
        if height < 0:
            raise ValueError("height must be nonnegative")
        self.underlying = underlying
        self.height = int(height)

    @classmethod
    def bottom(cls, ctx, n):
        return cls(Subspace.zero(ctx, n), 0)

    @property
    def ctx(self):
        return self.underlying.ctx

    @property
    def n(self):
        return self.underlying.n

    @property
    def dim(self):
        return self.underlying.dim

    @property
    def rank(self):
        return self.underlying.dim + self.height

    @property
    def is_subspace(self):
        return self.height == 0

    def multiplicity(self) -> BigCount:
        """Common multiplicity q^height of every member vector."""
        return self.ctx.q ** self.height

    def size(self) -> BigCount:
        """Multiset cardinality q^rank."""
        return self.ctx.q ** self.rank

    def _check_compatible(self, other: "Multispace"):
        self.ctx.check_same(other.ctx)
        if self.n != other.n:
            raise DimensionMismatch("ambient dimensions differ")

    def __eq__(self, other):
        return (
            isinstance(other, Multispace)
            and self.height == other.height
            and self.underlying == other.underlying
        )

    def __hash__(self):
        return hash((self.underlying, self.height))

    def __le__(self, other: "Multispace") -> bool:
        return multiset_leq(self, other)

    def __lt__(self, other: "Multispace") -> bool:
        return self != other and multiset_leq(self, other)

    def __repr__(self):
        return f"Multispace(dim {self.dim}, ht {self.height} in GF({self.ctx.p}^{self.ctx.e})^{self.n})"

    def sort_key(self):
        return (self.rank, self.dim, self.underlying.sort_key())

    def label_hash(self) -> str:
        h = hashlib.sha1()
        h.update(f"{self.n}:{self.height}:".encode())
        h.update(self.underlying.basis.tobytes())
        return h.hexdigest()[:6]

    def meet(self, other):
        return meet(self, other)

    def join(self, other):
        return join(self, other)

    def distance(self, other):
        return distance(self, other)

    def generating_multiset(self) -> VectorMultiset:
        """Canonical generator: a basis of the underlying space plus height copies of 0."""
        rows = np.vstack(
            [self.underlying.basis, np.zeros((self.height, self.n), dtype=np.int64)]
        )
        return VectorMultiset(self.ctx, self.n, rows)

    def to_dict(self) -> dict:
        d = self.underlying.to_dict()
        d["height"] = self.height
        return d

    @classmethod
    def from_dict(cls, d: dict, strict: bool = True, canonicalize: bool = False) -> "Multispace":
        try:
            height = int(d["height"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad multispace object: {exc}") from exc
        return cls(Subspace.from_dict(d, strict=strict, canonicalize=canonicalize), height)


# ---------------------------------------------------------------------------
# Multispan and the multiplicity oracle
# ---------------------------------------------------------------------------

def mspan(b: VectorMultiset) -> Multispace:
    """Multispan: underlying space is the span, height is |b| - dim."""
    underlying = span(b)
    return Multispace(underlying, len(b) - underlying.dim)


def multiplicity_oracle(
    b: VectorMultiset, state_limit: int | None = DEFAULT_STATE_LIMIT
) -> dict[FqVector, BigCount]:
    """Exact multiplicity function of the multispan, by literal brute force.

    Materializes the sum of every one of the q^|b| coefficient tuples and
    counts them.  Independent of mspan(); used as its test oracle.
    """
    ctx, n, m = b.ctx, b.n, len(b)
    total = ctx.q ** m
    if state_limit is not None and total > state_limit:
        raise LimitExceeded(f"q^m = {total} exceeds limit {state_limit}")
    sums = np.zeros((1, n), dtype=np.int64)
    for i in range(m):
        row = b.matrix[i]
        scaled = np.stack(
            [ctx.mul_arr(np.full(n, c, dtype=np.int64), row) for c in range(ctx.q)]
        )
        sums = ctx.add_arr(sums[:, None, :], scaled[None, :, :]).reshape(-1, n)
    if n == 0:
        return {FqVector(ctx, []): int(total)}
    if ctx.q ** n < 2 ** 62:
        qpow = (ctx.q ** np.arange(n)).astype(np.int64)
        keys = sums @ qpow
        _, idx, counts = np.unique(keys, return_index=True, return_counts=True)
        return {FqVector(ctx, sums[i]): int(c) for i, c in zip(idx, counts)}
    uniq, counts = np.unique(sums, axis=0, return_counts=True)
    return {FqVector(ctx, row): int(c) for row, c in zip(uniq, counts)}


# ---------------------------------------------------------------------------
# Lattice operations
# ---------------------------------------------------------------------------

def multiset_leq(a: Multispace, b: Multispace) -> bool:
    """Multiset containment: support contained and multiplicity <= multiplicity."""
    a._check_compatible(b)
    return a.height <= b.height and a.underlying <= b.underlying


def meet(a: Multispace, b: Multispace) -> Multispace:
    """Greatest lower bound = multiset intersection."""
    a._check_compatible(b)
    return Multispace(a.underlying.intersect(b.underlying), min(a.height, b.height))


def join(a: Multispace, b: Multispace) -> Multispace:
    """Least upper bound: sum of underlyings, max of heights."""
    a._check_compatible(b)
    return Multispace(a.underlying + b.underlying, max(a.height, b.height))


def distance(a: Multispace, b: Multispace) -> int:
    """Lattice metric rank(join) - rank(meet).

    dim of the intersection comes from the modular dimension identity,
    so a single elimination (for the sum) suffices.
    """
    a._check_compatible(b)
    dim_sum = (a.underlying + b.underlying).dim
    dim_meet = a.dim + b.dim - dim_sum
    rank_join = dim_sum + max(a.height, b.height)
    rank_meet = dim_meet + min(a.height, b.height)
    return rank_join - rank_meet


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, q: int) -> BigCount:
    """Number of k-dimensional subspaces of GF(q)^n (exact integer).

    Evaluated through the q-Pascal recurrence so every intermediate value
    is an integer.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if k < 0 or k > n:
        return 0
    if k == 0 or k == n:
        return 1
    return gaussian_binomial(n - 1, k - 1, q) + q ** k * gaussian_binomial(n - 1, k, q)


def count_multispaces(n: int, m: int, q: int) -> BigCount:
    """Number of rank-m multispaces over GF(q)^n: sum of Gaussian binomials."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    return sum(gaussian_binomial(n, k, q) for k in range(0, min(m, n) + 1))


def count_covered(w: Multispace) -> BigCount:
    """How many multispaces w covers in the lattice."""
    if w.rank == 0:
        raise RankZero("the bottom element covers nothing")
    q = w.ctx.q
    base = sum(q ** i for i in range(w.dim))
    return base if w.height == 0 else 1 + base


def count_covering(w: Multispace) -> BigCount:
    """How many multispaces cover w in the lattice."""
    q = w.ctx.q
    return 1 + sum(q ** i for i in range(w.n - w.dim))


# ---------------------------------------------------------------------------
# Enumeration and cover structure
# ---------------------------------------------------------------------------

def enumerate_multispaces(
    ctx: FieldCtx, n: int, m: int, state_limit: int | None = DEFAULT_STATE_LIMIT
):
    """Every multispace of rank exactly m, ascending dim then subspace order."""
    for k in range(0, min(m, n) + 1):
        for s in enumerate_subspaces(ctx, n, k, state_limit):
            yield Multispace(s, m - k)


def enumerate_multispaces_up_to(
    ctx: FieldCtx, n: int, m_max: int, state_limit: int | None = DEFAULT_STATE_LIMIT
):
    """Every multispace of rank 0..m_max, ascending rank."""
    for m in range(m_max + 1):
        yield from enumerate_multispaces(ctx, n, m, state_limit)


def _monic_vectors_on(ctx: FieldCtx, n: int, cols: tuple[int, ...]):
    """Vectors supported on cols whose first nonzero entry is 1 (one per line)."""
    q = ctx.q
    for lead_idx in range(len(cols)):
        tail = cols[lead_idx + 1 :]
        for assignment in product(range(q), repeat=len(tail)):
            v = np.zeros(n, dtype=np.int64)
            v[cols[lead_idx]] = 1
            for c, val in zip(tail, assignment):
                v[c] = val
            yield v


def covering_neighbors(w: Multispace) -> list[Multispace]:
    """All multispaces covering w, deterministic order (superspaces, then height bump)."""
    out = []
    u = w.underlying
    nonpivot = tuple(c for c in range(w.n) if c not in set(u.pivots))
    for v in _monic_vectors_on(w.ctx, w.n, nonpivot):
        # v represents a line of the quotient space; u + <v> covers u
        sup = Subspace.from_array(w.ctx, w.n, np.vstack([u.basis, v[None, :]]))
        out.append(Multispace(sup, w.height))
    out.append(Multispace(u, w.height + 1))
    return out


def covered_neighbors(w: Multispace) -> list[Multispace]:
    """All multispaces covered by w (hyperplanes of the underlying, then height drop)."""
    if w.rank == 0:
        return []
    out = []
    u = w.underlying
    if u.dim > 0:
        # hyperplanes of u = images of hyperplanes of the coordinate space GF(q)^dim
        for combo in enumerate_subspaces(w.ctx, u.dim, u.dim - 1, state_limit=None):
            rows = matmul_arrays(w.ctx, combo.basis, u.basis)
            out.append(Multispace(Subspace.from_array(w.ctx, w.n, rows), w.height))
    if w.height > 0:
        out.append(Multispace(u, w.height - 1))
    return out


def hasse_edges(
    ctx: FieldCtx, n: int, m_max: int, state_limit: int | None = DEFAULT_STATE_LIMIT
):
    """All cover pairs (lower, upper) with rank(upper) <= m_max."""
    for m in range(m_max):
        for w in enumerate_multispaces(ctx, n, m, state_limit):
            for up in covering_neighbors(w):
                yield (w, up)


@dataclass
class HasseDiagram:
    dot: str
    nodes: int
    edges: int
    rank_sizes: list[int]


def hasse_dot(
    ctx: FieldCtx, n: int, m_max: int, state_limit: int | None = DEFAULT_STATE_LIMIT
) -> HasseDiagram:
    """DOT digraph of the lattice up to rank m_max, rank-layered.

    Node labels are "rank:dim:hash"; height-0 nodes (plain subspaces) are
    drawn filled light blue.
    """
    ranks: list[list[Multispace]] = []
    ids: dict[Multispace, str] = {}
    for m in range(m_max + 1):
        layer = list(enumerate_multispaces(ctx, n, m, state_limit))
        ranks.append(layer)
        for i, w in enumerate(layer):
            ids[w] = f"r{m}_{i}"
    lines = [
        "digraph multispaces {",
        "  rankdir=BT;",
        '  node [shape=ellipse, fontsize=10];',
    ]
    for m, layer in enumerate(ranks):
        lines.append(f"  subgraph cluster_rank{m} {{")
        lines.append(f'    label="rank {m}"; rank=same; style=invis;')
        for w in layer:
            style = ', style=filled, fillcolor=lightblue' if w.height == 0 else ""
            lines.append(
                f'    {ids[w]} [label="{w.rank}:{w.dim}:{w.label_hash()}"{style}];'
            )
        lines.append("  }")
    n_edges = 0
    for lower, upper in hasse_edges(ctx, n, m_max, state_limit):
        lines.append(f"  {ids[lower]} -> {ids[upper]};")
        n_edges += 1
    lines.append("}")
    return HasseDiagram(
        dot="\n".join(lines) + "\n",
        nodes=sum(len(layer) for layer in ranks),
        edges=n_edges,
        rank_sizes=[len(layer) for layer in ranks],
    )


# ---------------------------------------------------------------------------
# The distance-2 graph on a rank level
# ---------------------------------------------------------------------------

@dataclass
class GammaGraph:
    """Graph on all rank-m multispaces, edges between pairs at metric distance 2."""

    ctx: FieldCtx
    n: int
    m: int
    vertices: tuple
    adjacency: np.ndarray  # boolean, symmetric

    def degree(self, i: int) -> int:
        return int(self.adjacency[i].sum())

    def graph_distances(self) -> np.ndarray:
        """All-pairs BFS distances; -1 marks unreachable pairs."""
        v = len(self.vertices)
        dist = np.full((v, v), -1, dtype=np.int64)
        for s in range(v):
            dist[s, s] = 0
            frontier = np.zeros(v, dtype=bool)
            frontier[s] = True
            seen = frontier.copy()
            d = 0
            while frontier.any():
                nxt = (self.adjacency[frontier].any(axis=0)) & ~seen
                d += 1
                dist[s, nxt] = d
                seen |= nxt
                frontier = nxt
        return dist


def gamma_graph(
    ctx: FieldCtx, n: int, m: int, state_limit: int | None = DEFAULT_STATE_LIMIT
) -> GammaGraph:
    verts = tuple(enumerate_multispaces(ctx, n, m, state_limit))
    v = len(verts)
    adj = np.zeros((v, v), dtype=bool)
    for i, j in combinations(range(v), 2):
        if distance(verts[i], verts[j]) == 2:
            adj[i, j] = adj[j, i] = True
    return GammaGraph(ctx, n, m, verts, adj)


@dataclass
class RegularityReport:
    regular: bool
    witness: dict | None

    def __bool__(self):
        return self.regular


def is_distance_regular(g: GammaGraph) -> RegularityReport:
    """Check constancy of the intersection numbers over all vertex pairs.

    Returns the first violation found: two pairs at the same graph
    distance with different |N(u) & sphere_k(v)| counts, or a witness of
    disconnection.
    """
    v = len(g.vertices)
    if v == 0:
        return RegularityReport(True, None)
    dist = g.graph_distances()
    bad = np.argwhere(dist < 0)
    if len(bad):
        i, j = map(int, bad[0])
        return RegularityReport(
            False,
            {"reason": "disconnected", "pair": (g.vertices[i], g.vertices[j])},
        )
    adj_int = g.adjacency.astype(np.int64)
    diam = int(dist.max())
    for k in range(diam + 1):
        mask = dist == k
        if not mask.any():
            continue
        for name, delta in (("c", k - 1), ("a", k), ("b", k + 1)):
            sphere = (dist == delta).astype(np.int64)
            counts = adj_int @ sphere  # counts[u, v] = |N(u) ∩ sphere_delta(v)|
            vals = counts[mask]
            if vals.min() != vals.max():
                pairs = np.argwhere(mask)
                lo = pairs[int(np.argmin(vals))]
                hi = pairs[int(np.argmax(vals))]
                return RegularityReport(
                    False,
                    {
                        "reason": "intersection number not constant",
                        "distance": k,
                        "parameter": name,
                        "pair_low": (g.vertices[lo[0]], g.vertices[lo[1]]),
                        "value_low": int(vals.min()),
                        "pair_high": (g.vertices[hi[0]], g.vertices[hi[1]]),
                        "value_high": int(vals.max()),
                    },
                )
    return RegularityReport(True, None)
