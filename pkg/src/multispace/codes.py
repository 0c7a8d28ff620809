"""Multispace codes: sets of multispaces of rank <= m_max with a
prescribed minimum lattice distance, plus search, bounds and decoding.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigInvalid,
    EmptyCode,
    FormatError,
    LimitExceeded,
    TooFewCodewords,
)
from .fields import FieldCtx, parse_field_spec
from .lattice import (
    BigCount,
    Multispace,
    count_multispaces,
    covered_neighbors,
    covering_neighbors,
    distance,
    enumerate_multispaces,
    enumerate_multispaces_up_to,
)
from .linalg import DEFAULT_STATE_LIMIT

#: pairwise distance matrices are only materialized up to this many elements
DISTANCE_CACHE_LIMIT = 1 << 14


class MultispaceCode:
    """An ordered set of distinct multispaces of rank <= m_max."""

    __slots__ = ("ctx", "n", "m_max", "codewords", "_min_dist")

    def __init__(self, ctx: FieldCtx, n: int, m_max: int, codewords: tuple):
        seen = set()
        for w in codewords:
            w.ctx.check_same(ctx)
            if w.n != n:
                raise ConfigInvalid("codeword ambient dimension differs")
            if w.rank > m_max:
                raise ConfigInvalid(f"codeword rank {w.rank} exceeds m_max {m_max}")
            if w in seen:
                raise ConfigInvalid("duplicate codeword")
            seen.add(w)
        self.ctx = ctx
        self.n = n
        self.m_max = m_max
        self.codewords = tuple(codewords)
        self._min_dist = None

    def __len__(self):
        return len(self.codewords)

    def __iter__(self):
        return iter(self.codewords)

    def __eq__(self, other):
        return (
            isinstance(other, MultispaceCode)
            and (self.ctx, self.n, self.m_max) == (other.ctx, other.n, other.m_max)
            and self.codewords == other.codewords
        )

    def __repr__(self):
        return f"MultispaceCode(|C|={len(self.codewords)}, n={self.n}, m_max={self.m_max})"

    @property
    def min_distance(self):
        """Cached pairwise minimum distance; +inf for codes of size <= 1."""
        if self._min_dist is None:
            if len(self.codewords) <= 1:
                self._min_dist = math.inf
            else:
                self._min_dist = min(
                    distance(a, b)
                    for i, a in enumerate(self.codewords)
                    for b in self.codewords[i + 1 :]
                )
        return self._min_dist

    def to_dict(self) -> dict:
        return {
            "q-spec": self.ctx.spec,
            "n": self.n,
            "m_max": self.m_max,
            "d_min": None if self.min_distance == math.inf else int(self.min_distance),
            "codewords": [w.to_dict() for w in self.codewords],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MultispaceCode":
        try:
            ctx = parse_field_spec(d["q-spec"])
            n = int(d["n"])
            m_max = int(d["m_max"])
            words = tuple(Multispace.from_dict(w) for w in d["codewords"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad code object: {exc}") from exc
        return cls(ctx, n, m_max, words)


def min_distance(code: MultispaceCode) -> int:
    """Exact pairwise minimum distance; needs at least two codewords."""
    if len(code) < 2:
        raise TooFewCodewords("minimum distance needs two codewords")
    return int(code.min_distance)


def _ground_set(ctx, n, m_max, state_limit) -> list[Multispace]:
    return list(enumerate_multispaces_up_to(ctx, n, m_max, state_limit))


def _distance_matrix(elems: list[Multispace]) -> np.ndarray:
    v = len(elems)
    if v > DISTANCE_CACHE_LIMIT:
        raise LimitExceeded(f"{v} elements exceed the distance-matrix limit")
    d = np.zeros((v, v), dtype=np.int64)
    for i in range(v):
        for j in range(i + 1, v):
            d[i, j] = d[j, i] = distance(elems[i], elems[j])
    return d


def greedy_code(
    ctx: FieldCtx,
    n: int,
    m_max: int,
    d_min: int,
    seed: int = 0,
    state_limit: int | None = DEFAULT_STATE_LIMIT,
) -> MultispaceCode:
    """Greedy code construction, visiting high ranks first.

    Elements are taken rank m_max down to 0, with a seeded shuffle inside
    each rank level; an element is kept iff it is at distance >= d_min
    from everything kept so far, so the result always meets the d_min
    contract.  The descending-rank order makes the code size strictly
    increasing in m_max for d_min = 2 (a whole new top layer is mutually
    compatible and cannot conflict with anything two or more ranks
    below), which a shuffle across ranks does not guarantee.
    """
    if d_min < 1:
        raise ConfigInvalid("d_min must be >= 1")
    rng = np.random.default_rng(seed)
    kept: list[Multispace] = []
    for m in range(m_max, -1, -1):
        layer = list(enumerate_multispaces(ctx, n, m, state_limit))
        for idx in rng.permutation(len(layer)):
            w = layer[idx]
            if all(distance(w, k) >= d_min for k in kept):
                kept.append(w)
    kept.sort(key=lambda w: w.sort_key())
    return MultispaceCode(ctx, n, m_max, tuple(kept))


def exhaustive_optimal_code(
    ctx: FieldCtx,
    n: int,
    m_max: int,
    d_min: int,
    size_limit: int = 64,
) -> MultispaceCode:
    """Maximum-cardinality code by branch-and-bound max clique.

    The compatibility graph joins pairs at distance >= d_min; a code is
    exactly a clique.  Certified optimal; ground set capped at size_limit.
    """
    if d_min < 1:
        raise ConfigInvalid("d_min must be >= 1")
    elems = _ground_set(ctx, n, m_max, None)
    v = len(elems)
    if v > size_limit:
        raise LimitExceeded(f"ground set of {v} exceeds clique-search limit {size_limit}")
    dmat = _distance_matrix(elems)
    compat = [0] * v
    for i in range(v):
        mask = 0
        for j in range(v):
            if i != j and dmat[i, j] >= d_min:
                mask |= 1 << j
        compat[i] = mask
    best: list[int] = []

    def expand(current: list[int], candidates: int):
        nonlocal best
        if not candidates:
            if len(current) > len(best):
                best = current[:]
            return
        if len(current) + candidates.bit_count() <= len(best):
            return  # bound: cannot beat the incumbent
        while candidates:
            if len(current) + candidates.bit_count() <= len(best):
                return
            i = (candidates & -candidates).bit_length() - 1
            candidates &= candidates - 1
            expand(current + [i], candidates & compat[i])

    expand([], (1 << v) - 1)
    words = tuple(elems[i] for i in sorted(best))
    return MultispaceCode(ctx, n, m_max, words)


def ball(
    center: Multispace,
    radius: int,
    m_max: int,
    state_limit: int | None = DEFAULT_STATE_LIMIT,
) -> list[Multispace]:
    """All multispaces of rank <= m_max within lattice distance <= radius.

    Breadth-first search in the Hasse diagram truncated at rank m_max;
    cover steps have distance 1 and meets realize geodesics inside the
    truncation, so BFS depth equals the metric.
    """
    if center.rank > m_max:
        raise ConfigInvalid("center rank exceeds m_max")
    if state_limit is not None and center.ctx.q ** center.n > state_limit:
        raise LimitExceeded("ambient space exceeds the state limit")
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            neighbors = covered_neighbors(w)
            if w.rank < m_max:
                neighbors += covering_neighbors(w)
            for u in neighbors:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
        if not frontier:
            break
    return sorted(seen, key=lambda w: w.sort_key())


def ball_size(
    center: Multispace,
    radius: int,
    m_max: int,
    state_limit: int | None = DEFAULT_STATE_LIMIT,
) -> BigCount:
    return len(ball(center, radius, m_max, state_limit))


@dataclass(frozen=True)
class BallProfile:
    """A metric ball: its center, radius, and exact size."""

    center: Multispace
    radius: int
    size: BigCount


def ball_profile(
    center: Multispace,
    radius: int,
    m_max: int,
    state_limit: int | None = DEFAULT_STATE_LIMIT,
) -> BallProfile:
    return BallProfile(center, radius, ball_size(center, radius, m_max, state_limit))


def sphere_packing_bound(
    ctx: FieldCtx,
    n: int,
    m_max: int,
    d_min: int,
    state_limit: int | None = DEFAULT_STATE_LIMIT,
) -> BigCount:
    """Total space size over the smallest radius-floor((d_min-1)/2) ball.

    Ball sizes vary with the center (the lattice is not vertex-transitive
    across heights), so the minimum over all centers keeps the bound sound.
    """
    if d_min < 1:
        raise ConfigInvalid("d_min must be >= 1")
    radius = (d_min - 1) // 2
    elems = _ground_set(ctx, n, m_max, state_limit)
    total = len(elems)
    if radius == 0:
        return total
    smallest = min(ball_size(w, radius, m_max, state_limit) for w in elems)
    return total // smallest


def decode(code: MultispaceCode, received: Multispace) -> tuple[Multispace, int]:
    """Minimum-distance decoding; ties break by codeword order."""
    if len(code) == 0:
        raise EmptyCode("cannot decode against an empty code")
    received.ctx.check_same(code.ctx)
    if received.n != code.n:
        raise ConfigInvalid("received word has a different ambient dimension")
    best_w, best_d = None, None
    for w in code.codewords:
        d = distance(w, received)
        if best_d is None or d < best_d:
            best_w, best_d = w, d
    return best_w, int(best_d)


def codespace_growth(ctx: FieldCtx, n: int, m: int) -> BigCount:
    """Size of the rank-<=m code space: sum of the per-rank counts."""
    return sum(count_multispaces(n, j, ctx.q) for j in range(m + 1))
