"""Shared brute-force poset oracles for the lattice test suites."""

import numpy as np

from multispace.lattice import (
    Multispace,
    VectorMultiset,
    distance,
    enumerate_multispaces_up_to,
    multiset_leq,
)
from multispace.linalg import Subspace


def poset_elements(ctx, n, m_max):
    return list(enumerate_multispaces_up_to(ctx, n, m_max))


def leq_matrix(elems):
    v = len(elems)
    leq = np.zeros((v, v), dtype=bool)
    for i in range(v):
        for j in range(v):
            leq[i, j] = multiset_leq(elems[i], elems[j])
    return leq


def cover_matrix(leq):
    """cover[i, j] iff j covers i: i < j with nothing strictly between."""
    lt = leq & ~np.eye(len(leq), dtype=bool)
    between = lt @ lt  # i < k < j for some k
    return lt & ~between


def brute_glb(leq, i, j):
    """Index of the greatest lower bound, or None if it does not exist."""
    lowers = np.nonzero(leq[:, i] & leq[:, j])[0]
    for l in lowers:
        if all(leq[c, l] for c in lowers):
            return int(l)
    return None


def brute_lub(leq, i, j):
    uppers = np.nonzero(leq[i, :] & leq[j, :])[0]
    for u in uppers:
        if all(leq[u, c] for c in uppers):
            return int(u)
    return None


def bfs_distances(adj):
    v = len(adj)
    dist = np.full((v, v), -1, dtype=np.int64)
    for s in range(v):
        dist[s, s] = 0
        frontier = np.zeros(v, dtype=bool)
        frontier[s] = True
        seen = frontier.copy()
        d = 0
        while frontier.any():
            nxt = adj[frontier].any(axis=0) & ~seen
            d += 1
            dist[s, nxt] = d
            seen |= nxt
            frontier = nxt
    return dist


def random_multiset(ctx, n, m, rng) -> VectorMultiset:
    return VectorMultiset(ctx, n, rng.integers(0, ctx.q, size=(m, n)))


def random_multispace(ctx, n, rng, max_height=3) -> Multispace:
    rows = rng.integers(0, ctx.q, size=(rng.integers(0, n + 1), n))
    return Multispace(Subspace.from_array(ctx, n, rows), int(rng.integers(0, max_height + 1)))
