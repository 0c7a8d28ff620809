"""Searching for multispace codes and comparing against the bounds.

Unlike subspace codes, the code space here is unbounded for fixed n and
q: allowing higher ranks keeps adding room.  The table below shows the
greedy construction, the certified optimum from the branch-and-bound
clique search (on instances small enough), and the sphere-packing upper
bound.
"""

from multispace import (
    codespace_growth,
    exhaustive_optimal_code,
    field,
    greedy_code,
    sphere_packing_bound,
)

F2 = field(2)

print("q=2, n=2, d_min=2: growing the rank budget m_max")
print(f"{'m_max':>6} {'space':>6} {'greedy':>7} {'optimal':>8} {'bound':>6}")
for m_max in range(2, 9):
    space = codespace_growth(F2, 2, m_max)
    g = len(greedy_code(F2, 2, m_max, 2, seed=0))
    opt = len(exhaustive_optimal_code(F2, 2, m_max, 2)) if space <= 64 else None
    b = sphere_packing_bound(F2, 2, m_max, 2)
    print(f"{m_max:>6} {space:>6} {g:>7} {str(opt) if opt else '-':>8} {b:>6}")
print("greedy sizes increase without bound; with fixed n and q no subspace code can do that")

print()
print("a sharper look at one instance: q=2, n=3, m_max=2")
for d_min in (1, 2, 3, 4):
    g = greedy_code(F2, 3, 2, d_min, seed=0)
    opt = exhaustive_optimal_code(F2, 3, 2, d_min)
    b = sphere_packing_bound(F2, 3, 2, d_min)
    verified = g.min_distance
    print(
        f"  d_min {d_min}: greedy {len(g)} (verified distance {verified}), "
        f"optimal {len(opt)}, packing bound {b}"
    )
