"""Multispaces as root multisets of linearized polynomials.

Identify GF(2)^3 with GF(8).  Each multispace W corresponds to the
polynomial prod_{v in W} (x - v): the expansion only has monomials at
2-power degrees, and factoring it back recovers W exactly, height and
all.
"""

from multispace import (
    Multispace,
    Subspace,
    enumerate_multispaces,
    field,
    poly_from_multispace,
    roots_multiset,
)

F2 = field(2)

print("== small examples ==")
for w in [
    Multispace.bottom(F2, 3),
    Multispace(Subspace.zero(F2, 3), 1),
    Multispace(Subspace.from_array(F2, 3, [[1, 0, 0]]), 0),
    Multispace(Subspace.from_array(F2, 3, [[1, 0, 0], [0, 1, 0]]), 1),
]:
    L = poly_from_multispace(w)
    print(f"dim {w.dim} ht {w.height}  ->  {L.text()}")
    assert roots_multiset(L) == w

print()
print("== the correspondence is a bijection on every rank level ==")
for m in range(0, 6):
    count = 0
    for w in enumerate_multispaces(F2, 3, m):
        assert roots_multiset(poly_from_multispace(w)) == w
        count += 1
    print(f"rank {m}: {count} multispaces round-trip")

print()
print("== coefficients can live in a subfield ==")
w = Multispace(Subspace.from_array(F2, 3, [[1, 0, 0]]), 0)
L = poly_from_multispace(w)
print(f"{L.text()}  has coefficients in GF(2^{L.coefficient_subfield_degree()})")
