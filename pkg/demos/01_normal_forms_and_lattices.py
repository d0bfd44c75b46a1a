#!/usr/bin/env python3
"""Tour of the exact lattice layer: normal forms, indices, sublattices.

Everything runs over Python's arbitrary-precision integers; no floats
anywhere, so every printed value is exact.
"""

from orderkit.intmat import (
    IntMatrix,
    Lattice,
    enumerate_intermediate_lattices,
    hnf,
    lattice_index,
    snf,
)

# Hermite normal form: canonical representative of a row span.
m = IntMatrix([[1, 2], [3, 4]])
h, u = hnf(m)
print("matrix:        ", m.entries)
print("hermite form:  ", h.entries)
print("transform u:   ", u.entries, " (det", u.det(), ")")
print("u * m == h:    ", u * m == h)
print()

# Smith normal form: the invariant factors.  diag(2, 3) is secretly cyclic.
d, _, _ = snf(IntMatrix([[2, 0], [0, 3]]))
print("snf of diag(2,3):", d.entries, " -> the quotient group is Z/6")
print()

# Lattice indices.  [Z^2 : 2 Z^2] = 4, and the index is multiplicative.
z2 = Lattice.from_rows([[1, 0], [0, 1]])
print("[Z^2 : 2 Z^2] =", lattice_index(z2, z2.scale(2)))
skew = Lattice.from_rows([[2, 1], [0, 3]])
print("[Z^2 : <(2,1),(0,3)>] =", lattice_index(z2, skew))
print()

# Every lattice between 2 Z^2 and Z^2, exactly once.  The quotient is
# (Z/2)^2, whose subgroups number 1 + 3 + 1 = 5.
between = enumerate_intermediate_lattices(z2, z2.scale(2))
print(len(between), "lattices between 2 Z^2 and Z^2:")
for lat in between:
    print("  basis", lat.basis.entries, "/", lat.den)
print()

# A chain instead: subgroups of Z/4 form a chain of length 3.
z1 = Lattice.from_rows([[1]])
chain = enumerate_intermediate_lattices(z1, z1.scale(4))
print("lattices between 4Z and Z:", [lat.basis.entries for lat in chain])
