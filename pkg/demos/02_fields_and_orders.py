#!/usr/bin/env python3
"""Number fields and their orders: signatures, conductors, scaled subrings."""

from orderkit.numberfield import embedding_count, make_field, normal_closure_degree
from orderkit.orders import (
    conductor,
    conductor_comparison_check,
    is_order,
    maximal_order,
    scaled_subring,
)

# Fields are defined by monic integer polynomials, constant term first.
qi = make_field([1, 0, 1])        # x^2 + 1
r2 = make_field([-2, 0, 1])       # x^2 - 2
cubic = make_field([-1, -3, 0, 1])  # x^3 - 3x - 1, Galois over Q

for f, name in ((qi, "Q(i)"), (r2, "Q(sqrt 2)"), (cubic, "x^3-3x-1")):
    print(f"{name:12} degree {f.degree}  signature {f.signature}  "
          f"poly disc {f.poly_disc}")
print()

# Self-embeddings count the automorphisms the field can see.
print("ring morphisms Q(i) -> Q(i):", embedding_count(qi, qi))
print("ring morphisms of the Galois cubic into itself:",
      embedding_count(cubic, cubic))
print("normal closure degree of the cubic:", normal_closure_degree(cubic))
print()

# Orders: the maximal one, and a subring of conductor 2.
om = maximal_order(qi)
z2i = is_order(qi, [[1, 0], [0, 2]])     # Z[2i]
print("disc Z[i]  =", om.disc())
print("disc Z[2i] =", z2i.disc())

cond = conductor(z2i, om)
print("conductor of Z[2i]: basis", cond.lattice.basis.entries,
      " norm", cond.norm)
print()

# Z[d Gamma] and the conductor comparison: d*f <= f' and N(f') <= d^g N(f).
print("Z[2 Z[i]] == Z[2i]:", scaled_subring(om, 2) == z2i)
for d in (1, 2, 3):
    rep = conductor_comparison_check(om, d)
    print(f"d={d}: N(f)={rep.norm_f}  N(f')={rep.norm_f_prime}  "
          f"d.f in f': {rep.scaling_contained}  "
          f"N(f') <= d^g N(f): {rep.norm_bound_holds}")
