#!/usr/bin/env python3
"""The class monoid of a non-maximal order, assembled and audited.

Fractional ideals of an order form a commutative monoid under multiplication
once you pass to equivalence classes; the invertible ones are the Picard
group.  The monoid decomposes as Pic times the classes squeezed between the
conductor and the maximal order, and a brute-force census of stable
sublattices confirms nothing was missed.
"""

from orderkit.ideals import (
    class_monoid,
    intermediate_classes,
    is_invertible,
    picard_group,
)
from orderkit.numberfield import make_field
from orderkit.orders import is_order, maximal_order


def tour(coeffs, basis, name):
    field = make_field(coeffs)
    gamma = is_order(field, basis) if basis else maximal_order(field)
    print(f"=== {name} (disc {gamma.disc()}) ===")
    pic = picard_group(gamma)
    print(f"Pic: order {pic.order}  (index formula agrees: {pic.h_formula})")
    inter = intermediate_classes(gamma)
    print(f"classes between conductor and maximal order: {len(inter)}")
    monoid = class_monoid(gamma)
    print(f"class monoid size {monoid.size}; conductor norm "
          f"{monoid.conductor_norm}; census audited {monoid.census_checked} "
          f"stable sublattices")
    for idx, c in enumerate(monoid.classes):
        tag = "invertible" if c.invertible else "NOT invertible"
        print(f"  class {idx}: rep basis {c.representative.lattice.basis.entries}"
              f" / {c.representative.lattice.den}  ({tag})")
    print("multiplication table:")
    for row in monoid.table:
        print("   ", list(row))
    print()


# Z[sqrt -3]: index 2 inside the maximal order; the conductor-type ideal
# 2Z + (1 + sqrt-3)Z is the classic non-invertible example.
tour([3, 0, 1], [[1, 0], [0, 1]], "Z[sqrt -3]")

# Z[3i]: Picard group of order 2 and a non-invertible class on top.
tour([1, 0, 1], [[1, 0], [0, 3]], "Z[3i]")

# A maximal order for contrast: the monoid IS the class group.
tour([5, 0, 1], None, "Z[sqrt -5] (maximal, h = 2)")

# And a real quadratic suborder.
tour([-2, 0, 1], [[1, 0], [0, 3]], "Z[3 sqrt 2]")
