#!/usr/bin/env python3
"""Unit groups of quadratic orders and the square-class bound.

Real quadratic units come from the continued-fraction cycle of the principal
form (the classical Pell machinery); imaginary ones are roots of unity.
Either way the square-class quotient never exceeds 2^g = 4.
"""

from orderkit import quadforms
from orderkit.numberfield import make_field
from orderkit.orders import is_order, maximal_order, unit_square_quotient

print("fundamental solutions of t^2 - D u^2 = +-4 from the form cycle:")
print("   D      t          u        norm")
for d in (5, 8, 13, 40, 61, 124, 136, 193):
    t, u = quadforms.fundamental_unit_xy(d)
    sign = t * t - d * u * u
    print(f"  {d:>3} {t:>10} {u:>10}   {sign // 4:+d}")
print()

print("unit data per order (torsion, fundamental unit, |U/U^2|):")
cases = [
    ("Z[i]", [1, 0, 1], None),
    ("Z[omega]", [3, 0, 1], "max"),
    ("Z[sqrt -3]", [3, 0, 1], [[1, 0], [0, 1]]),
    ("Z[sqrt -5]", [5, 0, 1], None),
    ("Z[sqrt 2]", [-2, 0, 1], None),
    ("Z[3 sqrt 2]", [-2, 0, 1], [[1, 0], [0, 3]]),
    ("O(disc 5)", [-5, 0, 1], None),
]
for name, coeffs, basis in cases:
    field = make_field(coeffs)
    if basis is None or basis == "max":
        gamma = maximal_order(field)
    else:
        gamma = is_order(field, basis)
    data = unit_square_quotient(gamma)
    eps = data.fundamental_unit
    eps_text = "-" if eps is None else f"{eps.coords[0]} + {eps.coords[1]} x"
    print(f"  {name:12} torsion {data.torsion_order}   eps = {eps_text:18} "
          f"|U/U^2| = {data.square_class_count} <= 4")
print()

# The suborder Z[3 sqrt 2] only sees a power of the fundamental unit:
# (1 + sqrt 2)^4 = 17 + 12 sqrt 2 is the first power with coordinates in it.
field = make_field([-2, 0, 1])
gamma = is_order(field, [[1, 0], [0, 3]])
eps = unit_square_quotient(gamma).fundamental_unit
print(f"smallest power of 1 + sqrt(2) landing in Z[3 sqrt 2]: "
      f"{eps.coords[0]} + {eps.coords[1]} sqrt(2), norm {eps.norm()}")
