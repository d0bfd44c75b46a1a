#!/usr/bin/env python3
"""The explicit bound formulas, evaluated exactly or as certified logs.

Numbers like 2^(8^8) cannot be printed, but their digit counts can be
certified by directed-rounding logarithms, so monotonicity and comparisons
stay rigorous.
"""

from orderkit.bounds import (
    SIntegerSpec,
    cor_p1n,
    e_exponent,
    es_gl2_bounds,
    level_structure_bounds,
    thm_a_height,
    thm_b,
    thm_endobound,
    thm_main_count,
    thm_main_height,
)

empty = SIntegerSpec(())
s23 = SIntegerSpec((2, 3))

print("height bounds (3g)^(144g) N^24:")
for g in (1, 2, 3):
    b = thm_main_height(g, empty)
    print(f"  g={g}: {b.digit_count} digits   log10 = {b.log10}")
print()

print("the cubic-equation instance: nu = 6a with a = 1")
b = thm_a_height(1, 6, empty)
print(f"  3^144 * 6^24 = {b.exact_value}")
print(f"  ({b.digit_count} digits)")
print()

print("count bounds with e_g = (8g)^8:")
for g in (1, 2):
    print(f"  e_{g} = {e_exponent(g)}")
head, sharp = thm_main_count(1, empty, 1, 1)
print(f"  g=1 headline (2N)^e_1: {head.digit_count} digits")
print(f"  g=1 sharper version:   {sharp.digit_count} digits "
      f"(certified smaller: {sharp.certified_le(head)})")
head2, _ = thm_main_count(2, empty, 1, 1)
print(f"  g=2 headline: {head2.digit_count} digits (log form only)")
print()

print("uniform bounds for the rank-2-type class at g=1, primes {2,3}:")
h, c, iso = es_gl2_bounds(1, s23)
for name, b in (("height", h), ("count", c), ("isogeny degree", iso)):
    print(f"  {name:15} {b.digit_count:>9} digits")
print()

print("structure-count bound d^((2g+1)g) N(f)^(g+1) h l:")
b = thm_endobound(1, empty, 1, 1, 1)
print(f"  g=1 uniform d: {b.digit_count} digits")
b = thm_endobound(2, empty, 4, 1, 2, d_override=1)
print(f"  g=2 with minimal isogeny degree 1, N(f)=4, l=2: exactly "
      f"{b.exact_value}")
print()

print("exact-order torsion level, norm n = 5, g = 1:")
hh, cc = cor_p1n(1, 5, empty, 1)
print(f"  height {hh.digit_count} digits; count {cc.digit_count} digits")
print(f"  level-structure count bounds: principal n^(4g) = "
      f"{level_structure_bounds('principal_n', 5, 1)}, exact-order n^(2g) = "
      f"{level_structure_bounds('p1_n', 5, 1)}, cubic family = "
      f"{level_structure_bounds('mordell_a')}")
print()

print("uniform structure-count bound for the maximal order (g=1, S={3}):")
tb = thm_b(1, SIntegerSpec((3,)), 1)
print(f"  6^(8^8): {tb.digit_count} digits")

print()
print("an unbounded level count propagates: no finite count bound,")
print("but the height bound still evaluates:")
none_head, _ = thm_main_count(1, empty, 1, None)
print(f"  count bound: {none_head}   height: "
      f"{thm_main_height(1, empty).digit_count} digits")
