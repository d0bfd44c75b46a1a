#!/usr/bin/env python3
"""Ideal classes versus integer matrix conjugacy.

A ring morphism from a quadratic order into M_2(Z), taken up to GL_2(Z)
conjugation, is the same data as an ideal class: the matrix is
multiplication by the generator on a lattice basis.  The package counts
structures through ideal classes; an entirely independent bounded-entry
matrix search lands on the same numbers.
"""

from orderkit.gamma_structures import (
    MatrixOrder,
    centralizer_dimension,
    count_conjugacy_classes_bruteforce,
    count_structures,
    structure_to_ideal_class,
    structures_from_ideal_classes,
)
from orderkit.ideals import class_monoid
from orderkit.numberfield import RATIONAL_FIELD, make_field
from orderkit.orders import maximal_order

target = MatrixOrder(RATIONAL_FIELD, 2)

for m in (5, 1, 23):
    field = make_field([m, 0, 1])
    gamma = maximal_order(field)
    monoid = class_monoid(gamma)
    res = count_structures(gamma, target, monoid)
    brute, reps = count_conjugacy_classes_bruteforce(0, m, 10)
    print(f"x^2 + {m}: ideal-class route {res.count} structures "
          f"(bound {res.bound}); matrix search over entries <= 10 "
          f"finds {brute} conjugacy classes")
    for s in structures_from_ideal_classes(gamma, target, 0, monoid):
        mat = [[int(x.coords[0]) for x in row]
               for row in s.representative.images[1]]
        back, _ = structure_to_ideal_class(s.representative, monoid)
        print(f"   class {s.ideal_class_index}: generator acts as {mat}; "
              f"round-trip lands on class {back}; centralizer dim "
              f"{centralizer_dimension(s.representative)}")
    print()

# The two embeddings of Q(i) into itself give two inequivalent structures
# on the 1x1 matrix ring over Z[i]: conjugation cannot undo complex
# conjugation.
qi = make_field([1, 0, 1])
zi = maximal_order(qi)
res = count_structures(zi, MatrixOrder(qi, 1))
print(f"Z[i] into M_1(Z[i]): {res.count} structures across "
      f"{res.embedding_count} embeddings (bound {res.bound})")
