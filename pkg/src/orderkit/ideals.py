"""Fractional ideals of an order: arithmetic, classes, Picard group, monoid.

The class monoid C of an order is assembled constructively as
Pic * {classes with a representative between the conductor and the maximal
order}, then audited by a brute-force census of stable sublattices.  Class
identity for quadratic orders is decided through oriented binary quadratic
forms (see quadforms); a generic norm-constrained element search remains as
the fallback and as the oracle route in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import quadforms
from .errors import (
    FactorizationViolation,
    MethodDisagreement,
    NotFullRank,
    OrderMismatch,
    SearchBudgetExceeded,
    UnsupportedDegree,
)
from .intmat import Lattice, _det_bareiss, lattice_index
from .modular import factorize, kronecker, sqrts_mod
from .numberfield import FieldElement
from .orders import (
    Order,
    _lattice_times_element,
    conductor,
    fundamental_unit,
    maximal_order,
    torsion_units,
)


class FractionalIdeal:
    """A full-rank, order-stable lattice in the field of fractions."""

    __slots__ = ("order", "lattice")

    def __init__(self, order: Order, lattice: Lattice, check=True):
        if lattice.rank != order.degree:
            raise NotFullRank("a fractional ideal has full rank",
                              operation="FractionalIdeal")
        if check:
            elems = [order.field.element(r) for r in lattice.rows_q()]
            for g in order.basis_elements():
                for e in elems:
                    if not lattice.contains((g * e).coords):
                        raise ValueError("lattice is not stable under the order")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "lattice", lattice)

    def __setattr__(self, name, value):
        raise AttributeError("FractionalIdeal is immutable")

    def __eq__(self, other):
        return (isinstance(other, FractionalIdeal)
                and self.order == other.order and self.lattice == other.lattice)

    def __hash__(self):
        return hash((self.order, self.lattice))

    def __repr__(self):
        return f"FractionalIdeal({self.lattice!r})"

    def elements(self):
        return tuple(self.order.field.element(r) for r in self.lattice.rows_q())

    def scale(self, x) -> "FractionalIdeal":
        if isinstance(x, FieldElement):
            lat = _lattice_times_element(self.lattice, x, self.order.field)
        else:
            lat = self.lattice.scale(Fraction(x))
        return FractionalIdeal(self.order, lat, check=False)

    def norm_index(self) -> Fraction:
        """Generalized index [Gamma : I] (covolume ratio), a positive rational."""
        return _covolume(self.lattice) / _covolume(self.order.lattice)

    def is_integral(self):
        return self.order.lattice.contains_lattice(self.lattice)

    def primitive(self) -> "FractionalIdeal":
        """The scaling of I that is integral with coordinate content 1."""
        c = _rational_coords(self.order.lattice, self.lattice)
        den = 1
        for row in c:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        g = 0
        for row in c:
            for x in row:
                g = gcd(g, int(x * den))
        return self.scale(Fraction(den, g))


def _rational_coords(base: Lattice, lat: Lattice):
    from .intmat import solve_square
    sol = solve_square([list(r) for r in base.rows_q()],
                       [list(r) for r in lat.rows_q()])
    return sol


def _covolume(lat: Lattice) -> Fraction:
    d = _det_bareiss([list(r) for r in lat.basis.entries])
    return abs(Fraction(d, lat.den ** lat.dim))


def principal_ideal(order: Order, x: FieldElement) -> FractionalIdeal:
    return FractionalIdeal(order, order.lattice, check=False).scale(x)


def generated_ideal(order: Order, generators) -> FractionalIdeal:
    """The fractional ideal generated by finitely many nonzero elements."""
    rows = []
    for g in generators:
        for b in order.basis_elements():
            rows.append(list((g * b).coords))
    lat = Lattice.from_rows(rows, order.degree)
    return FractionalIdeal(order, lat, check=False)


def unit_ideal(order: Order) -> FractionalIdeal:
    return FractionalIdeal(order, order.lattice, check=False)


def ideal_product(i: FractionalIdeal, j: FractionalIdeal) -> FractionalIdeal:
    if i.order != j.order:
        raise OrderMismatch("ideals of different orders",
                            operation="ideal_product")
    rows = []
    for a in i.elements():
        for b in j.elements():
            rows.append(list((a * b).coords))
    return FractionalIdeal(i.order,
                           Lattice.from_rows(rows, i.order.degree),
                           check=False)


def colon_ideal(i: FractionalIdeal, j: FractionalIdeal) -> FractionalIdeal:
    """(I : J) = {x in L : x*J <= I}."""
    if i.order != j.order:
        raise OrderMismatch("ideals of different orders",
                            operation="colon_ideal")
    lat = None
    for b in j.elements():
        pre = _lattice_times_element(i.lattice, b.inverse(), i.order.field)
        lat = pre if lat is None else lat.intersect(pre)
    return FractionalIdeal(i.order, lat, check=False)


def is_invertible(i: FractionalIdeal) -> bool:
    """I is invertible iff I * (Gamma : I) = Gamma."""
    inv = colon_ideal(unit_ideal(i.order), i)
    return ideal_product(i, inv).lattice == i.order.lattice


# --- quadratic class identification ------------------------------------------


def oriented_basis(i: FractionalIdeal):
    """Basis (alpha, beta) oriented so same-lattice bases differ by SL2 only.

    Imaginary fields: the generator coordinate of beta/alpha is positive
    (upper half plane).  Real fields: sign(sigma1(alpha) sigma2(beta) -
    sigma2(alpha) sigma1(beta)) is pinned, which in coordinates is the sign
    of -v(beta/alpha) * N(alpha); scaling by a negative-norm element flips it,
    which is what sends the form (a, b, c) to (-a, b, -c).
    """
    a, b = i.elements()
    ratio = b / a
    if i.order.field.signature[0] == 0:
        if ratio.coords[1] < 0:
            b = -b
    else:
        if ratio.coords[1] * a.norm() > 0:
            b = -b
    return a, b


def ideal_form(i: FractionalIdeal):
    """Primitive integer form of the oriented basis of a quadratic ideal."""
    if i.order.degree != 2:
        raise UnsupportedDegree("forms need a quadratic order",
                                operation="ideal_form")
    a, b = oriented_basis(i)
    fa = a.norm()
    fc = b.norm()
    fb = (a + b).norm() - fa - fc
    den = 1
    for x in (fa, fb, fc):
        den = den * x.denominator // gcd(den, x.denominator)
    ia, ib, ic = int(fa * den), int(fb * den), int(fc * den)
    g = gcd(gcd(abs(ia), abs(ib)), abs(ic))
    return (ia // g, ib // g, ic // g)


def class_label(i: FractionalIdeal):
    """Canonical hashable label of the equivalence class of an ideal."""
    if i.order.degree == 1:
        return (1,)
    if i.order.degree == 2:
        return quadforms.class_label(ideal_form(i))
    raise UnsupportedDegree("class labels implemented for degree <= 2",
                            operation="class_label")


def _aligned_element(i: FractionalIdeal, j: FractionalIdeal):
    """x with j = x*i, found by aligning reduced forms; None if classes differ."""
    field = i.order.field
    ai, bi = oriented_basis(i)
    aj, bj = oriented_basis(j)
    fi, fj = ideal_form(i), ideal_form(j)
    reps_i = quadforms.reduced_reps_with_transforms(fi)
    reps_j = quadforms.reduced_reps_with_transforms(fj)
    by_form = {}
    for f, u, _sgn in reps_j:
        by_form.setdefault(f, []).append(u)
    for f, u, _sgn in reps_i:
        for uj in by_form.get(f, ()):  # matching canonical forms
            cand_i = ai * u[0][0] + bi * u[0][1]
            cand_j = aj * uj[0][0] + bj * uj[0][1]
            if cand_i.is_zero():
                continue
            x = cand_j / cand_i
            if i.scale(x).lattice == j.lattice:
                return x
    return None


def is_equivalent(i: FractionalIdeal, j: FractionalIdeal,
                  coefficient_budget=4000):
    """A nonzero x with J = x*I, or None when no such x exists.

    Quadratic orders are decided exactly through canonical forms; other
    degrees fall back to a norm-constrained search over (J : I) and report
    SearchBudgetExceeded rather than claiming inequivalence.
    """
    if i.order != j.order:
        raise OrderMismatch("ideals of different orders",
                            operation="is_equivalent")
    if i.lattice == j.lattice:
        return i.order.field.one()
    g = i.order.degree
    if g == 1:
        a = i.elements()[0]
        b = j.elements()[0]
        return b / a
    if g == 2:
        if class_label(i) != class_label(j):
            return None
        x = _aligned_element(i, j)
        if x is None:
            raise AssertionError(
                "equal class labels but alignment failed; this is a bug")
        return x
    return _search_equivalence(i, j, coefficient_budget)


def _search_equivalence(i, j, budget):
    """Generic route: x in (J : I) with |N(x)| = covolume ratio, box search."""
    ratio = j.norm_index() / i.norm_index()
    col = colon_ideal(j, i)
    basis = col.elements()
    g = i.order.degree
    radius = 4
    tested = 0
    while radius <= 64:
        for combo in itertools.product(range(-radius, radius + 1), repeat=g):
            if all(c == 0 for c in combo):
                continue
            tested += 1
            if tested > budget * 8:
                raise SearchBudgetExceeded("equivalence search budget exhausted",
                                           operation="is_equivalent")
            x = i.order.field.zero()
            for c, b in zip(combo, basis):
                x = x + b * c
            if x.is_zero() or abs(x.norm()) != ratio:
                continue
            if i.scale(x).lattice == j.lattice:
                return x
        radius *= 2
        if i.order.field.signature[0] == 0 and g == 2:
            break  # imaginary quadratic: the first ball is already complete
    if i.order.field.signature == (0, 1):
        return None
    raise SearchBudgetExceeded(
        "cannot certify inequivalence for this signature",
        operation="is_equivalent")


def equivalence_bruteforce(i: FractionalIdeal, j: FractionalIdeal, radius=30):
    """Oracle: exhaustive small-element scaling search, no theory involved."""
    basis = colon_ideal(j, i).elements()
    g = i.order.degree
    for combo in itertools.product(range(-radius, radius + 1), repeat=g):
        if all(c == 0 for c in combo):
            continue
        x = i.order.field.zero()
        for c, b in zip(combo, basis):
            x = x + b * c
        if x.is_zero():
            continue
        if i.scale(x).lattice == j.lattice:
            return x
    return None


# --- class sets ---------------------------------------------------------------


@dataclass(frozen=True)
class IdealClass:
    representative: FractionalIdeal
    invertible: bool
    label: tuple

    def __repr__(self):
        return f"IdealClass(label={self.label}, invertible={self.invertible})"


def _make_class(rep: FractionalIdeal) -> IdealClass:
    rep = rep.primitive()
    return IdealClass(rep, is_invertible(rep), class_label(rep))


def intermediate_classes(gamma: Order, maximal: Order | None = None,
                         max_index=100_000, lower_ideal=None):
    """The classes with a representative I satisfying f <= I <= O_L.

    ``lower_ideal`` optionally replaces the conductor by a smaller ideal of
    the maximal order contained in the order; the resulting class set only
    grows, and the product decomposition still holds.  The conductor is the
    minimal choice and the default.
    """
    if maximal is None:
        maximal = maximal_order(gamma.field)
    from .intmat import enumerate_intermediate_lattices
    f = conductor(gamma, maximal)
    lower = f.lattice
    if lower_ideal is not None:
        lower = (lower_ideal.lattice if isinstance(lower_ideal, FractionalIdeal)
                 else lower_ideal)
        if not gamma.lattice.contains_lattice(lower):
            raise OrderMismatch("replacement ideal must sit inside the order",
                                operation="intermediate_classes")
        if not _is_stable(maximal, lower):
            raise OrderMismatch("replacement ideal must be stable under the "
                                "maximal order", operation="intermediate_classes")
    lattices = enumerate_intermediate_lattices(maximal.lattice, lower,
                                               max_index=max_index)
    classes = {}
    for lat in lattices:
        if not _is_stable(gamma, lat):
            continue
        ideal = FractionalIdeal(gamma, lat, check=False)
        lab = class_label(ideal)
        if lab not in classes:
            classes[lab] = _make_class(ideal)
    out = sorted(classes.values(), key=lambda c: c.label)
    if lower_ideal is None:
        assert len(out) <= f.norm ** gamma.degree, \
            "intermediate class count exceeded N(f)^g"
    return out


def _is_stable(gamma: Order, lat: Lattice) -> bool:
    elems = [gamma.field.element(r) for r in lat.rows_q()]
    for g in gamma.basis_elements():
        for e in elems:
            if not lat.contains((g * e).coords):
                return False
    return True


@dataclass(frozen=True)
class PicardGroup:
    classes: tuple
    order: int
    h_formula: int
    h_maximal: int
    conductor_norm: int


def class_number_formula(gamma: Order) -> int:
    """|Pic(Gamma)| by the classical index formula for quadratic orders:

        h(Gamma) = h(O) * prod_{p | f} p^(e_p - 1) (p - (d0/p)) / [O^x : Gamma^x]

    with f the integer conductor [O : Gamma] and d0 the field discriminant.
    """
    if gamma.degree == 1:
        return 1
    if gamma.degree != 2:
        raise UnsupportedDegree("index formula needs a quadratic order",
                                operation="class_number_formula")
    om = maximal_order(gamma.field)
    d0 = om.disc()
    h0 = quadforms.form_class_count(d0)
    f_idx = lattice_index(om.lattice, gamma.lattice)
    num = h0
    for p, e in factorize(f_idx).items():
        num *= p ** (e - 1) * (p - kronecker(d0, p))
    u_idx = _unit_index(gamma, om)
    assert num % u_idx == 0, "index formula gave a non-integer"
    return num // u_idx


def _unit_index(gamma: Order, om: Order) -> int:
    if gamma.field.signature == (2, 0):
        eps = fundamental_unit(om)
        power = eps
        k = 1
        while not gamma.contains(power):
            power = power * eps
            k += 1
        return k
    return len(torsion_units(om)) // len(torsion_units(gamma))


def picard_group(gamma: Order) -> PicardGroup:
    """Pic(Gamma) computed two ways and cross-checked.

    (a) enumeration of invertible primitive stable ideals up to the reduced-
    form norm bound, grouped by class; (b) the index formula relating
    |Pic(Gamma)| to the class number of the maximal order.  A mismatch is an
    implementation bug, reported as MethodDisagreement.
    """
    if gamma.degree == 1:
        cls = _make_class(unit_ideal(gamma))
        return PicardGroup((cls,), 1, 1, 1, 1)
    if gamma.degree != 2:
        raise UnsupportedDegree("picard_group implemented for degree <= 2",
                                operation="picard_group")
    om = maximal_order(gamma.field)
    d = gamma.disc()
    nf = conductor(gamma, om).norm
    bound = isqrt(abs(d)) + 1
    found = {}
    for a, b in _stable_ideal_pairs(gamma, bound):
        ideal = _standard_ideal(gamma, a, b)
        if not is_invertible(ideal):
            continue
        lab = class_label(ideal)
        if lab not in found:
            found[lab] = _make_class(ideal)
    classes = sorted(found.values(), key=lambda c: c.label)
    h_formula = class_number_formula(gamma)
    if len(classes) != h_formula:
        raise MethodDisagreement(
            f"picard enumeration found {len(classes)} classes, formula "
            f"says {h_formula}", operation="picard_group")
    # group sanity: closed under products, with inverses
    labels = set(found)
    principal = class_label(unit_ideal(gamma))
    for c1 in classes:
        has_inverse = False
        for c2 in classes:
            lab = class_label(ideal_product(c1.representative,
                                            c2.representative))
            if lab not in labels:
                raise MethodDisagreement("picard classes not closed under "
                                         "products", operation="picard_group")
            if lab == principal:
                has_inverse = True
        if not has_inverse:
            raise MethodDisagreement("picard class without inverse",
                                     operation="picard_group")
    h0 = quadforms.form_class_count(om.disc())
    return PicardGroup(tuple(classes), len(classes), h_formula, h0, nf)


def _standard_ideal(gamma: Order, a: int, b: int) -> FractionalIdeal:
    """The stable lattice Z*a + Z*(b + omega) as a fractional ideal."""
    w = gamma.omega()
    one = gamma.field.one()
    rows = [list((one * a).coords), list((one * b + w).coords)]
    return FractionalIdeal(gamma, Lattice.from_rows(rows, 2), check=False)


def _stable_ideal_pairs(gamma: Order, bound):
    """(a, b) with 0 <= b < a <= bound and a | N(b + omega): the primitive
    stable sublattices of the order, enumerated by solving the congruence
    (2b + t)^2 = disc mod 4a."""
    t, n = gamma.omega_data()
    d = t * t - 4 * n
    for a in range(1, bound + 1):
        seen = set()
        for y in sqrts_mod(d, 4 * a):
            if (y - t) % 2:
                continue
            b = ((y - t) // 2) % a
            if b in seen:
                continue
            seen.add(b)
            yield a, b


# --- the class monoid -----------------------------------------------------------


@dataclass(frozen=True)
class ClassMonoid:
    order: Order
    classes: tuple            # IdealClass, identity first
    table: tuple              # table[i][j] = index of class of product
    picard_subset: tuple      # indices of invertible classes
    intermediate_subset: tuple  # indices of classes meeting {f <= I <= O_L}
    conductor_norm: int
    maximal_class_number: int
    census_checked: int       # stable primitive ideals audited
    census_budget: int

    @property
    def size(self):
        return len(self.classes)

    def locate(self, ideal: FractionalIdeal) -> int:
        lab = class_label(ideal)
        for idx, c in enumerate(self.classes):
            if c.label == lab:
                return idx
        raise FactorizationViolation(
            "ideal class outside Pic * intermediate set",
            operation="class_monoid")


def class_monoid(gamma: Order, census_budget_factor=16,
                 max_index=100_000) -> ClassMonoid:
    """C = Pic * {intermediate classes}, audited by a stable-sublattice census.

    The census enumerates every primitive stable sublattice of index up to
    N(f)^2 * census_budget_factor and verifies each lands in an assembled
    class, and that every assembled class is hit: the executable form of the
    product decomposition, with FactorizationViolation as the fatal signal.
    """
    if gamma.degree == 1:
        cls = _make_class(unit_ideal(gamma))
        return ClassMonoid(gamma, (cls,), ((0,),), (0,), (0,), 1, 1, 1, 1)
    if gamma.degree != 2:
        raise UnsupportedDegree("class_monoid implemented for degree <= 2",
                                operation="class_monoid")
    om = maximal_order(gamma.field)
    nf = conductor(gamma, om).norm
    pic = picard_group(gamma)
    inter = intermediate_classes(gamma, om, max_index=max_index)

    assembled = {}
    identity_label = class_label(unit_ideal(gamma))
    for p in pic.classes:
        for i in inter:
            prod = ideal_product(p.representative, i.representative)
            lab = class_label(prod)
            if lab not in assembled:
                assembled[lab] = _make_class(prod)
    # identity first, rest ordered by label
    rest = sorted((lab for lab in assembled if lab != identity_label))
    ordering = [identity_label] + rest
    classes = tuple(assembled[lab] for lab in ordering)
    index_of = {lab: i for i, lab in enumerate(ordering)}

    g = gamma.degree
    if not len(inter) <= nf ** g:
        raise FactorizationViolation("intermediate set exceeded N(f)^g",
                                     operation="class_monoid")

    # multiplication table; any product escaping the set is a violation
    table = []
    for ci in classes:
        row = []
        for cj in classes:
            lab = class_label(ideal_product(ci.representative,
                                            cj.representative))
            if lab not in index_of:
                raise FactorizationViolation(
                    "product of classes left the assembled monoid",
                    operation="class_monoid")
            row.append(index_of[lab])
        table.append(tuple(row))

    picard_subset = tuple(i for i, c in enumerate(classes) if c.invertible)
    inter_labels = {c.label for c in inter}
    intermediate_subset = tuple(i for i, lab in enumerate(ordering)
                                if lab in inter_labels)

    # census audit
    budget = nf * nf * census_budget_factor
    form_to_class = {}
    for idx, c in enumerate(classes):
        for f in quadforms.class_forms(ideal_form(c.representative)):
            prev = form_to_class.setdefault(f, idx)
            if prev != idx:
                raise MethodDisagreement(
                    "two distinct classes share a canonical form",
                    operation="class_monoid")
    t, n = gamma.omega_data()
    # Census bases (a, b + omega) are anti-oriented for real fields: the
    # oriented form flips the middle coefficient there.
    mid_sign = -1 if gamma.field.signature[0] == 2 else 1
    hit = set()
    checked = 0
    for a, b in _stable_ideal_pairs(gamma, budget):
        checked += 1
        idx = _classify_form(a, mid_sign * (2 * b + t),
                             (b * b + t * b + n) // a, form_to_class)
        if idx is None:
            raise FactorizationViolation(
                f"census ideal [{a}, {b} + w] is in no assembled class",
                operation="class_monoid")
        hit.add(idx)
    if hit != set(range(len(classes))):
        missing = sorted(set(range(len(classes))) - hit)
        raise FactorizationViolation(
            f"assembled classes {missing} were never found by the census",
            operation="class_monoid")

    monoid = ClassMonoid(gamma, classes, tuple(table), picard_subset,
                         intermediate_subset, nf, pic.h_maximal,
                         checked, budget)
    _check_monoid_laws(monoid)
    return monoid


def _classify_form(fa, fb, fc, form_to_class):
    g = gcd(gcd(abs(fa), abs(fb)), abs(fc))
    f = (fa // g, fb // g, fc // g)
    red, _ = quadforms.reduce_form(f)
    return form_to_class.get(red)


def _check_monoid_laws(monoid: ClassMonoid):
    """Identity, commutativity, associativity of the multiplication table."""
    n = monoid.size
    t = monoid.table
    for i in range(n):
        if t[0][i] != i or t[i][0] != i:
            raise FactorizationViolation("identity row/column corrupt",
                                         operation="class_monoid")
        for j in range(n):
            if t[i][j] != t[j][i]:
                raise FactorizationViolation("table not commutative",
                                             operation="class_monoid")
            for k in range(n):
                if t[t[i][j]][k] != t[i][t[j][k]]:
                    raise FactorizationViolation("table not associative",
                                                 operation="class_monoid")
    for idx in monoid.picard_subset:
        if 0 not in [t[idx][j] for j in monoid.picard_subset]:
            raise FactorizationViolation("picard subset is not a group",
                                         operation="class_monoid")


def verify_monoid_table(monoid: ClassMonoid):
    """Recompute every table entry from the representatives; raises on mismatch.

    This is the hook the fault-injection negative control goes through."""
    for i, ci in enumerate(monoid.classes):
        for j, cj in enumerate(monoid.classes):
            lab = class_label(ideal_product(ci.representative,
                                            cj.representative))
            if monoid.classes[monoid.table[i][j]].label != lab:
                raise FactorizationViolation(
                    f"table entry ({i},{j}) does not match its recomputed "
                    f"product", operation="verify_monoid_table")
    _check_monoid_laws(monoid)
