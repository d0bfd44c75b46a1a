import random
from collections import deque
from math import isqrt

from orderkit import quadforms as qf


def random_form(rng, definite):
    while True:
        a = rng.randint(1, 12)
        b = rng.randint(-12, 12)
        if definite:
            # force b^2 - 4ac < 0
            c = rng.randint((b * b) // (4 * a) + 1, (b * b) // (4 * a) + 12)
        else:
            c = rng.randint(-12, -1)
        d = b * b - 4 * a * c
        if definite and d < 0:
            return (a, b, c)
        if not definite and d > 0 and isqrt(d) ** 2 != d:
            return (a, b, c)


def test_definite_reduction_properties():
    rng = random.Random(3)
    for _ in range(200):
        f = random_form(rng, definite=True)
        red, u = qf.reduce_definite(f)
        assert qf.apply_baschange(f, u) == red
        assert u[0][0] * u[1][1] - u[0][1] * u[1][0] == 1
        a, b, c = red
        assert -a < b <= a <= c
        if a == c:
            assert b >= 0
        # idempotent
        red2, _ = qf.reduce_definite(red)
        assert red2 == red


def test_indefinite_reduction_properties():
    rng = random.Random(7)
    for _ in range(200):
        f = random_form(rng, definite=False)
        red, u = qf.reduce_indefinite(f)
        assert qf.apply_baschange(f, u) == red
        assert u[0][0] * u[1][1] - u[0][1] * u[1][0] == 1
        assert qf.is_reduced_indefinite(red)
        cyc, aut = qf.cycle_of(red)
        for g, w in cyc:
            assert qf.is_reduced_indefinite(g)
            assert qf.apply_baschange(red, w) == g
        # the period transform is an automorph
        assert qf.apply_baschange(red, aut) == red


def sl2_class_count(d, cap=400):
    """Oracle: SL2 orbits of reduced forms by breadth-first generator search."""
    if d < 0:
        return len(qf.reduced_definite_forms(d))
    forms = qf.reduced_indefinite_forms(d)
    gens = (((0, 1), (-1, 0)), ((1, 0), (1, 1)), ((1, 0), (-1, 1)))
    orbits = []
    done = set()
    for f0 in forms:
        if f0 in done:
            continue
        seen = {f0}
        hits = set()
        queue = deque([f0])
        while queue:
            f = queue.popleft()
            if qf.is_reduced_indefinite(f):
                hits.add(f)
            for m in gens:
                g = qf.apply_baschange(f, m)
                if g not in seen and all(abs(x) <= cap for x in g):
                    seen.add(g)
                    queue.append(g)
        orbits.append(hits)
        done.update(hits)
    return len(orbits)


def plain_class_count_oracle(d):
    """Oracle for the plain (any-scalar) class count: SL2 orbits merged by
    the negative-norm-scaling involution f -> (-a, b, -c)."""
    if d < 0:
        return len(qf.reduced_definite_forms(d))
    forms = qf.reduced_indefinite_forms(d)
    gens = (((0, 1), (-1, 0)), ((1, 0), (1, 1)), ((1, 0), (-1, 1)))

    def orbit(f0, cap=400):
        seen = {f0}
        hits = set()
        queue = deque([f0])
        while queue:
            f = queue.popleft()
            if qf.is_reduced_indefinite(f):
                hits.add(f)
            for m in gens:
                g = qf.apply_baschange(f, m)
                if g not in seen and all(abs(x) <= cap for x in g):
                    seen.add(g)
                    queue.append(g)
        return frozenset(hits)

    classes = []
    done = set()
    for f in forms:
        if f in done:
            continue
        o = orbit(f)
        a, b, c = f
        o = o | orbit((-a, b, -c))
        classes.append(o)
        done.update(o)
    return len(classes)


def test_cycles_are_sl2_classes():
    for d in (5, 8, 13, 40, 60, 136, 145):
        forms = qf.reduced_indefinite_forms(d)
        cycles = []
        done = set()
        for f in forms:
            if f in done:
                continue
            cyc, _ = qf.cycle_of(f)
            members = {g for g, _ in cyc}
            cycles.append(members)
            done.update(members)
        assert len(cycles) == sl2_class_count(d), d
        # each cycle is one orbit: members never straddle two cycles
        for m1 in cycles:
            for m2 in cycles:
                assert m1 == m2 or not (m1 & m2)


def test_class_counts_match_oracle():
    for d in (-3, -4, -7, -8, -11, -15, -20, -23, -24, -36, -47, -108,
              5, 8, 12, 13, 17, 40, 60, 65, 85, 104, 136, 145):
        assert qf.form_class_count(d) == plain_class_count_oracle(d), d


def test_class_label_consistency():
    rng = random.Random(19)
    for _ in range(60):
        f = random_form(rng, definite=rng.random() < 0.5)
        # label is invariant along the class construction itself
        for g in qf.class_forms(f):
            assert qf.class_label(g) == qf.class_label(f)


def test_principal_form():
    assert qf.principal_form(-4) == (1, 0, 1)
    assert qf.principal_form(5) == (1, 1, -1)
    assert qf.disc_of(qf.principal_form(-23)) == -23
    assert qf.disc_of(qf.principal_form(136)) == 136


def test_fundamental_units_against_brute():
    for d in (5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 44, 60, 61,
              76, 92, 124, 136, 152, 172, 184, 188):
        t, u = qf.fundamental_unit_xy(d)
        assert t * t - d * u * u in (4, -4)
        assert (t, u) == qf.fundamental_unit_brute(d)


def test_fundamental_unit_norm_signs():
    # norm -1 exists for 5, 8, 13; not for 12, 24 (those have norm +4 only)
    for d, sign in ((5, -4), (8, -4), (13, -4), (12, 4), (24, 4)):
        t, u = qf.fundamental_unit_xy(d)
        assert t * t - d * u * u == sign


def test_definite_form_counts_classical():
    # counted directly from the reduced-triple inequalities, these are the
    # reduced-form class numbers used for the maximal-order class count
    assert [len(qf.reduced_definite_forms(d))
            for d in (-3, -4, -15, -23, -47, -71)] == [1, 1, 2, 3, 5, 7]
