"""Number fields Q[x]/(p) for monic irreducible integer p.

Polynomials are coefficient lists, constant term first.  All arithmetic is
exact: Fractions for field elements, integers for resultants and
discriminants, Sturm sequences for signatures.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DegreeMismatch, NotMonic, Reducible, SearchBudgetExceeded
from .intmat import _det_bareiss, solve_square


# --- integer / rational polynomial helpers ---------------------------------

def poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_deg(p):
    return len(p) - 1


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_neg(p):
    return [-a for a in p]


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q):
    """Division with remainder over the rationals."""
    p = [Fraction(a) for a in p]
    q = poly_trim([Fraction(a) for a in q])
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(poly_trim(p)) >= len(q):
        p = poly_trim(p)
        shift = len(p) - len(q)
        c = p[-1] / lead
        quo[shift] = c
        for i, b in enumerate(q):
            p[shift + i] -= c * b
        p[-1] = Fraction(0)
    return poly_trim(quo), poly_trim(p)


def poly_eval(p, x):
    out = 0
    for a in reversed(p):
        out = out * x + a
    return out


def poly_derivative(p):
    return poly_trim([i * a for i, a in enumerate(p)][1:])


def resultant(p, q) -> int:
    """Resultant of two integer polynomials via the Sylvester determinant."""
    p, q = poly_trim(list(p)), poly_trim(list(q))
    n, m = poly_deg(p), poly_deg(q)
    if n < 0 or m < 0:
        return 0
    if n == 0:
        return p[0] ** m
    if m == 0:
        return q[0] ** n
    size = n + m
    rows = []
    rp = list(reversed(p))
    rq = list(reversed(q))
    for i in range(m):
        rows.append([0] * i + rp + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + rq + [0] * (size - m - 1 - i))
    return _det_bareiss(rows)


def poly_discriminant(p) -> int:
    """Discriminant of a monic integer polynomial."""
    n = poly_deg(p)
    r = resultant(p, poly_derivative(p))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * r


def squarefree_part(n: int):
    """n = s^2 * m with m squarefree; returns (m, s).  n may be negative."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    n = abs(n)
    m, s = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                m *= d
        d += 1 if d == 2 else 2
    m *= n
    return sign * m, s


def _int_divisors(n):
    n = abs(n)
    small, big = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                big.append(n // d)
        d += 1
    return small + big[::-1]


def _signed_divisors(n):
    out = []
    for d in _int_divisors(n):
        out.extend((d, -d))
    return out


def _monic_factor_candidates(p, deg, budget=400_000):
    """Yield monic integer factors of ``p`` of the given degree.

    Interpolation through small integer points: a factor q satisfies
    q(k) | p(k), so candidates come from divisor tuples.  Only needed up to
    degree 4 (embedding-count resultants cap at degree 4*4 = 16 overall).
    """
    pts = [0, 1, -1, 2, -2][:deg]
    vals = [poly_eval(p, t) for t in pts]
    if any(v == 0 for v in vals):
        return  # linear factor at one of the sample points; handled by roots
    divlists = [_signed_divisors(v) for v in vals]
    total = 1
    for dl in divlists:
        total *= len(dl)
    if total > budget:
        raise SearchBudgetExceeded(
            f"factor candidate space {total} exceeds budget {budget}",
            operation="factor_search")
    import itertools
    seen = set()
    for combo in itertools.product(*divlists):
        q = _interpolate_monic(pts, combo, deg)
        if q is None or tuple(q) in seen:
            continue
        seen.add(tuple(q))
        quo, rem = poly_divmod(p, q)
        if not rem and all(c.denominator == 1 for c in quo):
            yield q


def _interpolate_monic(pts, vals, deg):
    """Monic integer polynomial of degree ``deg`` through (pts, vals), or None.

    Uses exactly ``deg`` points to pin the lower coefficients; the caller
    verifies candidates by exact division.
    """
    rows = [[Fraction(t) ** j for j in range(deg)] for t in pts[:deg]]
    rhs = [Fraction(v) - Fraction(t) ** deg for t, v in zip(pts[:deg], vals[:deg])]
    sol = solve_square(list(map(list, zip(*rows))), [rhs])
    if sol is None:
        return None
    coeffs = sol[0]
    if any(c.denominator != 1 for c in coeffs):
        return None
    return [int(c) for c in coeffs] + [1]


def integer_roots(p):
    """All integer roots of an integer polynomial (monic or not)."""
    p = poly_trim(list(p))
    if not p:
        return []
    roots = []
    if p[0] == 0:
        roots.append(0)
        while p and p[0] == 0:
            p = p[1:]
    for d in _signed_divisors(p[0]) if p else []:
        if poly_eval(p, d) == 0:
            roots.append(d)
    return sorted(set(roots))


def is_irreducible(p) -> bool:
    """Deterministic irreducibility test for monic integer p, degree <= 6."""
    p = poly_trim(list(p))
    n = poly_deg(p)
    if n <= 0:
        return False
    if n == 1:
        return True
    if p[0] == 0:
        return False
    if integer_roots(p):
        return False
    if resultant(p, poly_derivative(p)) == 0:
        return False  # repeated factor
    for d in range(2, n // 2 + 1):
        for _ in _monic_factor_candidates(p, d):
            return False
    return True


# --- Sturm sequences --------------------------------------------------------

def _sturm_chain(p):
    chain = [[Fraction(a) for a in poly_trim(p)]]
    chain.append([Fraction(a) for a in poly_derivative(chain[0])])
    while poly_trim(chain[-1]):
        _, rem = poly_divmod(chain[-2], chain[-1])
        chain.append(poly_neg(rem))
    chain.pop()
    return chain


def _sign_changes(signs):
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_root_count(p) -> int:
    """Number of distinct real roots, by Sturm's theorem."""
    p = poly_trim(list(p))
    if poly_deg(p) < 1:
        return 0
    chain = _sturm_chain(p)
    at_minus = []
    at_plus = []
    for q in chain:
        q = poly_trim(q)
        if not q:
            at_minus.append(0)
            at_plus.append(0)
            continue
        lead = 1 if q[-1] > 0 else -1
        at_plus.append(lead)
        at_minus.append(lead if poly_deg(q) % 2 == 0 else -lead)
    return _sign_changes(at_minus) - _sign_changes(at_plus)


# --- the field itself -------------------------------------------------------

class NumberField:
    """Q[x]/(p) for a monic irreducible integer polynomial p."""

    __slots__ = ("coeffs", "degree", "poly_disc", "signature", "_pow_table")

    def __init__(self, coeffs, _validated=False):
        coeffs = [int(c) for c in poly_trim(list(coeffs))]
        n = poly_deg(coeffs)
        if n < 1 or coeffs[-1] != 1:
            raise NotMonic("defining polynomial must be monic of degree >= 1",
                           operation="make_field")
        if not _validated and not is_irreducible(coeffs):
            raise Reducible("defining polynomial factors over Q",
                            operation="make_field")
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "degree", n)
        object.__setattr__(self, "poly_disc",
                           poly_discriminant(coeffs) if n > 1 else 1)
        r = real_root_count(coeffs)
        object.__setattr__(self, "signature", (r, (n - r) // 2))
        # x^k mod p for k < 2n-1, used to reduce products; integer since p monic.
        table = []
        for k in range(2 * n - 1):
            if k < n:
                row = [0] * n
                row[k] = 1
            else:
                prev = table[-1]
                row = [0] + list(prev[:-1])
                lead = prev[-1]
                if lead:
                    row = [row[i] - lead * coeffs[i] for i in range(n)]
            table.append(tuple(row))
        object.__setattr__(self, "_pow_table", tuple(table))

    def __setattr__(self, name, value):
        raise AttributeError("NumberField is immutable")

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"NumberField({list(self.coeffs)})"

    def is_totally_real(self):
        return self.signature[0] == self.degree

    def element(self, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.degree:
            raise ValueError("coordinate length mismatch")
        return FieldElement(self, tuple(coords))

    def zero(self):
        return self.element([0] * self.degree)

    def one(self):
        e = [0] * self.degree
        e[0] = 1
        return self.element(e)

    def gen(self):
        if self.degree == 1:
            return self.element([-self.coeffs[0]])
        e = [0] * self.degree
        e[1] = 1
        return self.element(e)

    def from_rational(self, q):
        e = [Fraction(0)] * self.degree
        e[0] = Fraction(q)
        return FieldElement(self, tuple(e))

    def _reduce_product(self, conv):
        n = self.degree
        out = [Fraction(0)] * n
        for k, c in enumerate(conv):
            if c:
                row = self._pow_table[k]
                for i in range(n):
                    if row[i]:
                        out[i] += c * row[i]
        return out


def make_field(coeffs) -> NumberField:
    """Validated construction; raises NotMonic / Reducible."""
    return NumberField(coeffs)


RATIONAL_FIELD = NumberField([0, 1])


class FieldElement:
    """Element of a NumberField in the power basis 1, x, ..., x^(g-1)."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if other.field != self.field:
            raise ValueError("elements of different fields")
        return other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (isinstance(other, FieldElement)
                and self.field == other.field and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return f"FieldElement({list(self.coords)})"

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field,
                                tuple(a * other for a in self.coords))
        other = self._check(other)
        n = self.field.degree
        conv = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        conv[i + j] += a * b
        return FieldElement(self.field, tuple(self.field._reduce_product(conv)))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mult_matrix(self):
        """Matrix of multiplication by self on the power basis (rows = images)."""
        n = self.field.degree
        rows = []
        e = self.field.one()
        x = self.field.gen()
        cur = self
        for i in range(n):
            rows.append(list(cur.coords))
            if i + 1 < n:
                cur = cur * x
        return rows

    def norm(self) -> Fraction:
        rows = self.mult_matrix()
        n = len(rows)
        den = 1
        for r in rows:
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
        int_rows = [[int(x * den) for x in r] for r in rows]
        return Fraction(_det_bareiss(int_rows), den ** n)

    def trace(self) -> Fraction:
        rows = self.mult_matrix()
        return sum(rows[i][i] for i in range(len(rows)))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.field.degree
        target = [Fraction(1 if i == 0 else 0) for i in range(n)]
        sol = solve_square(self.mult_matrix(), [target])
        return FieldElement(self.field, tuple(sol[0]))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def min_poly(self):
        """Monic minimal polynomial over Q, constant term first."""
        n = self.field.degree
        powers = [self.field.one()]
        for _ in range(n):
            powers.append(powers[-1] * self)
        for d in range(1, n + 1):
            # Is self^d a combination of lower powers?
            rows = [list(powers[k].coords) for k in range(d)]
            rhs = list(powers[d].coords)
            sol = _solve_underdetermined(rows, rhs)
            if sol is not None:
                return poly_trim([-c for c in sol] + [Fraction(1)])
        raise AssertionError("minimal polynomial must exist")

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])


def _solve_underdetermined(rows, rhs):
    """Solve sum c_k rows[k] = rhs exactly, or None; rows need not be square."""
    k = len(rows)
    n = len(rhs)
    aug = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(rhs[j])]
           for j in range(n)]
    piv_cols = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, n) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][col]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, n):
        if aug[i][k]:
            return None
    sol = [Fraction(0)] * k
    for i, col in enumerate(piv_cols):
        sol[col] = aug[i][k]
    return sol


# --- embeddings and closures -------------------------------------------------

def roots_in_field(p, field: NumberField):
    """All roots of the integer polynomial p inside the field.

    Supported exactly for deg p <= 2 (any field degree <= 2) which covers the
    desk-scale uses; the count-only question for larger cases goes through
    embedding_count.
    """
    p = poly_trim(list(p))
    d = poly_deg(p)
    if d == 1:
        # monic linear: root is rational
        return [field.from_rational(Fraction(-p[0], p[1]))]
    if d == 2 and field.degree <= 2:
        a2, a1 = p[2], p[1]
        delta = Fraction(a1 * a1 - 4 * a2 * p[0])
        out = []
        for sq in _rational_sqrts_in_field(delta, field):
            y = (field.from_rational(Fraction(-a1)) + sq) * Fraction(1, 2 * a2)
            if y not in out:
                out.append(y)
        return out
    raise SearchBudgetExceeded(
        f"root finding for degree {d} in degree {field.degree} not supported",
        operation="roots_in_field")


def _rational_sqrts_in_field(delta: Fraction, field: NumberField):
    """All y in the field with y^2 = delta, for a rational delta."""
    if delta == 0:
        return [field.zero()]
    num = delta.numerator * delta.denominator  # sqrt(delta) = sqrt(num)/den
    den = delta.denominator
    m, s = squarefree_part(num)
    if m == 1:
        return [field.from_rational(Fraction(s, den)),
                field.from_rational(Fraction(-s, den))]
    if field.degree == 1:
        return []
    # quadratic field: v*(2u + b1 v) pattern from expanding (u + v*theta)^2
    b1, b0 = field.coeffs[1], field.coeffs[0]
    theta_disc = b1 * b1 - 4 * b0
    md, sd = squarefree_part(theta_disc)
    if md != m:
        return []
    # sqrt(m) = (2*theta + b1)/sd, so sqrt(delta) = s*sqrt(m)/den
    coeff = Fraction(s, den * sd)
    root = field.element([coeff * b1, 2 * coeff])
    return [root, -root]


def embedding_count(k: NumberField, l: NumberField) -> int:
    """Number of ring morphisms k -> l (roots of k's polynomial in l)."""
    if l.degree % k.degree:
        raise DegreeMismatch(
            f"degree {k.degree} does not divide degree {l.degree}",
            operation="embedding_count")
    if k.degree == 1:
        return 1
    if k.degree * l.degree > 16:
        raise SearchBudgetExceeded(
            "embedding search capped at degree product 16",
            operation="embedding_count")
    # Count components of k (x) l isomorphic to l: degree-l factors of the
    # squarefree resultant Res_x(p_l(x), p_k(z - s x)).
    for s in range(0, 40):
        r = _tensor_resultant(k.coeffs, l.coeffs, s)
        if resultant(r, poly_derivative(r)) != 0:
            return _count_factors_of_degree(r, l.degree)
    raise AssertionError("no squarefree shift found")


def _tensor_resultant(pk, pl, s):
    """Res_x(pl(x), pk(z - s*x)) as an integer polynomial in z."""
    # Work in Z[z][x]: represent coefficients of x^i as polynomials in z.
    # pk(z - s x): expand via binomials.
    from math import comb
    dk = poly_deg(pk)
    terms = {}  # x-degree -> z-poly
    for i, a in enumerate(pk):
        if not a:
            continue
        # binomial expansion: sum_j C(i,j) z^(i-j) (-s)^j x^j
        for j in range(i + 1):
            c = a * comb(i, j) * (-s) ** j
            zdeg = i - j
            cur = terms.setdefault(j, [0] * (dk + 1))
            cur[zdeg] += c
    fx = [poly_trim(terms.get(j, [])) for j in range(dk + 1)]
    # Sylvester-style resultant in x with z-polynomial entries is exact but
    # heavy; evaluate-and-interpolate instead: deg_z <= dk * deg(pl).
    dz = dk * poly_deg(pl)
    pts = list(range(-(dz // 2), dz - dz // 2 + 1))
    vals = []
    for t in pts:
        # pk(t - s x) as integer polynomial in x
        q = [poly_eval(cz, t) if cz else 0 for cz in fx]
        vals.append(resultant(poly_trim(list(pl)), poly_trim(q)))
    return _lagrange_int(pts, vals)


def _lagrange_int(pts, vals):
    n = len(pts)
    out = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(pts, vals)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(pts):
            if j == i:
                continue
            basis = poly_mul(basis, [Fraction(-xj), Fraction(1)])
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for d, c in enumerate(basis):
            out[d] += scale * c
    out = poly_trim(out)
    assert all(c.denominator == 1 for c in out)
    return [int(c) for c in out]


def _count_factors_of_degree(r, g):
    """Distinct monic irreducible integer factors of degree g of squarefree r."""
    r = poly_trim(list(r))
    if poly_deg(r) < g:
        return 0
    lead = r[-1]
    if lead != 1:
        # resultants of monic inputs are monic up to sign here
        if lead == -1:
            r = poly_neg(r)
        else:
            raise AssertionError("expected monic resultant")
    if g == 1:
        return len([t for t in integer_roots(r)])
    count = 0
    for q in _monic_factor_candidates(r, g):
        if is_irreducible(q):
            count += 1
    return count


def normal_closure_degree(f: NumberField):
    """(degree of a normal closure, exactness flag); g! upper bound for g >= 4."""
    g = f.degree
    if g == 1:
        return 1, True
    if g == 2:
        return 2, True
    if g == 3:
        m, _ = squarefree_part(f.poly_disc)
        return (3, True) if m == 1 else (6, True)
    out = 1
    for i in range(2, g + 1):
        out *= i
    return out, False
