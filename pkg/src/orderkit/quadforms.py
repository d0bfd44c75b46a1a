"""Binary quadratic forms: reduction, cycles, class labels, Pell units.

This is the workhorse behind ideal-class identification in quadratic fields.
A full-rank lattice in a quadratic field, with an oriented basis, yields a
primitive integer form (a, b, c); lattices are homothetic exactly when their
forms agree up to SL2(Z) and (for real fields) a global sign.  Reduction
gives a finite canonical set per class, so class comparison is a dictionary
lookup instead of an element search.

Forms are triples (a, b, c) meaning a x^2 + b x y + c y^2, with
disc = b^2 - 4ac.  Transforms are tracked as 2x2 integer matrices U acting on
basis rows: new_basis = U * old_basis.
"""

from __future__ import annotations

from math import gcd, isqrt


def disc_of(form):
    a, b, c = form
    return b * b - 4 * a * c


def content(form):
    a, b, c = form
    return gcd(gcd(abs(a), abs(b)), abs(c))


def primitive_part(form):
    g = content(form)
    a, b, c = form
    return (a // g, b // g, c // g), g


def apply_baschange(form, m):
    """Form of the basis (p*alpha + q*beta, r*alpha + s*beta), m = [[p,q],[r,s]]."""
    a, b, c = form
    (p, q), (r, s) = m
    a2 = a * p * p + b * p * q + c * q * q
    c2 = a * r * r + b * r * s + c * s * s
    b2 = 2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s
    return (a2, b2, c2)


def _mat_mul(m1, m2):
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


_IDENT = ((1, 0), (0, 1))


# --- definite reduction -------------------------------------------------------

def reduce_definite(form):
    """Reduce a positive definite form; returns (reduced, U) with U in SL2.

    Canonical conditions: -a < b <= a <= c, and b >= 0 if a == c.
    """
    a, b, c = form
    assert disc_of(form) < 0 and a > 0
    u = _IDENT
    while True:
        if c < a:
            # swap roles: basis (beta, -alpha) keeps det = +1
            step = ((0, 1), (-1, 0))
            a, b, c = c, -b, a
            u = _mat_mul(step, u)
            continue
        if b > a or b <= -a:
            # translate: beta += k*alpha, with the unique k giving -a < b+2ka <= a
            k = (a - b) // (2 * a)
            step = ((1, 0), (k, 1))
            b2 = b + 2 * k * a
            c2 = a * k * k + b * k + c
            b, c = b2, c2
            u = _mat_mul(step, u)
            continue
        if a == c and b < 0:
            step = ((0, 1), (-1, 0))
            a, b, c = c, -b, a
            u = _mat_mul(step, u)
            continue
        return (a, b, c), u


# --- indefinite reduction ------------------------------------------------------

def is_reduced_indefinite(form, s=None):
    """|sqrt(D) - 2|a|| < b < sqrt(D), checked with exact integer arithmetic."""
    a, b, c = form
    d = disc_of(form)
    if s is None:
        s = isqrt(d)
    if b <= 0 or b > s:  # b < sqrt(D) <=> b <= s, D non-square
        return False
    t = 2 * abs(a)
    if (t + b) ** 2 <= d:  # need sqrt(D) < 2|a| + b
        return False
    if t > b and (t - b) ** 2 >= d:  # need 2|a| - b < sqrt(D)
        return False
    return True


def rho_step(form, s=None):
    """One reduction step (a,b,c) -> (c, b', c'); returns (form', U_step)."""
    a, b, c = form
    d = disc_of(form)
    if s is None:
        s = isqrt(d)
    ac = abs(c)
    if ac > s:
        # choose b' = -b + 2 c k in (-|c|, |c|]
        k = (b + ac) // (2 * ac) if c > 0 else -((b + ac) // (2 * ac))
    else:
        # choose b' = -b + 2 c k in (sqrt(D) - 2|c|, sqrt(D))
        k = (b + s) // (2 * ac) if c > 0 else -((b + s) // (2 * ac))
    b2 = -b + 2 * c * k
    c2 = (b2 * b2 - d) // (4 * c)
    # basis change: (alpha, beta) -> (beta, -alpha + k*beta)
    step = ((0, 1), (-1, k))
    return (c, b2, c2), step


def reduce_indefinite(form):
    """Iterate rho until reduced; returns (reduced, U)."""
    d = disc_of(form)
    s = isqrt(d)
    assert d > 0 and s * s != d
    u = _IDENT
    f = form
    guard = 0
    while not is_reduced_indefinite(f, s):
        f, step = rho_step(f, s)
        u = _mat_mul(step, u)
        guard += 1
        if guard > 10_000:
            raise AssertionError(f"indefinite reduction failed to converge: {form}")
    return f, u


def cycle_of(form):
    """The full rho-cycle of a reduced indefinite form, with transforms.

    Returns a list of (form, U) pairs; U maps the input (reduced) basis to
    the basis at that cycle position.  The input must already be reduced.
    """
    d = disc_of(form)
    s = isqrt(d)
    out = [(form, _IDENT)]
    f, u = form, _IDENT
    while True:
        f, step = rho_step(f, s)
        u = _mat_mul(step, u)
        if f == form:
            return out, u  # u = full-period transform (the automorph)
        out.append((f, u))
        if len(out) > 100_000:
            raise AssertionError("runaway cycle")


def reduce_form(form):
    """Sign-aware reduction: returns (reduced, U) for either signature."""
    d = disc_of(form)
    if d < 0:
        f = form if form[0] > 0 else (-form[0], -form[1], -form[2])
        red, u = reduce_definite(f)
        return red, u
    return reduce_indefinite(form)


def class_forms(form):
    """All canonical forms of the plain equivalence class of ``form``.

    Definite: the one reduced form (orientation is SL2-pinning there, so a
    class has a single canonical representative).  Indefinite: scaling the
    lattice by a negative-norm element lands, after re-orienting the basis,
    on (-a, b, -c); the class is the union of the rho-cycles of both.
    """
    d = disc_of(form)
    if d < 0:
        f = form if form[0] > 0 else tuple(-x for x in form)
        red, _ = reduce_definite(f)
        return frozenset([red])
    a, b, c = form
    red, _ = reduce_indefinite(form)
    cyc, _ = cycle_of(red)
    forms = {f for f, _ in cyc}
    redn, _ = reduce_indefinite((-a, b, -c))
    cycn, _ = cycle_of(redn)
    forms |= {f for f, _ in cycn}
    return frozenset(forms)


def class_label(form):
    """Canonical hashable label of the plain class: the minimal canonical form."""
    return min(class_forms(form))


def reduced_reps_with_transforms(form):
    """(canonical form, U, sign) triples for aligning two equivalent lattices.

    Each U maps the original basis B to a basis U*B whose primitive form is
    sign * (listed form): sign +1 entries walk the cycle of the form itself,
    sign -1 entries walk the cycle of (-a, b, -c), whose members are the
    negated forms of the flipped bases (alpha, -beta) transformed along.
    """
    d = disc_of(form)
    out = []
    if d < 0:
        f = form if form[0] > 0 else tuple(-x for x in form)
        red, u = reduce_definite(f)
        out.append((red, u, 1))
        return out
    a, b, c = form
    red, u0 = reduce_indefinite(form)
    cyc, _ = cycle_of(red)
    for f, u in cyc:
        out.append((f, _mat_mul(u, u0), 1))
    flip = ((1, 0), (0, -1))
    redn, u0n = reduce_indefinite((-a, b, -c))
    cycn, _ = cycle_of(redn)
    for f, u in cycn:
        out.append((f, _mat_mul(_mat_mul(u, u0n), flip), -1))
    return out


# --- class numbers -------------------------------------------------------------

def reduced_definite_forms(d):
    """All reduced primitive positive definite forms of discriminant d < 0."""
    assert d < 0 and d % 4 in (0, 1)
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def reduced_indefinite_forms(d):
    """All reduced primitive forms of non-square discriminant d > 0."""
    s = isqrt(d)
    assert d > 0 and d % 4 in (0, 1) and s * s != d
    out = []
    for b in range(1, s + 1):
        if (d - b) % 2:
            continue
        num = b * b - d  # = 4ac < 0
        lo = (s - b) // 2 + 1  # |a| > (sqrt(D)-b)/2
        hi = (s + b) // 2      # |a| < (sqrt(D)+b)/2 -> |a| <= floor
        for aa in range(max(lo, 1), hi + 1):
            if num % (4 * aa):
                continue
            for a in (aa, -aa):
                c = num // (4 * a)
                f = (a, b, c)
                if content(f) != 1:
                    continue
                if is_reduced_indefinite(f, s):
                    out.append(f)
    return out


def form_class_count(d):
    """Number of plain classes of primitive forms of discriminant d.

    For d < 0 this is the count of reduced definite forms (each class has
    exactly one).  For d > 0 the reduced forms are partitioned by label.
    """
    if d < 0:
        return len(reduced_definite_forms(d))
    labels = {class_label(f) for f in reduced_indefinite_forms(d)}
    return len(labels)


# --- fundamental units ----------------------------------------------------------

def principal_form(d):
    """The principal form of discriminant d."""
    if d % 2 == 0:
        return (1, 0, -d // 4)
    return (1, 1, (1 - d) // 4)


def fundamental_unit_xy(d):
    """Fundamental unit (t + u*sqrt(d))/2 > 1 of the order of discriminant d.

    Returns (t, u) with t, u > 0 and t^2 - d u^2 = +-4.  Computed from the
    automorph of the principal cycle (continued-fraction reduction), then a
    square-root extraction in case the cycle only reaches the square of the
    fundamental unit (norm -1 fields).
    """
    assert d > 4 and isqrt(d) ** 2 != d and d % 4 in (0, 1)
    f0, u0 = reduce_indefinite(principal_form(d))
    _, period_u = cycle_of(f0)
    # The period transform is an automorph of f0: it acts on the basis
    # (1, tau) of the principal lattice as multiplication by a unit.
    t_, u_ = _unit_from_automorph(f0, period_u, d)
    # Try to take a square root: the cycle yields the smallest totally
    # positive automorph, which is eps^2 when N(eps) = -1.
    root = _unit_sqrt(t_, u_, d)
    while root is not None:
        t_, u_ = root
        root = _unit_sqrt(t_, u_, d)
    return t_, u_


def _unit_from_automorph(form, u, d):
    """Unit (t + v sqrt(d))/2 from an SL2 automorph of a reduced form."""
    a, b, _ = form
    # basis (alpha, beta) with beta/alpha = tau = (-b + sqrt(d)) / (2a);
    # the automorph acts as multiplication by x = p + q*tau where
    # U = [[p, q], [r, s]] maps (alpha, beta) to (x*alpha, x*beta).
    (p, q), (_r, _s) = u
    # beta/alpha = tau satisfies a t^2 - b t + c = 0, so tau = (b + sqrt(d))/(2a)
    # and x = p + q*tau = (2ap + qb + q sqrt(d)) / (2a); integrality needs a | qb, a | q.
    num_t = 2 * a * p + q * b
    num_v = q
    den = a
    assert num_t % den == 0 and num_v % den == 0, "automorph unit not integral"
    t_, v_ = num_t // den, num_v // den
    if t_ < 0:
        t_, v_ = -t_, -v_
    if v_ < 0:
        # conjugate; take the one > 1
        v_ = -v_
    assert t_ * t_ - d * v_ * v_ in (4, -4), "automorph did not give a unit"
    return t_, v_


def _unit_sqrt(t, u, d):
    """If (t + u sqrt d)/2 = eps^2 for a unit eps of the same order, return eps."""
    # eps = (x + y sqrt d)/2 with x^2 + d y^2 = 2t and x y = u.
    for y in _divisors_signed(u):
        if y <= 0:
            continue
        if u % y:
            continue
        x = u // y
        if x <= 0:
            continue
        if x * x + d * y * y == 2 * t and (x * x - d * y * y) in (4, -4):
            return x, y
    return None


def _divisors_signed(n):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def fundamental_unit_brute(d, limit=10_000_000):
    """Oracle: smallest unit > 1 by direct search on u in (t+u sqrt d)/2."""
    u = 1
    while u <= limit:
        hits = []
        for pm in (4, -4):
            t2 = d * u * u + pm
            if t2 > 0:
                t = isqrt(t2)
                if t * t == t2:
                    hits.append(t)
        if hits:
            return min(hits), u
        u += 1
    raise AssertionError("no unit found within limit")
