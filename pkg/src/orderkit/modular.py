"""Modular arithmetic utilities: factorization, square roots mod m, symbols."""

from __future__ import annotations

from math import isqrt

_SPF = [0, 1]  # smallest prime factor table, grown on demand


def _grow_spf(n):
    global _SPF
    if len(_SPF) > n:
        return
    size = max(n + 1, 2 * len(_SPF), 1 << 12)
    spf = list(range(size))
    for p in range(2, isqrt(size - 1) + 1):
        if spf[p] == p:
            for q in range(p * p, size, p):
                if spf[q] == q:
                    spf[q] = p
    _SPF = spf


def factorize(n: int) -> dict:
    """Prime factorization of n >= 1 as {p: e}."""
    n = abs(int(n))
    if n <= 1:
        return {}
    out = {}
    if n < 1 << 22:
        _grow_spf(n)
        while n > 1:
            p = _SPF[n]
            out[p] = out.get(p, 0) + 1
            n //= p
        return out
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def radical(n: int) -> int:
    out = 1
    for p in factorize(n):
        out *= p
    return out


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3 * 10^24."""
    n = int(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a / n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor out twos of n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol loop
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def _tonelli_shanks(a, p):
    """Square root of a mod odd prime p, assuming it exists; None otherwise."""
    a %= p
    if a == 0:
        return 0
    if kronecker(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p-1 = q 2^s
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _sqrts_mod_odd_prime_power(a, p, k):
    """All y mod p^k with y^2 = a, p odd."""
    m = p ** k
    a %= m
    if a == 0:
        step = p ** ((k + 1) // 2)
        return list(range(0, m, step))
    v = 0
    aa = a
    while aa % p == 0:
        aa //= p
        v += 1
    if v % 2:
        return []
    half = p ** (v // 2)
    base = _sqrts_mod_odd_prime_power_unit(aa, p, k - v)
    if not base:
        return []
    out = []
    stepmod = p ** (k - v)
    for z0 in base:
        for s in range(half):
            out.append(half * (z0 + stepmod * s) % m)
    return sorted(set(out))


def _sqrts_mod_odd_prime_power_unit(a, p, k):
    """y^2 = a mod p^k for p odd, p not dividing a."""
    r = _tonelli_shanks(a, p)
    if r is None:
        return []
    pk = p
    while pk < p ** k:
        # Hensel: r' = r - (r^2 - a) / (2r) mod pk*p
        pk_next = pk * p
        num = (r * r - a) // pk % p
        den = (2 * r) % p
        r = (r - num * pow(den, -1, p) % p * pk) % pk_next
        pk = pk_next
    m = p ** k
    r %= m
    return sorted({r, m - r})


def _sqrts_mod_two_power(a, k):
    """All y mod 2^k with y^2 = a."""
    m = 1 << k
    a %= m
    if k <= 9:
        return [y for y in range(m) if (y * y - a) % m == 0]
    if a == 0:
        step = 1 << ((k + 1) // 2)
        return list(range(0, m, step))
    v = 0
    aa = a
    while aa % 2 == 0:
        aa //= 2
        v += 1
    if v % 2:
        return []
    half = 1 << (v // 2)
    base = _sqrts_mod_two_power_unit(aa, k - v)
    if not base:
        return []
    out = set()
    stepmod = 1 << (k - v)
    for z0 in base:
        for s in range(half):
            out.add(half * (z0 + stepmod * s) % m)
    return sorted(out)


def _sqrts_mod_two_power_unit(a, k):
    """y^2 = a mod 2^k for odd a."""
    if k == 1:
        return [1]
    if k == 2:
        return [1, 3] if a % 4 == 1 else []
    if a % 8 != 1:
        return []
    # lift from mod 8 upward; solutions mod 2^k (k >= 3) form 4 classes
    r = 1
    for j in range(3, k):
        if (r * r - a) % (1 << (j + 1)):
            r += 1 << (j - 1)
    m = 1 << k
    return sorted({r % m, (m - r) % m, (r + (m >> 1)) % m, (m - r + (m >> 1)) % m})


def sqrts_mod(a: int, m: int):
    """All y in [0, m) with y^2 = a (mod m)."""
    if m == 1:
        return [0]
    out = [(0, 1)]  # (residue, modulus) accumulated via CRT
    for p, k in factorize(m).items():
        sols = (_sqrts_mod_two_power(a, k) if p == 2
                else _sqrts_mod_odd_prime_power(a, p, k))
        if not sols:
            return []
        pk = p ** k
        nxt = []
        for r0, m0 in out:
            for s in sols:
                # CRT combine r0 mod m0 with s mod pk (coprime moduli)
                inv = pow(m0, -1, pk)
                r = (r0 + m0 * ((s - r0) * inv % pk)) % (m0 * pk)
                nxt.append((r, m0 * pk))
        out = nxt
    return sorted(r for r, _ in out)
