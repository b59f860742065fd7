"""Dense integer polynomials as plain lists, lowest degree first.

This is the hot inner layer: every big numerator in a congruence check
lives here.  The zero polynomial is ``[]`` and a nonzero polynomial never
has a trailing zero.  Functions never mutate their arguments.
"""

from __future__ import annotations

from math import gcd

KRONECKER_CUTOFF = 40


def trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n] if n != len(a) else a


def degree(a):
    return len(a) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def neg(a):
    return [-c for c in a]


def scale(a, c):
    if c == 0:
        return []
    return [c * x for x in a]


def shift(a, k):
    """Multiply by q**k (k >= 0)."""
    if not a or k == 0:
        return list(a)
    return [0] * k + list(a)


def _schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(coeffs, bits):
    # Divide and conquer keeps packing near-linear.
    n = len(coeffs)
    if n <= 16:
        v = 0
        for c in reversed(coeffs):
            v = (v << bits) + c
        return v
    mid = n // 2
    return _pack(coeffs[:mid], bits) + (_pack(coeffs[mid:], bits) << (bits * mid))


def _unpack(v, bits, n):
    # Inverse of _pack for signed digits with |c| < 2**(bits-1).
    if n <= 16:
        out = []
        half = 1 << (bits - 1)
        full = 1 << bits
        mask = full - 1
        for _ in range(n):
            c = v & mask
            if c >= half:
                c -= full
            out.append(c)
            v = (v - c) >> bits
        return out
    mid = n // 2
    width = bits * mid
    low = v & ((1 << width) - 1)
    if low >= 1 << (width - 1):
        low -= 1 << width
    high = (v - low) >> width
    return _unpack(low, bits, mid) + _unpack(high, bits, n - mid)


def mul(a, b):
    if not a or not b:
        return []
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    if min(len(a), len(b)) < KRONECKER_CUTOFF:
        return _schoolbook(a, b)
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = ma * mb * min(len(a), len(b))
    bits = bound.bit_length() + 2
    v = _pack(a, bits) * _pack(b, bits)
    return trim(_unpack(v, bits, len(a) + len(b) - 1))


def mul_sparse(a, b):
    """Multiply by ``b`` when ``b`` has few nonzero terms (binomials, monomials)."""
    terms = [(j, y) for j, y in enumerate(b) if y]
    if len(terms) > 4:
        return mul(a, b)
    if not a or not terms:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for j, y in terms:
        for i, x in enumerate(a):
            out[i + j] += x * y
    return trim(out)


def power(a, e):
    out = [1]
    base = a
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out


def product(polys):
    """Balanced product tree over a list of polynomials."""
    polys = [p for p in polys]
    if not polys:
        return [1]
    while len(polys) > 1:
        nxt = []
        for i in range(0, len(polys) - 1, 2):
            nxt.append(mul(polys[i], polys[i + 1]))
        if len(polys) % 2:
            nxt.append(polys[-1])
        polys = nxt
    return polys[0]


def content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Return (content with sign, primitive part); primitive part has positive leading coefficient."""
    if not a:
        return 0, []
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return 1, list(a)
    return g, [c // g for c in a]


def low_order(a):
    """Number of trailing-zero powers of q (valuation at q = 0)."""
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("zero polynomial has no low order")


def divexact(a, b):
    """Exact quotient a / b over the integers, or ``None`` if b does not divide a.

    ``b`` must be primitive; by Gauss's lemma divisibility over Q then implies
    divisibility over Z, so an inexact leading division already proves failure.
    """
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    rem = list(a)
    lc = b[-1]
    out = [0] * (len(a) - db)
    bterms = [(j, y) for j, y in enumerate(b[:-1]) if y]
    for i in range(len(a) - 1 - db, -1, -1):
        top = rem[i + db]
        if top == 0:
            continue
        qc, r = divmod(top, lc)
        if r:
            return None
        out[i] = qc
        rem[i + db] = 0
        for j, y in bterms:
            rem[i + j] -= qc * y
    if any(rem[:db]):
        return None
    return trim(out)


def pseudo_rem(a, b):
    """Remainder of lc(b)**(deg a - deg b + 1) * a by b, all in Z[q]."""
    rem = list(a)
    db = len(b) - 1
    lc = b[-1]
    while len(rem) - 1 >= db and rem:
        top = rem[-1]
        k = len(rem) - 1 - db
        rem = [lc * c for c in rem]
        for j, y in enumerate(b):
            rem[k + j] -= top * y
        rem = trim(rem)
    return rem


def gcd_poly(a, b):
    """Primitive gcd with positive leading coefficient; gcd(0, 0) = 0."""
    _, a = primitive(trim(list(a)))
    _, b = primitive(trim(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a = b
        _, b = primitive(r)
    return a


def rem_mod(a, b):
    """Remainder of a modulo primitive b, up to a nonzero integer factor."""
    if len(a) < len(b):
        return list(a)
    return primitive(pseudo_rem(a, b))[1]


def evaluate(a, x):
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v
