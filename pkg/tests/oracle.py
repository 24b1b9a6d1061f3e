"""Table-free brute-force reference implementations used by the tests.

Nothing here touches the log/exp tables or the fast transforms of the
package; every value comes from shift-and-add multiplication and direct sums.
"""

import numpy as np


def mul(a, b, poly):
    m = poly.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return r


def power(a, e, poly):
    m = poly.bit_length() - 1
    e %= (1 << m) - 1
    if a == 0:
        return 0 if e else 1
    r = 1
    while e:
        if e & 1:
            r = mul(r, a, poly)
        a = mul(a, a, poly)
        e >>= 1
    return r


def inv(a, poly):
    """Inverse with 1/0 = 0."""
    m = poly.bit_length() - 1
    return power(a, (1 << m) - 2, poly) if a else 0


def gen_power(k, poly):
    return power(2, k, poly)


def trace(a, poly, k=1, m=None):
    """Tr_k^m(a) as the literal sum a + a^(2^k) + ..."""
    m = m or poly.bit_length() - 1
    s, x = 0, a
    for _ in range(m // k):
        s ^= x
        for _ in range(k):
            x = mul(x, x, poly)
    return s


def trace_bit(a, poly):
    return trace(a, poly) & 1


def unit_circle(poly):
    m = poly.bit_length() - 1
    q = 1 << (m // 2)
    return [x for x in range(1, 1 << m) if power(x, q + 1, poly) == 1]


def walsh(bits, poly):
    """W_f(w) by the defining double sum."""
    m = poly.bit_length() - 1
    size = 1 << m
    tr = [trace_bit(x, poly) for x in range(size)]
    prod = [[tr[mul(w, x, poly)] for x in range(size)] for w in range(size)]
    sign = 1 - 2 * np.asarray(bits, dtype=np.int64)
    chi = 1 - 2 * np.array(prod, dtype=np.int64)
    return chi @ sign


def rational_h(a, b, poly):
    """Tr(a / (x^(q-1) + b)) pointwise."""
    m = poly.bit_length() - 1
    q = 1 << (m // 2)
    return np.array([trace_bit(mul(a, inv(power(x, q - 1, poly) ^ b, poly), poly), poly)
                     for x in range(1 << m)], dtype=np.uint8)


def kloosterman(a, poly, n=None):
    """K_n(a) over the subfield GF(2^n) of the field defined by poly."""
    m = poly.bit_length() - 1
    n = n or m
    sub = [x for x in range(1 << m) if power(x, 1 << n, poly) == x]
    total = 0
    for x in sub:
        total += 1 - 2 * (trace(inv(x, poly) ^ mul(a, x, poly), poly, 1, n) & 1)
    return total


def anf_degree(bits):
    """Degree by interpolating every monomial coefficient directly (O(3^m))."""
    bits = [int(b) for b in bits]
    size = len(bits)
    deg = 0
    for u in range(size):
        # coefficient of x^u is the XOR of f over the subcube below u
        c, s = 0, u
        while True:
            c ^= bits[s]
            if s == 0:
                break
            s = (s - 1) & u
        if c:
            deg = max(deg, bin(u).count("1"))
    return deg
