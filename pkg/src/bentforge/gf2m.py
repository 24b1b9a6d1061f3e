"""Arithmetic in binary fields GF(2^m) with log/antilog tables.

Elements are plain Python ints holding the polynomial-basis bit vector
(bit i is the coefficient of the residue class ``w**i``).  A
:class:`FieldSpec` owns the tables and exposes both scalar operations and
vectorised numpy counterparts (suffix ``_arr``) for the sweeps built on top.

Division by zero follows the ``1/0 = 0`` convention everywhere, which keeps
rational trace functions total.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

# Primitive polynomials, hex with bit 0 = constant term.  m=6 and m=12 are
# pinned to the minimal polynomials used in the worked examples.
DEFAULT_POLYS = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x5B,      # x^6+x^4+x^3+x+1
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x46F,
    11: 0x805,
    12: 0x10EB,   # x^12+x^7+x^6+x^5+x^3+x+1
    13: 0x201B,
    14: 0x40A9,
    15: 0x8035,
    16: 0x1002D,
}

MAX_M = 16


class FieldError(ValueError):
    """Raised for invalid field construction or out-of-domain arguments."""


def _clmod(a: int, p: int) -> int:
    dp = p.bit_length() - 1
    while a and a.bit_length() - 1 >= dp:
        a ^= p << (a.bit_length() - 1 - dp)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _clmod(poly, q) == 0:
                return False
    return True


def poly_to_str(poly: int) -> str:
    terms = []
    for i in range(poly.bit_length() - 1, -1, -1):
        if poly >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms) or "0"


class FieldSpec:
    """The field GF(2^m) = GF(2)[x]/(reduction_poly), generator ``w = x``.

    Instances are immutable once built.  Two specs compare equal when they
    share ``m`` and the reduction polynomial.
    """

    def __init__(self, m: int, reduction_poly: int | None = None):
        if not 1 <= m <= MAX_M:
            raise FieldError(f"extension degree m={m} outside 1..{MAX_M}")
        poly = DEFAULT_POLYS[m] if reduction_poly is None else int(reduction_poly)
        if poly.bit_length() - 1 != m:
            raise FieldError(
                f"polynomial {poly:#x} has degree {poly.bit_length() - 1}, expected {m}")
        if not is_irreducible(poly):
            raise FieldError(f"reduction polynomial {poly_to_str(poly)} is reducible")
        self.m = m
        self.poly = poly
        self.size = 1 << m
        self.order = self.size - 1

        exp = np.zeros(2 * self.order, dtype=np.int64)
        x = 1
        period = None
        for i in range(self.order):
            exp[i] = x
            x <<= 1
            if x >> m:
                x ^= poly
            if x == 1 and period is None:
                period = i + 1
        if period != self.order:
            raise FieldError(
                f"generator x has multiplicative order {period} modulo "
                f"{poly_to_str(poly)}, not {self.order}; the polynomial is not primitive")
        exp[self.order:] = exp[:self.order]
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp[:self.order]] = np.arange(self.order)
        exp.flags.writeable = False
        log.flags.writeable = False
        self.exp = exp
        self.log = log
        # plain lists for the scalar path; numpy scalar indexing is much slower
        self._exp = exp.tolist()
        self._log = log.tolist()

    def __repr__(self):
        return f"FieldSpec(m={self.m}, poly={self.poly:#x})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.m, self.poly) == (other.m, other.poly)

    def __hash__(self):
        return hash((self.m, self.poly))

    # -- subfield structure ---------------------------------------------

    @property
    def n(self) -> int:
        if self.m % 2:
            raise FieldError(f"GF(2^{self.m}) has no quadratic subfield (m odd)")
        return self.m // 2

    @property
    def q(self) -> int:
        return 1 << self.n

    @property
    def generator(self) -> int:
        return 2 if self.m > 1 else 1

    def w(self, k: int) -> int:
        """The power ``w**k`` of the primitive generator."""
        return int(self.exp[k % self.order])

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def subfield(self, k: int) -> np.ndarray:
        """Sorted elements of GF(2^k) inside this field."""
        self._check_divisor(k)
        step = self.order // ((1 << k) - 1)
        nz = self.exp[np.arange(0, self.order, step)]
        return np.sort(np.concatenate(([0], nz)))

    def in_subfield(self, a: int, k: int) -> bool:
        self._check_divisor(k)
        return a == 0 or self._log[a] % (self.order // ((1 << k) - 1)) == 0

    def _check_divisor(self, k: int):
        if k < 1 or self.m % k:
            raise FieldError(f"{k} does not divide m={self.m}")

    # -- scalar arithmetic ----------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            return 0
        return self._exp[self.order - self._log[a]]

    def div(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] - self._log[b] + self.order]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self.order]

    def frobenius(self, a: int, k: int = 1) -> int:
        """``a**(2**k)``."""
        return self.pow(a, pow(2, k, self.order) if self.order > 1 else 1)

    def conj(self, a: int) -> int:
        """The conjugate ``a**(2**n)`` over GF(2^n)."""
        return self._conj[a]

    @cached_property
    def _conj(self) -> list[int]:
        return self.conj_arr(self.elements()).tolist()

    def sqrt(self, a: int) -> int:
        return self.frobenius(a, self.m - 1)

    def norm(self, a: int) -> int:
        """``a * conj(a)``, an element of GF(2^n)."""
        return self.mul(a, self.conj(a))

    def trace(self, a: int, k: int = 1, m: int | None = None) -> int:
        """Relative trace Tr_k^m(a) = a + a^(2^k) + ... ; ``m`` defaults to the field degree.

        With ``m`` smaller than the field degree, ``a`` must lie in GF(2^m).
        """
        m = self.m if m is None else m
        self._check_divisor(m)
        if k < 1 or m % k:
            raise FieldError(f"{k} does not divide {m}")
        if m != self.m and not self.in_subfield(a, m):
            raise FieldError(f"{a:#x} is not in GF(2^{m})")
        acc = 0
        x = a
        for _ in range(m // k):
            acc ^= x
            x = self.frobenius(x, k)
        return acc

    def tr(self, a: int) -> int:
        """Absolute trace Tr_1^m(a) as a bit."""
        return self._tr[a]

    @cached_property
    def _tr(self) -> list[int]:
        return self.trace_bits.tolist()

    def tr_n(self, a: int) -> int:
        """Tr_1^n(a) for ``a`` in the subfield GF(2^n)."""
        if not self.in_base(a):
            raise FieldError(f"{a:#x} is not in GF(2^{self.n})")
        return self._tr_n[a]

    @cached_property
    def _tr_n(self) -> list[int]:
        return self.tr_n_bits.tolist()

    def in_unit_circle(self, a: int) -> bool:
        return a != 0 and self._log[a] % (self.q - 1) == 0

    def in_base(self, a: int) -> bool:
        """Membership in the subfield GF(2^n)."""
        return self.in_subfield(a, self.n)

    # -- vectorised arithmetic ------------------------------------------

    def mul_arr(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv_arr(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.order - self.log[a]) % self.order]
        return np.where(a == 0, 0, out)

    def div_arr(self, a, b) -> np.ndarray:
        return self.mul_arr(a, self.inv_arr(b))

    def pow_arr(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * e) % self.order]
        return np.where(a == 0, 1 if e == 0 else 0, out)

    def conj_arr(self, a) -> np.ndarray:
        return self.pow_arr(a, self.q)

    @cached_property
    def trace_bits(self) -> np.ndarray:
        """Tr_1^m of every element, indexed by element."""
        return self.trace_table(1).astype(np.int8)

    def trace_table(self, k: int = 1, m: int | None = None) -> np.ndarray:
        """Tr_k^m over all field elements (meaningful on GF(2^m) when m < field degree)."""
        m = self.m if m is None else m
        self._check_divisor(m)
        if m % k:
            raise FieldError(f"{k} does not divide {m}")
        x = self.elements()
        acc = np.zeros_like(x)
        step = pow(2, k, self.order) if self.order > 1 else 1
        for _ in range(m // k):
            acc ^= x
            x = self.pow_arr(x, step)
        return acc

    @cached_property
    def tr_n_bits(self) -> np.ndarray:
        """Tr_1^n of every element; only meaningful on GF(2^n)."""
        return (self.trace_table(1, self.n) & 1).astype(np.int8)

    @cached_property
    def gram_matrix(self) -> np.ndarray:
        """G[i][j] = Tr_1^m(w^i w^j) for the polynomial basis."""
        basis = [1 << i for i in range(self.m)]
        return np.array([[self.tr(self.mul(bi, bj)) for bj in basis] for bi in basis],
                        dtype=np.uint8)


def field_new(m: int, reduction_poly: int | str | None = None) -> FieldSpec:
    """Validated GF(2^m) for even m in 2..16; ``reduction_poly`` may be an int or hex string."""
    if m % 2 or not 2 <= m <= MAX_M:
        raise FieldError(f"m must be even and in 2..{MAX_M}, got {m}")
    if isinstance(reduction_poly, str):
        reduction_poly = int(reduction_poly, 16)
    return FieldSpec(m, reduction_poly)


def unit_circle(field: FieldSpec) -> list[int]:
    """The q+1 elements with ``x**(q+1) == 1``, as powers of ``w**(q-1)``."""
    q = field.q
    return [field.w(k * (q - 1)) for k in range(q + 1)]


def polar_decompose(field: FieldSpec, x: int) -> tuple[int, int]:
    """Split nonzero ``x`` as ``lam * y`` with ``lam`` on the unit circle and ``y`` in GF(2^n)*."""
    if x == 0:
        raise FieldError("polar decomposition of 0 is undefined")
    y = field.sqrt(field.norm(x))
    return field.div(x, y), y


def u_param(field: FieldSpec, u: int, A: int) -> int:
    """(u + A) / (u + conj(A)); maps GF(2^n) bijectively onto U minus 1."""
    if field.in_base(A):
        raise FieldError(f"A={A:#x} lies in GF(2^{field.n})")
    return field.div(u ^ A, u ^ field.conj(A))


def quadratic_roots_in_U(field: FieldSpec, a: int, b: int) -> int:
    """Number of roots of x^2 + a x + b lying on the unit circle, from the closed criterion.

    Returns 0 when Tr_1^m(b/a^2) = 1 (no roots in the field at all).
    """
    if a == 0 or b == 0:
        raise FieldError("a and b must be nonzero")
    F = field
    if F.tr(F.div(b, F.mul(a, a))):
        return 0
    a_bar, b_bar = F.conj(a), F.conj(b)
    if b == F.div(a, a_bar):
        return 2 if F.tr_n(F.inv(F.mul(a, a_bar))) == 1 else 0
    bb = F.mul(b, b_bar)
    lhs = F.mul(1 ^ bb, 1 ^ F.mul(a, a_bar) ^ bb)
    lhs ^= F.mul(F.mul(a, a), b_bar) ^ F.mul(F.mul(a_bar, a_bar), b)
    return 1 if lhs == 0 else 0
