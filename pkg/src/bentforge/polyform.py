"""Ordinary polynomial form of h1(x) = Tr(a / (x^(q-1) + b)).

Reducing (y + b)^(q^2 - 2) modulo x^(q^2) - x with y = x^(q-1) leaves only
Dillon exponents j(q-1), j = 1..q, plus x^(q^2-1) and a constant:

    h1(x) = Tr( sum_j c_j x^(j(q-1)) + c_top x^(q^2-1) ) + Tr(a b^(q^2-2))

with, writing N = b conj(b),

    b on U:   c_j = a b^(-1-j) for odd j, 0 for even j;   c_top = a / b
    b off U:  c_j = a conj(b) / (1 + N) * b^(-j);          c_top = a / (b (1 + N))
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .boolfun import TracePoly, TruthTable, coset_leader, cyclotomic_coset, rational_h
from .gf2m import FieldError, FieldSpec


@dataclass(frozen=True)
class DillonPolynomial:
    field: FieldSpec
    coeffs: dict[int, int]      # j -> coefficient of x^(j(q-1)), j = 1..q
    constant: int               # the bit Tr(a b^(q^2-2))
    x_top_coeff: int            # coefficient of x^(q^2-1)

    def exponents(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) rows, constant first and x^(q^2-1) last."""
        q = self.field.q
        rows = [(0, self.constant)]
        rows += [(j * (q - 1), c) for j, c in sorted(self.coeffs.items())]
        rows.append((q * q - 1, self.x_top_coeff))
        return rows

    def to_csv(self) -> str:
        width = (self.field.m + 3) // 4
        buf = io.StringIO()
        buf.write("exponent,coeff_hex\n")
        for e, c in self.exponents():
            buf.write(f"{e},0x{c:0{width}x}\n")
        return buf.getvalue()

    def evaluate(self) -> TruthTable:
        """Direct evaluation of the trace of the polynomial at every point."""
        F = self.field
        rows = [(e, c) for e, c in self.exponents()[1:] if c]
        acc = np.zeros(F.size, dtype=np.int64)
        if rows:
            e = np.array([r[0] for r in rows], dtype=np.int64)
            logc = F.log[np.array([r[1] for r in rows], dtype=np.int64)]
            L = np.arange(F.order, dtype=np.int64)
            # c x^e at x = w^L is w^(log c + e L); x = 0 contributes nothing
            terms = F.exp[(logc[:, None] + (e[:, None] * L[None, :]) % F.order) % F.order]
            acc[F.exp[L]] = np.bitwise_xor.reduce(terms, axis=0)
        return TruthTable(F, (F.trace_bits[acc] ^ self.constant).astype(np.uint8))

    def to_trace_poly(self) -> TracePoly:
        """Canonical trace representation: one term per cyclotomic coset leader."""
        F = self.field
        by_leader: dict[int, int] = {}
        for e, c in self.exponents()[1:-1]:
            if not c:
                continue
            r = coset_leader(e, F.m)
            s = cyclotomic_coset(r, F.m).index(e % F.order)
            # Tr(c x^(r 2^s)) = Tr(c^(2^-s) x^r)
            by_leader[r] = by_leader.get(r, 0) ^ F.frobenius(c, (F.m - s) % F.m)
        terms = []
        for r, c in sorted(by_leader.items()):
            o = len(cyclotomic_coset(r, F.m))
            c = F.trace(c, o)
            if c:
                terms.append((r, c))
        # Tr(c x^(2^m-1)) = Tr(c) + Tr(c) (1 + x^(2^m-1))
        top = F.tr(self.x_top_coeff)
        const = self.constant ^ top
        if const:
            terms.insert(0, (0, 1))
        return TracePoly(tuple(terms), epsilon=top)


def expand_h1(a: int, b: int, field: FieldSpec) -> DillonPolynomial:
    F = field
    if b == 0:
        raise FieldError("b must be nonzero")
    q = F.q
    N = F.norm(b)
    b_inv = F.inv(b)
    if N == 1:
        coeffs = {j: F.mul(a, F.pow(b_inv, j + 1)) if j % 2 else 0 for j in range(1, q + 1)}
        top = F.mul(a, b_inv)
    else:
        lead = F.div(F.mul(a, F.conj(b)), 1 ^ N)
        coeffs = {j: F.mul(lead, F.pow(b_inv, j)) for j in range(1, q + 1)}
        top = F.div(a, F.mul(b, 1 ^ N))
    constant = F.tr(F.mul(a, F.pow(b, q * q - 2)))
    return DillonPolynomial(F, coeffs, constant, top)


def verify_expansion(a: int, b: int, field: FieldSpec) -> bool:
    return expand_h1(a, b, field).evaluate() == rational_h(a, b, field)


def circle_series(field: FieldSpec, b: int, skip_zero: bool = False) -> int:
    """sum of b^(-k(q+1)) over even k in [0, q-2] (or [2, q-2] with ``skip_zero``)."""
    F = field
    acc = 0
    for k in range(2 if skip_zero else 0, F.q - 1, 2):
        acc ^= F.pow(b, -k * (F.q + 1))
    return acc
