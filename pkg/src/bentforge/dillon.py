"""Dillon-like functions f(x) = g(x^(q-1)) on GF(q^2), q = 2^n.

Such an f is determined by f(0) = g(0) and the q+1 values of g on the unit
circle U.  Circle values are stored in the order of powers of the circle
generator ``z = w^(q-1)``: entry k holds g(z^k).  Since
``(w^L)^(q-1) = z^(L mod (q+1))``, the full table is ``f(w^L) = g[L mod (q+1)]``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .boolfun import TruthTable
from .gf2m import FieldError, FieldSpec


@dataclass(frozen=True, eq=False)
class DillonFunction:
    field: FieldSpec
    g_on_circle: np.ndarray
    g_at_zero: int

    def __post_init__(self):
        g = np.ascontiguousarray(self.g_on_circle, dtype=np.uint8)
        if g.shape != (self.field.q + 1,):
            raise ValueError(f"need {self.field.q + 1} circle values, got {g.shape}")
        g.flags.writeable = False
        object.__setattr__(self, "g_on_circle", g)
        object.__setattr__(self, "g_at_zero", int(self.g_at_zero) & 1)

    def __eq__(self, other):
        return (isinstance(other, DillonFunction) and self.field == other.field
                and self.g_at_zero == other.g_at_zero
                and np.array_equal(self.g_on_circle, other.g_on_circle))

    def g(self, lam: int) -> int:
        """g at an element of U union {0}."""
        if lam == 0:
            return self.g_at_zero
        F = self.field
        L = int(F.log[lam])
        if L % (F.q - 1):
            raise FieldError(f"{lam:#x} is not on the unit circle")
        return int(self.g_on_circle[L // (F.q - 1)])

    @cached_property
    def circle_sum(self) -> int:
        """sum over U of (-1)^g(lambda)."""
        return int(self.field.q + 1 - 2 * int(self.g_on_circle.sum()))

    def to_table(self) -> TruthTable:
        F = self.field
        bits = np.empty(F.size, dtype=np.uint8)
        bits[0] = self.g_at_zero
        L = np.arange(F.order)
        bits[F.exp[L]] = self.g_on_circle[L % (F.q + 1)]
        return TruthTable(F, bits)

    def to_csv(self) -> str:
        F = self.field
        width = (F.m + 3) // 4
        buf = io.StringIO()
        buf.write("lambda_hex,g_bit\n")
        for k, bit in enumerate(self.g_on_circle):
            buf.write(f"0x{F.w(k * (F.q - 1)):0{width}x},{int(bit)}\n")
        return buf.getvalue()


def _sign(bit) -> int:
    return 1 - 2 * int(bit)


def detect_dillon(f: TruthTable) -> DillonFunction | None:
    """Return g when f(w^(q+1) x) = f(x) for every x, else None."""
    F = f.field
    q = F.q
    L = np.arange(F.order)
    if not np.array_equal(f.bits[F.exp[L + q + 1]], f.bits[F.exp[L]]):
        return None
    # x = w^k satisfies x^(q-1) = z^k
    return DillonFunction(F, f.bits[F.exp[np.arange(q + 1)]], int(f.bits[0]))


def from_g(field: FieldSpec, g, g_at_zero: int = 0) -> DillonFunction:
    """Build from a callable on U (applied to each circle element in order) or a bit array."""
    if callable(g):
        circle = [g(field.w(k * (field.q - 1))) for k in range(field.q + 1)]
        return DillonFunction(field, np.array(circle, dtype=np.uint8), g_at_zero)
    return DillonFunction(field, np.asarray(g, dtype=np.uint8), g_at_zero)


def restricted_walsh(d: DillonFunction, alpha: int) -> int:
    """W_f(alpha) computed from the circle values alone."""
    F = d.field
    q = F.q
    if alpha == 0:
        # sum over U of (-1)^g(conj(lambda)^2): lambda = z^k maps to z^(-2k)
        k = np.arange(q + 1)
        s = int(np.sum(1 - 2 * d.g_on_circle[(-2 * k) % (q + 1)].astype(np.int64)))
        return _sign(d.g_at_zero) + (q - 1) * s
    # alpha^(1-q) = z^(-L) for alpha = w^L
    k = (-int(F.log[alpha])) % (q + 1)
    return _sign(d.g_at_zero) - d.circle_sum + q * _sign(d.g_on_circle[k])


def restricted_spectrum(d: DillonFunction) -> np.ndarray:
    """restricted_walsh at every alpha, vectorised."""
    F = d.field
    q = F.q
    out = np.empty(F.size, dtype=np.int64)
    out[0] = restricted_walsh(d, 0)
    L = np.arange(F.order)
    signs = 1 - 2 * d.g_on_circle.astype(np.int64)
    out[F.exp[L]] = _sign(d.g_at_zero) - d.circle_sum + q * signs[(-L) % (q + 1)]
    return out


def bent_criterion_U(d: DillonFunction) -> bool:
    """f is bent iff sum_U (-1)^g = (-1)^f(0)  (needs q > 2)."""
    if d.field.q <= 2:
        raise ValueError("the unit-circle criterion needs q > 2")
    return d.circle_sum == _sign(d.g_at_zero)


def hyper_bent_weight_criterion(f: TruthTable | DillonFunction) -> bool:
    """Weight test for hyper-bentness of functions invariant under x -> w^(q+1) x.

    With f(0) = 0 the function is hyper-bent iff (f(1), f(w), ..., f(w^q)) has
    weight q/2; for f(0) = 1 the test is applied to f + 1.
    """
    d = f if isinstance(f, DillonFunction) else detect_dillon(f)
    if d is None:
        raise ValueError("function is not invariant under multiplication by w^(q+1)")
    vec = d.g_on_circle ^ d.g_at_zero
    return int(vec.sum()) == d.field.q // 2


def dillon_dual(d: DillonFunction) -> DillonFunction:
    """The dual x -> g(x^(q^2-q)); x^(q^2-q) = conj(x^(q-1)), so g'(z^k) = g(z^-k)."""
    if not bent_criterion_U(d):
        raise ValueError("dual is only defined for bent functions")
    k = np.arange(d.field.q + 1)
    return DillonFunction(d.field, d.g_on_circle[(-k) % (d.field.q + 1)], d.g_at_zero)
