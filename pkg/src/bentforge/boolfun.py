"""Boolean functions on GF(2^m) stored as truth tables.

A truth table is indexed by the integer encoding of the field element, so
``bits[x]`` is f(x).  Walsh values use the trace inner product:

    W_f(w) = sum_x (-1)^(f(x) + Tr_1^m(w x))
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field as dc_field
from math import gcd

import numpy as np

from .gf2m import FieldError, FieldSpec


@dataclass(frozen=True, eq=False)
class TruthTable:
    field: FieldSpec
    bits: np.ndarray

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.shape != (self.field.size,):
            raise ValueError(f"truth table needs {self.field.size} entries, got {bits.shape}")
        if bits.size and bits.max() > 1:
            raise ValueError("truth table entries must be 0/1")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    def __eq__(self, other):
        return (isinstance(other, TruthTable) and self.field == other.field
                and np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.field, self.bits.tobytes()))

    def __getitem__(self, x):
        return int(self.bits[x])

    def __xor__(self, other: TruthTable) -> TruthTable:
        return TruthTable(self.field, self.bits ^ other.bits)

    def weight(self) -> int:
        return int(self.bits.sum())

    def compose_power(self, i: int) -> TruthTable:
        """x -> f(x^i)."""
        return TruthTable(self.field, self.bits[self.field.pow_arr(self.field.elements(), i)])

    # file format: "m=<int>\n" then 2^m chars of 0/1

    def dumps(self) -> str:
        return f"m={self.field.m}\n" + "".join("01"[b] for b in self.bits) + "\n"

    @classmethod
    def loads(cls, text: str, field: FieldSpec | None = None) -> TruthTable:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if len(lines) != 2 or not lines[0].startswith("m="):
            raise ValueError("expected header 'm=<int>' followed by one line of bits")
        m = int(lines[0][2:])
        field = field or FieldSpec(m)
        if field.m != m:
            raise ValueError(f"table is for m={m}, field has m={field.m}")
        if set(lines[1]) - {"0", "1"}:
            raise ValueError("truth table may only contain '0' and '1'")
        return cls(field, np.frombuffer(lines[1].encode(), dtype=np.uint8) - ord("0"))


@dataclass(frozen=True)
class TracePoly:
    """sum_j Tr_1^{o(j)}(a_j x^j) + epsilon (1 + x^(2^m - 1))."""
    terms: tuple[tuple[int, int], ...] = ()
    epsilon: int = 0


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    field: FieldSpec
    values: np.ndarray = dc_field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WalshSpectrum) and np.array_equal(self.values, other.values)

    def __getitem__(self, w):
        return int(self.values[w])

    def to_csv(self) -> str:
        width = (self.field.m + 3) // 4
        buf = io.StringIO()
        buf.write("omega_hex,value\n")
        for w, v in enumerate(self.values):
            buf.write(f"0x{w:0{width}x},{int(v)}\n")
        return buf.getvalue()


# -- cyclotomic cosets ----------------------------------------------------

def cyclotomic_coset(j: int, m: int) -> list[int]:
    mod = (1 << m) - 1
    out, x = [], j % mod
    while x not in out:
        out.append(x)
        x = (2 * x) % mod
    return out


def coset_leader(j: int, m: int) -> int:
    return min(cyclotomic_coset(j, m))


def coset_leaders(m: int) -> list[int]:
    mod = (1 << m) - 1
    seen = set()
    leaders = []
    for j in range(mod):
        if j not in seen:
            c = cyclotomic_coset(j, m)
            seen.update(c)
            leaders.append(j)
    return leaders


# -- construction -----------------------------------------------------------

def zero_function(field: FieldSpec) -> TruthTable:
    return TruthTable(field, np.zeros(field.size, dtype=np.uint8))


def monomial_table(field: FieldSpec, a: int, d: int) -> TruthTable:
    """Tr_1^m(a x^d)."""
    vals = field.mul_arr(a, field.pow_arr(field.elements(), d))
    return TruthTable(field, field.trace_bits[vals].astype(np.uint8))


def from_trace_poly(p: TracePoly, field: FieldSpec) -> TruthTable:
    m = field.m
    x = field.elements()
    bits = np.zeros(field.size, dtype=np.uint8)
    seen = set()
    for j, a in p.terms:
        if not 0 <= j < field.order:
            raise ValueError(f"exponent {j} outside 0..2^m-2")
        leader = coset_leader(j, m)
        if leader in seen:
            raise ValueError(f"exponent {j} repeats an earlier cyclotomic coset")
        seen.add(leader)
        o = len(cyclotomic_coset(j, m))
        if not field.in_subfield(a, o):
            raise ValueError(f"coefficient {a:#x} of x^{j} is not in GF(2^{o})")
        if j == 0:
            bits ^= a & 1
            continue
        # 0^j = 0 for j > 0; x^(2^m-1) is 1 off zero
        vals = field.mul_arr(a, field.pow_arr(x, j))
        bits ^= (field.trace_table(1, o)[vals] & 1).astype(np.uint8)
    if p.epsilon:
        bits[0] ^= 1
    return TruthTable(field, bits)


def rational_h(a: int, b: int, field: FieldSpec) -> TruthTable:
    """x -> Tr_1^m(a / (x^(q-1) + b)) with 1/0 = 0."""
    if b == 0:
        raise FieldError("b must be nonzero")
    den = field.pow_arr(field.elements(), field.q - 1) ^ b
    vals = field.mul_arr(a, field.inv_arr(den))
    return TruthTable(field, field.trace_bits[vals].astype(np.uint8))


# -- Walsh transform ----------------------------------------------------------

def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis."""
    a = np.array(a, dtype=np.int64)
    lead = a.shape[:-1]
    size = a.shape[-1]
    h = 1
    while h < size:
        a = a.reshape(*lead, size // (2 * h), 2, h)
        x = a[..., 0, :].copy()
        a[..., 0, :] += a[..., 1, :]
        a[..., 1, :] = x - a[..., 1, :]
        h *= 2
    return a.reshape(*lead, size)


def _linear_coords(field: FieldSpec) -> np.ndarray:
    """For each w, the integer whose bit i is Tr(w * basis_i), built from the Gram matrix."""
    cached = field.__dict__.get("_walsh_coords")
    if cached is not None:
        return cached
    cols = [int(sum(int(field.gram_matrix[i, j]) << i for i in range(field.m)))
            for j in range(field.m)]
    coords = np.zeros(field.size, dtype=np.int64)
    for j, col in enumerate(cols):
        coords[(np.arange(field.size) >> j) & 1 == 1] ^= col
    coords.flags.writeable = False
    field.__dict__["_walsh_coords"] = coords
    return coords


def walsh_batch(field: FieldSpec, tables: np.ndarray) -> np.ndarray:
    """Walsh spectra of a stack of truth tables with shape (..., 2^m)."""
    signs = 1 - 2 * np.asarray(tables, dtype=np.int64)
    return fwht(signs)[..., _linear_coords(field)]


def walsh(f: TruthTable) -> WalshSpectrum:
    return WalshSpectrum(f.field, walsh_batch(f.field, f.bits))


def walsh_naive(f: TruthTable) -> WalshSpectrum:
    """Direct evaluation of the defining character sum, row by row."""
    F = f.field
    x = F.elements()
    signs = 1 - 2 * f.bits.astype(np.int64)
    vals = np.empty(F.size, dtype=np.int64)
    for w in range(F.size):
        chi = 1 - 2 * F.trace_bits[F.mul_arr(w, x)].astype(np.int64)
        vals[w] = int(np.dot(signs, chi))
    return WalshSpectrum(F, vals)


def bent_mask(field: FieldSpec, tables: np.ndarray) -> np.ndarray:
    """Row-wise bentness of a stack of truth tables."""
    if field.m % 2:
        raise FieldError("bent functions need even m")
    W = walsh_batch(field, tables)
    return np.all(np.abs(W) == field.q, axis=-1)


def is_bent(f: TruthTable) -> bool:
    return bool(bent_mask(f.field, f.bits))


def dual(f: TruthTable) -> TruthTable:
    W = walsh(f).values
    if not np.all(np.abs(W) == f.field.q):
        raise ValueError("dual is only defined for bent functions")
    return TruthTable(f.field, (W < 0).astype(np.uint8))


# -- algebraic normal form ------------------------------------------------------

def anf(f: TruthTable) -> np.ndarray:
    """ANF coefficients by the binary Moebius transform; index bit i = coordinate i."""
    a = f.bits.copy()
    size = a.size
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        a[:, 1, :] ^= a[:, 0, :]
        a = a.reshape(size)
        h *= 2
    return a


def anf_degree(f: TruthTable) -> int:
    """Algebraic degree; the zero function has degree 0."""
    coeffs = anf(f)
    idx = np.nonzero(coeffs)[0]
    if idx.size == 0:
        return 0
    return int(max(bin(int(i)).count("1") for i in idx))


# -- hyper-bentness ---------------------------------------------------------

def coprime_exponents(m: int) -> list[int]:
    """Leaders of the cyclotomic cosets of exponents coprime to 2^m - 1.

    Bentness of f(x^i) only depends on the coset of i, since x -> x^2 is linear.
    """
    mod = (1 << m) - 1
    return [j for j in coset_leaders(m) if gcd(j, mod) == 1]


def is_hyper_bent_def(f: TruthTable) -> bool:
    """f(x^i) bent for every i coprime to 2^m - 1 (m <= 12)."""
    F = f.field
    if F.m > 12:
        raise ValueError(
            "definitional hyper-bentness is limited to m <= 12; for Dillon-like "
            "functions use dillon.hyper_bent_weight_criterion")
    if F.m % 2:
        raise FieldError("hyper-bent functions need even m")
    x = F.elements()
    stack = np.stack([f.bits[F.pow_arr(x, i)] for i in coprime_exponents(F.m)])
    return bool(np.all(bent_mask(F, stack)))
