"""Kloosterman sums and closed-form exponential sums over the unit circle.

Every closed form here has a ``brute`` counterpart that sums the defining
character values directly; the two are kept on separate code paths so one
can serve as an oracle for the other.

Sums over GF(2^n) are taken inside a host field GF(2^m) with n | m; pass
``n`` explicitly to work in a proper subfield (the theorem checkers use the
quadratic subfield, n = m/2).
"""

from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .boolfun import walsh_batch
from .gf2m import FieldError, FieldSpec, unit_circle

CLOSED, BRUTE = "closed", "brute"


def _sub_n(field: FieldSpec, n: int | None) -> int:
    n = field.m if n is None else n
    if n < 1 or field.m % n:
        raise FieldError(f"{n} does not divide m={field.m}")
    return n


def _sign(bit) -> int:
    return 1 - 2 * (int(bit) & 1)


def kloosterman_bound(n: int) -> tuple[float, float]:
    """The interval [-2^(n/2+1)+1, 2^(n/2+1)+1] containing every K_n(a)."""
    r = 2.0 ** (n / 2 + 1)
    return -r + 1, r + 1


# -- Kloosterman sums -----------------------------------------------------------

def kloosterman(field: FieldSpec, a: int, n: int | None = None) -> int:
    """K_n(a) = sum_{x in GF(2^n)} (-1)^Tr_1^n(1/x + a x), with 1/0 = 0."""
    n = _sub_n(field, n)
    if a == 0:
        raise FieldError("Kloosterman sum needs a != 0")
    if not field.in_subfield(a, n):
        raise FieldError(f"{a:#x} is not in GF(2^{n})")
    x = field.subfield(n)
    tr = field.trace_table(1, n) & 1
    vals = field.inv_arr(x) ^ field.mul_arr(a, x)
    return int(np.sum(1 - 2 * tr[vals]))


@dataclass
class KloostermanTable:
    """K_n(a) for every nonzero a of GF(2^n) inside ``field``."""
    field: FieldSpec
    n: int
    values: dict[int, int]
    source: str = "computed"

    def __post_init__(self):
        self.validate()
        dense = np.zeros(self.field.size, dtype=np.int64)
        for a, v in self.values.items():
            dense[a] = v
        dense.flags.writeable = False
        self.dense = dense

    def validate(self):
        expected = set(int(a) for a in self.field.subfield(self.n)) - {0}
        if set(self.values) != expected:
            raise ValueError(f"table must cover exactly the {len(expected)} nonzero "
                             f"elements of GF(2^{self.n})")
        lo, hi = kloosterman_bound(self.n)
        for a, v in self.values.items():
            if v % 4:
                raise ValueError(f"K({a:#x}) = {v} is not a multiple of 4")
            if not lo <= v <= hi:
                raise ValueError(f"K({a:#x}) = {v} outside [{lo}, {hi}]")

    def __getitem__(self, a: int) -> int:
        return self.values[a]

    def to_csv(self) -> str:
        width = (self.field.m + 3) // 4
        buf = io.StringIO()
        buf.write(f"n={self.n}\npoly={self.field.poly:#x}\na_hex,value\n")
        for a in sorted(self.values):
            buf.write(f"0x{a:0{width}x},{self.values[a]}\n")
        return buf.getvalue()

    def write(self, path):
        Path(path).write_text(self.to_csv())

    @classmethod
    def from_csv(cls, text: str) -> KloostermanTable:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        try:
            if not lines[0].startswith("n="):
                raise ValueError("missing 'n=<int>' header")
            n = int(lines[0][2:])
            rows = lines[1:]
            poly = None
            if rows and rows[0].startswith("poly="):
                poly = int(rows[0][5:], 16)
                rows = rows[1:]
            if rows and rows[0].startswith("a_hex"):
                rows = rows[1:]
            values = {}
            for row in rows:
                a_hex, v = row.split(",")
                a = int(a_hex, 16)
                if a in values:
                    raise ValueError(f"duplicate row for {a_hex}")
                values[a] = int(v)
        except (IndexError, ValueError) as exc:
            raise ValueError(f"malformed Kloosterman table: {exc}") from exc
        field = FieldSpec(poly.bit_length() - 1, poly) if poly else FieldSpec(n)
        return cls(field, n, values, source="loaded-from-file")

    @classmethod
    def read(cls, path) -> KloostermanTable:
        return cls.from_csv(Path(path).read_text())


def build_kloosterman_table(field: FieldSpec, n: int | None = None) -> KloostermanTable:
    """All K_n(a) at once.

    For n = m this is the Walsh spectrum of x -> Tr(1/x); for a proper
    subfield it is an explicit q x q character matrix.
    """
    n = _sub_n(field, n)
    if n == field.m:
        g = field.trace_bits[field.inv_arr(field.elements())]
        W = walsh_batch(field, g)
        values = {a: int(W[a]) for a in range(1, field.size)}
    else:
        x = field.subfield(n)
        tr = field.trace_table(1, n) & 1
        inv_part = tr[field.inv_arr(x)]
        nz = x[1:]
        prod = tr[field.mul_arr(nz[:, None], x[None, :])]
        K = np.sum(1 - 2 * (prod ^ inv_part[None, :]), axis=1)
        values = {int(a): int(k) for a, k in zip(nz, K)}
    return KloostermanTable(field, n, values)


_TABLES: dict[tuple[FieldSpec, int], KloostermanTable] = {}


def table_path(field: FieldSpec, n: int, directory=None) -> Path | None:
    directory = directory or os.environ.get("BENTFORGE_TABLE_DIR")
    if not directory:
        return None
    return Path(directory) / f"kloosterman_m{field.m}_{field.poly:x}_n{n}.csv"


def kloosterman_table(field: FieldSpec, n: int | None = None) -> KloostermanTable:
    """Cached table; persisted under $BENTFORGE_TABLE_DIR when that is set."""
    n = _sub_n(field, n)
    key = (field, n)
    if key not in _TABLES:
        path = table_path(field, n)
        table = None
        if path is not None and path.exists():
            table = KloostermanTable.read(path)
            if table.field != field or table.n != n:
                table = None
        if table is None:
            table = build_kloosterman_table(field, n)
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                table.write(path)
        _TABLES[key] = table
    return _TABLES[key]


def kloosterman_variant(field: FieldSpec, a: int, n: int | None = None) -> int:
    """sum of (-1)^Tr(y) over y in GF(2^n) with Tr(a/y) = 1; equals -K_n(a)/2."""
    n = _sub_n(field, n)
    if a == 0:
        raise FieldError("a must be nonzero")
    if not field.in_subfield(a, n):
        raise FieldError(f"{a:#x} is not in GF(2^{n})")
    y = field.subfield(n)
    tr = field.trace_table(1, n) & 1
    keep = tr[field.mul_arr(a, field.inv_arr(y))] == 1
    return int(np.sum(1 - 2 * tr[y[keep]]))


# -- rational sum with quadratic denominator -----------------------------------

def rational_sum_S(field: FieldSpec, A: int, B: int, delta: int, mode: str = CLOSED,
                   n: int | None = None) -> int:
    """sum_{x in GF(2^n)} (-1)^Tr((A x + B) / (x^2 + x + delta)), with 1/0 = 0.

    Requires A != 0 and B^2/A^2 + B/A + delta != 0.
    """
    n = _sub_n(field, n)
    F = field
    for name, v in (("A", A), ("B", B), ("delta", delta)):
        if not F.in_subfield(v, n):
            raise FieldError(f"{name}={v:#x} is not in GF(2^{n})")
    if A == 0:
        raise FieldError("A must be nonzero")
    r = F.div(B, A)
    if F.mul(r, r) ^ r ^ delta == 0:
        raise FieldError("B^2/A^2 + B/A + delta vanishes")
    tr = F.trace_table(1, n) & 1

    if mode == BRUTE:
        x = F.subfield(n)
        num = F.mul_arr(A, x) ^ B
        den = F.mul_arr(x, x) ^ x ^ delta
        return int(np.sum(1 - 2 * tr[F.div_arr(num, den)]))
    if mode != CLOSED:
        raise ValueError(f"unknown mode {mode!r}")

    C = F.frobenius(F.mul(A, B) ^ F.mul(F.mul(A, A), delta), n - 1)
    BC = B ^ C
    assert BC != 0
    u = _sign(tr[A])
    v = _sign(tr[F.div(BC, A)])
    K = kloosterman_table(F, n)[BC]
    if tr[delta]:
        return u + v - K * u
    return -u - v + K * u + 2


# -- sums over the unit circle ---------------------------------------------------

def _circle(field: FieldSpec) -> np.ndarray:
    cached = field.__dict__.get("_circle")
    if cached is None:
        cached = np.array(unit_circle(field), dtype=np.int64)
        cached.flags.writeable = False
        field.__dict__["_circle"] = cached
    return cached


def _xi_brute(field: FieldSpec, a: int, b: int, lam: np.ndarray) -> int:
    vals = field.mul_arr(a, field.inv_arr(lam ^ b))
    return int(np.sum(1 - 2 * field.trace_bits[vals].astype(np.int64)))


def xi(field: FieldSpec, a: int, b: int, mode: str = CLOSED) -> int:
    """sum over lambda in U of (-1)^Tr_1^m(a / (lambda + b))."""
    F = field
    if b == 0:
        raise FieldError("b must be nonzero")
    if mode == BRUTE:
        return _xi_brute(F, a, b, _circle(F))
    if mode != CLOSED:
        raise ValueError(f"unknown mode {mode!r}")
    q = F.q
    if a == 0:
        return q + 1
    a_bar, b_bar = F.conj(a), F.conj(b)
    bb = F.mul(b, b_bar)
    if bb == 1:
        t = F.mul(a, b_bar)
        if t ^ F.conj(t) == 0:
            return 1 + q * _sign(F.tr_n_bits[F.mul(a, a_bar)])
        return 1
    arg = F.div(F.mul(a, a_bar), 1 ^ F.mul(bb, bb))
    K = kloosterman_table(F, F.n)[arg]
    return (1 - K) * _sign(F.tr(F.div(F.mul(a_bar, b), 1 ^ bb)))


def xi_closed_arr(field: FieldSpec, a, b) -> np.ndarray:
    """Closed-form xi over broadcast arrays of (a, b); b must be nonzero."""
    F = field
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if np.any(b == 0):
        raise FieldError("b must be nonzero")
    a, b = np.broadcast_arrays(a, b)
    q = F.q
    a_bar, b_bar = F.conj_arr(a), F.conj_arr(b)
    bb = F.mul_arr(b, b_bar)
    aa = F.mul_arr(a, a_bar)
    in_U = bb == 1

    t = F.mul_arr(a, b_bar)
    on_circle = np.where((t ^ F.conj_arr(t)) == 0,
                         1 + q * (1 - 2 * F.tr_n_bits[aa].astype(np.int64)), 1)

    K = kloosterman_table(F, F.n).dense
    arg = F.div_arr(aa, 1 ^ F.mul_arr(bb, bb))
    sign = 1 - 2 * F.trace_bits[F.div_arr(F.mul_arr(a_bar, b), 1 ^ bb)].astype(np.int64)
    off_circle = (1 - K[arg]) * sign

    out = np.where(in_U, on_circle, off_circle)
    return np.where(a == 0, q + 1, out)


def m_sum(field: FieldSpec, a: int, b: int) -> int:
    """sum over lambda in U minus {1} of (-1)^Tr_1^m(a / (lambda + b))."""
    if b == 0:
        raise FieldError("b must be nonzero")
    return _xi_brute(field, a, b, _circle(field)[1:])
