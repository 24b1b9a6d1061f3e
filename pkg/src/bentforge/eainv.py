"""Invariants that can separate Boolean functions up to EA-equivalence.

f and g are EA-equivalent when g(x) = f(A x + c) + l(x) with A an invertible
GF(2)-linear map on the 2^m-element vector space and l affine.  No decision
procedure is attempted: the module only computes invariants, and two
functions with equal invariants are reported as indistinguishable, nothing more.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .boolfun import (TruthTable, anf_degree, bent_mask, coprime_exponents, walsh)
from .gf2m import FieldError, FieldSpec

HYPER_PROFILE_MAX_M = 12
INDISTINGUISHABLE = "indistinguishable by these invariants"


@dataclass(frozen=True)
class InvariantFingerprint:
    degree: int                                         # max(deg f, 1): all affine f form one class
    walsh_multiset: tuple[tuple[int, int], ...]        # (|W|, multiplicity), sorted by |W|
    hyper_profile: tuple[tuple[int, bool], ...] | None  # (exponent leader i, f(x^i) bent)
    hyper_profile_omitted: bool = False

    def profile_hash(self) -> str:
        if self.hyper_profile is None:
            return "omitted"
        bits = "".join("1" if b else "0" for _, b in self.hyper_profile)
        return hashlib.sha256(bits.encode()).hexdigest()[:16]

    def canonical(self) -> str:
        """Single-line form ``degree|multiset|profile hash`` for diffing."""
        ms = ",".join(f"{v}x{c}" for v, c in self.walsh_multiset)
        return f"{self.degree}|{ms}|{self.profile_hash()}"

    def __str__(self):
        return self.canonical()


def walsh_multiset(f: TruthTable) -> tuple[tuple[int, int], ...]:
    counts = Counter(np.abs(walsh(f).values).tolist())
    return tuple(sorted((int(v), int(c)) for v, c in counts.items()))


def hyper_profile(f: TruthTable) -> tuple[tuple[int, bool], ...]:
    """Bentness of x -> f(x^i) for each coset leader i coprime to 2^m - 1."""
    F = f.field
    if F.m > HYPER_PROFILE_MAX_M:
        raise ValueError(f"hyper profile is limited to m <= {HYPER_PROFILE_MAX_M}")
    exps = coprime_exponents(F.m)
    x = F.elements()
    stack = np.stack([f.bits[F.pow_arr(x, i)] for i in exps])
    if F.m % 2:
        mask = np.zeros(len(exps), dtype=bool)
    else:
        mask = bent_mask(F, stack)
    return tuple((int(i), bool(b)) for i, b in zip(exps, mask))


def fingerprint(f: TruthTable) -> InvariantFingerprint:
    """Degree, |Walsh| multiset and (for m <= 12) the hyper profile.

    Adding Tr(ux) + e moves a constant to degree 1, so the degree component is
    clamped below at 1; above that the algebraic degree is EA-invariant.
    """
    omit = f.field.m > HYPER_PROFILE_MAX_M
    return InvariantFingerprint(
        degree=max(anf_degree(f), 1),
        walsh_multiset=walsh_multiset(f),
        hyper_profile=None if omit else hyper_profile(f),
        hyper_profile_omitted=omit,
    )


@dataclass(frozen=True)
class DistinguishReport:
    differing: tuple[str, ...]
    left: InvariantFingerprint
    right: InvariantFingerprint

    @property
    def distinguished(self) -> bool:
        return bool(self.differing)

    @property
    def outcome(self) -> str:
        if self.differing:
            return "distinguished by " + ", ".join(self.differing)
        return INDISTINGUISHABLE

    def __str__(self):
        return self.outcome


def distinguish(f: TruthTable, g: TruthTable) -> DistinguishReport:
    """Compare fingerprints component by component.

    Equal fingerprints never imply EA-equivalence; the outcome string then
    says so explicitly.  A hyper profile missing on either side is skipped.
    """
    if f.field != g.field:
        raise FieldError("functions live on different fields")
    a, b = fingerprint(f), fingerprint(g)
    diff = []
    if a.degree != b.degree:
        diff.append("degree")
    if a.walsh_multiset != b.walsh_multiset:
        diff.append("walsh_multiset")
    if a.hyper_profile is not None and b.hyper_profile is not None \
            and a.hyper_profile != b.hyper_profile:
        diff.append("hyper_profile")
    return DistinguishReport(tuple(diff), a, b)


# -- random EA transforms -------------------------------------------------------

def _gf2_rank(rows: list[int]) -> int:
    rank = 0
    rows = list(rows)
    while rows:
        pivot = rows.pop()
        if pivot == 0:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
    return rank


def random_invertible_matrix(m: int, rng: np.random.Generator) -> list[int]:
    """Columns of a uniformly random invertible m x m matrix over GF(2), as ints."""
    while True:
        cols = [int(c) for c in rng.integers(0, 1 << m, size=m)]
        if _gf2_rank(cols) == m:
            return cols


def apply_linear(cols: list[int], size: int) -> np.ndarray:
    """Image of every x in [0, size) under the GF(2)-linear map with these columns."""
    x = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    for j, c in enumerate(cols):
        out[(x >> j) & 1 == 1] ^= c
    return out


def ea_transform(f: TruthTable, cols: list[int], c: int, u: int, e: int) -> TruthTable:
    """x -> f(A x + c) + Tr(u x) + e."""
    F = f.field
    y = apply_linear(cols, F.size) ^ c
    lin = F.trace_bits[F.mul_arr(u, F.elements())]
    return TruthTable(F, f.bits[y] ^ lin.astype(np.uint8) ^ (e & 1))


def random_ea_transform(f: TruthTable, rng: np.random.Generator) -> TruthTable:
    F = f.field
    cols = random_invertible_matrix(F.m, rng)
    c, u = (int(v) for v in rng.integers(0, F.size, size=2))
    e = int(rng.integers(0, 2))
    return ea_transform(f, cols, c, u, e)


# -- known bent monomial exponents on GF(2^(2n)) ---------------------------------

def gold_exponent(i: int = 1) -> int:
    return (1 << i) + 1


def leander_exponent(m: int) -> int | None:
    """(2^(n/2) + 1)^2 with n = m/2; needs 4 | m.

    Bent coefficients only turn up when n/2 is odd: none at m = 8, some at m = 12.
    """
    if m % 4:
        return None
    return ((1 << (m // 4)) + 1) ** 2


def kasami_exponent(i: int) -> int:
    return (1 << (2 * i)) - (1 << i) + 1


def cck_exponent(m: int) -> int | None:
    """2^(2n/3) + 2^(n/3) + 1 with n = m/2; needs 6 | m."""
    if m % 6:
        return None
    k = m // 6
    return (1 << (2 * k)) + (1 << k) + 1


def known_exponents(m: int) -> dict[str, int]:
    """Gold (i = 1), Leander and Canteaut-Charpin-Kyureghyan exponents defined at this m."""
    out = {"gold": gold_exponent(1)}
    for name, d in (("leander", leander_exponent(m)), ("cck", cck_exponent(m))):
        if d is not None:
            out[name] = d
    return out


def bent_monomial(field: FieldSpec, d: int) -> TruthTable | None:
    """Tr(a x^d) for the first a (in integer order) that makes it bent, if any."""
    x = field.elements()
    xd = field.pow_arr(x, d)
    for a in range(1, field.size):
        f = TruthTable(field, field.trace_bits[field.mul_arr(a, xd)].astype(np.uint8))
        if bent_mask(field, f.bits):
            return f
    return None

