"""Bent functions h = F(f_1, ..., f_t) built from rational trace blocks.

Each block is ``f_i(x) = Tr(a_i / (x^(q-1) + b))`` with a shared ``b``.  The
combiner F is a Boolean function of t variables given by its truth table,
where bit i of the table index is the value of X_{i+1}.

Bentness of h is decided three ways here:

* ``xxeq_criterion`` - the generic identity
  ``2^t (-1)^F(Tr(a_i/b)) == sum_alpha W_F(alpha) xi(sum s_i a_i, b)``
  using closed-form xi values;
* ``thm1_check`` / ``thm2_check`` / ``thm3_check`` - explicit conditions for
  F = X1, X1X2 and X1X2+X1X3+X2X3, evaluated without any Walsh transform;
* ``walsh_mask`` - the full Walsh spectrum of the truth table (the oracle).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolfun import TruthTable, bent_mask, fwht, rational_h
from .expsums import kloosterman_table, xi, xi_closed_arr
from .gf2m import FieldError, FieldSpec

EXHAUSTIVE_LIMIT = 1 << 24


@dataclass(frozen=True, eq=False)
class Combiner:
    t: int
    table: np.ndarray
    walsh: np.ndarray

    def __eq__(self, other):
        return isinstance(other, Combiner) and self.t == other.t and np.array_equal(
            self.table, other.table)

    def __hash__(self):
        return hash((self.t, self.table.tobytes()))

    @classmethod
    def from_table(cls, t: int, table) -> Combiner:
        table = np.asarray(table, dtype=np.uint8)
        if t < 1 or table.shape != (1 << t,):
            raise ValueError(f"a {t}-variable combiner needs {1 << t} table entries")
        walsh = fwht(1 - 2 * table.astype(np.int64))
        table.flags.writeable = False
        walsh.flags.writeable = False
        return cls(t, table, walsh)

    @classmethod
    def from_anf(cls, t: int, monomials) -> Combiner:
        """Build from monomials given as tuples of 1-based variable indices."""
        table = np.zeros(1 << t, dtype=np.uint8)
        for X in range(1 << t):
            for mono in monomials:
                table[X] ^= all(X >> (i - 1) & 1 for i in mono)
        return cls.from_table(t, table)

    @classmethod
    def from_hex(cls, spec: str) -> Combiner:
        """Parse ``<t>:<hex>``, a bare hex table, or one of the names in NAMED."""
        key = spec.strip().lower()
        if key in NAMED:
            return NAMED[key]
        if ":" in key:
            t_str, hex_str = key.split(":", 1)
            t, value = int(t_str), int(hex_str, 16)
        else:
            value = int(key, 16)
            t = 1
            while value >> (1 << t):
                t += 1
        if value >> (1 << t):
            raise ValueError(f"table {spec} does not fit {t} variables")
        return cls.from_table(t, [(value >> i) & 1 for i in range(1 << t)])

    @property
    def table_hex(self) -> str:
        return hex(sum(int(v) << i for i, v in enumerate(self.table)))

    def __call__(self, *bits) -> int:
        return int(self.table[sum((int(b) & 1) << i for i, b in enumerate(bits))])


X1 = Combiner.from_anf(1, [(1,)])
X1X2 = Combiner.from_anf(2, [(1, 2)])
MAJ3 = Combiner.from_anf(3, [(1, 2), (1, 3), (2, 3)])
X1X2X3 = Combiner.from_anf(3, [(1, 2, 3)])
NAMED = {"x1": X1, "x1x2": X1X2, "maj3": MAJ3, "x1x2+x1x3+x2x3": MAJ3, "x1x2x3": X1X2X3}


@dataclass(frozen=True)
class HParams:
    a_list: tuple[int, ...]
    b: int
    combiner: Combiner

    def __post_init__(self):
        object.__setattr__(self, "a_list", tuple(int(a) for a in self.a_list))
        if self.b == 0:
            raise FieldError("b must be nonzero")
        if len(self.a_list) != self.combiner.t:
            raise ValueError(f"combiner takes {self.combiner.t} blocks, "
                             f"got {len(self.a_list)} coefficients")


def _sign(bit) -> int:
    return 1 - 2 * (int(bit) & 1)


# -- construction ---------------------------------------------------------------

def build_h(p: HParams, field: FieldSpec) -> TruthTable:
    idx = np.zeros(field.size, dtype=np.int64)
    for i, a in enumerate(p.a_list):
        idx |= rational_h(a, p.b, field).bits.astype(np.int64) << i
    return TruthTable(field, p.combiner.table[idx])


def h_tables(field: FieldSpec, combiner: Combiner, A, b) -> np.ndarray:
    """Truth tables of h for rows of coefficients ``A`` (k, t) and ``b`` (k,)."""
    A = np.asarray(A, dtype=np.int64).reshape(-1, combiner.t)
    b = np.broadcast_to(np.asarray(b, dtype=np.int64), (A.shape[0],))
    inv = field.inv_arr(field.pow_arr(field.elements(), field.q - 1)[None, :] ^ b[:, None])
    idx = np.zeros((A.shape[0], field.size), dtype=np.int64)
    for i in range(combiner.t):
        idx |= field.trace_bits[field.mul_arr(A[:, i:i + 1], inv)].astype(np.int64) << i
    return combiner.table[idx]


def walsh_mask(field: FieldSpec, combiner: Combiner, A, b, chunk: int = 4096) -> np.ndarray:
    """Bentness of each h by its full Walsh spectrum."""
    A = np.asarray(A, dtype=np.int64).reshape(-1, combiner.t)
    b = np.broadcast_to(np.asarray(b, dtype=np.int64), (A.shape[0],))
    step = max(1, chunk * 64 // field.size)
    out = np.empty(A.shape[0], dtype=bool)
    for s in range(0, A.shape[0], step):
        out[s:s + step] = bent_mask(field, h_tables(field, combiner, A[s:s + step], b[s:s + step]))
    return out


# -- generic criterion ----------------------------------------------------------

def xxeq_terms(p: HParams, field: FieldSpec, mode: str = "closed") -> tuple[int, int]:
    """(left, right) sides of the combiner identity; h is bent iff they agree."""
    if field.q <= 2:
        raise ValueError("the criterion needs q > 2")
    C = p.combiner
    at_zero = [field.tr(field.div(a, p.b)) for a in p.a_list]
    left = (1 << C.t) * _sign(C(*at_zero))
    right = 0
    for alpha in range(1 << C.t):
        if C.walsh[alpha] == 0:
            continue
        s = 0
        for i, a in enumerate(p.a_list):
            if alpha >> i & 1:
                s ^= a
        right += int(C.walsh[alpha]) * xi(field, s, p.b, mode)
    return left, right


def xxeq_criterion(p: HParams, field: FieldSpec, mode: str = "closed") -> bool:
    left, right = xxeq_terms(p, field, mode)
    return left == right


def xxeq_mask(field: FieldSpec, combiner: Combiner, A, b) -> np.ndarray:
    """Vectorised ``xxeq_criterion`` over coefficient rows ``A`` (k, t) and ``b``."""
    if field.q <= 2:
        raise ValueError("the criterion needs q > 2")
    A = np.asarray(A, dtype=np.int64).reshape(-1, combiner.t)
    b = np.broadcast_to(np.asarray(b, dtype=np.int64), (A.shape[0],))
    idx = np.zeros(A.shape[0], dtype=np.int64)
    for i in range(combiner.t):
        idx |= field.trace_bits[field.div_arr(A[:, i], b)].astype(np.int64) << i
    left = (1 << combiner.t) * (1 - 2 * combiner.table[idx].astype(np.int64))
    right = np.zeros(A.shape[0], dtype=np.int64)
    for alpha in range(1 << combiner.t):
        w = int(combiner.walsh[alpha])
        if w == 0:
            continue
        s = np.zeros(A.shape[0], dtype=np.int64)
        for i in range(combiner.t):
            if alpha >> i & 1:
                s ^= A[:, i]
        right += w * xi_closed_arr(field, s, b)
    return left == right


def remark2_identity(field: FieldSpec, a1: int, a2: int, a3: int, b: int) -> bool:
    """The expanded criterion for F = X1 X2 X3:

    4 (-1)^(t1 t2 t3) = 3(q+1) + xi(a1) + xi(a2) + xi(a3) + xi(a1+a2+a3)
                        - xi(a1+a2) - xi(a1+a3) - xi(a2+a3),   t_i = Tr(a_i/b).
    """
    F = field
    t1, t2, t3 = (F.tr(F.div(a, b)) for a in (a1, a2, a3))
    rhs = (3 * (F.q + 1) + xi(F, a1, b) + xi(F, a2, b) + xi(F, a3, b)
           + xi(F, a1 ^ a2 ^ a3, b) - xi(F, a1 ^ a2, b) - xi(F, a1 ^ a3, b) - xi(F, a2 ^ a3, b))
    return 4 * _sign(t1 & t2 & t3) == rhs


def remark2_mask(field: FieldSpec, A, b) -> np.ndarray:
    """``remark2_identity`` over coefficient rows ``A`` (k, 3) and ``b``."""
    F = field
    A = np.asarray(A, dtype=np.int64).reshape(-1, 3)
    b = np.broadcast_to(np.asarray(b, dtype=np.int64), (A.shape[0],))
    a1, a2, a3 = A.T
    t = [F.trace_bits[F.div_arr(a, b)].astype(np.int64) for a in (a1, a2, a3)]
    rhs = 3 * (F.q + 1)
    for s in (a1, a2, a3, a1 ^ a2 ^ a3):
        rhs = rhs + xi_closed_arr(F, s, b)
    for s in (a1 ^ a2, a1 ^ a3, a2 ^ a3):
        rhs = rhs - xi_closed_arr(F, s, b)
    return 4 * (1 - 2 * (t[0] & t[1] & t[2])) == rhs


# -- explicit theorem conditions ------------------------------------------------

def _require_base_a1(field: FieldSpec, a1: int):
    if a1 == 0 or not field.in_base(a1):
        raise FieldError(f"a1={a1:#x} must lie in GF(2^{field.n})*; apply normalize_a1 first")


def _kn(field: FieldSpec, x: int) -> int:
    dense = field.__dict__.get("_kn_dense")
    if dense is None:
        dense = kloosterman_table(field, field.n).dense.tolist()
        field.__dict__["_kn_dense"] = dense
    if x == 0 or not field.in_base(x):
        raise FieldError(f"K_n needs a nonzero argument in GF(2^{field.n}), got {x:#x}")
    return dense[x]


def _rel_trace(field: FieldSpec, x: int) -> int:
    """Tr_n^{2n}(x) = x + conj(x)."""
    return x ^ field.conj(x)


def thm1_condition(field: FieldSpec, a1: int, b: int) -> str | None:
    """Which condition makes Tr(a1/(x^(q-1)+b)) bent: "(1)", "(2)" or None."""
    F = field
    _require_base_a1(F, a1)
    if b == 0:
        raise FieldError("b must be nonzero")
    if b == 1:
        return None
    bb = F.norm(b)
    if bb == 1:
        return "(1)" if F.tr(F.div(a1, b)) == 0 else None
    if _kn(F, F.div(a1, 1 ^ bb)) != 0:
        return None
    t = F.div(F.mul(a1, b ^ F.conj(b)), F.mul(1 ^ bb, bb))
    return "(2)" if F.tr_n(t) == 0 else None


def thm1_check(field: FieldSpec, a1: int, b: int) -> bool:
    return thm1_condition(field, a1, b) is not None


def thm2_condition(field: FieldSpec, a1: int, a2: int, b: int) -> str | None:
    """Condition label for F = X1 X2, or None; requires n >= 6."""
    F = field
    if F.n < 6:
        raise ValueError(f"the X1X2 characterisation needs n >= 6, field has n={F.n}")
    _require_base_a1(F, a1)
    if a2 == 0 or b == 0:
        raise FieldError("a2 and b must be nonzero")
    if a1 == a2:
        raise ValueError("a1 and a2 must differ")
    h0 = F.tr(F.div(a1, b)) & F.tr(F.div(a2, b))
    b_bar = F.conj(b)
    if b == 1:
        if F.tr_n(a1) == 1 and not F.in_base(a2):
            return "(1)"
        return None
    if not F.in_unit_circle(b):
        return None
    if h0:
        return None
    if _rel_trace(F, F.mul(a2, b_bar)) == 0 and F.tr_n(F.norm(a2)) == 1:
        return "(2)"
    s = a1 ^ a2
    if _rel_trace(F, F.mul(s, b_bar)) == 0 and F.tr_n(F.mul(s, a1 ^ F.conj(a2))) == 0:
        return "(3)"
    return None


def thm2_check(field: FieldSpec, a1: int, a2: int, b: int) -> bool:
    return thm2_condition(field, a1, a2, b) is not None


def _thm3_ordered(F: FieldSpec, a1: int, a2: int, a3: int, b: int, h0: int) -> str | None:
    s = a1 ^ a2 ^ a3
    if b == 1:
        in2, in3 = F.in_base(a2), F.in_base(a3)
        if in2 and not in3 and F.tr_n(a1 ^ a2) == 1:
            return "(1)"
        if (not in2 and not in3 and F.in_base(a2 ^ a3) and F.tr_n(a2 ^ a3) == 0
                and F.tr(a2) == 0):
            return "(2)"
        return None
    b_bar = F.conj(b)
    if F.in_unit_circle(b):
        if h0:
            return None
        T2 = _rel_trace(F, F.mul(a2, b_bar))
        T3 = _rel_trace(F, F.mul(a3, b_bar))
        Ts = _rel_trace(F, F.mul(s, b_bar))
        if T2 == 0 and T3 == 0 and F.tr_n(F.norm(a2) ^ F.norm(a3)) == 1:
            return "(3)"
        if (T2 == 0 and T3 != 0 and Ts == 0
                and F.tr_n(F.norm(a2)) == F.tr_n(F.mul(s, a1 ^ F.conj(a2) ^ F.conj(a3)))):
            return "(4)"
        if T2 != 0 and T3 != 0 and Ts != 0:
            return "(5)"
        return None
    bb = F.norm(b)
    den_k = 1 ^ F.mul(bb, bb)

    def k(x):
        return _kn(F, F.div(F.norm(x), den_k))

    def u(x):
        return F.tr(F.div(F.mul(F.conj(x), b), 1 ^ bb))

    u1, u2, u3 = u(a1), u(a2), u(a3)
    rhs = (2 * _sign(u1 * u2 + u1 * u3 + u2 * u3) + _sign(u(s)) * k(s)
           - sum(_sign(u(a)) * k(a) for a in (a1, a2, a3)))
    return "(6)" if 2 * _sign(h0) == rhs else None


def thm3_condition(field: FieldSpec, a1: int, a2: int, a3: int, b: int) -> str | None:
    """Condition label (1)..(6) for F = X1X2+X1X3+X2X3, or None.

    Conditions are tried with (a2, a3) in both orders.
    """
    F = field
    if F.n <= 2:
        raise ValueError(f"the majority characterisation needs n > 2, field has n={F.n}")
    _require_base_a1(F, a1)
    if a2 == 0 or a3 == 0 or b == 0:
        raise FieldError("a2, a3 and b must be nonzero")
    if len({a1, a2, a3}) < 3:
        raise ValueError("a1, a2, a3 must be pairwise different")
    if a1 ^ a2 ^ a3 == 0:
        raise ValueError("a1 + a2 + a3 must be nonzero")
    t1, t2, t3 = (F.tr(F.div(a, b)) for a in (a1, a2, a3))
    h0 = (t1 & t2) ^ (t1 & t3) ^ (t2 & t3)
    labels = {_thm3_ordered(F, a1, a2, a3, b, h0), _thm3_ordered(F, a1, a3, a2, b, h0)}
    labels.discard(None)
    return min(labels) if labels else None


def thm3_check(field: FieldSpec, a1: int, a2: int, a3: int, b: int) -> bool:
    return thm3_condition(field, a1, a2, a3, b) is not None


def theorem_condition(field: FieldSpec, p: HParams) -> str:
    """Matched theorem condition for the three characterised combiners.

    Returns the label, "none" when the theorem applies but no condition
    holds, "precondition" when its hypotheses fail, and "" for other combiners.
    """
    checker = {X1: thm1_condition, X1X2: thm2_condition, MAJ3: thm3_condition}.get(p.combiner)
    if checker is None:
        return ""
    try:
        label = checker(field, *p.a_list, p.b)
    except ValueError:
        return "precondition"
    return label or "none"


# -- normalisation --------------------------------------------------------------

def normalizing_shift(field: FieldSpec, a1: int) -> int:
    """The i with a1 = w^(i(q-1)) * a for some a in GF(2^n)*, 0 <= i <= q."""
    if a1 == 0:
        raise FieldError("a1 must be nonzero")
    q = field.q
    L = int(field.log[a1])
    # mod q+1 the GF(2^n)* part vanishes; q-1 is invertible there since q+1 is odd
    return (L * pow(q - 1, -1, q + 1)) % (q + 1)


def normalize_a1(p: HParams, field: FieldSpec) -> HParams:
    """Move a1 into GF(2^n)* by the substitution x -> w^i x.

    Every a_j and b are divided by c = w^(i(q-1)), so that the new h satisfies
    h_new(x) = h_old(w^i x).
    """
    i = normalizing_shift(field, p.a_list[0])
    c = field.w(i * (field.q - 1))
    return HParams(tuple(field.div(a, c) for a in p.a_list), field.div(p.b, c), p.combiner)


# -- parameter enumeration -------------------------------------------------------

def parameter_count(field: FieldSpec, combiner: Combiner) -> int:
    """Size of the space a1 in GF(2^n)*, a2..at and b in GF(2^m)*."""
    return (field.q - 1) * field.order ** combiner.t


def _base_nonzero(field: FieldSpec) -> np.ndarray:
    return field.subfield(field.n)[1:]


def coefficient_grid(field: FieldSpec, t: int) -> np.ndarray:
    """All rows (a1, ..., at) with a1 in GF(2^n)* and the rest nonzero, lexicographic."""
    axes = [_base_nonzero(field)] + [np.arange(1, field.size)] * (t - 1)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def sample_parameters(field: FieldSpec, combiner: Combiner, k: int, seed: int = 0):
    """k random rows (A, b) drawn with a seeded generator."""
    rng = np.random.default_rng(seed)
    base = _base_nonzero(field)
    A = np.empty((k, combiner.t), dtype=np.int64)
    A[:, 0] = base[rng.integers(0, base.size, k)]
    if combiner.t > 1:
        A[:, 1:] = rng.integers(1, field.size, (k, combiner.t - 1))
    b = rng.integers(1, field.size, k)
    return A, b


def enumerate_bent(field: FieldSpec, combiner: Combiner, scope="exhaustive",
                   seed: int = 0) -> list[HParams]:
    """Parameter sets satisfying the combiner criterion.

    ``scope`` is "exhaustive" or an int k: sample k random candidates with
    ``seed`` and keep those that pass.  Results are sorted by (b, a_list).
    """
    if combiner.table.sum() == 0 or combiner.table.sum() == combiner.table.size:
        return []
    found = []
    if scope == "exhaustive":
        count = parameter_count(field, combiner)
        if count > EXHAUSTIVE_LIMIT:
            raise ValueError(f"{count} parameter sets exceed the exhaustive limit "
                             f"{EXHAUSTIVE_LIMIT}; use sampling")
        grid = coefficient_grid(field, combiner.t)
        for b in range(1, field.size):
            mask = xxeq_mask(field, combiner, grid, b)
            found.extend((tuple(int(a) for a in row), b) for row in grid[mask])
    else:
        A, b = sample_parameters(field, combiner, int(scope), seed)
        mask = xxeq_mask(field, combiner, A, b)
        found = sorted({(tuple(int(a) for a in row), int(bb))
                        for row, bb in zip(A[mask], b[mask])}, key=lambda r: (r[1], r[0]))
    return [HParams(a, b, combiner) for a, b in found]


def all_parameters(field: FieldSpec, combiner: Combiner):
    """Iterate (A, b) blocks over the exhaustive space, one block per b."""
    grid = coefficient_grid(field, combiner.t)
    for b in range(1, field.size):
        yield grid, b


__all__ = [
    "Combiner", "HParams", "X1", "X1X2", "MAJ3", "X1X2X3", "NAMED",
    "build_h", "h_tables", "walsh_mask", "xxeq_criterion", "xxeq_terms", "xxeq_mask",
    "remark2_identity", "remark2_mask", "thm1_check", "thm1_condition", "thm2_check",
    "thm2_condition", "thm3_check", "thm3_condition", "theorem_condition", "normalize_a1",
    "normalizing_shift", "enumerate_bent", "parameter_count", "coefficient_grid",
    "sample_parameters", "all_parameters",
]
