"""Built-in reference parameter sets with their expected condition labels.

Elements are written as exponents of the field generator w, so the sets are
only meaningful together with the reduction polynomial stored next to them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .boolfun import walsh
from .constructions import MAJ3, X1, X1X2, Combiner, HParams, build_h, theorem_condition, \
    xxeq_criterion
from .gf2m import FieldSpec


@dataclass(frozen=True)
class ReferenceSet:
    name: str
    m: int
    poly: int
    combiner: Combiner
    a_logs: tuple[int, ...]
    b_log: int
    condition: str


def _sets(name, m, poly, combiner, rows):
    return [ReferenceSet(name, m, poly, combiner, tuple(a), b, label) for a, b, label in rows]


REFERENCE_SETS: list[ReferenceSet] = (
    _sets("example-1", 6, 0x5B, X1, [((0,), 7, "(1)"), ((0,), 1, "(2)")])
    + _sets("example-2", 12, 0x10EB, X1X2, [
        ((195, 1), 0, "(1)"), ((0, 258), 63, "(2)"), ((0, 60), 63, "(3)")])
    + _sets("example-3", 6, 0x5B, MAJ3, [
        ((27, 9, 1), 0, "(1)"), ((27, 1, 5), 0, "(2)"), ((27, 16, 34), 7, "(3)"),
        ((27, 16, 11), 7, "(4)"), ((27, 1, 3), 7, "(5)"), ((27, 3, 9), 1, "(6)")])
)


@dataclass(frozen=True)
class ReferenceResult:
    ref: ReferenceSet
    params: HParams
    bent: bool
    walsh_values: tuple[int, ...]   # distinct Walsh values, sorted
    matched_condition: str
    criterion: bool
    seconds: float

    @property
    def ok(self) -> bool:
        q = 1 << (self.ref.m // 2)
        return (self.bent and self.criterion and self.walsh_values == (-q, q)
                and self.matched_condition == self.ref.condition)


def field_for(ref: ReferenceSet, cache: dict | None = None) -> FieldSpec:
    cache = {} if cache is None else cache
    key = (ref.m, ref.poly)
    if key not in cache:
        cache[key] = FieldSpec(ref.m, ref.poly)
    return cache[key]


def params_for(ref: ReferenceSet, field: FieldSpec) -> HParams:
    return HParams(tuple(field.w(k) for k in ref.a_logs), field.w(ref.b_log), ref.combiner)


def check_reference(ref: ReferenceSet, field: FieldSpec | None = None) -> ReferenceResult:
    """Build h, take its full Walsh spectrum and evaluate both criteria."""
    start = time.perf_counter()
    F = field or field_for(ref)
    p = params_for(ref, F)
    W = walsh(build_h(p, F)).values
    values = tuple(int(v) for v in np.unique(W))
    bent = bool(np.all(np.abs(W) == F.q))
    label = theorem_condition(F, p)
    crit = xxeq_criterion(p, F)
    return ReferenceResult(ref, p, bent, values, label, crit, time.perf_counter() - start)


def check_all(sets=None) -> list[ReferenceResult]:
    cache: dict = {}
    return [check_reference(r, field_for(r, cache)) for r in (sets or REFERENCE_SETS)]
