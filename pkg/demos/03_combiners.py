"""
Combining several rational traces
=================================

h(x) = F(Tr(a1/(x^(q-1)+b)), ..., Tr(at/(x^(q-1)+b))) for a Boolean combiner F.
The bentness test reduces to a few exponential sums, which is what makes
exhaustive sweeps cheap.
"""

# %%
import time

import numpy as np

from bentforge import field_new
from bentforge.constructions import (MAJ3, X1X2, HParams, build_h, coefficient_grid,
                                     theorem_condition, walsh_mask, xxeq_criterion, xxeq_mask)
from bentforge.boolfun import is_bent
from bentforge.reference import check_all

# %%
# Built-in reference parameter sets, each with the condition it should satisfy.
for r in check_all():
    print(f"{r.ref.name:10s} m={r.ref.m:2d} {r.ref.combiner.table_hex:>4s} "
          f"bent={r.bent} label={r.matched_condition:4s} ok={r.ok}")

# %%
F = field_new(6)
p = HParams((F.w(27), F.w(3), F.w(9)), F.w(1), MAJ3)
print("a =", [hex(a) for a in p.a_list], "b =", hex(p.b), "criterion:", xxeq_criterion(p, F), "Walsh:", is_bent(build_h(p, F)),
      "label:", theorem_condition(F, p))

# %%
# Exhaustive check of the sum criterion against the Walsh oracle for X1 X2.
grid = coefficient_grid(F, 2)
start = time.perf_counter()
bent = mism = 0
for b in range(1, F.size):
    crit = xxeq_mask(F, X1X2, grid, b)
    oracle = walsh_mask(F, X1X2, grid, b)
    bent += int(oracle.sum())
    mism += int(np.sum(crit != oracle))
print(f"{grid.shape[0] * F.order} parameter sets, {bent} bent, {mism} mismatches, "
      f"{time.perf_counter() - start:.1f}s")
