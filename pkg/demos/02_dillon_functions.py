"""
Functions constant on cosets of the subfield
============================================

A function with f(w^L) depending only on L mod (q + 1) is determined by its
values on the unit circle.  Bentness then reduces to one character sum over U.
"""

# %%
import numpy as np

from bentforge import field_new
from bentforge.boolfun import is_bent, is_hyper_bent_def, rational_h, walsh
from bentforge.dillon import (bent_criterion_U, detect_dillon, from_g,
                              hyper_bent_weight_criterion, restricted_spectrum)

F = field_new(8)
q = F.q

# %%
for b in (F.w(2), F.w(3)):
    d = detect_dillon(rational_h(1, b, F))
    print("b =", hex(b), " sum over U of (-1)^g =", d.circle_sum, " g(0) =", d.g_at_zero,
          " criterion:", bent_criterion_U(d), " Walsh:", is_bent(d.to_table()))

# %%
# Any g with the right circle weight gives a bent function, and it is then
# hyper-bent as well.
rng = np.random.default_rng(3)
g = np.zeros(q + 1, dtype=np.uint8)
g[rng.choice(q + 1, q // 2, replace=False)] = 1
d = from_g(F, g, 0)
f = d.to_table()
print("weight", int(g.sum()), "->", bent_criterion_U(d), is_bent(f), is_hyper_bent_def(f),
      hyper_bent_weight_criterion(d))

# %%
# The restricted transform only needs q + 1 circle values per point.
assert np.array_equal(restricted_spectrum(d), walsh(f).values)
print("restricted transform matches the FWHT at all", F.size, "points")
