"""
Invariants under affine equivalence
===================================

Degree and the multiset of |W| survive x -> f(Ax + c) + Tr(ux) + e.
The hyper profile (bentness of f(x^i) over coprime i) does not, so it only
helps to tell apart functions already written in the same coordinates.
"""

# %%
import numpy as np

from bentforge import field_new
from bentforge.boolfun import rational_h
from bentforge.eainv import (bent_monomial, distinguish, fingerprint, known_exponents,
                             random_ea_transform)

F = field_new(8)
h1 = rational_h(1, F.w(3), F)
print("h1:", fingerprint(h1))

# %%
for name, d in known_exponents(8).items():
    g = bent_monomial(F, d)
    if g is None:
        print(f"{name} (x^{d}): no bent coefficient at m=8")
        continue
    print(f"{name} (x^{d}):", fingerprint(g), "->", distinguish(h1, g))

# %%
rng = np.random.default_rng(0)
changed = {"degree": 0, "walsh_multiset": 0, "hyper_profile": 0}
fp = fingerprint(h1)
for _ in range(20):
    g = fingerprint(random_ea_transform(h1, rng))
    for k in changed:
        changed[k] += getattr(g, k) != getattr(fp, k)
print("components changed in 20 random transforms:", changed)
