"""
Fields, traces and Walsh spectra
================================

Build GF(2^6), look at the trace map, and check that a rational trace
function on it is bent.
"""

# %%
import numpy as np

from bentforge import field_new
from bentforge.boolfun import anf_degree, is_bent, rational_h, walsh
from bentforge.gf2m import poly_to_str, unit_circle

F = field_new(6, 0x5B)   # x^6 + x^4 + x^3 + x + 1
print("field:", poly_to_str(F.poly), " q =", F.q)

# Elements are ints; w = x is primitive, so w^k runs over every nonzero element.
w7 = F.w(7)
print("w^7 =", hex(w7), " conj(w^7) =", hex(F.conj(w7)), " Tr(w^7) =", F.tr(w7))

# %%
# The unit circle U has q + 1 elements and every nonzero x is lambda * y with
# lambda on U and y in the subfield.
U = unit_circle(F)
print("|U| =", len(U))

# %%
# f(x) = Tr(1 / (x^7 + w^7)); 1/0 is taken as 0.
f = rational_h(1, w7, F)
W = walsh(f).values
print("Walsh values:", sorted(set(W.tolist())), " bent:", is_bent(f))
print("degree:", anf_degree(f))

# %%
# Most b do not give a bent function.
bent_b = [b for b in range(1, F.size) if is_bent(rational_h(1, b, F))]
print(f"{len(bent_b)} of {F.order} choices of b give a bent Tr(1/(x^7+b))")
print("first few:", [f"w^{int(F.log[b])}" for b in bent_b[:6]])
print("value histogram of the last non-bent spectrum:",
      np.unique(walsh(rational_h(1, 1, F)).values, return_counts=True))
