"""
Kloosterman sums and the polynomial form of h1
==============================================
"""

# %%
import numpy as np

from bentforge import field_new
from bentforge.boolfun import anf_degree, is_bent, rational_h
from bentforge.constructions import thm1_condition
from bentforge.expsums import BRUTE, CLOSED, kloosterman_bound, kloosterman_table, xi
from bentforge.polyform import expand_h1, verify_expansion

F = field_new(8)

# %%
K = kloosterman_table(F, 4)
vals = np.array(sorted(K.values.values()))
print("K_4 values:", np.unique(vals, return_counts=True))
print("bound:", kloosterman_bound(4), " all = 0 mod 4:", bool(np.all(vals % 4 == 0)))

# %%
# xi(a, b) = sum over U of (-1)^Tr(a/(lambda+b)) in closed form and by brute force.
for a, b in [(1, F.w(3)), (F.w(17), F.w(20)), (F.w(5), F.w(15))]:
    print(f"xi({a:#x}, {b:#x}) closed={xi(F, a, b, CLOSED)} brute={xi(F, a, b, BRUTE)}")

# %%
a, b = 1, F.w(3)
p = expand_h1(a, b, F)
print(p.to_csv().splitlines()[:6])
print("expansion matches pointwise:", verify_expansion(a, b, F))
f = rational_h(a, b, F)
print("bent:", is_bent(f), " condition:", thm1_condition(F, a, b), " degree:", anf_degree(f))
