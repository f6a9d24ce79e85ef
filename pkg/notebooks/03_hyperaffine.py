# %% [markdown]
# # Hyperaffine Lagrangians
#
# Wedging `count(m, q)` special affine hyperforms gives a polynomial whose
# top-order dependence is a sum of minors. Every such Lagrangian is
# projectable. The fuzz below checks that on random samples.

# %%
import random

from jetcalc import builtin, hyperaffine_lagrangian, is_projectable
from jetcalc.corpus import builtin_wedge
from jetcalc.multiindex import count
from jetcalc.randgen import random_hyperaffine_terms, random_signature

for name in ("L3", "L4", "L6"):
    assert hyperaffine_lagrangian(builtin_wedge(name)) == builtin(name).poly
print("wedge constructions reproduce L3, L4, L6")

# %%
rng = random.Random(7)
exact, top = 0, {}
for _ in range(300):
    m, n, k = random_signature(rng)
    L = hyperaffine_lagrangian(random_hyperaffine_terms(rng, m, n, k))
    if L.order() != k:
        continue
    exact += 1
    assert is_projectable(L)
    assert L.top_degree(k) <= count(m, k)
    top[L.top_degree(k)] = top.get(L.top_degree(k), 0) + 1
print(exact, "samples of exact order k, all projectable; top-degree histogram", dict(sorted(top.items())))
