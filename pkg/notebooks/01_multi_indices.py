# %% [markdown]
# # Multi-indices and weights
#
# Jet coordinates are labelled by multi-indices. Length-`q` indices over `m`
# variables are enumerated in descending lexicographic order, and there are
# `C(m+q-1, q)` of them.

# %%
from itertools import product

from jetcalc.multiindex import count, enumerate_indices, is_pure, weight

for I in enumerate_indices(2, 3):
    print(I, "weight", weight(I), "pure" if is_pure(I) else "mixed")
print("count(2, 3) =", count(2, 3), " count(3, 4) =", count(3, 4))

# %% [markdown]
# The weight (squared norm) is strictly convex, so averaging two distinct
# indices lowers it. That inequality drives the degree bound.

# %%
tops = enumerate_indices(3, 4)
strict = 0
for K1, K2 in product(tops, repeat=2):
    s = K1 + K2
    if K1 != K2 and all(e % 2 == 0 for e in s):
        J = type(K1)(e // 2 for e in s)
        assert 2 * weight(J) < weight(K1) + weight(K2)
        strict += 1
print(strict, "strict instances checked for m=3, k=4")
