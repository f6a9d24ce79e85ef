# %% [markdown]
# # Quadratic parts as 2x2 determinants
#
# When the symbol condition holds, the part of `L` that is quadratic in
# top-order variables can be rewritten as a combination of 2x2 minors.

# %%
import random

from jetcalc import decompose_quadratic
from jetcalc.randgen import random_cancelling_quadratic
from jetcalc.textio import ProblemHeader, parse

h = ProblemHeader(2, 1, ("u",), ("x", "y"))
ds = decompose_quadratic(parse(h, "u[2,0]*u[0,2] - u[1,1]^2 + x*u[1,0]*u[1,1]"))
for t in ds:
    print(t.coefficient.format(h.names), "|", t.determinant(1).format(h.names))
print("round trip:", ds.expand() == ds.quadratic_part)

# %%
rng = random.Random(3)
sizes = []
for _ in range(50):
    L = random_cancelling_quadratic(rng, 3, 2, 2)
    if L.order() == 2:
        ds = decompose_quadratic(L)
        assert ds.expand() == ds.quadratic_part
        sizes.append(len(ds))
print(len(sizes), "random cases; determinants per case:", sorted(set(sizes)))
