# %% [markdown]
# # Euler-Lagrange systems and projectability
#
# A Lagrangian of order `k` generically has an EL system of order `2k`. It is
# *projectable* when the order-`2k` terms cancel.

# %%
from jetcalc import builtin, euler_lagrange, is_projectable, symbol_condition_holds
from jetcalc.textio import ProblemHeader, parse

for name in ("L1", "L3", "L4", "null3"):
    b = builtin(name)
    el = euler_lagrange(b.poly)
    print(f"{name}: k={b.k} EL order {el.system_order} projectable {el.is_projectable}")

# %% [markdown]
# A homogeneous quadratic in second derivatives is the generic case. Its EL
# equation is fourth order, and the symbol test flags the same failure.

# %%
h = ProblemHeader(1, 1, ("u",), ("x",))
L = parse(h, "u[2]^2")
print(euler_lagrange(L).components[0].format(h.names))
print("projectable:", is_projectable(L), " symbol condition:", symbol_condition_holds(L))

# %% [markdown]
# `L2 = u_x (u_xx u_yy - u_xy^2)` is the horizontal part of an exact form,
# so its EL expression is identically zero.

# %%
print(euler_lagrange(builtin("L2").poly).is_zero)
