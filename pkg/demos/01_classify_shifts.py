# %% [markdown]
# # Classifying weighted shifts
#
# Two forward shifts differ only in their first two weights. One is
# hyponormal; the other is not, yet it still satisfies the *-paranormal
# inequality. Shifts are infinite, so we classify on a leading window of an
# ambient truncation large enough that the window never sees the cut.

# %%
import numpy as np

from opclass import classify, is_hyponormal, is_star_paranormal
from opclass.testkit import example_2_2, example_S, example_T, vector_oracle

m, n = 8, 10
T, S = example_T(n), example_S(n)

# %%
for name, X in (("T", T), ("S", S)):
    rep = classify(X, compress=m)
    print(name, {k: v for k, v in rep.flags.items() if k in ("hyponormal", "paranormal", "star_paranormal")})

# %% [markdown]
# The hyponormality witness for S sits on the second basis vector, where
# ||S*x||^2 - ||Sx||^2 = 1.

# %%
ok, w = is_hyponormal(S, compress=m)
print("value", w.value, "vector", np.round(np.abs(w.vector), 6))

# %% [markdown]
# The *-paranormal certificate for S: the pencil minimum is exactly zero
# (equality at e2), certified by the chord bound.

# %%
ok, cert = is_star_paranormal(S, compress=m)
print(ok, cert.verdict.value, cert.min_value, cert.lower_bound, cert.certified_by, cert.evaluations)

# %% [markdown]
# Random unit vectors agree with the certificate.

# %%
print(vector_oracle(S, "star", 100000, seed=0, compress=m)[0])

# %% [markdown]
# A backward shift with weights 1, 2/3, 3/4, ... fails the inequality at e1.

# %%
E = example_2_2(16)
ok, cert = is_star_paranormal(E)
print(ok, cert.min_value, np.round(np.abs(cert.witness), 6)[:4])
