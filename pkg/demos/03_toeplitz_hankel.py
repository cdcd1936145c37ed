# %% [markdown]
# # Toeplitz and Hankel truncations

# %%
import numpy as np

from opclass import SymbolSpec, classify_hankel, classify_toeplitz, hankel_matrix, symbol_from_samples, toeplitz_matrix
from opclass.linalg import op_norm

# %%
cosine = SymbolSpec({1: 1, -1: 1})
print(toeplitz_matrix(cosine, 5).real)
for n in (4, 8, 16, 32, 64):
    print(n, op_norm(toeplitz_matrix(cosine, n)))

# %% [markdown]
# The shift symbol z gives an isometry on the window; S + S*/2 is
# hyponormal but never attains its norm 3/2, so the isometry conclusion
# does not apply to it.

# %%
for sym in (SymbolSpec({1: 1}), SymbolSpec({0: 2 - 1j}), SymbolSpec({1: 1, -1: 0.5})):
    r = classify_toeplitz(sym, 8)
    print(sym.coeffs, r.report.flags["star_paranormal"], r.isometry_multiple, r.c, r.hypothesis, r.consistent)

# %%
h = SymbolSpec({-1: 1.0, -2: 0.5, -3: -0.25})
H = hankel_matrix(h, 5)
print(H.real)
print(classify_hankel(h, 6).normal)

# %% [markdown]
# Symbols can also come from samples on the circle.

# %%
theta = 2 * np.pi * np.arange(16) / 16
print(symbol_from_samples(3 + 2 * np.cos(theta) + 1j * np.sin(2 * theta)).coeffs)
