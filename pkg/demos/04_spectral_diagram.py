# %% [markdown]
# # Spectral diagram of |T| and the growing cluster
#
# A single matrix has no essential spectrum. For a family of truncations
# we track which singular-value cluster keeps gaining members.

# %%
import numpy as np

from opclass import diagram_emit, essential_candidate, spectrum_diagram
from opclass.testkit import example_2_2

# %%
print(diagram_emit(spectrum_diagram(np.diag([3.0, 2, 2, 1]), lam=2.0), "text"))
print(diagram_emit(spectrum_diagram(example_2_2(8), lam=1.0), "csv"))

# %%
family = [np.diag(1 - 1 / np.arange(1, n + 1)) for n in (16, 32, 64, 128)]
est = essential_candidate(family)
print("lambda", est.lam, "singleton", est.singleton)
print({round(c, 4): s for c, s in est.slopes.items() if s > 0})

# %%
family = [np.diag(np.where(np.arange(n) % 2, 2.0, 1.0)) for n in (8, 16, 32, 64)]
est = essential_candidate(family)
print("growing", est.growing, "singleton", est.singleton)
