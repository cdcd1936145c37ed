# %% [markdown]
# # Three-block representation
#
# Split the space along the eigenspaces of |T| around a value lambda and
# look at T in that basis. Certified *-paranormal matrices pass every
# check; inputs that fail the pencil fail at least one.

# %%
import numpy as np

from opclass import adjoint_blocks, check_blocks, from_blocks, star_para_blocks
from opclass.testkit import jordan, random_unitary

# %%
U = random_unitary(5, 1)
T = U @ np.diag([3.0, 2, 2, 2, 1]) @ U.conj().T
d, rep = star_para_blocks(T)
print("lambda", d.lam, "dims", d.dims, "alphas", d.alphas)
print("passed", rep.passed)
print(np.round(d.conj, 10).real)

# %% [markdown]
# Jordan block: lambda = 0 from the multiplicity tie, and the block shape
# breaks down.

# %%
d, rep = star_para_blocks(jordan(2))
print(d.lam, rep.failed)

# %% [markdown]
# A hand-built block matrix with V*A != 0 is caught by exactly one check.

# %%
d = from_blocks(np.zeros((0, 0)), np.eye(2), [[0.5], [0.0]], [[0.5]], lam=1.0)
print(check_blocks(d).failed)

# %% [markdown]
# The adjoint form puts A below the diagonal.

# %%
d, rep = adjoint_blocks(T)
print(rep.layout, rep.passed, list(rep.verdicts))
