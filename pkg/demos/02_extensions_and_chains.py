# %% [markdown]
# # One-dimensional extensions and non-split chains
#
# W(f) acts on the finite-dimensional quotient W/W(f).  Lines in that
# quotient with a fixed character give the one-dimensional extensions.

# %%
from wittalg import Poly
from wittalg.extensions import Character, classify_characters, embed_extension, extension_chain
from wittalg.samples import random_subalgebra
from wittalg.subalgebra import submodule, w_geq
import random

t = Poly.t()
for f in (t * (t - 1) * (t - 2), t ** 2, t ** 2 * (t - 1)):
    c = classify_characters(f)
    print(f, [(str(r.character), r.ext_dim, [str(x) for x in r.canonical_extensions]) for r in c])

# %% [markdown]
# Locating the extension inside the ambient algebra.

# %%
print(embed_extension(w_geq(0), lambda u: -u.coeff.coeff(1)))            # e_-1
print(embed_extension(submodule(t * (t - 1)), Character(t * (t - 1), 0)))

# %% [markdown]
# Every finite-codimension subalgebra sits at the bottom of a chain of
# non-split one-dimensional extensions reaching the whole algebra.

# %%
ch = extension_chain(w_geq(3))
print(" < ".join(map(str, ch.subalgebras)))
rng = random.Random(1)
for _ in range(3):
    L = random_subalgebra(rng, 4)
    print(L, "codim", L.codim, "chain length", extension_chain(L).length)
