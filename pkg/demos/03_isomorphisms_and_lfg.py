# %% [markdown]
# # Isomorphisms and infinite-codimension subalgebras
#
# W(f) and W(g) are isomorphic exactly when an affine substitution carries
# f to a multiple of g.

# %%
from wittalg import Poly
from wittalg.isomorphism import automorphism_group, decide_isomorphic, transport_subalgebra
from wittalg.lfg import LfgAlgebra, gf_data, ideal_generator, lfg_derivation_space, lfg_iso
from wittalg.subalgebra import submodule

t = Poly.t()
w = decide_isomorphic(t ** 2 * (t - 1), t ** 2 * (t - 2))
print(w.auto, "gamma", w.scale, "| image", transport_subalgebra(submodule(w.f), w.auto))
print(decide_isomorphic(t ** 2, t * (t - 1)).reason)
print(decide_isomorphic(t ** 3 - 1, t ** 3 - 2).to_dict())
print([str(a) for a in automorphism_group(t * (t - 1)).elements])

# %% [markdown]
# k[f] g d is a subalgebra when f' g = h(f); it is then isomorphic to W(h).

# %%
f = t ** 2 * (t - 1)
print("h =", ideal_generator(f).generator_h, "| g_f, h =", gf_data(f))
A = LfgAlgebra.maximal(f)
tr = lfg_iso(A)
print(A, "->", f"W({A.h})", "| transcript ok:", tr.ok, "| H^1:", lfg_derivation_space(A).h1_dim)
