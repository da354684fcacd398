# %% [markdown]
# # Subalgebras of finite codimension and their derivations
#
# Elements of the one-sided Witt algebra are vector fields p(t) d.  A
# subalgebra of finite codimension is determined by its conductor f (the
# largest W(f) = f k[t] d it contains) plus finitely many cosets.

# %%
from wittalg import Poly, WittElement, bracket, e
from wittalg.derivations import associated_graded_derivation, derivation_space
from wittalg.subalgebra import derived_series_term, from_generators, normalizer, parse_subalgebra, submodule

t = Poly.t()
print(bracket(e(1), e(2)))                                   # e_3
print(bracket(WittElement.parse("(t^2+1)*d"), WittElement.parse("t*d")))

# %% [markdown]
# Generators are closed up to a canonical form.

# %%
L = from_generators([WittElement.parse("e_0 + e_1")] + [e(n) for n in range(2, 31)])
print(L, "| codim", L.codim, "| conductor", L.conductor)
print(L == parse_subalgebra("span{e_0 + e_1} + W(t^3)"))

# %% [markdown]
# Outer derivations of W(f) come from the normalizer W(f / gcd(f, f')).

# %%
for f in (t ** 2, t * (t - 1) * (t + 2), t ** 3 * (t - 1)):
    rep = derivation_space(submodule(f))
    print(f"W({f}): H^1 dim {rep.h1_dim}, normalizer {rep.normalizer}, outer {list(map(str, rep.outer_witnesses))}")

# %%
print(normalizer(submodule(t ** 3)))
print(derived_series_term(submodule(t * (t - 1)), 1))
print(tuple(associated_graded_derivation(WittElement.parse("e_5 + e_3"), submodule(t ** 2 + 1))))
