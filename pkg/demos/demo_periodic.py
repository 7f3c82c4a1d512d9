"""
Periodic points
===============

``Per(phi)`` collects the elements fixed by some power of ``phi``. In this
group it equals ``Fix(phi**2)``, which can be strictly larger than
``Fix(phi)``.
"""

# %%
from bsfix import Base, TypeII, affine, element, fix, morph_pow, per, period_two

B2 = Base(2)

# %%
# An affine map with ``alpha = -1`` is an involution: its square is the
# identity, so every element is periodic.
f = affine(-1, 3, B2)
print("Fix(f)   =", fix(f))
print("f o f    =", morph_pow(f, 2))
print("Per(f)   =", per(f))

# %%
# A Type II map whose target has ``c = -1`` swaps the target with its
# inverse.
u = element(1, -1, B2)
g = TypeII(u)
print("Fix(g)   =", fix(g))
print("Per(g)   =", per(g))

# %%
# These are the only two cases. Elsewhere the powers add nothing.
for m in (affine(2, 1, B2), affine(-2, 1, B2), TypeII(element(5, 1, B2)), f, g):
    print(m, period_two(m), [str(fix(morph_pow(m, k))) for k in (1, 2, 3)])
