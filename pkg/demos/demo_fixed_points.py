"""
Fixed subgroups of endomorphisms
================================

Every affine endomorphism ``[alpha; beta]`` with ``alpha != 1`` fixes an
infinite cyclic subgroup. Its generator comes from a multiplicative order
computation, and a brute-force scan confirms it.
"""

# %%
from bsfix import Base, TypeII, affine, apply, element, fix
from bsfix.oracle import ScanBox, oracle_fixed_scan

B6 = Base(6)
f = affine("2/3", 1, B6)
res = fix(f)
print(f, "fixes", res.generator)
print("derivation:", res.derivation.as_dict())

# %%
# The scan lists every fixed element with ``|c| <= 3``. They are exactly the
# powers of the generator.
print(oracle_fixed_scan(f, ScanBox(c_bound=3)))
print(apply(f, res.generator) == res.generator)

# %%
# Type II maps send ``a`` to the identity. Only targets with ``c = 1`` fix
# anything nontrivial.
B2 = Base(2)
for target in ("(5; 1)", "(1; 2)"):
    u = element(*map(int, target.strip("()").split(";")), B2)
    print(TypeII(u), "->", fix(TypeII(u)))

# %%
# With ``alpha = 1`` the map is a translation and its fixed points are the
# whole kernel ``{(gamma; 0)}``.
print(fix(affine(1, 5, B2)))
