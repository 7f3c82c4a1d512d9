"""
Stabilizers and closures
========================

The automorphisms fixing a fixed element form a free abelian group of rank
``r``, the number of primes dividing ``n``. The endomorphisms fixing it form
a one-parameter family plus at most one Type II map.
"""

# %%
from bsfix import Base, apply, closure, eclosure, element, estab, stab_aut

B2, B6 = Base(2), Base(6)
print(stab_aut(element(1, 2, B2)))
print(stab_aut(element(1, 1, B6)))

# %%
# The derivation records the modulus and the unit relations behind the basis.
print(stab_aut(element(1, 2, B2)).as_dict(verbose=True)["derivation"])

# %%
# Endomorphism stabilizer of ``(3; 2)``: members are indexed by ``beta``.
g = element(3, 2, B2)
es = estab(g)
print(es)
for beta in (0, 2, 5):
    f = es.type_i.member(B2(beta))
    print(f, "->", apply(f, g))

# %%
# Closures: everything fixed by all maps fixing ``H``. For a cyclic group
# this is the cyclic group of its maximal root.
print(closure([g]))
print(eclosure([element(1, 2, B2)]))
print(closure([element(0, 1, B2), element(1, 0, B2)]))
