"""
Elements, words and roots
=========================

Elements of BS(1, n) are pairs ``(gamma; c)`` with ``gamma`` in Z[1/n].
This demo multiplies a few of them, evaluates words in the generators and
extracts roots.
"""

# %%
# A base fixes ``n``. Elements can be built directly or parsed from text.
from bsfix import Base, bs_from_word, bs_kth_root, bs_root_closure, bs_to_matrix, element
from bsfix.group import parse_element

B = Base(2)
g = element(1, 1, B)
h = parse_element("(3; 2)", B)
a = element(1, 0, B)
print("g * h    =", g * h)
print("g * a    =", g * a)
print("a * g    =", a * g)
print("g ** -1  =", g ** -1)

# %%
# Words use ``a``, ``t`` and their inverses ``A``, ``T``. Conjugating ``a``
# by ``t`` halves it.
print("t a T    =", bs_from_word("t a T", B))
for row in bs_to_matrix(bs_from_word("t a T", B)).rows():
    print("   ", [str(x) for x in row])

# %%
# Roots are unique when they exist.
print("sqrt(3; 2) =", bs_kth_root(h, 2))
print("sqrt(1; 2) =", bs_kth_root(element(1, 2, B), 2))

# %%
# The root closure returns the maximal root together with its exponent.
root, m = bs_root_closure(element(21, 6, B))
print(f"(21; 6) = {root} ** {m}")
