"""
Two families of colored posets
==============================

Build a few truncations of each family, check which classes they fall in,
and look at the alternating-chain strengths that separate them.
"""

from wadgeposet import gen_P, gen_Q, is_embeddable, is_shrub, str_incr, str_decr

# the P family: one branch per index, the z-towers grow with the index
P = gen_P(1, 3)
print(P.name, "has", P.n, "elements")
print("embeddable:", bool(is_embeddable(P)), " shrub:", bool(is_shrub(P)))

# strength of the w nodes along the spine
for m in range(3):
    print(f"  str_incr(w:{m}) =", str_incr(P, P.index(f"w:{m}")))

# dividing the index by n slows the towers down
for n in (1, 2, 3):
    Pn = gen_P(n, 7)
    print(Pn.name, "str_incr(w:6) =", str_incr(Pn, Pn.index("w:6")))

# the Q family grows downward strength instead
for n in range(1, 5):
    Q = gen_Q(n, 1)
    x = Q.index(f"x:0:{2 * n - 2}")
    print(Q.name, "str_decr(top of first x-chain) =", str_decr(Q, x))
