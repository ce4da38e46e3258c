"""
From homomorphisms to monotone reductions and back
==================================================

A color and order preserving map between posets turns into a monotone map
between the set families they encode, and that map gives the homomorphism
back.
"""

from wadgeposet import (
    build_A, build_reduction, compare, extract_hom, find_hom,
    gen_P, alternation_rank, verify_hom, verify_reduction,
)

P, Q = gen_P(2, 2), gen_P(1, 2)
h = find_hom(P, Q)
print("hom", P.name, "->", Q.name, ":", dict(zip(P.names, (Q.names[i] for i in h.map))))

# lift it to a map on all 2^|P| subsets
f = build_reduction(P, Q, h)
print("reduction verified:", bool(verify_reduction(P, Q, f)))

# and recover a homomorphism from the reduction alone
g = extract_hom(P, Q, f)
print("extracted hom verified:", bool(verify_hom(g)))

# longer truncations with a single branch are strictly above
v = compare(gen_P(1, 10), gen_P(2, 8))
print(v.verdict, "| forward nodes:", v.forward.nodes, "backward nodes:", v.backward.nodes)

# the encoded families climb in alternation rank as the towers grow
for M in (1, 2, 3):
    A = build_A(gen_P(1, M))
    print(f"rank A(P_1[{M}]) =", alternation_rank(A, "auto"), " universe", A.universe)
