"""
Building local Kneser graphs
============================

Vertices of U_t(n,r) are disjoint pairs (A, B) with |A| = t and |A| + |B| = r.
Two pairs are joined when each first part sits inside the other's second part.
"""

from lkneser import graphs

# the smallest interesting case: a perfect matching on six vertices
g = graphs.build_local_kneser(3, 2, 1)
print(len(g), "vertices,", g.n_edges, "edges")
for u, v in g.edges():
    print("  ", g.label_str(u), "--", g.label_str(v))

# when r = n the graph is an ordinary Kneser graph
kg = graphs.build_kneser(5, 2)
u = graphs.build_local_kneser(5, 5, 2)
print("U_2(5,5) has", len(u), "vertices and", u.n_edges, "edges; KG(5,2) has", len(kg), "and", kg.n_edges)

# every r-subset R of the ground set spans a copy of KG(r,t)
g = graphs.build_local_kneser(6, 4, 2)
block, iso = graphs.induced_block(g, [1, 3, 4, 6])
print("block on {1,3,4,6}:", len(block), "vertices, isomorphic to KG(4,2) via", iso)

# permuting the ground set is an automorphism
from lkneser.setkit import Permutation
perm = graphs.apply_ground_permutation(g, Permutation((2, 3, 4, 5, 6, 1)))
print("rotation moves vertex 0 to", g.label_str(perm[0]))
