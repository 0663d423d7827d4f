"""
Homomorphisms and the local chromatic number
============================================

A proper coloring whose closed neighborhoods see at most r colors is the same
thing as a homomorphism into the local complete graph U(n,r).  The map sending
(A, B) to (min A, a prefix of B) therefore certifies psi <= r - 2t + 2.
"""

from lkneser import coloring as col
from lkneser import homkit as hk
from lkneser.coloring import Coloring
from lkneser.graphs import cycle_graph
from lkneser.independence import local_kneser

h = hk.min_star_map(6, 5, 2)
print("U_2(6,5) -> U(5,3) is a homomorphism:", hk.verify_hom(h))
c, profile = hk.coloring_from_hom(h)
print("induced coloring uses", c.n_colors_used, "colors, local max", profile.max)

# the conversion also runs the other way
c5 = cycle_graph(5)
three = Coloring(c5, (1, 2, 1, 2, 3))
back = hk.hom_from_coloring(c5, three)
print("C5 into", back.codomain.params, ":", [back.codomain.label_str(x) for x in back.assignment])

# exact psi on small instances, next to the bound
for nrt in [(3, 2, 1), (4, 4, 2), (4, 3, 1), (5, 5, 2)]:
    print(nrt, "psi =", col.psi_exact(local_kneser(*nrt)), " bound r-2t+2 =", nrt[1] - 2 * nrt[2] + 2)
