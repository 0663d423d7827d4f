"""
Maximum independent sets and their orderings
============================================

Each ordering sigma of the ground set picks out the pairs whose sigma-first
element falls in A.  These sets reach the independence number, and when
r > 2t they are the only maximum independent sets.
"""

from lkneser import independence as ind
from lkneser.setkit import Permutation, all_permutations

n, r, t = 5, 3, 1
g = ind.local_kneser(n, r, t)
print("alpha exact:", ind.alpha_exact(g), " closed form:", ind.alpha_formula(n, r, t))

S = ind.build_S_sigma(n, r, t, Permutation((3, 1, 5, 2, 4)))
print("S_sigma for sigma = 3 1 5 2 4 has", len(S), "vertices")

# one star center per r-set, and the digraph they generate
centers = ind.extract_centers(S)
D = ind.build_D_S(S)
print("out-degrees of D_S:", D.out_degrees())
print("recovered order prefix:", ind.match_to_sigma(S).seq)
print("I_D rebuilds S:", ind.build_I_D(D, r, t).members == S.members)

# exhaustive check on this instance
found = {s.members for s in ind.enumerate_maximum_independent_sets(g)}
canon = {ind.build_S_sigma(n, r, t, s, g).members for s in all_permutations(n)}
print(len(found), "maximum independent sets,", len(canon), "distinct S_sigma, equal:", found == canon)

# at r = 2t the picture breaks: many more maximum sets than orderings
g = ind.local_kneser(4, 2, 1)
print("U_1(4,2):", len(ind.enumerate_maximum_independent_sets(g)), "maximum sets vs",
      len({ind.build_S_sigma(4, 2, 1, s, g).members for s in all_permutations(4)}), "S_sigma")
