from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from lkneser import independence as ind
from lkneser.errors import InvalidInput, InvalidParameters, LabError, NotAStar
from lkneser.graphs import build_kneser, build_local_complete, complete_graph, cycle_graph, from_edges
from lkneser.setkit import Permutation, all_permutations, mask_of
from oracles import all_max_independent_brute, alpha_brute, alpha_milp, binom, hom_exists_brute

GRID = list(ind.grid(7))
CHAR = [(4, 3, 1), (5, 3, 1), (5, 5, 2), (6, 5, 2)]


def vertex(g, A, B):
    return g.index_of((mask_of(A), mask_of(B)))


@pytest.mark.parametrize("nrt,value", [((3, 2, 1), 3), ((5, 4, 2), 15), ((4, 4, 2), 3)])
def test_alpha_formula_values(nrt, value):
    assert ind.alpha_formula(*nrt) == value


def test_alpha_formula_rejects():
    with pytest.raises(InvalidParameters):
        ind.alpha_formula(3, 4, 1)


def test_alpha_exact_examples():
    assert ind.alpha_exact(build_local_complete(3, 2)) == alpha_brute(build_local_complete(3, 2)) == 3
    assert ind.alpha_exact(build_kneser(5, 2)) == alpha_brute(build_kneser(5, 2)) == 4
    g = ind.local_kneser(5, 4, 2)
    assert ind.alpha_exact(g) == alpha_milp(g) == ind.alpha_formula(5, 4, 2) == 15


@pytest.mark.parametrize("n,r,t", [nrt for nrt in GRID if binom(nrt[0], nrt[1]) * binom(nrt[1], nrt[2]) <= 20])
def test_alpha_exact_matches_brute_force(n, r, t):
    g = ind.local_kneser(n, r, t)
    want = alpha_brute(g)
    assert ind.alpha_exact(g) == want
    assert ind.alpha_exact(g, partition=None) == want


@pytest.mark.parametrize("n,r,t", [nrt for nrt in GRID if binom(nrt[0], nrt[1]) * binom(nrt[1], nrt[2]) <= 150])
def test_alpha_exact_matches_milp(n, r, t):
    g = ind.local_kneser(n, r, t)
    assert ind.alpha_exact(g) == alpha_milp(g)


def test_maximum_independent_set_is_independent():
    g = ind.local_kneser(7, 5, 2)
    s = ind.maximum_independent_set(g)
    assert len(s) == 84
    assert all(not g.adjacent(u, v) for u, v in combinations(s.members, 2))


def test_partition_must_be_valid():
    g = ind.local_kneser(4, 3, 1)
    with pytest.raises(InvalidParameters):
        ind.maximum_independent_set(g, partition=[1, 1])


def test_independent_set_rejects_edge():
    g = build_kneser(4, 2)
    u, v = g.edges()[0]
    with pytest.raises(InvalidInput):
        ind.IndependentSet(g, frozenset({u, v}))


def test_S_sigma_identity_small():
    g = ind.local_kneser(3, 2, 1)
    s = ind.build_S_sigma(3, 2, 1, Permutation.identity(3))
    assert s.members == {vertex(g, [1], [2]), vertex(g, [1], [3]), vertex(g, [2], [3])}


def test_S_sigma_size_5_4_2():
    assert len(ind.build_S_sigma(5, 4, 2, Permutation.identity(5))) == 15


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(GRID), st.randoms(use_true_random=False))
def test_S_sigma_random_sigma(nrt, rnd):
    n, r, t = nrt
    seq = list(range(1, n + 1))
    rnd.shuffle(seq)
    sigma = Permutation(tuple(seq))
    s = ind.build_S_sigma(n, r, t, sigma)
    assert len(s) == ind.alpha_formula(n, r, t)
    g = s.graph
    # membership rule evaluated independently of build_S_sigma
    for v, (a, b) in enumerate(g.labels):
        elems = [x for x in seq if (a | b) >> (x - 1) & 1]
        assert (v in s) == bool(a >> (elems[0] - 1) & 1)


def test_extract_centers_examples():
    s = ind.build_S_sigma(4, 3, 1, Permutation.identity(4))
    assert ind.extract_centers(s)[[2, 3, 4]] == 2
    s = ind.build_S_sigma(5, 5, 2, Permutation.identity(5))
    assert ind.extract_centers(s)[[1, 2, 3, 4, 5]] == 1


def test_extract_centers_non_star():
    g = ind.local_kneser(4, 4, 2)
    full = mask_of([1, 2, 3, 4])
    tri = [g.index_of((mask_of(a), full & ~mask_of(a))) for a in ([1, 2], [1, 3], [2, 3])]
    s = ind.IndependentSet(g, frozenset(tri))
    with pytest.raises(NotAStar):
        ind.extract_centers(s)


def test_extract_centers_not_maximum():
    s = ind.build_S_sigma(5, 5, 2, Permutation.identity(5))
    smaller = ind.IndependentSet(s.graph, s.members - {min(s.members)})
    with pytest.raises(NotAStar):
        ind.extract_centers(smaller)
    s = ind.build_S_sigma(4, 3, 1, Permutation.identity(4))
    with pytest.raises(LabError):
        ind.match_to_sigma(ind.IndependentSet(s.graph, s.members - {min(s.members)}))


def test_center_consistency():
    s = ind.build_S_sigma(5, 4, 1, Permutation((3, 1, 5, 2, 4)))
    assert ind.check_center_consistency(ind.extract_centers(s)).ok
    s = ind.build_S_sigma(5, 5, 2, Permutation.identity(5))
    assert ind.check_center_consistency(ind.extract_centers(s)).ok
    R1, R2 = mask_of([1, 2, 3]), mask_of([1, 2, 4])
    bad = ind.CenterTable(4, 3, 1, {R1: 1, R2: 2})
    rep = ind.check_center_consistency(bad)
    assert not rep.ok and ((1, 2, 3), (1, 2, 4), 1, 2) in rep.violations


def test_D_S_examples():
    D = ind.build_D_S(ind.build_S_sigma(4, 3, 1, Permutation.identity(4)))
    assert D.arcs == {(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)}
    assert D.out_degrees() == [3, 2, 0, 0]
    D = ind.build_D_S(ind.build_S_sigma(5, 5, 2, Permutation.identity(5)))
    assert D.arcs == {(1, j) for j in range(2, 6)}


@pytest.mark.parametrize("n,r,t", [nrt for nrt in GRID if nrt[1] > 2 * nrt[2]])
def test_D_S_out_degrees_of_S_sigma(n, r, t):
    sigma = Permutation(tuple(reversed(range(1, n + 1))))
    D = ind.build_D_S(ind.build_S_sigma(n, r, t, sigma))
    deg = D.out_degrees()
    for i in range(1, n + 1):
        # sigma(i) heads an r-set iff r-1 later elements exist
        want = n - i if binom(n - i, r - 1) > 0 else 0
        assert deg[sigma(i) - 1] == want
    assert not D.has_multiplicity()
    assert ind.size_from_out_degrees(D, r, t) == ind.alpha_formula(n, r, t)


def test_I_D_examples():
    empty = ind.DirectedGraph(4, frozenset())
    assert len(ind.build_I_D(empty, 3, 1)) == 0
    s = ind.build_S_sigma(4, 3, 1, Permutation.identity(4))
    assert ind.build_I_D(ind.build_D_S(s), 3, 1).members == s.members
    tour = ind.DirectedGraph.transitive_tournament(5)
    assert len(ind.build_I_D(tour, 4, 2)) == ind.alpha_formula(5, 4, 2) == 15


def test_I_D_with_two_cycle_is_not_independent():
    D = ind.DirectedGraph(3, frozenset({(1, 2), (2, 1)}))
    with pytest.raises(InvalidInput):
        ind.build_I_D(D, 2, 1)


def test_digraph_rejects_self_arc():
    with pytest.raises(InvalidInput):
        ind.DirectedGraph(3, frozenset({(1, 1)}))


def test_enumerate_kneser():
    g = build_kneser(5, 2)
    sets = ind.enumerate_maximum_independent_sets(g)
    stars = sorted(tuple(v for v in range(10) if g.labels[v][0] >> (x - 1) & 1) for x in range(1, 6))
    assert [s.sorted() for s in sets] == stars
    assert len(ind.enumerate_maximum_independent_sets(build_kneser(4, 2))) == 8 == 2 ** 3


@pytest.mark.parametrize("g", [build_kneser(5, 2), build_kneser(4, 2), ind.local_kneser(4, 3, 1),
                               ind.local_kneser(5, 5, 2), ind.local_kneser(4, 4, 2), cycle_graph(7)])
def test_enumerate_matches_brute(g):
    assert [s.sorted() for s in ind.enumerate_maximum_independent_sets(g)] == all_max_independent_brute(g)


@pytest.mark.parametrize("n,r,t", CHAR)
def test_enumeration_equals_S_sigma(n, r, t):
    g = ind.local_kneser(n, r, t)
    generic = [s.sorted() for s in ind.enumerate_maximum_independent_sets(g)]
    blocks = [s.sorted() for s in ind.enumerate_maximum_independent_sets(g, "blocks")]
    brute = sorted({ind.build_S_sigma(n, r, t, s).sorted() for s in all_permutations(n)})
    assert generic == blocks == brute


def test_enumerate_budget():
    from lkneser.errors import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        ind.enumerate_maximum_independent_sets(ind.local_kneser(7, 3, 1))


def test_match_to_sigma_identity_prefix():
    for n, r, t in CHAR:
        sigma = ind.match_to_sigma(ind.build_S_sigma(n, r, t, Permutation.identity(n)))
        assert sigma.seq[: n - r + 1] == tuple(range(1, n - r + 2))


def test_match_to_sigma_all_maximum_sets_u1_4_3():
    g = ind.local_kneser(4, 3, 1)
    for S in ind.enumerate_maximum_independent_sets(g):
        sigma = ind.match_to_sigma(S)
        assert ind.build_S_sigma(4, 3, 1, sigma).members == S.members


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([nrt for nrt in GRID if nrt[1] > 2 * nrt[2]]), st.randoms(use_true_random=False))
def test_roundtrips_on_random_S_sigma(nrt, rnd):
    n, r, t = nrt
    seq = list(range(1, n + 1))
    rnd.shuffle(seq)
    S = ind.build_S_sigma(n, r, t, Permutation(tuple(seq)))
    table = ind.extract_centers(S)
    assert ind.check_center_consistency(table).ok
    assert ind.build_I_D(ind.build_D_S(S), r, t).members == S.members
    sigma = ind.match_to_sigma(S)
    assert sigma.seq[: n - r + 1] == tuple(seq[: n - r + 1])


def test_nu_mu_examples():
    k1 = from_edges(1, [])
    assert ind.nu_mu_bruteforce(build_kneser(4, 2), k1) == (3, Fraction(2))
    assert ind.nu_mu_bruteforce(ind.local_kneser(5, 4, 2), k1) == (15, Fraction(2))
    assert ind.nu_mu_bruteforce(complete_graph(2), complete_graph(2)) == (2, Fraction(1))


def test_nu_general_against_brute():
    c5 = cycle_graph(5)
    k2 = complete_graph(2)
    nu, mu = ind.nu_mu_bruteforce(c5, k2)
    brute = max(k for k in range(6) for sub in combinations(range(5), k)
                if hom_exists_brute(c5.induced(sub), k2))
    assert nu == brute == 4 and mu == Fraction(5, 4)


@pytest.mark.parametrize("n,r,t", GRID)
def test_bondy_hell_ratio(n, r, t):
    bh = ind.bondy_hell_check(n, r, t)
    assert bh.holds and bh.tight
    assert bh.mu_kneser == Fraction(binom(r, t), binom(r - 1, t - 1))
