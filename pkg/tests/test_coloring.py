import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lkneser import coloring as col
from lkneser import independence as ind
from lkneser.coloring import Coloring
from lkneser.errors import BudgetExceeded, InvalidInput, RetriesExhausted
from lkneser.graphs import build_kneser, build_local_complete, complete_graph, cycle_graph, from_edges
from lkneser.setkit import Permutation, all_permutations
from oracles import chi_brute, chi_milp, psi_brute

GRID = list(ind.grid(7))


def test_is_proper_basics():
    g = build_kneser(5, 2)
    assert col.is_proper(g, Coloring(g, tuple(range(1, 11))))
    k2 = complete_graph(2)
    assert not col.is_proper(k2, Coloring(k2, (1, 1)))
    assert col.is_proper(ind.local_kneser(5, 4, 2), col.projection_coloring(ind.local_kneser(5, 4, 2)))


def test_partial_coloring_rejected():
    k2 = complete_graph(2)
    with pytest.raises(InvalidInput):
        Coloring(k2, (1, None))
    with pytest.raises(InvalidInput):
        col.is_proper(k2, [1])


@pytest.mark.parametrize("t", [1, 2, 3])
def test_kneser_coloring_tight_case(t):
    g = build_kneser(2 * t, t)
    c = col.kneser_coloring(2 * t, t)
    assert c.n_colors_used == 2 and col.is_proper(g, c)


@pytest.mark.parametrize("m,n,k", [(5, 2, 3), (6, 2, 4), (7, 2, 5), (7, 3, 3), (6, 3, 2), (8, 3, 4)])
def test_kneser_coloring(m, n, k):
    g = build_kneser(m, n)
    c = col.kneser_coloring(m, n, g)
    assert col.is_proper(g, c) and c.n_colors_used == k == m - 2 * n + 2


def test_kneser_coloring_matches_chi():
    assert col.chi_exact(build_kneser(6, 2)) == 4 == col.kneser_coloring(6, 2).n_colors_used


@pytest.mark.parametrize("nrt,most", [((4, 4, 2), 2), ((5, 4, 2), 3), ((4, 3, 1), 4)])
def test_projection_coloring(nrt, most):
    g = ind.local_kneser(*nrt)
    c = col.projection_coloring(g)
    assert col.is_proper(g, c) and c.n_colors_used <= most


@pytest.mark.parametrize("n,r,t", GRID)
def test_projection_coloring_grid(n, r, t):
    g = ind.local_kneser(n, r, t)
    c = col.projection_coloring(g)
    assert col.is_proper(g, c) and c.n_colors_used <= n - 2 * t + 2


@pytest.mark.parametrize("nrt", [(3, 2, 1), (5, 4, 2), (6, 4, 2), (7, 5, 2), (12, 6, 3)])
def test_default_l(nrt):
    n, r, t = nrt
    assert col.default_l(n, r, t) == math.ceil(r * r / t * (1 + math.log(n)))
    assert {(3, 2, 1): 9, (5, 4, 2): 21, (6, 4, 2): 23}.get(nrt, col.default_l(*nrt)) == col.default_l(*nrt)


def test_ceil_guard_keeps_exact_integers():
    assert col._ceil_guarded(8.0) == 8
    assert col._ceil_guarded(8.000001) == 9


@pytest.mark.parametrize("n,r,t", [(4, 3, 1), (5, 4, 2), (6, 5, 2), (7, 6, 3)])
def test_membership_rule(n, r, t):
    g = ind.local_kneser(n, r, t)
    for sigma in list(all_permutations(n))[::37]:
        vec = col.s_sigma_membership(g, sigma)
        assert set(np.flatnonzero(vec)) == set(ind.build_S_sigma(n, r, t, sigma, g).members)


def test_random_coloring_classes_inside_S_sigma():
    out = col.random_permutation_coloring(5, 3, 1, 4, np.random.default_rng(3))
    for v, i in enumerate(out.assignment):
        if i is not None:
            assert ind.in_S_sigma(out.graph.labels[v], out.sigmas[i - 1])
            assert all(not ind.in_S_sigma(out.graph.labels[v], s) for s in out.sigmas[: i - 1])
    if out.coloring is not None:
        assert col.is_proper(out.graph, out.coloring)


def test_single_permutation_covers_half():
    fracs = [1 - col.random_permutation_coloring(3, 2, 1, 1, col.trial_rng(11, i)).uncovered / 6
             for i in range(1000)]
    assert abs(np.mean(fracs) - (1 - (1 - 1 / 2) ** 1)) < 0.02


def test_mean_uncovered_with_default_l():
    l = col.default_l(6, 4, 2)
    assert l == 23
    counts = [col.random_permutation_coloring(6, 4, 2, l, col.trial_rng(5, i)).uncovered for i in range(100)]
    assert col.expected_uncovered(6, 4, 2, l) == pytest.approx(90 * 2.0 ** -23)
    assert np.mean(counts) < 1


def test_las_vegas_small():
    c = col.las_vegas_coloring(3, 2, 1, 1)
    assert col.is_proper(c.graph, c) and c.n_colors_used <= 9
    assert c.n_colors_used >= col.chi_exact(c.graph)


def test_las_vegas_642():
    c = col.las_vegas_coloring(6, 4, 2, 7)
    assert col.is_proper(c.graph, c) and c.n_colors_used <= 23 and c.meta["attempts"] == 1


def test_las_vegas_retries_exhausted(monkeypatch):
    monkeypatch.setattr(col, "default_l", lambda n, r, t: 1)
    with pytest.raises(RetriesExhausted):
        col.las_vegas_coloring(6, 4, 2, 0, retry_cap=2)


@pytest.mark.parametrize("m,n", [(4, 2), (5, 2), (6, 2), (6, 3), (7, 3)])
def test_chi_kneser(m, n):
    assert col.chi_exact(build_kneser(m, n)) == m - 2 * n + 2


def test_chi_examples():
    assert col.chi_exact(build_kneser(5, 2)) == 3
    assert col.chi_exact(ind.local_kneser(4, 4, 2)) == 2
    assert col.chi_exact(cycle_graph(5)) == 3


@pytest.mark.parametrize("g", [build_kneser(5, 2), cycle_graph(7), ind.local_kneser(4, 3, 1),
                               ind.local_kneser(5, 5, 2), build_local_complete(4, 2)])
def test_chi_against_brute(g):
    assert col.chi_exact(g) == chi_brute(g)


@pytest.mark.parametrize("n,r,t", [(5, 3, 1), (5, 4, 1), (6, 5, 1), (5, 5, 2), (7, 7, 2)])
def test_chi_against_milp(n, r, t):
    g = ind.local_kneser(n, r, t)
    assert col.chi_exact(g) == chi_milp(g, n - 2 * t + 2)


@pytest.mark.parametrize("n,r,t", [nrt for nrt in GRID if ind.local_kneser(*nrt).n_vertices <= 60])
def test_chi_grid_bounds(n, r, t):
    g = ind.local_kneser(n, r, t)
    c = col.chromatic_coloring(g)
    chi = c.n_colors_used
    assert col.is_proper(g, c)
    assert r - 2 * t + 2 <= chi <= n - 2 * t + 2
    assert chi >= math.ceil(len(g) / ind.alpha_formula(n, r, t))


def test_chi_budget():
    with pytest.raises(BudgetExceeded):
        col.chi_exact(ind.local_kneser(7, 3, 1))


def test_psi_examples():
    assert col.psi_exact(complete_graph(2)) == 2
    assert col.psi_exact(build_kneser(4, 2)) == 2
    assert col.psi_exact(build_local_complete(3, 2)) == 2


@pytest.mark.parametrize("g", [cycle_graph(5), cycle_graph(6), complete_graph(4),
                               from_edges(4, [(0, 1), (0, 2), (0, 3)]),
                               from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]),
                               ind.local_kneser(4, 4, 2), build_local_complete(3, 2)])
def test_psi_against_brute(g):
    assert col.psi_exact(g) == psi_brute(g)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 6))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return from_edges(n, edges)


@settings(max_examples=25, deadline=None)
@given(small_graphs())
def test_psi_property(g):
    psi = col.psi_exact(g)
    assert psi == psi_brute(g)
    assert psi <= col.chi_exact(g)
    if g.n_edges:
        assert psi >= 2


def test_psi_budget():
    with pytest.raises(BudgetExceeded):
        col.psi_exact(ind.local_kneser(5, 3, 1))


def test_local_profile_star():
    g = from_edges(4, [(0, 1), (0, 2), (0, 3)])
    prof = col.local_profile(g, Coloring(g, (1, 2, 3, 4)))
    assert prof.counts == (4, 2, 2, 2) and prof.max == 4
    with pytest.raises(InvalidInput):
        col.local_profile(g, Coloring(g, (1, 1, 2, 3)))


def test_local_profile_projection():
    g = ind.local_kneser(5, 4, 2)
    assert col.local_profile(g, col.projection_coloring(g)).max <= 3


def test_bound_report_examples():
    rep = col.bound_report(5, 4, 2)
    assert (rep["projection_upper"], rep["random_permutation_upper"]) == (3, 21)
    rep = col.bound_report(1024, 3, 1)
    assert rep["lnn_upper"] == math.ceil(9 * (math.log(1024) + 1)) == 72
    assert rep["loglog_upper"] == pytest.approx(3 * 8 * math.log2(10))
    rep = col.bound_report(4, 4, 2)
    assert (rep["projection_upper"], rep["random_permutation_upper"]) == (2, 20)
    rep = col.bound_report(2, 2, 1)
    assert rep["loglog_upper"] is None and rep["notes"]


def test_normalize_first_use():
    assert col.normalize([5, 5, 2, 9, 2]) == (1, 1, 2, 3, 2)


def test_coloring_csv():
    g = ind.local_kneser(3, 2, 1)
    buf = io.StringIO()
    col.write_coloring_csv(col.projection_coloring(g), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "vertex_index,A,B,color"
    assert lines[1] == "1,1,2,1"
    assert len(lines) == 7
