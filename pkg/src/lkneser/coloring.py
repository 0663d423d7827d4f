"""Proper colourings: exact chromatic and local chromatic numbers, the Kneser
projection colouring, random-permutation colourings and bound formulas."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import budget, setkit
from .errors import InvalidInput, InvalidParameters, RetriesExhausted
from .graphs import Graph, _bits, build_kneser, local_params
from .independence import _check_nrt, _mis_search, local_kneser


@dataclass(frozen=True, eq=False)
class Coloring:
    graph: Graph
    colors: tuple[int, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        cols = tuple(self.colors)
        if len(cols) != len(self.graph):
            raise InvalidInput(f"colouring has {len(cols)} entries for {len(self.graph)} vertices")
        for v, c in enumerate(cols):
            if c is None or int(c) < 1:
                raise InvalidInput(f"vertex {v} is uncoloured")
        object.__setattr__(self, "colors", tuple(int(c) for c in cols))

    @property
    def palette_size(self) -> int:
        return max(self.colors, default=0)

    @property
    def n_colors_used(self) -> int:
        return len(set(self.colors))

    def __getitem__(self, v):
        return self.colors[v]

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return out


def normalize(colors: Sequence[int]) -> tuple[int, ...]:
    """Relabel colours 1, 2, ... in order of first use."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(c, len(seen) + 1) for c in colors)


def _as_colors(g: Graph, c) -> tuple:
    cols = c.colors if isinstance(c, Coloring) else tuple(c)
    if len(cols) != len(g) or any(x is None or x < 1 for x in cols):
        raise InvalidInput("colouring is not total")
    return cols


def is_proper(g: Graph, c) -> bool:
    cols = _as_colors(g, c)
    return all(cols[u] != cols[v] for u, v in g.edges())


@dataclass(frozen=True)
class LocalProfile:
    counts: tuple[int, ...]

    @property
    def max(self) -> int:
        return max(self.counts, default=0)


def local_profile(g: Graph, c) -> LocalProfile:
    """Number of distinct colours in each closed neighbourhood."""
    cols = _as_colors(g, c)
    if not is_proper(g, cols):
        raise InvalidInput("local profile needs a proper colouring")
    counts = []
    for v in range(len(g)):
        seen = {cols[v]}
        seen.update(cols[u] for u in _bits(g.adj[v]))
        counts.append(len(seen))
    return LocalProfile(tuple(counts))


# ---------------------------------------------------------------------------
# explicit colourings

def kneser_coloring(m: int, n: int, graph: Graph | None = None) -> Coloring:
    """c(A) = min(min A, m-2n+2): the classic optimal colouring of KG(m,n)."""
    g = graph if graph is not None else build_kneser(m, n)
    cap = m - 2 * n + 2
    return Coloring(g, tuple(min(setkit.lowest(a), cap) for a, _ in g.labels))


def projection_coloring(g: Graph) -> Coloring:
    """Colour (A,B) by the Kneser colour of A in KG(n,t)."""
    n, r, t = local_params(g)
    cap = n - 2 * t + 2
    return Coloring(g, tuple(min(setkit.lowest(a), cap) for a, _ in g.labels))


# ---------------------------------------------------------------------------
# random permutations

def _ceil_guarded(x: float) -> int:
    # drop one ulp so an exact integer computed slightly high does not round up
    return math.ceil(x - math.ulp(x))


def default_l(n: int, r: int, t: int) -> int:
    """⌈(r²/t)(ln n + 1)⌉ permutations."""
    _check_nrt(n, r, t)
    return _ceil_guarded(r * r / t * (math.log(n) + 1.0))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one Monte Carlo trial, derived from (seed, trial)."""
    return np.random.default_rng([int(seed), int(trial)])


def _membership_tables(g: Graph):
    n = g.ground
    A = np.zeros((len(g), n), dtype=bool)
    B = np.zeros((len(g), n), dtype=bool)
    for v, (a, b) in enumerate(g.labels):
        for x in setkit.members(a):
            A[v, x - 1] = True
        for x in setkit.members(b):
            B[v, x - 1] = True
    return A, B


def s_sigma_membership(g: Graph, sigma: setkit.Permutation, tables=None) -> np.ndarray:
    """Boolean vector: vertex (A,B) lies in S_sigma, i.e. the sigma-first element of A ∪ B is in A."""
    A, B = tables if tables is not None else _membership_tables(g)
    pos = np.asarray(sigma.inverse)
    big = len(pos) + 1
    first_a = np.where(A, pos, big).min(axis=1)
    first_b = np.where(B, pos, big).min(axis=1)
    return first_a < first_b


@dataclass(frozen=True)
class RandomColoringOutcome:
    graph: Graph
    sigmas: tuple
    assignment: tuple  # 1-based index of the first sigma covering each vertex, or None
    coloring: Coloring | None

    @property
    def uncovered(self) -> int:
        return sum(a is None for a in self.assignment)

    @property
    def uncovered_vertices(self) -> list[int]:
        return [v for v, a in enumerate(self.assignment) if a is None]


def random_permutation_coloring(n: int, r: int, t: int, l: int, rng,
                                graph: Graph | None = None) -> RandomColoringOutcome:
    """Colour each vertex by the first of l random permutations whose S_sigma contains it."""
    _check_nrt(n, r, t)
    if l < 1:
        raise InvalidParameters(f"l must be >= 1, got {l}")
    rng = setkit.make_rng(rng)
    g = graph if graph is not None else local_kneser(n, r, t)
    tables = _membership_tables(g)
    first = np.zeros(len(g), dtype=np.int64)
    sigmas = []
    for i in range(1, l + 1):
        sigma = setkit.random_permutation(n, rng)
        sigmas.append(sigma)
        hit = s_sigma_membership(g, sigma, tables) & (first == 0)
        first[hit] = i
    assignment = tuple(int(x) if x else None for x in first)
    coloring = None
    if all(assignment):
        coloring = Coloring(g, normalize(assignment), {"l": l, "sigmas": [s.seq for s in sigmas]})
    return RandomColoringOutcome(g, tuple(sigmas), assignment, coloring)


def expected_uncovered(n: int, r: int, t: int, l: int) -> float:
    """E(X) = C(r,t)·C(n,r)·(1 - t/r)^l."""
    return math.comb(r, t) * math.comb(n, r) * (1 - t / r) ** l


def las_vegas_coloring(n: int, r: int, t: int, rng, retry_cap: int = 50,
                       graph: Graph | None = None) -> Coloring:
    """Retry the random-permutation colouring with l = default_l until every vertex is covered."""
    if retry_cap < 1:
        raise InvalidParameters("retry_cap must be >= 1")
    rng = setkit.make_rng(rng)
    l = default_l(n, r, t)
    uncovered = []
    for attempt in range(1, retry_cap + 1):
        out = random_permutation_coloring(n, r, t, l, rng, graph)
        uncovered.append(out.uncovered)
        if out.coloring is not None:
            c = out.coloring
            c.meta.update(attempts=attempt, uncovered_per_attempt=uncovered)
            return c
    raise RetriesExhausted(f"U_{t}({n},{r}) still uncovered after {retry_cap} attempts")


# ---------------------------------------------------------------------------
# exact chromatic number

def _complement_rows(g: Graph) -> list[int]:
    full = (1 << len(g)) - 1
    return [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]


def clique_number(g: Graph) -> int:
    if len(g) == 0:
        return 0
    return _mis_search(_complement_rows(g), (1 << len(g)) - 1)[0]


def _dsatur_greedy(g: Graph) -> list[int]:
    n = len(g)
    cols = [0] * n
    sat = [0] * n  # colour masks seen in the neighbourhood
    for _ in range(n):
        v = max((u for u in range(n) if not cols[u]),
                key=lambda u: (sat[u].bit_count(), g.degree(u), -u))
        c = 1
        while sat[v] >> c & 1:
            c += 1
        cols[v] = c
        for w in _bits(g.adj[v]):
            sat[w] |= 1 << c
    return cols


def chromatic_coloring(g: Graph) -> Coloring:
    """Optimal colouring by DSATUR branch and bound, seeded by greedy DSATUR and a max-clique bound."""
    budget.check("chi", len(g), "chromatic number instance")
    n = len(g)
    if n == 0:
        return Coloring(g, ())
    best_cols = _dsatur_greedy(g)
    best = [max(best_cols), best_cols]
    lower = max(clique_number(g), 1)
    if best[0] == lower:
        return Coloring(g, normalize(best_cols), {"lower_bound": lower})

    adj = g.adj
    cols = [0] * n
    sat = [0] * n

    def pick():
        v_best, key_best = -1, None
        for u in range(n):
            if not cols[u]:
                key = (sat[u].bit_count(), adj[u].bit_count())
                if key_best is None or key > key_best:
                    v_best, key_best = u, key
        return v_best

    def rec(colored, used):
        if used >= best[0]:
            return
        if colored == n:
            best[0], best[1] = used, cols[:]
            return
        v = pick()
        forbidden = sat[v]
        for c in range(1, min(used + 1, best[0] - 1) + 1):
            if forbidden >> c & 1:
                continue
            cols[v] = c
            saved = []
            for w in _bits(adj[v]):
                if not sat[w] >> c & 1:
                    sat[w] |= 1 << c
                    saved.append(w)
            rec(colored + 1, max(used, c))
            for w in saved:
                sat[w] &= ~(1 << c)
            cols[v] = 0
            if best[0] == lower:
                return

    rec(0, 0)
    return Coloring(g, normalize(best[1]), {"lower_bound": lower})


def chi_exact(g: Graph) -> int:
    return chromatic_coloring(g).n_colors_used


# ---------------------------------------------------------------------------
# exact local chromatic number

def _psi_order(g: Graph) -> list[int]:
    # BFS from a maximum-degree vertex so closed neighbourhoods fill early
    n = len(g)
    order, seen = [], set()
    for start in sorted(range(n), key=lambda v: (-g.degree(v), v)):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(_bits(g.adj[v]), key=lambda u: (-g.degree(u), u)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def local_chromatic_coloring(g: Graph) -> tuple[int, Coloring]:
    """ψ(G) and a colouring attaining it.

    Searches proper colourings in canonical form (a new colour is always the
    next unused one) with at most |V| colours, pruning once some closed
    neighbourhood already holds as many colours as the incumbent.
    """
    budget.check("psi", len(g), "local chromatic number instance")
    n = len(g)
    if n == 0:
        return 0, Coloring(g, ())
    start = chromatic_coloring(g)
    best = [local_profile(g, start).max, list(start.colors)]
    lower = max(clique_number(g), 1)
    if best[0] == lower:
        return best[0], start

    adj = g.adj
    closed = [adj[v] | (1 << v) for v in range(n)]
    order = _psi_order(g)
    cols = [0] * n
    seen = [0] * n  # colours present in N[v] so far

    def rec(i, used):
        if i == n:
            best[0], best[1] = max(s.bit_count() for s in seen), cols[:]
            return
        v = order[i]
        limit = best[0] - 1
        nb_cols = 0
        for w in _bits(adj[v]):
            if cols[w]:
                nb_cols |= 1 << cols[w]
        for c in range(1, min(used + 1, n) + 1):
            bit = 1 << c
            if nb_cols & bit:
                continue
            touched = []
            ok = True
            for w in _bits(closed[v]):
                if not seen[w] & bit:
                    seen[w] |= bit
                    touched.append(w)
                    if seen[w].bit_count() > limit:
                        ok = False
            if ok:
                cols[v] = c
                rec(i + 1, max(used, c))
                cols[v] = 0
            for w in touched:
                seen[w] &= ~bit
            if best[0] == lower:
                return

    rec(0, 0)
    return best[0], Coloring(g, normalize(best[1]))


def psi_exact(g: Graph) -> int:
    return local_chromatic_coloring(g)[0]


# ---------------------------------------------------------------------------
# bound formulas

def loglog_bound_value(n: int, r: int) -> float | None:
    """r·2^r·log₂log₂ n, or None where log₂log₂ n is undefined (n <= 2)."""
    if n <= 2:
        return None
    return r * 2 ** r * math.log2(math.log2(n))


def bound_report(n: int, r: int, t: int) -> dict:
    _check_nrt(n, r, t)
    out = {
        "n": n, "r": r, "t": t,
        "projection_upper": n - 2 * t + 2,
        "random_permutation_upper": default_l(n, r, t),
        "kneser_block_lower": r - 2 * t + 2,
        "psi_upper": r - 2 * t + 2,
        "notes": [],
    }
    if t == 1:
        out["lnn_upper"] = _ceil_guarded(r * r * (math.log(n) + 1.0))
        val = loglog_bound_value(n, r)
        out["loglog_upper"] = val
        if val is None:
            out["notes"].append("log2 log2 n undefined for n <= 2; the log-log bound is omitted")
    return out


# ---------------------------------------------------------------------------
# export

def write_coloring_csv(c: Coloring, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["vertex_index", "A", "B", "color"])
    for v, (a, b) in enumerate(c.graph.labels):
        w.writerow([v + 1, setkit.format_set(a), setkit.format_set(b), c.colors[v]])
