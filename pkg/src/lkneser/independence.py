"""Independent sets of local Kneser graphs.

Covers the closed-form independence number, the canonical maximum independent
sets ``S_sigma`` (all (A,B) whose sigma-first element of A ∪ B lies in A), star
centres per block, the centre digraph D_S and its inverse construction I_D,
exact solvers used as oracles, and the Bondy–Hell ratio check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from . import budget, setkit
from .errors import CharacterizationViolation, InvalidInput, InvalidParameters, LabError, NotAStar
from .graphs import Graph, _bits, build_local_kneser, local_params
from .setkit import Permutation, enumerate_masks, members


@lru_cache(maxsize=64)
def local_kneser(n: int, r: int, t: int) -> Graph:
    """Cached :func:`build_local_kneser`; graphs are immutable so sharing is safe."""
    return build_local_kneser(n, r, t)


def _check_nrt(n, r, t):
    if not (t >= 1 and r >= 2 * t and n >= r):
        raise InvalidParameters(f"need n >= r >= 2t >= 2, got n={n}, r={r}, t={t}")


@dataclass(frozen=True, eq=False)
class IndependentSet:
    graph: Graph
    members: frozenset

    def __post_init__(self):
        mask = 0
        for v in self.members:
            if not 0 <= v < len(self.graph):
                raise InvalidInput(f"vertex {v} not in graph")
            mask |= 1 << v
        for v in self.members:
            if self.graph.adj[v] & mask:
                u = (self.graph.adj[v] & mask).bit_length() - 1
                raise InvalidInput(
                    f"not independent: {self.graph.label_str(v)} ~ {self.graph.label_str(u)}")
        object.__setattr__(self, "members", frozenset(self.members))
        object.__setattr__(self, "_mask", mask)

    @property
    def mask(self) -> int:
        return self._mask

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in self.members

    def __eq__(self, other):
        return (isinstance(other, IndependentSet) and self.graph is other.graph
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.graph), self.members))

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def labels(self) -> list[str]:
        return [self.graph.label_str(v) for v in self.sorted()]


def alpha_formula(n: int, r: int, t: int) -> int:
    _check_nrt(n, r, t)
    return comb(r - 1, t - 1) * comb(n, r)


# ---------------------------------------------------------------------------
# exact maximum independent set

def _clique_cover(adj, P):
    """Greedy clique cover of P: vertex order and the class index of each vertex.

    This is the greedy colouring of the complement graph; the class index of
    the last vertex bounds the independence number of P.
    """
    order, classes = [], []
    k = 0
    while P:
        k += 1
        U = P
        while U:
            low = U & -U
            v = low.bit_length() - 1
            P ^= low
            U &= adj[v] & ~low
            order.append(v)
            classes.append(k)
    return order, classes


def _mis_search(adj, P, parts=None, want_set=True):
    """Branch and bound for a maximum independent set inside the vertex mask P.

    Upper bounds: greedy clique cover of the candidates, and, when ``parts``
    (a vertex partition as masks) is given, the sum over parts of the exact
    independence number of each part restricted to the candidates.
    """
    best = [0, 0]
    memo = {}

    def part_bound(Q):
        total = 0
        for pm in parts:
            q = Q & pm
            if q not in memo:
                memo[q] = _mis_search(adj, q, None, False)[0]
            total += memo[q]
        return total

    def expand(Q, size, chosen):
        order, classes = _clique_cover(adj, Q)
        if parts is not None and size + part_bound(Q) <= best[0]:
            return
        for i in range(len(order) - 1, -1, -1):
            if size + classes[i] <= best[0]:
                return
            v = order[i]
            bit = 1 << v
            NQ = Q & ~adj[v] & ~bit
            if NQ:
                expand(NQ, size + 1, chosen | bit)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, chosen | bit
            Q &= ~bit
            if parts is not None and Q and size + part_bound(Q) <= best[0]:
                return

    if P:
        expand(P, 0, 0)
    return best[0], best[1]


def block_partition(g: Graph) -> list[int] | None:
    """Vertex masks of the blocks V_R (A ∪ B = R) of a local Kneser graph."""
    try:
        local_params(g)
    except InvalidParameters:
        return None
    parts: dict[int, int] = {}
    for i, (a, b) in enumerate(g.labels):
        parts[a | b] = parts.get(a | b, 0) | (1 << i)
    return [parts[k] for k in sorted(parts)]


def maximum_independent_set(g: Graph, partition="auto") -> IndependentSet:
    """One maximum independent set, found by branch and bound.

    ``partition`` may be ``"auto"`` (blocks V_R for local Kneser graphs,
    nothing otherwise), ``None`` (clique-cover bound only) or an explicit list
    of vertex masks partitioning the graph.
    """
    budget.check("alpha", len(g), "maximum independent set instance")
    parts = block_partition(g) if partition == "auto" else partition
    if parts is not None:
        covered = 0
        for pm in parts:
            if covered & pm:
                raise InvalidParameters("partition blocks overlap")
            covered |= pm
        if covered != (1 << len(g)) - 1:
            raise InvalidParameters("partition does not cover the graph")
    _, mask = _mis_search(g.adj, (1 << len(g)) - 1, parts)
    return IndependentSet(g, frozenset(_bits(mask)))


def alpha_exact(g: Graph, partition="auto") -> int:
    return len(maximum_independent_set(g, partition))


# ---------------------------------------------------------------------------
# S_sigma and friends

def build_S_sigma(n: int, r: int, t: int, sigma: Permutation, graph: Graph | None = None) -> IndependentSet:
    _check_nrt(n, r, t)
    if sigma.n != n:
        raise InvalidParameters(f"sigma acts on [{sigma.n}], expected [{n}]")
    g = graph if graph is not None else local_kneser(n, r, t)
    inv = sigma.inverse
    chosen = []
    for i, (a, b) in enumerate(g.labels):
        first = min(members(a | b), key=lambda x: inv[x - 1])
        if a >> (first - 1) & 1:
            chosen.append(i)
    return IndependentSet(g, frozenset(chosen))


def in_S_sigma(label, sigma: Permutation) -> bool:
    a, b = label
    return bool(a >> (sigma.min_mask(a | b) - 1) & 1)


@dataclass(frozen=True)
class CenterTable:
    n: int
    r: int
    t: int
    centers: dict  # R mask -> centre element

    def __getitem__(self, R):
        key = R if isinstance(R, int) else setkit.mask_of(R)
        return self.centers[key]

    def items(self):
        return sorted(self.centers.items(), key=lambda kv: members(kv[0]))


def _blocks_of(S: IndependentSet) -> dict[int, list[int]]:
    n, r, t = local_params(S.graph)
    blocks = {R: [] for R in enumerate_masks(n, r)}
    for v in S.members:
        a, b = S.graph.labels[v]
        blocks[a | b].append(v)
    return blocks


def extract_centers(S: IndependentSet) -> CenterTable:
    """Star centre x(S,R) of every block; raises :class:`NotAStar` if some block is not a full star."""
    n, r, t = local_params(S.graph)
    star_size = comb(r - 1, t - 1)
    centers = {}
    for R, verts in _blocks_of(S).items():
        if not verts:
            raise LabError(f"block {{{setkit.format_set(R)}}} of S is empty; S cannot be maximum")
        common = R
        for v in verts:
            common &= S.graph.labels[v][0]
        if len(verts) != star_size or common.bit_count() != 1:
            raise NotAStar(
                f"block {{{setkit.format_set(R)}}} holds {len(verts)} vertices with common part "
                f"{{{setkit.format_set(common)}}}; a star has {star_size} and one centre")
        centers[R] = setkit.lowest(common)
    return CenterTable(n, r, t, centers)


@dataclass(frozen=True)
class ConsistencyReport:
    violations: tuple  # (R, R', x(S,R), x(S,R')) as sorted member tuples / ints

    @property
    def ok(self) -> bool:
        return not self.violations


def check_center_consistency(table: CenterTable) -> ConsistencyReport:
    """If x(S,R) = x lies in R ∩ R', then x(S,R') must avoid (R ∩ R') minus x."""
    bad = []
    items = table.items()
    for R, x in items:
        xbit = 1 << (x - 1)
        for R2, z in items:
            if R2 == R or not (R2 & xbit):
                continue
            inter = R & R2
            if z != x and inter >> (z - 1) & 1:
                bad.append((members(R), members(R2), x, z))
    return ConsistencyReport(tuple(bad))


@dataclass(frozen=True)
class DirectedGraph:
    n: int
    arcs: frozenset  # of (i, j), 1-based

    def __post_init__(self):
        arcs = frozenset((int(i), int(j)) for i, j in self.arcs)
        for i, j in arcs:
            if i == j:
                raise InvalidInput(f"self-arc at {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise InvalidInput(f"arc {(i, j)} outside [{self.n}]")
        object.__setattr__(self, "arcs", arcs)

    def out_neighbors(self, i: int) -> int:
        """N⁺(i) as a mask."""
        return setkit.mask_of(j for a, j in self.arcs if a == i)

    def out_degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, _ in self.arcs:
            deg[i - 1] += 1
        return deg

    def has_multiplicity(self) -> bool:
        return any((j, i) in self.arcs for i, j in self.arcs)

    @classmethod
    def transitive_tournament(cls, n: int, order: Iterable[int] | None = None) -> "DirectedGraph":
        seq = list(order) if order is not None else list(range(1, n + 1))
        return cls(n, frozenset((seq[a], seq[b]) for a in range(n) for b in range(a + 1, n)))


def digraph_from_centers(table: CenterTable) -> DirectedGraph:
    arcs = set()
    for R, x in table.centers.items():
        for j in members(R):
            if j != x:
                arcs.add((x, j))
    return DirectedGraph(table.n, frozenset(arcs))


def build_D_S(S: IndependentSet) -> DirectedGraph:
    return digraph_from_centers(extract_centers(S))


def size_from_out_degrees(D: DirectedGraph, r: int, t: int) -> int:
    """Σ_i C(d_i, r-1)·C(r-1, t-1), the count of vertices an out-star can host."""
    return sum(comb(d, r - 1) for d in D.out_degrees()) * comb(r - 1, t - 1)


def build_I_D(D: DirectedGraph, r: int, t: int, graph: Graph | None = None) -> IndependentSet:
    """All (A,B) with A ∪ B inside N⁺(i) ∪ {i} and i ∈ A for some i."""
    _check_nrt(D.n, r, t)
    g = graph if graph is not None else local_kneser(D.n, r, t)
    closed = [D.out_neighbors(i) | (1 << (i - 1)) for i in range(1, D.n + 1)]
    chosen = []
    for v, (a, b) in enumerate(g.labels):
        ab = a | b
        for i in members(a):
            if ab & ~closed[i - 1] == 0:
                chosen.append(v)
                break
    return IndependentSet(g, frozenset(chosen))


# ---------------------------------------------------------------------------
# enumeration and the characterisation

def _enumerate_generic(g: Graph, alpha: int) -> list[tuple[int, ...]]:
    adj = g.adj
    out = []

    def rec(Q, size, chosen):
        if size == alpha:
            out.append(tuple(_bits(chosen)))
            return
        _, classes = _clique_cover(adj, Q)
        if not classes or size + classes[-1] < alpha:
            return
        while Q:
            if size + Q.bit_count() < alpha:
                return
            low = Q & -Q
            v = low.bit_length() - 1
            Q ^= low
            rec(Q & ~adj[v], size + 1, chosen | low)
            if Q:
                _, classes = _clique_cover(adj, Q)
                if size + classes[-1] < alpha:
                    return

    rec((1 << len(g)) - 1, 0, 0)
    return out


def _enumerate_blocks(g: Graph) -> list[tuple[int, ...]]:
    """Maximum independent sets of U_t(n,r), r > 2t, as unions of one star per block.

    Relies on each block of a maximum set being a full star; compatibility
    between blocks is checked by adjacency only.
    """
    n, r, t = local_params(g)
    if r <= 2 * t:
        raise InvalidParameters("block enumeration needs r > 2t")
    Rs = enumerate_masks(n, r)
    stars = []
    for R in Rs:
        options = []
        for x in members(R):
            m = 0
            for v, (a, b) in enumerate(g.labels):
                if a | b == R and a >> (x - 1) & 1:
                    m |= 1 << v
            nb = 0
            for v in _bits(m):
                nb |= g.adj[v]
            options.append((m, nb))
        stars.append(options)
    out = []

    def rec(k, chosen, nbrs):
        if k == len(Rs):
            out.append(tuple(_bits(chosen)))
            return
        for m, nb in stars[k]:
            if m & nbrs == 0:
                rec(k + 1, chosen | m, nbrs | nb)

    rec(0, 0, 0)
    return out


def enumerate_maximum_independent_sets(g: Graph, method: str = "generic",
                                       alpha: int | None = None) -> list[IndependentSet]:
    """Every maximum independent set exactly once, sorted by member tuple.

    ``method="generic"`` runs a bounded backtracking search on any graph;
    ``method="blocks"`` uses the star-per-block structure of U_t(n,r), r > 2t.
    """
    budget.check("enum", len(g), "enumeration instance")
    if method == "generic":
        a = alpha_exact(g) if alpha is None else alpha
        found = _enumerate_generic(g, a)
    elif method == "blocks":
        found = _enumerate_blocks(g)
    else:
        raise InvalidParameters(f"unknown method {method!r}")
    return [IndependentSet(g, frozenset(s)) for s in sorted(set(found))]


def all_S_sigma(n: int, r: int, t: int, graph: Graph | None = None) -> list[IndependentSet]:
    """Distinct S_sigma over all sigma in S_n, sorted by member tuple."""
    g = graph if graph is not None else local_kneser(n, r, t)
    seen = {}
    for sigma in setkit.all_permutations(n):
        s = build_S_sigma(n, r, t, sigma, g)
        seen.setdefault(s.sorted(), s)
    return [seen[k] for k in sorted(seen)]


def match_to_sigma(S: IndependentSet) -> Permutation:
    """Recover sigma with S = S_sigma by sorting D_S vertices by out-degree."""
    n, r, t = local_params(S.graph)
    D = build_D_S(S)
    deg = D.out_degrees()
    sigma = Permutation(tuple(sorted(range(1, n + 1), key=lambda i: (-deg[i - 1], i))))
    rebuilt = build_S_sigma(n, r, t, sigma, S.graph)
    if rebuilt.members != S.members:
        raise CharacterizationViolation(
            f"no permutation reproduces this maximum independent set of U_{t}({n},{r})",
            dump={
                "S": S.labels(),
                "D_S": sorted(D.arcs),
                "out_degrees": deg,
                "attempted_sigma": list(sigma.seq),
            })
    return sigma


# ---------------------------------------------------------------------------
# Bondy–Hell

def is_single_vertex(k: Graph) -> bool:
    return len(k) == 1 and k.n_edges == 0


def nu_mu_bruteforce(g: Graph, k: Graph) -> tuple[int, Fraction]:
    """ν(G,K), the largest induced subgraph of G mapping to K, and μ = |V(G)|/ν."""
    if len(k) == 0:
        raise InvalidParameters("K must have at least one vertex")
    if len(g) == 0:
        raise InvalidParameters("G must have at least one vertex")
    if is_single_vertex(k):
        nu = alpha_exact(g)
    else:
        from .homkit import hom_search

        budget.check("nu", len(g), "nu/mu instance")
        nu = 0
        for size in range(len(g), 0, -1):
            for subset in combinations(range(len(g)), size):
                if hom_search(g.induced(subset), k) is not None:
                    nu = size
                    break
            if nu:
                break
    return nu, Fraction(len(g), nu)


@dataclass(frozen=True)
class BondyHellInstance:
    n: int
    r: int
    t: int
    mu_kneser: Fraction
    mu_local: Fraction

    @property
    def holds(self) -> bool:
        return self.mu_kneser <= self.mu_local

    @property
    def tight(self) -> bool:
        return self.mu_kneser == self.mu_local

    @property
    def predicted(self) -> Fraction:
        return Fraction(comb(self.r, self.t), comb(self.r - 1, self.t - 1))


def bondy_hell_check(n: int, r: int, t: int) -> BondyHellInstance:
    """μ(KG(r,t), K₁) against μ(U_t(n,r), K₁), both from exact α."""
    from .graphs import build_kneser
    from .graphs import from_edges

    _check_nrt(n, r, t)
    k1 = from_edges(1, [])
    _, mu_kg = nu_mu_bruteforce(build_kneser(r, t), k1)
    _, mu_loc = nu_mu_bruteforce(local_kneser(n, r, t), k1)
    return BondyHellInstance(n, r, t, mu_kg, mu_loc)


def grid(max_n: int = 7, max_vertices: int | None = None) -> Iterator[tuple[int, int, int]]:
    """All (n, r, t) with n >= r >= 2t >= 2 and n <= max_n, in lexicographic order."""
    for n in range(2, max_n + 1):
        for r in range(2, n + 1):
            for t in range(1, r // 2 + 1):
                if max_vertices is None or comb(n, r) * comb(r, t) <= max_vertices:
                    yield n, r, t
