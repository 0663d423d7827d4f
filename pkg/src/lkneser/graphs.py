"""Kneser graphs KG(m,n), local complete graphs U(n,r) and local Kneser graphs U_t(n,r).

Every vertex carries a label ``(A, B)`` of two disjoint subset masks:

* KG(m,n): ``A`` is the n-subset, ``B`` is empty;
* U(n,r): ``A`` is the singleton ``{a}``, ``B`` the (r-1)-set;
* U_t(n,r): ``|A| = t``, ``|B| = r - t``.

Two labels are adjacent iff ``A ⊆ D`` and ``C ⊆ B``.  For KG labels (B empty)
that rule would never fire, so Kneser graphs use disjointness instead.
Vertices are indexed in the order of (sorted A, sorted B).  Adjacency rows are
Python ints used as bit sets over vertex indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import setkit
from .errors import InvalidParameters
from .setkit import Permutation, Subset, enumerate_masks, members

KNESER = "kneser"
LOCAL_COMPLETE = "local-complete"
LOCAL_KNESER = "local-kneser"
FAMILIES = (KNESER, LOCAL_COMPLETE, LOCAL_KNESER)

Label = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Graph:
    family: str
    params: dict
    ground: int
    labels: tuple[Label, ...]
    adj: tuple[int, ...]
    degenerate: bool = False
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.labels) != len(self.adj):
            raise InvalidParameters("labels and adjacency rows differ in length")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.adj):
            for v in _bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def index_of(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InvalidParameters(f"no vertex labelled {self.label_str(label)}") from None

    def has_label(self, label: Label) -> bool:
        return label in self._index

    def label_str(self, label: Label | int) -> str:
        if isinstance(label, int):
            label = self.labels[label]
        a, b = label
        return f"({{{setkit.format_set(a)}}},{{{setkit.format_set(b)}}})"

    def adjacency_matrix(self) -> np.ndarray:
        n = len(self)
        mat = np.zeros((n, n), dtype=bool)
        for u, v in self.edges():
            mat[u, v] = mat[v, u] = True
        return mat

    def induced(self, vertices: Sequence[int], family: str = "induced", params=None) -> "Graph":
        """Induced subgraph on ``vertices`` (kept in the given order)."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for w in _bits(self.adj[v]):
                if w in pos:
                    row |= 1 << pos[w]
            rows.append(row)
        return Graph(family, dict(params or {}), self.ground,
                     tuple(self.labels[v] for v in vertices), tuple(rows))


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def from_edges(n: int, edges: Iterable[tuple[int, int]], name: str = "custom") -> Graph:
    """A plain graph on vertices 0..n-1; labels are ({i+1}, {}) placeholders."""
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise InvalidParameters("loops are not allowed")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    labels = tuple((1 << i, 0) for i in range(n)) if n <= 64 else tuple((i, -1) for i in range(n))
    return Graph(name, {"n": n}, min(n, 64), labels, tuple(rows))


def complete_graph(n: int) -> Graph:
    return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], "complete")


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)], "cycle")


def _rows_from_matrix(mat: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(mat, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def _pair_adjacency(labels: Sequence[Label]) -> tuple[int, ...]:
    a = np.array([lab[0] for lab in labels], dtype=np.uint64)
    b = np.array([lab[1] for lab in labels], dtype=np.uint64)
    # (A,B) ~ (C,D)  iff  A ⊆ D and C ⊆ B
    a_in_d = (a[:, None] & ~b[None, :]) == 0
    c_in_b = (a[None, :] & ~b[:, None]) == 0
    return _rows_from_matrix(a_in_d & c_in_b)


def _sort_key(label: Label):
    return members(label[0]), members(label[1])


def build_kneser(m: int, n: int) -> Graph:
    if n < 1 or m < 2 * n:
        raise InvalidParameters(f"KG(m,n) needs m >= 2n >= 2, got m={m}, n={n}")
    labels = tuple((s, 0) for s in enumerate_masks(m, n))
    a = np.array([lab[0] for lab in labels], dtype=np.uint64)
    rows = _rows_from_matrix((a[:, None] & a[None, :]) == 0)
    return Graph(KNESER, {"m": m, "n": n}, m, labels, rows)


def build_local_complete(n: int, r: int) -> Graph:
    if r < 1 or n < r:
        raise InvalidParameters(f"U(n,r) needs n >= r >= 1, got n={n}, r={r}")
    labels = []
    for a in range(1, n + 1):
        rest = [x for x in range(1, n + 1) if x != a]
        for combo in _combos(rest, r - 1):
            labels.append((1 << (a - 1), setkit.mask_of(combo)))
    labels.sort(key=_sort_key)
    return Graph(LOCAL_COMPLETE, {"n": n, "r": r}, n, tuple(labels), _pair_adjacency(labels))


def _combos(items, k):
    from itertools import combinations

    return combinations(items, k)


def local_kneser_labels(n: int, r: int, t: int) -> list[Label]:
    labels = []
    full = (1 << n) - 1
    for a in enumerate_masks(n, t):
        rest = members(full & ~a)
        for combo in _combos(rest, r - t):
            labels.append((a, setkit.mask_of(combo)))
    labels.sort(key=_sort_key)
    return labels


def build_local_kneser(n: int, r: int, t: int) -> Graph:
    if not (t >= 1 and r >= 2 * t and n >= r):
        raise InvalidParameters(f"U_t(n,r) needs n >= r >= 2t >= 2, got n={n}, r={r}, t={t}")
    labels = local_kneser_labels(n, r, t)
    return Graph(LOCAL_KNESER, {"n": n, "r": r, "t": t}, n, tuple(labels),
                 _pair_adjacency(labels), degenerate=(r == 2 * t))


def local_kneser_order(n: int, r: int, t: int) -> int:
    return comb(n, r) * comb(r, t)


def build(family: str, **params) -> Graph:
    if family == KNESER:
        return build_kneser(params["m"], params["n"])
    if family == LOCAL_COMPLETE:
        return build_local_complete(params["n"], params["r"])
    if family == LOCAL_KNESER:
        return build_local_kneser(params["n"], params["r"], params["t"])
    raise InvalidParameters(f"unknown family {family!r}")


def _require_local_kneser(g: Graph) -> tuple[int, int, int]:
    if g.family == LOCAL_KNESER:
        p = g.params
        return p["n"], p["r"], p["t"]
    if g.family == LOCAL_COMPLETE:
        return g.params["n"], g.params["r"], 1
    raise InvalidParameters(f"expected a local Kneser graph, got family {g.family!r}")


def local_params(g: Graph) -> tuple[int, int, int]:
    """(n, r, t) of a local Kneser or local complete graph."""
    return _require_local_kneser(g)


def relabel_by_rank(mask: int, R: int) -> int:
    """Replace each element of ``mask`` by its rank inside ``R`` (1-based)."""
    ranks = {x: i for i, x in enumerate(members(R), start=1)}
    return setkit.mask_of(ranks[x] for x in members(mask))


def induced_block(g: Graph, R: Subset | Iterable[int]) -> tuple[Graph, list[int]]:
    """The block V_R = {(A,B) : A ∪ B = R} and its isomorphism onto KG(r,t).

    Returns the block graph and ``iso`` with ``iso[i]`` the KG(r,t) index of
    block vertex ``i``.  The map is checked to preserve adjacency and
    non-adjacency on every pair.
    """
    n, r, t = _require_local_kneser(g)
    rmask = R.bits if isinstance(R, Subset) else setkit.mask_of(R)
    if rmask.bit_count() != r or rmask >> n:
        raise InvalidParameters(f"R must be an {r}-subset of [{n}]")
    verts = [i for i, (a, b) in enumerate(g.labels) if a | b == rmask]
    block = g.induced(verts, family="block", params={"n": n, "r": r, "t": t, "R": members(rmask)})
    kg = build_kneser(r, t)
    iso = [kg.index_of((relabel_by_rank(a, rmask), 0)) for a, _ in block.labels]
    if sorted(iso) != list(range(len(kg))):
        raise AssertionError("block relabelling is not a bijection")
    for i in range(len(block)):
        for j in range(i + 1, len(block)):
            if block.adjacent(i, j) != kg.adjacent(iso[i], iso[j]):
                raise AssertionError(f"block map breaks adjacency at {i},{j}")
    return block, iso


def apply_ground_permutation(g: Graph, sigma: Permutation) -> list[int]:
    """Vertex permutation induced by (A,B) ↦ (σ(A), σ(B)); checked to be an automorphism."""
    if g.family not in FAMILIES:
        raise InvalidParameters(f"ground permutations act on the three families, not {g.family!r}")
    if sigma.n != g.ground:
        raise InvalidParameters(f"permutation on [{sigma.n}] but graph ground set is [{g.ground}]")
    perm = [g.index_of((sigma.map_mask(a), sigma.map_mask(b))) for a, b in g.labels]
    for u, v in g.edges():
        if not g.adjacent(perm[u], perm[v]):
            raise AssertionError(f"ground permutation {sigma.seq} is not an automorphism")
    return perm
