"""Graph homomorphisms: the explicit maps between the families, a verifier,
colouring <-> homomorphism conversions for local complete targets, and a
small backtracking existence search."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

from . import budget, setkit
from .coloring import Coloring, LocalProfile, is_proper, local_profile
from .errors import InvalidInput, InvalidParameters
from .graphs import LOCAL_COMPLETE, Graph, _bits, build_kneser, build_local_complete
from .independence import _check_nrt, local_kneser


@dataclass(frozen=True, eq=False)
class HomomorphismMap:
    domain: Graph
    codomain: Graph
    assignment: tuple[int, ...]
    verified: bool = False

    def __call__(self, v: int) -> int:
        return self.assignment[v]


def verify_hom(h: HomomorphismMap) -> bool:
    """True iff every domain edge lands on a codomain edge."""
    if len(h.assignment) != len(h.domain) or any(x is None for x in h.assignment):
        raise InvalidInput("assignment is not total")
    if any(not 0 <= x < len(h.codomain) for x in h.assignment):
        raise InvalidInput("assignment leaves the codomain")
    img = h.assignment
    return all(h.codomain.adjacent(img[u], img[v]) for u, v in h.domain.edges())


def verified(domain: Graph, codomain: Graph, assignment: Sequence[int]) -> HomomorphismMap:
    h = HomomorphismMap(domain, codomain, tuple(assignment))
    if not verify_hom(h):
        raise InvalidInput("map is not a homomorphism")
    return HomomorphismMap(domain, codomain, h.assignment, True)


def identity_map(g: Graph) -> HomomorphismMap:
    return verified(g, g, range(len(g)))


def inclusion_kg_to_local(r: int, t: int, n: int) -> HomomorphismMap:
    """KG(r,t) → U_t(n,r), A ↦ (A, [r] \\ A)."""
    _check_nrt(n, r, t)
    kg = build_kneser(r, t)
    loc = local_kneser(n, r, t)
    full = (1 << r) - 1
    return verified(kg, loc, [loc.index_of((a, full & ~a)) for a, _ in kg.labels])


def projection_to_kneser(n: int, r: int, t: int) -> HomomorphismMap:
    """U_t(n,r) → KG(n,t), (A,B) ↦ A."""
    _check_nrt(n, r, t)
    loc = local_kneser(n, r, t)
    kg = build_kneser(n, t)
    return verified(loc, kg, [kg.index_of((a, 0)) for a, _ in loc.labels])


def min_star_image(a: int, b: int, r: int, t: int) -> tuple[int, int]:
    """(min A, the r-2t+1 smallest elements of B) as a U(., r-2t+2) label."""
    keep = setkit.members(b)[: r - 2 * t + 1]
    return 1 << (setkit.lowest(a) - 1), setkit.mask_of(keep)


def min_star_map(m: int, r: int, t: int) -> HomomorphismMap:
    """U_t(m,r) → U(m-t+1, r-2t+2), (A,B) ↦ (min A, B*)."""
    _check_nrt(m, r, t)
    dom = local_kneser(m, r, t)
    cod = build_local_complete(m - t + 1, r - 2 * t + 2)
    top = m - t + 1
    images = []
    for a, b in dom.labels:
        lab = min_star_image(a, b, r, t)
        head, tail = lab
        if (head | tail) >> top or head & tail or tail.bit_count() != r - 2 * t + 1:
            raise AssertionError(f"image {cod.label_str(lab)} is not a vertex of U({top},{r - 2 * t + 2})")
        images.append(cod.index_of(lab))
    return verified(dom, cod, images)


def coloring_from_hom(h: HomomorphismMap) -> tuple[Coloring, LocalProfile]:
    """Colour each vertex by the first coordinate of its image in U(n,r)."""
    if h.codomain.family != LOCAL_COMPLETE:
        raise InvalidInput("codomain must be a local complete graph U(n,r)")
    if not h.verified:
        raise InvalidInput("map has not been verified")
    cod = h.codomain
    c = Coloring(h.domain, tuple(setkit.lowest(cod.labels[x][0]) for x in h.assignment))
    return c, local_profile(h.domain, c)


def hom_from_coloring(g: Graph, c: Coloring, n: int | None = None, r: int | None = None) -> HomomorphismMap:
    """v ↦ (c(v), colours of N(v), padded with the smallest unused colours to size r-1).

    ``n`` defaults to the palette size and ``r`` to the local profile maximum.
    """
    if not is_proper(g, c):
        raise InvalidInput("colouring is not proper")
    prof = local_profile(g, c)
    n = c.palette_size if n is None else n
    r = prof.max if r is None else r
    if prof.max > r:
        raise InvalidInput(f"closed neighbourhoods see {prof.max} colours, more than r={r}")
    if n < r or r < 1:
        raise InvalidParameters(f"need n >= r >= 1, got n={n}, r={r}")
    if c.palette_size > n:
        raise InvalidParameters(f"colours exceed palette {n}")
    cod = build_local_complete(n, r)
    images = []
    for v in range(len(g)):
        own = c.colors[v]
        seen = {c.colors[u] for u in _bits(g.adj[v])}
        pad = (x for x in range(1, n + 1) if x != own and x not in seen)
        while len(seen) < r - 1:
            seen.add(next(pad))
        images.append(cod.index_of((1 << (own - 1), setkit.mask_of(seen))))
    return verified(g, cod, images)


def hom_search(g: Graph, h: Graph) -> HomomorphismMap | None:
    """A homomorphism g → h, or None if none exists.  Exhaustive backtracking."""
    budget.check("hom_domain", len(g), "hom_search domain")
    budget.check("hom_codomain", len(h), "hom_search codomain")
    n = len(g)
    if n == 0:
        return HomomorphismMap(g, h, (), True)
    if len(h) == 0:
        return None
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    full = (1 << len(h)) - 1
    nonisolated = 0
    for x in range(len(h)):
        if h.adj[x]:
            nonisolated |= 1 << x
    img = [-1] * n

    def rec(i):
        if i == n:
            return True
        v = order[i]
        cand = nonisolated if g.adj[v] else full
        for u in _bits(g.adj[v]):
            if img[u] >= 0:
                cand &= h.adj[img[u]]
        for x in _bits(cand):
            img[v] = x
            if rec(i + 1):
                return True
        img[v] = -1
        return False

    if not rec(0):
        return None
    return verified(g, h, img)


def write_map_csv(h: HomomorphismMap, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["domain_index", "domain_label", "codomain_index", "codomain_label"])
    for v, x in enumerate(h.assignment):
        w.writerow([v + 1, h.domain.label_str(v), x + 1, h.codomain.label_str(x)])
