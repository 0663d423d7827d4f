"""Subsets of a small ground set as machine-word bit sets, plus permutations.

Element ``x`` of ``[n] = {1..n}`` is stored in bit ``x - 1``.  Graph code works
on the raw integer masks for speed; :class:`Subset` wraps a mask together with
its ground size for the public surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidParameters

MAX_GROUND = 64


def _check_ground(n: int) -> None:
    if n < 0 or n > MAX_GROUND:
        raise InvalidParameters(f"ground size must be in 0..{MAX_GROUND}, got {n}")


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        if x < 1 or x > MAX_GROUND:
            raise InvalidParameters(f"element {x} outside 1..{MAX_GROUND}")
        m |= 1 << (x - 1)
    return m


def members(mask: int) -> tuple[int, ...]:
    """Sorted elements of a mask."""
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    """Numerically smallest element of a non-empty mask."""
    return (mask & -mask).bit_length()


def format_set(mask: int) -> str:
    return ",".join(map(str, members(mask)))


@dataclass(frozen=True, order=False)
class Subset:
    ground_size: int
    bits: int

    def __post_init__(self):
        _check_ground(self.ground_size)
        if self.bits < 0 or self.bits >> self.ground_size:
            raise InvalidParameters(f"members exceed ground set [{self.ground_size}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "Subset":
        return cls(n, mask_of(elements))

    @cached_property
    def members(self) -> tuple[int, ...]:
        return members(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 1 <= x <= self.ground_size and bool(self.bits >> (x - 1) & 1)

    def __lt__(self, other: "Subset") -> bool:
        return self.members < other.members

    def __repr__(self) -> str:
        return "{" + format_set(self.bits) + "}"


def enumerate_masks(n: int, k: int) -> list[int]:
    """All k-subsets of [n] as masks, lexicographic by sorted member list."""
    if n < 0 or k < 0 or k > n:
        raise InvalidParameters(f"need 0 <= k <= n, got n={n}, k={k}")
    _check_ground(n)
    return [mask_of(c) for c in combinations(range(1, n + 1), k)]


def enumerate_subsets(n: int, k: int) -> list[Subset]:
    return [Subset(n, m) for m in enumerate_masks(n, k)]


def rank_subset(s: Subset) -> int:
    """Position of ``s`` among the |s|-subsets of its ground set in lexicographic order."""
    n, k = s.ground_size, len(s)
    rank = 0
    prev = 0
    for i, x in enumerate(s.members):
        # skip every subset whose i-th element is smaller than x
        for y in range(prev + 1, x):
            rank += comb(n - y, k - i - 1)
        prev = x
    return rank


def unrank_subset(n: int, k: int, rank: int) -> Subset:
    if not 0 <= rank < comb(n, k):
        raise InvalidParameters(f"rank {rank} out of range for C({n},{k})")
    out = []
    x = 1
    for i in range(k):
        while True:
            block = comb(n - x, k - i - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return Subset.of(n, out)


@dataclass(frozen=True)
class Permutation:
    """An ordering of [n]; ``seq[i-1]`` is σ(i), the i-th element in the order."""

    seq: tuple[int, ...]
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seq = tuple(int(x) for x in self.seq)
        n = len(seq)
        if n < 1 or sorted(seq) != list(range(1, n + 1)):
            raise InvalidParameters(f"not a permutation of 1..{n}: {seq}")
        _check_ground(n)
        inv = [0] * n
        for pos, x in enumerate(seq, start=1):
            inv[x - 1] = pos
        object.__setattr__(self, "seq", seq)
        object.__setattr__(self, "inverse", tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.seq)

    def __call__(self, x: int) -> int:
        return self.seq[x - 1]

    def position(self, x: int) -> int:
        """σ⁻¹(x): where x sits in the ordering (1-based)."""
        return self.inverse[x - 1]

    def map_mask(self, mask: int) -> int:
        """Image {σ(x) : x ∈ mask}."""
        out = 0
        for x in members(mask):
            out |= 1 << (self.seq[x - 1] - 1)
        return out

    def min_mask(self, mask: int) -> int:
        if not mask:
            raise InvalidParameters("minimum of an empty set")
        inv = self.inverse
        return min(members(mask), key=lambda x: inv[x - 1])


def min_under_order(sigma: Permutation, R: Subset | Iterable[int]) -> int:
    """The element of R that comes first in the ordering σ."""
    mask = R.bits if isinstance(R, Subset) else mask_of(R)
    if isinstance(R, Subset) and R.ground_size != sigma.n:
        raise InvalidParameters("ground sizes differ")
    if mask >> sigma.n:
        raise InvalidParameters(f"set not contained in [{sigma.n}]")
    return sigma.min_mask(mask)


def make_rng(seed_or_rng=None) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def random_permutation(n: int, rng) -> Permutation:
    """Uniform random ordering of [n] (numpy's Fisher–Yates shuffle)."""
    if n < 1:
        raise InvalidParameters(f"n must be >= 1, got {n}")
    rng = make_rng(rng)
    return Permutation(tuple(int(x) + 1 for x in rng.permutation(n)))


def all_permutations(n: int) -> Iterator[Permutation]:
    from itertools import permutations

    for p in permutations(range(1, n + 1)):
        yield Permutation(p)


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """x ↦ outer(inner(x))."""
    return Permutation(tuple(outer(inner(x)) for x in range(1, inner.n + 1)))


def as_permutation(seq: Sequence[int] | Permutation) -> Permutation:
    return seq if isinstance(seq, Permutation) else Permutation(tuple(seq))
