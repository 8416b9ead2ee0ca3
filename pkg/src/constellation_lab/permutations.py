"""Permutations of [n] = {1, ..., n}, compositions and cycle bookkeeping.

Everything is 1-based.  A permutation is stored in one-line notation:
``image[i - 1]`` is the image of ``i``.  All values are immutable and
hashable, so they can be shared freely and used as dict keys.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of [n] in one-line notation (1-based)."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [{n}]: {self.image!r}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x - 1]

    def __str__(self) -> str:
        return cycle_string(self)

    def to_json(self) -> list[int]:
        return list(self.image)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) for x in data))


@dataclass(frozen=True, order=True)
class Composition:
    """A sequence of positive integers; a partition if weakly decreasing."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError(f"composition parts must be positive: {self.parts!r}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def is_partition(self) -> bool:
        return all(a >= b for a, b in zip(self.parts, self.parts[1:]))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def long_cycle(n: int) -> Permutation:
    """The permutation (1,2,...,n) mapping i to i+1 cyclically."""
    return Permutation(tuple(range(2, n + 1)) + (1,))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Composition p∘q, applying q first: (p∘q)(x) = p(q(x))."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p.image[q.image[x] - 1] for x in range(p.n)))


def compose_all(perms: Sequence[Permutation]) -> Permutation:
    """Left-to-right product p1∘p2∘...∘pm (rightmost applied first)."""
    if not perms:
        raise ValueError("empty product")
    result = perms[-1]
    for p in reversed(perms[:-1]):
        result = compose(p, result)
    return result


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for x, y in enumerate(p.image, start=1):
        inv[y - 1] = x
    return Permutation(tuple(inv))


def cycles(p: Permutation) -> list[list[int]]:
    """Cycle decomposition; each cycle starts at its minimum, cycles sorted by minimum."""
    seen = [False] * (p.n + 1)
    out: list[list[int]] = []
    for start in range(1, p.n + 1):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p(x)
        out.append(cyc)
    return out


def cycle_count(p: Permutation) -> int:
    return len(cycles(p))


def cycle_type(p: Permutation) -> Composition:
    """Multiset of cycle lengths, weakly decreasing (a partition of n)."""
    return Composition(tuple(sorted((len(c) for c in cycles(p)), reverse=True)))


def cycle_string(p: Permutation) -> str:
    """Human-readable cycle notation, e.g. ``(1,3,2,5)(4)``."""
    return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycles(p))


def from_cycles(n: int, cycs: Iterable[Iterable[int]]) -> Permutation:
    """Build a permutation of [n] from cycles; omitted elements are fixed points."""
    image = list(range(1, n + 1))
    for cyc in cycs:
        cyc = list(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            image[a - 1] = b
    p = Permutation(tuple(image))
    return p


def all_permutations(n: int) -> Iterator[Permutation]:
    """All permutations of [n] in lexicographic one-line order."""
    for image in itertools.permutations(range(1, n + 1)):
        yield Permutation(image)


def conjugate_relabel(p: Permutation, s: Permutation) -> Permutation:
    """Relabel the ground set by s: returns s∘p∘s⁻¹."""
    return compose(s, compose(p, inverse(s)))


def compositions_of(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, by number of parts then lexicographically."""
    for length in range(1, n + 1):
        yield from compositions_of_length(n, length)


def compositions_of_length(n: int, length: int) -> Iterator[Composition]:
    """All compositions of n with the given number of parts, lexicographically."""
    if length < 1 or length > n:
        return
    for cuts in itertools.combinations(range(1, n), length - 1):
        bounds = (0,) + cuts + (n,)
        yield Composition(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def partitions_of(n: int) -> Iterator[Composition]:
    """All partitions of n (weakly decreasing compositions)."""
    seen = set()
    for comp in compositions_of(n):
        part = Composition(tuple(sorted(comp.parts, reverse=True)))
        if part not in seen:
            seen.add(part)
            yield part
