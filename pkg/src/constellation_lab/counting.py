"""Exhaustive enumeration and exact counting for long-cycle factorizations.

All counts are exact Python integers; verification reports carry both
sides of each identity.  Enumeration streams are deterministic (ordered
lexicographically by the free data) and guarded by a visit cap.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Optional, Sequence

from .permutations import (
    Composition,
    Permutation,
    all_permutations,
    compose,
    compose_all,
    cycle_type,
    cycles,
    inverse,
    long_cycle,
)

DEFAULT_CAP = 10**8


class CapExceededError(RuntimeError):
    """An enumeration would visit more tuples than the configured cap."""


def _check_cap(size: int, cap: Optional[int]) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if size > cap:
        raise CapExceededError(f"enumeration of {size} tuples exceeds cap {cap}")


@dataclass(frozen=True)
class ColoredFactorization:
    """A factorization of (1,2,...,n) with surjectively colored cycles.

    ``colorings[t-1][i-1]`` is the color of element i under the t-th
    coloring; colorings are constant on the cycles of the t-th factor and
    use every color in [p_t].
    """

    perms: tuple[Permutation, ...]
    colorings: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.perms)

    @property
    def n(self) -> int:
        return self.perms[0].n

    def color_counts(self) -> tuple[int, ...]:
        return tuple(max(col) for col in self.colorings)

    def color_compositions(self) -> tuple[Composition, ...]:
        """Per type, the composition whose i-th part is #elements colored i."""
        out = []
        for col in self.colorings:
            p = max(col)
            parts = [0] * p
            for c in col:
                parts[c - 1] += 1
            out.append(Composition(tuple(parts)))
        return tuple(out)

    def validate(self) -> Optional[str]:
        if any(p.n != self.n for p in self.perms):
            return "size mismatch"
        if compose_all(list(self.perms)) != long_cycle(self.n):
            return "product is not the long cycle"
        for t, (p, col) in enumerate(zip(self.perms, self.colorings), start=1):
            if len(col) != self.n:
                return f"coloring {t} has wrong length"
            for cyc in cycles(p):
                if len({col[x - 1] for x in cyc}) != 1:
                    return f"coloring {t} not constant on cycle {cyc}"
            used = set(col)
            if used != set(range(1, max(used) + 1)):
                return f"coloring {t} is not surjective"
        return None


@dataclass(frozen=True)
class MTuple:
    """An n-tuple of strict subsets of [k]."""

    k: int
    subsets: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.subsets)

    def counts(self) -> tuple[int, ...]:
        out = [0] * self.k
        for s in self.subsets:
            for t in s:
                out[t - 1] += 1
        return tuple(out)

    def to_json(self) -> list[list[int]]:
        return [sorted(s) for s in self.subsets]


@dataclass(frozen=True)
class CheckReport:
    """Both sides of a verified identity, plus the verdict."""

    name: str
    lhs: object
    rhs: object
    equal: bool
    params: tuple[tuple[str, object], ...] = ()

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "params": {k: str(v) for k, v in self.params},
        }


# ---------------------------------------------------------------------------
# Factorization streams
# ---------------------------------------------------------------------------


def enumerate_factorizations(
    n: int, k: int, cap: Optional[int] = None
) -> Iterator[tuple[Permutation, ...]]:
    """All k-tuples with product (1,2,...,n), exactly n!^(k-1) of them.

    The factors pi_2..pi_k range over S_n in lexicographic one-line order
    and pi_1 is solved from the product condition.
    """
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    _check_cap(factorial(n) ** (k - 1), cap)
    target = long_cycle(n)
    for rest in itertools.product(all_permutations(n), repeat=k - 1):
        pi1 = compose(target, inverse(compose_all(list(rest))))
        yield (pi1,) + rest


def _surjective_colorings(num_cycles: int, p: int) -> Iterator[tuple[int, ...]]:
    for assign in itertools.product(range(1, p + 1), repeat=num_cycles):
        if set(assign) == set(range(1, p + 1)):
            yield assign


def enumerate_colored_factorizations(
    n: int, k: int, p: Sequence[int], cap: Optional[int] = None
) -> Iterator[ColoredFactorization]:
    """All (p_1,...,p_k)-colored factorizations of (1,2,...,n)."""
    p = tuple(p)
    if len(p) != k:
        raise ValueError("p must have length k")
    for perms in enumerate_factorizations(n, k, cap):
        cycs = [cycles(q) for q in perms]
        per_type = []
        for t in range(k):
            options = []
            for assign in _surjective_colorings(len(cycs[t]), p[t]):
                col = [0] * n
                for cyc, color in zip(cycs[t], assign):
                    for x in cyc:
                        col[x - 1] = color
                options.append(tuple(col))
            per_type.append(options)
        for combo in itertools.product(*per_type):
            yield ColoredFactorization(perms=perms, colorings=tuple(combo))


def enumerate_colored_factorizations_all(
    n: int, k: int, cap: Optional[int] = None
) -> Iterator[ColoredFactorization]:
    """All colored factorizations over every color-count vector at once."""
    for perms in enumerate_factorizations(n, k, cap):
        cycs = [cycles(q) for q in perms]
        per_type = []
        for t in range(k):
            options = []
            for p in range(1, len(cycs[t]) + 1):
                for assign in _surjective_colorings(len(cycs[t]), p):
                    col = [0] * n
                    for cyc, color in zip(cycs[t], assign):
                        for x in cyc:
                            col[x - 1] = color
                    options.append(tuple(col))
            per_type.append(options)
        for combo in itertools.product(*per_type):
            yield ColoredFactorization(perms=perms, colorings=tuple(combo))


def surjection_count(m: int, p: int) -> int:
    """Number of surjections from an m-set onto [p], by inclusion-exclusion."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    return sum((-1) ** j * comb(p, j) * (p - j) ** m for j in range(p + 1))


def count_colored(
    n: int,
    p: Sequence[int],
    cap: Optional[int] = None,
    census: Optional[dict[tuple[int, ...], int]] = None,
) -> int:
    """C^n_p: colored factorizations, summing surjection products per factorization.

    A precomputed :func:`ell_vector_census` groups the same sum by the
    vector of factor cycle counts; sweeps over many p reuse one stream.
    """
    p = tuple(p)
    k = len(p)
    if any(pt < 1 for pt in p):
        raise ValueError("color counts must be positive")
    if any(pt > n for pt in p):
        return 0
    if census is not None:
        return sum(
            cnt * _prod(surjection_count(ell, pt) for ell, pt in zip(ells, p))
            for ells, cnt in census.items()
        )
    total = 0
    for perms in enumerate_factorizations(n, k, cap):
        ways = 1
        for t in range(k):
            ways *= surjection_count(len(cycles(perms[t])), p[t])
            if ways == 0:
                break
        total += ways
    return total


@lru_cache(maxsize=None)
def _composition_assignments(sizes: tuple[int, ...], quotas: tuple[int, ...]) -> int:
    """Ways to assign blocks of the given sizes to colors meeting exact quotas."""
    if not sizes:
        return 1 if all(q == 0 for q in quotas) else 0
    first, rest = sizes[0], sizes[1:]
    total = 0
    for i, q in enumerate(quotas):
        if q >= first:
            new_q = quotas[:i] + (q - first,) + quotas[i + 1 :]
            total += _composition_assignments(rest, new_q)
    return total


def count_by_color_compositions(
    gammas: Sequence[Composition], cap: Optional[int] = None
) -> int:
    """c(gamma^(1),...,gamma^(k)): colored factorizations with exact color sizes."""
    n = gammas[0].size
    if any(g.size != n for g in gammas):
        raise ValueError("compositions must all have the same size")
    k = len(gammas)
    if k < 2:
        raise ValueError("need at least 2 compositions")
    total = 0
    for perms in enumerate_factorizations(n, k, cap):
        ways = 1
        for t in range(k):
            sizes = tuple(sorted((len(c) for c in cycles(perms[t])), reverse=True))
            ways *= _composition_assignments(sizes, gammas[t].parts)
            if ways == 0:
                break
        total += ways
    return total


def count_kappa(lams: Sequence[Composition], cap: Optional[int] = None) -> int:
    """kappa: factorizations with prescribed cycle types."""
    n = lams[0].size
    if any(l.size != n for l in lams):
        raise ValueError("partitions must all have the same size")
    k = len(lams)
    targets = tuple(Composition(tuple(sorted(l.parts, reverse=True))) for l in lams)
    total = 0
    for perms in enumerate_factorizations(n, k, cap):
        if all(cycle_type(q) == target for q, target in zip(perms, targets)):
            total += 1
    return total


# ---------------------------------------------------------------------------
# M-coefficients
# ---------------------------------------------------------------------------


def strict_subsets(k: int) -> list[frozenset[int]]:
    """The 2^k - 1 strict subsets of [k], ordered by bitmask."""
    out = []
    for mask in range(2**k - 1):
        out.append(frozenset(t for t in range(1, k + 1) if mask & (1 << (t - 1))))
    return out


def m_tuples(
    n: int, k: int, p: Optional[Sequence[int]] = None, cap: Optional[int] = None
) -> Iterator[MTuple]:
    """n-tuples of strict subsets of [k]; with p given, only those of type p.

    Depth-first over positions with per-type count pruning; the subset
    order at each position follows :func:`strict_subsets`.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    _check_cap((2**k - 1) ** n, cap)
    subsets = strict_subsets(k)
    target = None if p is None else tuple(p)
    if target is not None and (len(target) != k or any(x < 0 for x in target)):
        raise ValueError("bad type vector")

    def rec(pos: int, counts: tuple[int, ...], acc: list[frozenset[int]]):
        if target is not None:
            remaining = n - pos
            if any(c > t for c, t in zip(counts, target)):
                return
            if any(t - c > remaining for c, t in zip(counts, target)):
                return
        if pos == n:
            if target is None or counts == target:
                yield MTuple(k=k, subsets=tuple(acc))
            return
        for s in subsets:
            new_counts = tuple(
                c + (1 if t in s else 0) for t, c in enumerate(counts, start=1)
            )
            acc.append(s)
            yield from rec(pos + 1, new_counts, acc)
            acc.pop()

    yield from rec(0, (0,) * k, [])


def _m_count_enumeration(n: int, k: int, p: tuple[int, ...]) -> int:
    return sum(1 for _ in m_tuples(n, k, p))


def _poly_mul(
    a: dict[tuple[int, ...], int], b: dict[tuple[int, ...], int], bound: tuple[int, ...]
) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > bx for x, bx in zip(e, bound)):
                continue
            out[e] = out.get(e, 0) + ca * cb
    return out


def _m_count_coefficient(n: int, k: int, p: tuple[int, ...]) -> int:
    """[x^p] (prod(1+x_t) - prod(x_t))^n by explicit polynomial expansion."""
    base: dict[tuple[int, ...], int] = {}
    for mask in range(2**k):
        e = tuple(1 if mask & (1 << t) else 0 for t in range(k))
        base[e] = base.get(e, 0) + 1
    ones = (1,) * k
    base[ones] = base.get(ones, 0) - 1
    if base[ones] == 0:
        del base[ones]
    result: dict[tuple[int, ...], int] = {(0,) * k: 1}
    for _ in range(n):
        result = _poly_mul(result, base, p)
    return result.get(p, 0)


def m_coefficient(n: int, p: Sequence[int], k: Optional[int] = None) -> int:
    """M^n_p, computed two independent ways and cross-checked.

    (a) direct enumeration of the subset tuples with count pruning and
    (b) coefficient extraction from the defining polynomial.  A mismatch
    is an internal error, never a return value.
    """
    p = tuple(p)
    k = len(p) if k is None else k
    if len(p) != k:
        raise ValueError("p must have length k")
    if n < 0 or any(x < 0 for x in p):
        return 0
    by_enum = _m_count_enumeration(n, k, p)
    by_coeff = _m_count_coefficient(n, k, p)
    if by_enum != by_coeff:
        raise AssertionError(
            f"M-coefficient self-check failed for n={n}, p={p}: {by_enum} != {by_coeff}"
        )
    return by_enum


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


def verify_jackson(
    n: int,
    p: Sequence[int],
    cap: Optional[int] = None,
    census: Optional[dict[tuple[int, ...], int]] = None,
) -> CheckReport:
    """Colored-factorization count against n!^(k-1) * M^(n-1)_(p-1)."""
    p = tuple(p)
    k = len(p)
    lhs = count_colored(n, p, cap, census=census)
    rhs = factorial(n) ** (k - 1) * m_coefficient(n - 1, tuple(x - 1 for x in p))
    return CheckReport(
        name="jackson",
        lhs=lhs,
        rhs=rhs,
        equal=lhs == rhs,
        params=(("n", n), ("k", k), ("p", p)),
    )


def ell_vector_census(n: int, k: int, cap: Optional[int] = None) -> dict[tuple[int, ...], int]:
    """How many factorizations have each vector of factor cycle counts."""
    census: dict[tuple[int, ...], int] = {}
    for perms in enumerate_factorizations(n, k, cap):
        key = tuple(len(cycles(q)) for q in perms)
        census[key] = census.get(key, 0) + 1
    return census


def verify_gf_identity(
    n: int,
    k: int,
    xs: Sequence[int],
    cap: Optional[int] = None,
    census: Optional[dict[tuple[int, ...], int]] = None,
) -> CheckReport:
    """Exact evaluation of the cycle-count generating identity at integers.

    Left side streams all factorizations; right side sums binomials times
    n!^(k-1) M^(n-1) over color-count vectors.
    """
    xs = tuple(xs)
    if len(xs) != k or any(x < 0 for x in xs):
        raise ValueError("need k nonnegative integers")
    if census is None:
        census = ell_vector_census(n, k, cap)
    lhs = sum(
        cnt * _prod(x**e for x, e in zip(xs, ells)) for ells, cnt in census.items()
    )
    rhs = 0
    for p in itertools.product(range(1, n + 1), repeat=k):
        term = factorial(n) ** (k - 1) * m_coefficient(n - 1, tuple(x - 1 for x in p))
        if term:
            rhs += term * _prod(comb(x, pt) for x, pt in zip(xs, p))
    return CheckReport(
        name="gf-identity",
        lhs=lhs,
        rhs=rhs,
        equal=lhs == rhs,
        params=(("n", n), ("k", k), ("x", xs)),
    )


def verify_mv_formula(
    gammas: Sequence[Composition], cap: Optional[int] = None
) -> CheckReport:
    """Refined count against the closed form with binomial denominators."""
    n = gammas[0].size
    k = len(gammas)
    lhs = Fraction(count_by_color_compositions(gammas, cap))
    num = factorial(n) ** (k - 1) * m_coefficient(
        n - 1, tuple(g.length - 1 for g in gammas)
    )
    den = _prod(comb(n - 1, g.length - 1) for g in gammas)
    rhs = Fraction(num, den)
    return CheckReport(
        name="mv-formula",
        lhs=lhs,
        rhs=rhs,
        equal=lhs == rhs,
        params=(("n", n), ("k", k), ("gammas", tuple(str(g) for g in gammas))),
    )


def _prod(it) -> int:
    out = 1
    for x in it:
        out *= x
    return out
