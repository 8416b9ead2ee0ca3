"""Exact verification of the tree-probability identity and its k=3 internals.

Over the uniform distribution on pairs of (k-1) index slots in [n] and a
subset tuple of prescribed type, the probability that the successor graph
is a tree equals the probability that the first subset has k-1 elements.
Probabilities are exact integer ratios throughout; floats never decide a
verdict.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .biddings import alpha_graph
from .counting import CheckReport, m_coefficient, m_tuples, strict_subsets


class UndefinedProbabilityError(ValueError):
    """The conditioning event is empty (no subset tuple has the given type)."""


class SamplingError(RuntimeError):
    """Rejection sampling acceptance rate fell below the configured floor."""


@dataclass(frozen=True)
class ExactProbability:
    """A probability as a reduced fraction of big integers."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        g = gcd(self.numerator, self.denominator)
        if g != 1:
            object.__setattr__(self, "numerator", self.numerator // g)
            object.__setattr__(self, "denominator", self.denominator // g)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def to_json(self) -> str:
        return str(self)


def _count_m(n: int, k: int, p: Sequence[int]) -> int:
    return sum(1 for _ in m_tuples(n, k, p))


def tree_probability(
    n: int, k: int, p: Sequence[int], cap: Optional[int] = None
) -> ExactProbability:
    """P(successor graph of a uniform pair is a tree), exactly."""
    p = tuple(p)
    hits = 0
    total_tuples = 0
    for mt in m_tuples(n, k, p, cap):
        total_tuples += 1
        for indices in itertools.product(range(1, n + 1), repeat=k - 1):
            if alpha_graph(indices, mt.subsets, k).is_tree():
                hits += 1
    if total_tuples == 0:
        raise UndefinedProbabilityError(f"no subset tuples of type {p}")
    return ExactProbability(hits, n ** (k - 1) * total_tuples)


def r1_probability(n: int, k: int, p: Sequence[int]) -> ExactProbability:
    """P(|R_1| = k-1), computed directly and by the shifted-count identity."""
    p = tuple(p)
    total = _count_m(n, k, p)
    if total == 0:
        raise UndefinedProbabilityError(f"no subset tuples of type {p}")
    hits = sum(1 for mt in m_tuples(n, k, p) if len(mt.subsets[0]) == k - 1)
    by_formula = 0
    for t in range(1, k + 1):
        shifted = tuple(x - 1 + (1 if s == t else 0) for s, x in enumerate(p, start=1))
        if all(x >= 0 for x in shifted):
            by_formula += m_coefficient(n - 1, shifted)
    if hits != by_formula:
        raise AssertionError(
            f"r1 cross-check failed for n={n}, p={p}: {hits} != {by_formula}"
        )
    return ExactProbability(hits, total)


@dataclass(frozen=True)
class PuzzleReport:
    n: int
    k: int
    p: tuple[int, ...]
    tree: ExactProbability
    r1: ExactProbability
    equal: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "p": list(self.p),
            "tree_probability": str(self.tree),
            "r1_probability": str(self.r1),
            "equal": self.equal,
        }


def verify_puzzle(
    n: int, k: int, p: Sequence[int], cap: Optional[int] = None
) -> PuzzleReport:
    tree = tree_probability(n, k, p, cap)
    r1 = r1_probability(n, k, p)
    return PuzzleReport(n=n, k=k, p=tuple(p), tree=tree, r1=r1, equal=tree == r1)


# ---------------------------------------------------------------------------
# Containment events
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _count_with_supersets(
    n: int, k: int, p: tuple[int, ...], unions: tuple[frozenset[int], ...]
) -> int:
    """Subset tuples of type p whose first len(unions) entries contain the
    given sets.  Positions are exchangeable, so callers may sort ``unions``."""
    if len(unions) > n:
        return 0

    subsets = strict_subsets(k)

    @lru_cache(maxsize=None)
    def free(remaining: int, counts: tuple[int, ...]) -> int:
        if any(c < 0 for c in counts):
            return 0
        if remaining == 0:
            return 1 if all(c == 0 for c in counts) else 0
        total = 0
        for s in subsets:
            total += free(
                remaining - 1,
                tuple(c - (1 if t in s else 0) for t, c in enumerate(counts, start=1)),
            )
        return total

    def rec(idx: int, counts: tuple[int, ...]) -> int:
        if any(c < 0 for c in counts):
            return 0
        if idx == len(unions):
            return free(n - len(unions), counts)
        total = 0
        for s in subsets:
            if unions[idx] <= s:
                total += rec(
                    idx + 1,
                    tuple(
                        c - (1 if t in s else 0) for t, c in enumerate(counts, start=1)
                    ),
                )
        return total

    return rec(0, p)


def event_probability(
    constraints: Sequence[frozenset[int] | set[int]],
    n: int,
    k: int,
    p: Sequence[int],
) -> ExactProbability:
    """P(A_s is contained in R_{i_s} for all s) with i.i.d. uniform indices.

    Computed by constrained tuple counting per index pattern rather than
    enumerating the full product space.
    """
    constraints = [frozenset(a) for a in constraints]
    m = len(constraints)
    if m > k - 1:
        raise ValueError("at most k-1 index slots")
    p = tuple(p)
    total = _count_m(n, k, p)
    if total == 0:
        raise UndefinedProbabilityError(f"no subset tuples of type {p}")
    hits = 0
    for indices in itertools.product(range(1, n + 1), repeat=m):
        by_position: dict[int, set[int]] = {}
        for a, i in zip(constraints, indices):
            by_position.setdefault(i, set()).update(a)
        unions = tuple(sorted((frozenset(u) for u in by_position.values()), key=sorted))
        hits += _count_with_supersets(n, k, p, unions)
    return ExactProbability(hits, n**m * total)


def event_probability_naive(
    constraints: Sequence[frozenset[int] | set[int]],
    n: int,
    k: int,
    p: Sequence[int],
) -> ExactProbability:
    """Full product-space enumeration; oracle for the factorized version."""
    constraints = [frozenset(a) for a in constraints]
    m = len(constraints)
    hits = 0
    total = 0
    for mt in m_tuples(n, k, p):
        total += 1
        for indices in itertools.product(range(1, n + 1), repeat=m):
            if all(a <= mt.subsets[i - 1] for a, i in zip(constraints, indices)):
                hits += 1
    if total == 0:
        raise UndefinedProbabilityError(f"no subset tuples of type {p}")
    return ExactProbability(hits, n**m * total)


def verify_k3_inclusion_exclusion(n: int, p: Sequence[int]) -> CheckReport:
    """Nine-term alternating sum for k=3 against the direct tree probability."""
    k = 3
    p = tuple(p)

    def P(a: set[int], b: set[int]) -> ExactProbability:
        return event_probability([a, b], n, k, p)

    terms = [
        (1, P({1}, {2})),
        (1, P({1}, {3})),
        (1, P({2}, {3})),
        (-1, P({1}, {2, 3})),
        (-1, P({2}, {1, 3})),
        (-1, P({3}, {1, 2})),
        (1, P({1, 2}, {1, 3})),
        (1, P({1, 2}, {2, 3})),
        (1, P({1, 3}, {2, 3})),
    ]
    num = 0
    den = 1
    for sign, prob in terms:
        num = num * prob.denominator + sign * prob.numerator * den
        den *= prob.denominator
    rhs = ExactProbability(num, den)
    lhs = tree_probability(n, k, p)
    return CheckReport(
        name="k3-inclusion-exclusion",
        lhs=str(lhs),
        rhs=str(rhs),
        equal=lhs == rhs,
        params=(("n", n), ("p", p)),
    )


def verify_exchange_lemma(
    n: int, p: Sequence[int], a: int, b: int, c: int
) -> CheckReport:
    """Four-term exchange identity for k=3, plus the underlying event counts.

    Also checks |E1| = |E2| directly, where E1 requires a in R_i, c not in
    R_i, b in R_j, and E2 requires a,b in R_i, c not in R_i, R_j != {a,c}.
    """
    if {a, b, c} != {1, 2, 3}:
        raise ValueError("(a, b, c) must be a labelling of {1, 2, 3}")
    k = 3
    p = tuple(p)
    lhs = event_probability([{a, b}, set()], n, k, p)
    t1 = event_probability([{a}, {b}], n, k, p)
    t2 = event_probability([{a, c}, {b}], n, k, p)
    t3 = event_probability([{a, b}, {a, c}], n, k, p)
    num = (
        t1.numerator * t2.denominator * t3.denominator
        - t2.numerator * t1.denominator * t3.denominator
        + t3.numerator * t1.denominator * t2.denominator
    )
    rhs = ExactProbability(num, t1.denominator * t2.denominator * t3.denominator)
    e1 = e2 = 0
    for mt in m_tuples(n, k, p):
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            ri, rj = mt.subsets[i - 1], mt.subsets[j - 1]
            if a in ri and c not in ri and b in rj:
                e1 += 1
            if a in ri and b in ri and c not in ri and rj != frozenset({a, c}):
                e2 += 1
    return CheckReport(
        name="exchange-lemma",
        lhs=str(lhs),
        rhs=str(rhs),
        equal=lhs == rhs and e1 == e2,
        params=(("n", n), ("p", p), ("abc", (a, b, c)), ("E1", e1), ("E2", e2)),
    )


# ---------------------------------------------------------------------------
# Monte Carlo (beyond exhaustive range)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleResult:
    n: int
    k: int
    p: tuple[int, ...]
    trials: int
    accepted: int
    tree_hits: int
    r1_hits: int
    seed: int
    threads: int

    @property
    def tree_estimate(self) -> ExactProbability:
        return ExactProbability(self.tree_hits, max(self.accepted, 1))

    @property
    def r1_estimate(self) -> ExactProbability:
        return ExactProbability(self.r1_hits, max(self.accepted, 1))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "p": list(self.p),
            "trials": self.trials,
            "accepted": self.accepted,
            "tree_estimate": str(self.tree_estimate),
            "r1_estimate": str(self.r1_estimate),
            "seed": self.seed,
            "threads": self.threads,
        }


def sample_puzzle(
    n: int,
    k: int,
    p: Sequence[int],
    trials: int,
    seed: int,
    threads: int = 1,
    min_acceptance: float = 1e-6,
) -> SampleResult:
    """Rejection-sampled estimates of both puzzle probabilities.

    Subset tuples are drawn i.i.d. uniform over strict subsets and accepted
    when the per-type counts match p.  Streams are split per thread slot
    from the master seed, so results depend only on (seed, threads).
    """
    p = tuple(p)
    subsets = strict_subsets(k)
    master = random.Random(seed)
    thread_seeds = [master.getrandbits(64) for _ in range(threads)]
    per_thread = [trials // threads + (1 if t < trials % threads else 0) for t in range(threads)]
    accepted = tree_hits = r1_hits = 0
    for t_seed, t_trials in zip(thread_seeds, per_thread):
        rng = random.Random(t_seed)
        for _ in range(t_trials):
            tup = [subsets[rng.randrange(len(subsets))] for _ in range(n)]
            counts = [0] * k
            for s in tup:
                for x in s:
                    counts[x - 1] += 1
            if tuple(counts) != p:
                continue
            accepted += 1
            indices = [rng.randrange(1, n + 1) for _ in range(k - 1)]
            if alpha_graph(indices, tup, k).is_tree():
                tree_hits += 1
            if len(tup[0]) == k - 1:
                r1_hits += 1
    if trials > 0 and accepted < max(1, int(trials * min_acceptance)):
        raise SamplingError(
            f"acceptance rate {accepted}/{trials} below floor {min_acceptance}; "
            f"type {p} is too rare for rejection sampling at n={n}, k={k}"
        )
    return SampleResult(
        n=n,
        k=k,
        p=p,
        trials=trials,
        accepted=accepted,
        tree_hits=tree_hits,
        r1_hits=r1_hits,
        seed=seed,
        threads=threads,
    )
