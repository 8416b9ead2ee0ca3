import itertools

import pytest

from constellation_lab.counting import count_colored, m_tuples
from constellation_lab.puzzle import (
    ExactProbability,
    SamplingError,
    UndefinedProbabilityError,
    event_probability,
    event_probability_naive,
    r1_probability,
    sample_puzzle,
    tree_probability,
    verify_exchange_lemma,
    verify_k3_inclusion_exclusion,
    verify_puzzle,
)


def feasible_types(n, k):
    for p in itertools.product(range(0, n + 1), repeat=k):
        if any(mt.counts() == p for mt in m_tuples(n, k)):
            yield p


def test_exact_probability_reduces():
    pr = ExactProbability(4, 8)
    assert (pr.numerator, pr.denominator) == (1, 2)
    assert str(ExactProbability(0, 5)) == "0/1"
    with pytest.raises(ValueError):
        ExactProbability(1, 0)


def test_tree_probability_examples():
    assert tree_probability(2, 2, (1, 1)) == ExactProbability(1, 1)
    assert tree_probability(2, 3, (1, 1, 1)) == ExactProbability(1, 2)
    with pytest.raises(UndefinedProbabilityError):
        tree_probability(2, 3, (3, 3, 0))


def test_r1_probability_examples():
    assert r1_probability(2, 2, (1, 1)) == ExactProbability(1, 1)
    assert r1_probability(2, 3, (1, 1, 1)) == ExactProbability(1, 2)
    assert r1_probability(3, 2, (0, 0)) == ExactProbability(0, 1)


def test_tree_probability_invariant_under_slot_relabeling():
    # the index slots are i.i.d.; permuting which slot drives which type's
    # subset draw cannot change the count
    n, k, p = 2, 3, (1, 2, 1)
    hits = {}
    for order in itertools.permutations(range(2)):
        count = 0
        for mt in m_tuples(n, k, p):
            for indices in itertools.product(range(1, n + 1), repeat=2):
                permuted = tuple(indices[order[s]] for s in range(2))
                from constellation_lab.biddings import alpha_graph

                if alpha_graph(permuted, mt.subsets, k).is_tree():
                    count += 1
        hits[order] = count
    assert len(set(hits.values())) == 1


def test_k2_tree_iff_singleton_subset():
    # the single-arc graph is a tree exactly when the drawn subset has one
    # element, pointwise over every (index, subset-tuple) pair
    from constellation_lab.biddings import alpha_graph

    for n in (2, 3, 4):
        for p in feasible_types(n, 2):
            for mt in m_tuples(n, 2, p):
                for i in range(1, n + 1):
                    tree = alpha_graph((i,), mt.subsets, 2).is_tree()
                    assert tree == (len(mt.subsets[i - 1]) == 1)


def test_verify_puzzle_small_sweeps():
    for k, nmax in [(2, 4), (3, 3), (4, 2)]:
        for n in range(1, nmax + 1):
            for p in feasible_types(n, k):
                assert verify_puzzle(n, k, p).equal


def test_event_probability_examples():
    assert event_probability([set(), set()], 2, 3, (1, 1, 1)) == ExactProbability(1, 1)
    got = event_probability([{1}, {2}], 2, 3, (1, 1, 1))
    assert got == event_probability_naive([{1}, {2}], 2, 3, (1, 1, 1))
    assert event_probability([{1}], 2, 3, (0, 1, 1)) == ExactProbability(0, 1)


def test_event_probability_matches_naive():
    for n, k in [(2, 3), (3, 3)]:
        for p in [(1, 1, 1), (1, 2, 1), (2, 2, 2)]:
            if not any(mt.counts() == p for mt in m_tuples(n, k)):
                continue
            for a, b in [({1}, {2}), ({1, 2}, {3}), ({2}, set()), ({1, 3}, {2, 3})]:
                assert event_probability([a, b], n, k, p) == event_probability_naive(
                    [a, b], n, k, p
                )


def test_k3_inclusion_exclusion():
    r = verify_k3_inclusion_exclusion(2, (1, 1, 1))
    assert r.equal and r.lhs == "1/2"
    for p in feasible_types(3, 3):
        assert verify_k3_inclusion_exclusion(3, p).equal


def test_exchange_lemma_all_labelings():
    for n in (2, 3):
        for p in feasible_types(n, 3):
            for a, b, c in itertools.permutations((1, 2, 3)):
                r = verify_exchange_lemma(n, p, a, b, c)
                assert r.equal, (n, p, (a, b, c))


def test_exchange_lemma_rejects_bad_labels():
    with pytest.raises(ValueError):
        verify_exchange_lemma(2, (1, 1, 1), 1, 2, 2)


def test_sampling_is_deterministic():
    a = sample_puzzle(3, 2, (1, 2), trials=500, seed=42)
    b = sample_puzzle(3, 2, (1, 2), trials=500, seed=42)
    assert a == b
    c = sample_puzzle(3, 2, (1, 2), trials=500, seed=43)
    assert (a.accepted, a.tree_hits) != (c.accepted, c.tree_hits) or a != c


def test_sampling_trivial_type_always_tree():
    res = sample_puzzle(2, 2, (1, 1), trials=200, seed=7)
    assert res.accepted > 0
    assert res.tree_estimate == ExactProbability(1, 1)
    assert res.r1_estimate == ExactProbability(1, 1)


def test_sampling_acceptance_floor():
    with pytest.raises(SamplingError):
        sample_puzzle(6, 3, (2, 3, 4), trials=5, seed=1, min_acceptance=0.9)


def test_sampling_statistical_agreement():
    n, k, p = 6, 3, (2, 3, 4)
    res = sample_puzzle(n, k, p, trials=100_000, seed=2024, threads=4)
    exact_tree = tree_probability(n, k, p)
    exact_r1 = r1_probability(n, k, p)
    assert exact_tree == exact_r1
    est = res.tree_estimate.numerator / res.tree_estimate.denominator
    exact = exact_tree.numerator / exact_tree.denominator
    se = (exact * (1 - exact) / res.accepted) ** 0.5
    assert abs(est - exact) <= 4 * se + 1e-12
    est_r1 = res.r1_estimate.numerator / res.r1_estimate.denominator
    assert abs(est_r1 - est) <= 3 * (2 * se) + 1e-12


def test_eq4_bridge_colored_vs_r1_counts():
    # n! * |union of colored sets| = n!^k * |tuples with |R_1| = k-1|
    from math import factorial

    for n, k in [(2, 2), (3, 2), (2, 3)]:
        for p in feasible_types(n, k):
            union = 0
            for t in range(1, k + 1):
                bumped = tuple(x + (1 if s == t else 0) for s, x in enumerate(p, start=1))
                if all(x >= 1 for x in bumped):
                    union += count_colored(n, bumped)
            r1_count = sum(1 for mt in m_tuples(n, k, p) if len(mt.subsets[0]) == k - 1)
            assert factorial(n) * union == factorial(n) ** k * r1_count
