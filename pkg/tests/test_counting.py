import itertools
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from constellation_lab.counting import (
    CapExceededError,
    ColoredFactorization,
    count_by_color_compositions,
    count_colored,
    count_kappa,
    ell_vector_census,
    enumerate_colored_factorizations,
    enumerate_colored_factorizations_all,
    enumerate_factorizations,
    m_coefficient,
    m_tuples,
    surjection_count,
    verify_gf_identity,
    verify_jackson,
    verify_mv_formula,
)
from constellation_lab.permutations import (
    Composition,
    Permutation,
    compose_all,
    identity,
    long_cycle,
    partitions_of,
)


def test_factorizations_n2_k2():
    got = list(enumerate_factorizations(2, 2))
    swap = Permutation((2, 1))
    assert got == [(swap, identity(2)), (identity(2), swap)]


def test_factorizations_counts_and_products():
    assert sum(1 for _ in enumerate_factorizations(3, 2)) == 6
    tuples = list(enumerate_factorizations(3, 3))
    assert len(tuples) == 36
    assert all(compose_all(list(t)) == long_cycle(3) for t in tuples)


def test_factorization_stream_duplicate_free():
    for n, k in [(3, 2), (2, 3), (3, 3)]:
        seen = set(enumerate_factorizations(n, k))
        assert len(seen) == factorial(n) ** (k - 1)


def test_cap_guard():
    with pytest.raises(CapExceededError):
        list(enumerate_factorizations(6, 3, cap=1000))
    with pytest.raises(CapExceededError):
        list(m_tuples(4, 3, cap=10))


def test_count_colored_examples():
    assert count_colored(3, (1, 1)) == 6
    assert count_colored(2, (1, 2)) == 2
    assert count_colored(3, (1, 4)) == 0  # more colors than elements


def test_count_colored_base_case_formula():
    # p_1 = 1: closed form n!^(k-1) * prod binom(n-1, p_t - 1)
    for n, k in [(3, 2), (4, 2), (3, 3)]:
        for rest in itertools.product(range(1, n + 1), repeat=k - 1):
            p = (1,) + rest
            expected = factorial(n) ** (k - 1)
            for pt in rest:
                expected *= comb(n - 1, pt - 1)
            assert count_colored(n, p) == expected


def test_count_colored_matches_direct_enumeration():
    for n, k in [(2, 2), (3, 2), (2, 3)]:
        for p in itertools.product(range(1, n + 1), repeat=k):
            direct = sum(1 for _ in enumerate_colored_factorizations(n, k, p))
            assert count_colored(n, p) == direct


def test_count_colored_census_path_agrees():
    for n, k in [(3, 2), (2, 3)]:
        census = ell_vector_census(n, k)
        for p in itertools.product(range(1, n + 1), repeat=k):
            assert count_colored(n, p, census=census) == count_colored(n, p)


def test_colored_factorization_validation():
    cf = next(enumerate_colored_factorizations(3, 2, (2, 1)))
    assert cf.validate() is None
    bad = ColoredFactorization(perms=cf.perms, colorings=(cf.colorings[0], (1, 1, 2)))
    assert bad.validate() is not None


def test_compositions_sum_to_colored_count():
    n, k = 4, 2
    for p in itertools.product(range(1, n + 1), repeat=k):
        total = 0
        from constellation_lab.permutations import compositions_of_length

        for gammas in itertools.product(
            *(list(compositions_of_length(n, pt)) for pt in p)
        ):
            total += count_by_color_compositions(list(gammas))
        assert total == count_colored(n, p)


def test_compositions_trivial_cases():
    for n, k in [(3, 2), (3, 3)]:
        gammas = [Composition((n,))] * k
        assert count_by_color_compositions(gammas) == factorial(n) ** (k - 1)


def test_compositions_fig3_symmetry_pair():
    a = count_by_color_compositions(
        [Composition((1, 4)), Composition((5,)), Composition((2, 1, 2))]
    )
    b = count_by_color_compositions(
        [Composition((4, 1)), Composition((5,)), Composition((2, 2, 1))]
    )
    assert a == b and a > 0


def test_composition_counts_depend_only_on_length_profile():
    n, k = 4, 2
    census = {}
    for cf in enumerate_colored_factorizations_all(n, k):
        key = tuple(g.parts for g in cf.color_compositions())
        census[key] = census.get(key, 0) + 1
    by_profile = {}
    for key, cnt in census.items():
        by_profile.setdefault(tuple(len(g) for g in key), set()).add(cnt)
    assert all(len(v) == 1 for v in by_profile.values())


def test_kappa_examples():
    for n in (2, 3, 4):
        ln = Composition((n,))
        ones = Composition((1,) * n)
        assert count_kappa([ln, ones]) == 1
    assert count_kappa([Composition((2,)), Composition((2,))]) == 0
    for n, k in [(3, 2), (3, 3)]:
        total = sum(
            count_kappa(list(lams))
            for lams in itertools.product(list(partitions_of(n)), repeat=k)
        )
        assert total == factorial(n) ** (k - 1)


def test_surjection_count_against_enumeration():
    for m in range(0, 5):
        for p in range(0, 5):
            direct = sum(
                1
                for assign in itertools.product(range(1, p + 1), repeat=m)
                if set(assign) == set(range(1, p + 1))
            )
            assert surjection_count(m, p) == direct


def test_m_coefficient_examples():
    assert m_coefficient(0, (0, 0)) == 1
    assert m_coefficient(3, (0, 0)) == 1  # all subsets empty
    assert m_coefficient(2, (1, 1)) == 2
    assert m_coefficient(2, (1, 1, 1)) == 6


def test_m_tuples_stream_counts_and_types():
    for mt in m_tuples(2, 3, (1, 1, 1)):
        assert mt.counts() == (1, 1, 1)
    assert sum(1 for _ in m_tuples(2, 3)) == 7**2
    seen = set(mt.subsets for mt in m_tuples(3, 2))
    assert len(seen) == 27


@settings(deadline=None)
@given(st.integers(0, 3), st.permutations([0, 1, 2]))
def test_m_coefficient_symmetric(n, perm):
    p = (0, 1, 2)
    permuted = tuple(p[i] for i in perm)
    assert m_coefficient(n, p) == m_coefficient(n, permuted)


def test_m_coefficient_symmetric_k4():
    for n in (2, 3, 4):
        for p in [(0, 1, 1, 2), (1, 1, 2, 3), (0, 0, 2, 2)]:
            base = m_coefficient(n, p)
            for perm in itertools.permutations(p):
                assert m_coefficient(n, perm) == base


def test_verify_jackson_examples():
    r = verify_jackson(2, (1, 2))
    assert r.equal and r.lhs == 2 and r.rhs == 2
    r = verify_jackson(3, (1, 1))
    assert r.equal and r.lhs == 6
    assert verify_jackson(4, (2, 2)).equal


def test_verify_gf_identity_examples():
    r = verify_gf_identity(3, 2, (1, 1))
    assert r.equal and r.lhs == 6  # all-ones point equals n!^(k-1)
    assert verify_gf_identity(3, 2, (2, 2)).equal
    assert verify_gf_identity(2, 3, (2, 1, 3)).equal


def test_binomial_telescoping_to_cycle_count_sum():
    # sum over p of C^n_p * prod binom(x_t, p_t) equals the raw cycle-count
    # generating sum, independently of the closed form
    for n, k in [(3, 2), (2, 3)]:
        census = ell_vector_census(n, k)
        for xs in itertools.product((0, 1, 2, 3), repeat=k):
            lhs = sum(
                cnt * _int_prod(x**e for x, e in zip(xs, ells))
                for ells, cnt in census.items()
            )
            rhs = 0
            for p in itertools.product(range(1, n + 1), repeat=k):
                rhs += count_colored(n, p, census=census) * _int_prod(
                    comb(x, pt) for x, pt in zip(xs, p)
                )
            assert lhs == rhs


def _int_prod(it):
    out = 1
    for x in it:
        out *= x
    return out


def test_verify_mv_trivial_and_small_sweep():
    assert verify_mv_formula([Composition((3,)), Composition((3,))]).equal
    from constellation_lab.permutations import compositions_of

    for n in (3, 4):
        comps = list(compositions_of(n))
        for gs in itertools.product(comps, repeat=2):
            assert verify_mv_formula(list(gs)).equal


def test_verify_mv_worked_composition_triple():
    # the (2,1,3)-colored size-5 example with color sizes (1,4), (5), (2,1,2)
    r = verify_mv_formula(
        [Composition((1, 4)), Composition((5,)), Composition((2, 1, 2))]
    )
    assert r.equal
