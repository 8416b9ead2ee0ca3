import itertools

import pytest

from constellation_lab.constellations import (
    Constellation,
    arborescences_toward,
    canonical_rooted,
    constellation_from_dual,
    constellation_to_dot,
    dual,
    enumerate_rooted_constellations,
    from_permutations,
    genus,
    halfedge_to_dot,
    is_cactus,
    is_transitive,
    product_of,
    to_permutations,
    transitive_tuples,
    validate,
    white_face_count,
)
from constellation_lab.permutations import (
    Permutation,
    cycles,
    from_cycles,
    identity,
    long_cycle,
)


def fig2_left():
    return (
        from_cycles(5, [[1, 2, 5], [3, 4]]),
        from_cycles(5, [[1, 3]]),
        from_cycles(5, [[1, 4]]),
    )


def fig2_right():
    return (
        from_cycles(5, [[1, 3, 5], [2, 4]]),
        from_cycles(5, [[1, 4], [2, 3]]),
        from_cycles(5, [[2, 4]]),
    )


def test_from_permutations_fig2_left():
    c = from_permutations(fig2_left())
    assert c.n == 5 and c.num_vertices == 10
    assert validate(c) is None


def test_single_hyperedge_k2():
    c = from_permutations((identity(1), identity(1)))
    assert c.n == 1 and c.num_vertices == 2
    assert all(len(r) == 1 for r in c.rotation)
    assert to_permutations(c) == (identity(1), identity(1))
    assert white_face_count(c) == 1
    assert genus(c) == 0


def test_to_permutations_fig2_right():
    perms = fig2_right()
    c = from_permutations(perms)
    assert to_permutations(c) == perms


def test_representation_roundtrip_exhaustive():
    # all transitive tuples at n <= 4, k = 3 (and k = 2 at n <= 4)
    for n, k in [(3, 3), (4, 3), (4, 2)]:
        for perms in transitive_tuples(n, k):
            assert to_permutations(from_permutations(perms)) == perms


def test_from_permutations_rejects_disconnected():
    with pytest.raises(ValueError, match="not connected"):
        from_permutations((identity(2), identity(2)))


def test_representation_roundtrip_random_triples_n5():
    # free pi_2, pi_3 with pi_1 solved from the long cycle are transitive
    import random

    from constellation_lab.permutations import compose, compose_all, inverse

    rng = random.Random(123)
    for _ in range(40):
        p2 = Permutation(tuple(rng.sample(range(1, 6), 5)))
        p3 = Permutation(tuple(rng.sample(range(1, 6), 5)))
        p1 = compose(long_cycle(5), inverse(compose(p2, p3)))
        perms = (p1, p2, p3)
        assert to_permutations(from_permutations(perms)) == perms


def test_white_face_counts_fig2():
    assert white_face_count(from_permutations(fig2_left())) == 2
    assert white_face_count(from_permutations(fig2_right())) == 1
    assert is_cactus(from_permutations(fig2_right()))


def test_genus_fig2():
    assert genus(from_permutations(fig2_left())) == 0
    assert genus(from_permutations(fig2_right())) == 1


def test_white_faces_match_product_cycles():
    for n, k in [(3, 2), (3, 3), (2, 3)]:
        for perms in transitive_tuples(n, k):
            c = from_permutations(perms)
            assert white_face_count(c) == len(cycles(product_of(c)))
            assert is_cactus(c) == (len(cycles(product_of(c))) == 1)


def test_euler_relation_shape():
    for perms in transitive_tuples(3, 2):
        c = from_permutations(perms)
        e = c.n * c.k
        f = c.n + white_face_count(c)
        chi = c.num_vertices - e + f
        assert chi % 2 == 0 and chi <= 2


def test_dual_single_hyperedge_k3():
    c = from_permutations((identity(1),) * 3)
    d = dual(c)
    assert d.validate() is None
    blacks = [v for v in range(d.num_vertices) if d.vertex_color[v] == "black"]
    assert len(blacks) == 1
    assert len(d.darts_at(blacks[0])) == 3


def test_dual_preserves_genus_and_inverts():
    for n, k in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)]:
        for perms in itertools.islice(transitive_tuples(n, k), 80):
            c = from_permutations(perms)
            d = dual(c)
            assert d.validate() is None
            assert d.genus() == genus(c)
            c2, _, _ = constellation_from_dual(d)
            assert c2 == c


def test_validate_reports_violations():
    c = from_permutations(fig2_left())
    assert validate(c) is None
    broken = Constellation(
        k=c.k,
        n=c.n,
        hyperedges=c.hyperedges,
        vertex_type=c.vertex_type,
        rotation=(c.rotation[0][:-1],) + c.rotation[1:],
        root=None,
    )
    assert "rotation" in validate(broken)


def test_validate_disconnected():
    # two separate hyperedges: rotations are fine but the action is not transitive
    broken = Constellation(
        k=2,
        n=2,
        hyperedges=((1, 3), (2, 4)),
        vertex_type=(1, 1, 2, 2),
        rotation=((1,), (2,), (1,), (2,)),
    )
    assert validate(broken) == "not transitive"


def test_is_transitive():
    assert is_transitive((long_cycle(4), identity(4)))
    assert not is_transitive((identity(3), identity(3)))


def test_json_roundtrip():
    c = from_permutations(fig2_left(), root=2)
    assert Constellation.from_json(c.to_json()) == c


def test_canonical_rooted_is_idempotent_and_label_free():
    for perms in itertools.islice(transitive_tuples(3, 2), 40):
        c = from_permutations(perms, root=1)
        canon, _ = canonical_rooted(c)
        assert canon.root == 1
        again, _ = canonical_rooted(canon)
        assert again == canon


def test_arborescence_enumeration_smoke():
    c = from_permutations((long_cycle(2), identity(2)), root=1)
    v0 = c.root_vertex
    arbs = list(arborescences_toward(c, v0))
    assert arbs and all(a.root_vertex == v0 for a in arbs)


def test_rooted_constellation_count_matches_quotient():
    # rooted objects = labelled objects * n / n!
    for n, k in [(2, 2), (3, 2)]:
        labelled = sum(1 for _ in transitive_tuples(n, k))
        rooted = len(enumerate_rooted_constellations(n, k))
        import math

        assert rooted * math.factorial(n - 1) == labelled


def test_dot_output_is_stable():
    c = from_permutations(fig2_left(), root=1)
    assert constellation_to_dot(c) == constellation_to_dot(c)
    assert constellation_to_dot(c).startswith("graph constellation {")
    assert halfedge_to_dot(dual(c)).startswith("graph halfedgemap {")


def test_vertex_colors_validated_and_serialized():
    from dataclasses import replace

    c = from_permutations(fig2_left(), root=1)
    # surjective coloring per type: color every vertex 1, one type-2 vertex 2
    colors = [1] * c.num_vertices
    colors[c.vertices_of_type(2)[1] - 1] = 2
    colored = replace(c, colors=tuple(colors))
    assert validate(colored) is None
    assert Constellation.from_json(colored.to_json()) == colored
    assert "fillcolor" in constellation_to_dot(colored)
    gap = [1] * c.num_vertices
    gap[c.vertices_of_type(2)[1] - 1] = 3  # color 2 skipped
    assert "surjective" in validate(replace(c, colors=tuple(gap)))
