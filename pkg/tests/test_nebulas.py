import itertools
from collections import Counter

import pytest

from constellation_lab.biddings import nebula_key
from constellation_lab.constellations import (
    Arborescence,
    from_permutations,
)
from constellation_lab.halfedges import BLACK, WHITE
from constellation_lab.nebulas import (
    Nebula,
    TreePointedConstellation,
    _bud_word,
    _match_fixpoint,
    _match_parenthesis,
    canonical_tree_pointed,
    closure,
    dual_closure,
    dual_opening,
    enumerate_tree_pointed,
    is_parenthesis_nebula,
    verify_pointing,
)
from constellation_lab.permutations import identity


def size_one_pointed(k=3, v0_type=3):
    c = from_permutations((identity(1),) * k, root=1)
    v0 = c.hyperedges[0][v0_type - 1]
    parent = [None] * c.num_vertices
    for t in range(1, k + 1):
        if t != v0_type:
            parent[c.hyperedges[0][t - 1] - 1] = (1, t)
    return TreePointedConstellation(
        constellation=c,
        arborescence=Arborescence(root_vertex=v0, parent_edge=tuple(parent)),
    )


def test_dual_opening_size_one():
    tp = size_one_pointed(k=3, v0_type=3)
    nb = dual_opening(tp)
    assert nb.validate() is None
    assert nb.size == 1
    assert nb.type_vector() == (1, 1, 0)
    m = nb.hmap
    black_bud_types = sorted(
        m.type[x] for x in m.buds if m.vertex_color[m.vertex[x]] == BLACK
    )
    assert black_bud_types == [1, 2]


def test_dual_opening_bud_types_match_tree_edge_types():
    for n, k in [(2, 3), (3, 3)]:
        for tp in enumerate_tree_pointed(n, k):
            nb = dual_opening(tp)
            tree_types = Counter(t for _, t in tp.arborescence.edges())
            assert nb.type_vector() == tuple(tree_types.get(t, 0) for t in range(1, k + 1))
            assert len(nb.hmap.faces()) == 1


def test_closure_of_budless_map_is_identity():
    from constellation_lab.constellations import dual

    d = dual(from_permutations((identity(1),) * 3, root=1))
    closed, bud_edges = closure(Nebula(hmap=d))
    assert bud_edges == ()
    assert closed == d


def test_closure_strategies_agree_and_types_match():
    for n, k in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        for tp in enumerate_tree_pointed(n, k):
            nb = dual_opening(tp)
            m = nb.hmap
            word = _bud_word(m)
            a = set(map(tuple, _match_parenthesis(m, word)))
            b = set(map(tuple, _match_fixpoint(m, word)))
            assert a == b
            for w, x in a:
                assert m.type[w] == m.type[x]
                assert m.vertex_color[m.vertex[w]] == WHITE
                assert m.vertex_color[m.vertex[x]] == BLACK
            assert len(a) == len(tp.arborescence.edges())


def test_dual_closure_inverts_opening():
    for n, k in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)]:
        for tp in enumerate_tree_pointed(n, k):
            nb = dual_opening(tp)
            back = dual_closure(nb)
            assert canonical_tree_pointed(back) == canonical_tree_pointed(tp)
            assert nebula_key(dual_opening(back)) == nebula_key(nb)


def test_dual_closure_size_one_inverts():
    tp = size_one_pointed(k=3, v0_type=3)
    back = dual_closure(dual_opening(tp))
    assert canonical_tree_pointed(back) == canonical_tree_pointed(tp)


def test_verify_pointing_small():
    for n in (1, 2):
        for p in itertools.product(range(0, n + 1), repeat=2):
            r = verify_pointing(n, 2, p)
            assert r.equal, r
    empty = verify_pointing(1, 2, (1, 1))  # both sides vanish
    assert empty.equal and empty.lhs == 0 and empty.rhs == 0


def test_parenthesis_budless_is_true():
    from constellation_lab.constellations import dual

    d = dual(from_permutations((identity(1),) * 2, root=1))
    rep = is_parenthesis_nebula(Nebula(hmap=d))
    assert rep.is_parenthesis


def test_parenthesis_iff_tree_rooted():
    for n, k in [(1, 2), (2, 2), (3, 2), (2, 3)]:
        for tp in enumerate_tree_pointed(n, k):
            nb = dual_opening(tp)
            rep = is_parenthesis_nebula(nb)
            tree_rooted = tp.pointed_vertex == tp.constellation.root_vertex
            assert rep.is_parenthesis == tree_rooted


def test_openings_of_tree_rooted_are_parenthesis():
    for tp in enumerate_tree_pointed(3, 2):
        if tp.pointed_vertex == tp.constellation.root_vertex:
            assert is_parenthesis_nebula(dual_opening(tp)).is_parenthesis


def test_nebula_validation_rejects_unrooted():
    tp = size_one_pointed()
    nb = dual_opening(tp)
    from dataclasses import replace

    bad = Nebula(hmap=replace(nb.hmap, root=None))
    assert bad.validate() == "nebula is not rooted"


def test_dual_closure_needs_buds():
    from constellation_lab.constellations import dual

    d = dual(from_permutations((identity(1),) * 3, root=1))
    with pytest.raises(ValueError, match="no buds"):
        dual_closure(Nebula(hmap=d))
