"""Tree-pointed constellations, nebulas, and the dual opening/closure pair.

Opening a tree-pointed constellation cuts, in the dual map, the edges
crossed by the marked arborescence; the result is a one-face map with
typed buds (a nebula) rooted at the dual of the root hyperedge.  Closing
a nebula matches buds like parentheses around its unique face (white buds
open, black buds close), glues them back into edges, and recovers the
tree-pointed constellation by dualizing; the pointed vertex is the dual
of the one face no glued pair closed off.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator, Optional, Sequence

from .constellations import (
    Arborescence,
    Constellation,
    arborescences_toward,
    bfs_hyperedge_relabelling,
    constellation_from_dual,
    dual,
    dual_black_dart,
    enumerate_rooted_constellations,
    relabel_hyperedges,
    validate,
    validate_arborescence,
)
from .counting import CheckReport
from .halfedges import BLACK, WHITE, HalfEdgeMap, with_twins_cut, with_twins_joined
from .tree_rooted import enumerate_tree_rooted


@dataclass(frozen=True)
class TreePointedConstellation:
    """A rooted constellation with an arborescence toward any vertex."""

    constellation: Constellation
    arborescence: Arborescence

    @property
    def pointed_vertex(self) -> int:
        return self.arborescence.root_vertex

    def reduced_type(self) -> tuple[int, ...]:
        c = self.constellation
        p = list(c.type_vector())
        p[c.vertex_type[self.pointed_vertex - 1] - 1] -= 1
        return tuple(p)

    def validate(self) -> Optional[str]:
        c = self.constellation
        problem = validate(c)
        if problem is not None:
            return problem
        if c.root is None:
            return "constellation is not rooted"
        return validate_arborescence(c, self.arborescence)


@dataclass(frozen=True)
class Nebula:
    """A rooted one-face map with typed buds and black vertices of degree k."""

    hmap: HalfEdgeMap

    @property
    def k(self) -> int:
        return self.hmap.k

    @property
    def size(self) -> int:
        return sum(1 for col in self.hmap.vertex_color if col == BLACK)

    def black_vertices(self) -> list[int]:
        return [v for v in range(self.hmap.num_vertices) if self.hmap.vertex_color[v] == BLACK]

    def type_vector(self) -> tuple[int, ...]:
        """Black buds per type."""
        m = self.hmap
        p = [0] * m.k
        for x in m.buds:
            if m.vertex_color[m.vertex[x]] == BLACK:
                p[m.type[x] - 1] += 1
        return tuple(p)

    def black_dart(self, v: int, t: int) -> int:
        m = self.hmap
        for x in m.darts_at(v):
            if m.type[x] == t:
                return x
        raise ValueError(f"black vertex {v} has no dart of type {t}")

    def validate(self) -> Optional[str]:
        return validate_nebula(self.hmap)


def validate_nebula(m: HalfEdgeMap) -> Optional[str]:
    """First violated nebula condition, or None."""
    problem = m.validate()
    if problem is not None:
        return problem
    rotations = m.rotations()
    for v in range(m.num_vertices):
        rot = rotations[v]
        types = [m.type[x] for x in rot]
        if m.vertex_color[v] == BLACK:
            if len(rot) != m.k:
                return f"black vertex {v} has degree {len(rot)}"
            if sorted(types) != list(range(1, m.k + 1)):
                return f"black vertex {v} misses a type"
            for a, b in zip(types, types[1:] + types[:1]):
                if b != a % m.k + 1:
                    return f"types do not increase clockwise at black vertex {v}"
        else:
            for a, b in zip(types, types[1:] + types[:1]):
                if b != (a - 2) % m.k + 1:
                    return f"types do not decrease clockwise at white vertex {v}"
        for x in rot:
            t = m.twin[x]
            if t is not None and m.vertex_color[m.vertex[t]] == m.vertex_color[v]:
                return f"edge at dart {x} joins two {m.vertex_color[v]} vertices"
    black_buds = [0] * m.k
    white_buds = [0] * m.k
    for x in m.buds:
        if m.vertex_color[m.vertex[x]] == BLACK:
            black_buds[m.type[x] - 1] += 1
        else:
            white_buds[m.type[x] - 1] += 1
    if black_buds != white_buds:
        return f"bud counts differ per type: black {black_buds}, white {white_buds}"
    if len(m.faces()) != 1:
        return f"nebula must have a single face, found {len(m.faces())}"
    if m.root is None:
        return "nebula is not rooted"
    if m.vertex_color[m.root] != BLACK:
        return "root vertex is not black"
    return None


# ---------------------------------------------------------------------------
# Dual opening
# ---------------------------------------------------------------------------


def dual_opening(tp: TreePointedConstellation) -> Nebula:
    """Cut the dual edges crossed by the arborescence; yields a rooted nebula."""
    problem = tp.validate()
    if problem is not None:
        raise ValueError(problem)
    c = tp.constellation
    d = dual(c)
    cut = {dual_black_dart(c, e) for e in tp.arborescence.edges()}
    nb = Nebula(hmap=with_twins_cut(d, cut))
    problem = nb.validate()
    if problem is not None:
        raise AssertionError(f"dual opening is not a nebula: {problem}")
    return nb


# ---------------------------------------------------------------------------
# Closure
# ---------------------------------------------------------------------------


def _bud_word(m: HalfEdgeMap) -> list[int]:
    """The buds in clockwise-tour order around the (single) face."""
    if not m.buds:
        return []
    start = m.buds[0]
    return [x for x in m.tour(start) if m.is_bud(x)]


def _match_parenthesis(m: HalfEdgeMap, word: list[int]) -> list[tuple[int, int]]:
    """Match white buds (open) to black buds (close) on the cyclic word."""
    stack: list[int] = []
    early_black: list[int] = []
    pairs: list[tuple[int, int]] = []
    for x in word:
        if m.vertex_color[m.vertex[x]] == WHITE:
            stack.append(x)
        elif stack:
            pairs.append((stack.pop(), x))
        else:
            early_black.append(x)
    for b in early_black:
        pairs.append((stack.pop(), b))
    if stack:
        raise ValueError("unbalanced buds")
    return pairs


def _match_fixpoint(m: HalfEdgeMap, word: list[int]) -> list[tuple[int, int]]:
    """Alternative strategy: repeatedly glue the last adjacent (white, black)
    pair on the remaining cyclic word.  Used to certify order-independence."""
    remaining = list(word)
    pairs: list[tuple[int, int]] = []
    while remaining:
        n = len(remaining)
        found = None
        for idx in range(n - 1, -1, -1):
            w, b = remaining[idx], remaining[(idx + 1) % n]
            if (
                m.vertex_color[m.vertex[w]] == WHITE
                and m.vertex_color[m.vertex[b]] == BLACK
            ):
                found = idx
                break
        if found is None:
            raise ValueError("no matching bud pair on a nonempty word")
        w, b = remaining[found], remaining[(found + 1) % len(remaining)]
        pairs.append((w, b))
        remaining.remove(w)
        remaining.remove(b)
    return pairs


def closure(nb: Nebula) -> tuple[HalfEdgeMap, tuple[tuple[int, int], ...]]:
    """Glue matching buds recursively; returns the dual-constellation and the
    bud-edges as (white dart, black dart) pairs, oriented white to black."""
    m = nb.hmap
    pairs = _match_parenthesis(m, _bud_word(m))
    closed = with_twins_joined(m, pairs)
    return closed, tuple(pairs)


def dual_closure(nb: Nebula) -> TreePointedConstellation:
    """Rebuild the tree-pointed constellation whose opening is the nebula.

    Each glued bud pair is a bud-edge, oriented white to black; the face on
    its right (the one whose tour traverses the black-side dart) is the
    face it closed, and the dual of the bud-edge is that face's parent
    edge.  The pointed vertex is the dual of the one face no bud-edge
    closed.
    """
    closed, bud_edges = closure(nb)
    if not bud_edges:
        raise ValueError("nebula has no buds: no pointed vertex to recover")
    c, hyperedge_of_black, vertex_of_dart = constellation_from_dual(closed)
    parent: list[Optional[tuple[int, int]]] = [None] * c.num_vertices
    for _, b in bud_edges:
        h = hyperedge_of_black[closed.vertex[b]]
        t = closed.type[b]
        v = vertex_of_dart[b]
        if parent[v - 1] is not None:
            raise AssertionError(f"vertex {v} closed by two bud-edges")
        parent[v - 1] = (h, t)
    unclosed = [v for v in range(1, c.num_vertices + 1) if parent[v - 1] is None]
    if len(unclosed) != 1:
        raise AssertionError("closing edges do not leave a unique pointed vertex")
    tp = TreePointedConstellation(
        constellation=c,
        arborescence=Arborescence(root_vertex=unclosed[0], parent_edge=tuple(parent)),
    )
    problem = tp.validate()
    if problem is not None:
        raise AssertionError(f"dual closure is not tree-pointed: {problem}")
    return tp


# ---------------------------------------------------------------------------
# Parenthesis characterization of tree-rootedness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParenthesisReport:
    is_parenthesis: bool
    started_at_bud: bool


def is_parenthesis_nebula(nb: Nebula) -> ParenthesisReport:
    """Whether black buds never lead white buds on the clockwise tour.

    The count starts at the corner between the type-(k-1) and type-k
    half-edges of the root vertex: that corner lies in the face that the
    closure leaves unclosed exactly when the recovered arborescence points
    at the root vertex, so validity here characterizes tree-rootedness.
    The corner is canonical whether or not the adjacent type-k half-edge
    is a bud; the report flags the bud case.
    """
    m = nb.hmap
    if m.root is None:
        raise ValueError("nebula is not rooted")
    start = None
    for x in m.darts_at(m.root):
        if m.type[x] == m.k:
            start = x
            break
    if start is None:
        raise ValueError(f"root vertex has no type-{m.k} half-edge")
    whites = blacks = 0
    ok = True
    for x in m.tour(start):
        if not m.is_bud(x):
            continue
        if m.vertex_color[m.vertex[x]] == WHITE:
            whites += 1
        else:
            blacks += 1
            if blacks > whites:
                ok = False
    return ParenthesisReport(is_parenthesis=ok, started_at_bud=m.is_bud(start))


# ---------------------------------------------------------------------------
# Enumeration and the pointing correspondence
# ---------------------------------------------------------------------------


def canonical_tree_pointed(tp: TreePointedConstellation) -> TreePointedConstellation:
    """Canonical hyperedge labels (root-first) with the decorations remapped."""
    s = bfs_hyperedge_relabelling(tp.constellation)
    new_c, vmap = relabel_hyperedges(tp.constellation, s)
    parent: list[Optional[tuple[int, int]]] = [None] * new_c.num_vertices
    for v in range(1, tp.constellation.num_vertices + 1):
        e = tp.arborescence.parent_edge[v - 1]
        if e is not None:
            parent[vmap[v] - 1] = (s[e[0]], e[1])
    return TreePointedConstellation(
        constellation=new_c,
        arborescence=Arborescence(
            root_vertex=vmap[tp.arborescence.root_vertex], parent_edge=tuple(parent)
        ),
    )


def enumerate_tree_pointed(
    n: int, k: int, reduced_type: Optional[Sequence[int]] = None
) -> Iterator[TreePointedConstellation]:
    """All tree-pointed constellations of size n (canonical forms)."""
    target = None if reduced_type is None else tuple(reduced_type)
    for c in enumerate_rooted_constellations(n, k):
        p = c.type_vector()
        for v0 in range(1, c.num_vertices + 1):
            if target is not None:
                t0 = c.vertex_type[v0 - 1]
                reduced = tuple(x - (1 if t == t0 else 0) for t, x in enumerate(p, start=1))
                if reduced != target:
                    continue
            for arb in arborescences_toward(c, v0):
                yield TreePointedConstellation(constellation=c, arborescence=arb)


def count_tree_rooted(n: int, k: int, p: Sequence[int]) -> int:
    return sum(1 for _ in enumerate_tree_rooted(n, k, p))


def verify_pointing(n: int, k: int, p: Sequence[int]) -> CheckReport:
    """Pointing correspondence: tree-pointed objects of reduced type p times
    the product of p_t! against the labelled tree-rooted unions."""
    p = tuple(p)
    lhs = sum(1 for _ in enumerate_tree_pointed(n, k, p))
    for pt in p:
        lhs *= factorial(pt)
    rhs = 0
    for t in range(1, k + 1):
        bumped = tuple(x + (1 if s == t else 0) for s, x in enumerate(p, start=1))
        rhs += count_tree_rooted(n, k, bumped)
    return CheckReport(
        name="pointing",
        lhs=lhs,
        rhs=rhs,
        equal=lhs == rhs,
        params=(("n", n), ("k", k), ("p", p)),
    )
