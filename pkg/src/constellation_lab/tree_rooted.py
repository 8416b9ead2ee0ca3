"""From colored factorizations to tree-rooted constellations and back.

The forward direction reads the unique white face of the cactus of a
colored factorization as an Eulerian tour of a typed digraph whose
vertices are the (type, color) classes, splits the tour into a last-exit
arborescence plus residual exit orders, and reassembles those as a
rotation system: a vertex-labelled constellation with a marked spanning
tree oriented to the root vertex.  Every step is order-determined, so
both directions are deterministic.

Conventions.  The white-face tour of the cactus of (pi_1,...,pi_k) visits
the edge of type t+1 of hyperedge pi_{t+1}^{-1}(g) right after the type-t
edge of hyperedge g; the tour of the canonical input (product equal to
(1,2,...,n), root hyperedge 1) starts with the type-k edge of hyperedge 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterator, Optional, Sequence

from .constellations import (
    Arborescence,
    Constellation,
    _norm_cycle,
    arborescences_toward,
    enumerate_rooted_constellations,
    relabel_hyperedges,
    validate,
    validate_arborescence,
)
from .counting import ColoredFactorization
from .permutations import Composition, Permutation, compose_all, inverse

Arc = tuple[int, int]  # (type, hyperedge label)
DigraphVertex = tuple[int, int]  # (type, color)


@dataclass(frozen=True)
class ColoredDigraph:
    """Typed digraph on (type, color) classes with one arc per (type, label).

    The arc (t, i) runs from (t, colorings[t-1][i-1]) to the class of i in
    type t+1; in/out degrees balance at every vertex by construction.
    """

    k: int
    n: int
    colorings: tuple[tuple[int, ...], ...]

    def p_vector(self) -> tuple[int, ...]:
        return tuple(max(col) for col in self.colorings)

    def tail(self, arc: Arc) -> DigraphVertex:
        t, i = arc
        return (t, self.colorings[t - 1][i - 1])

    def head(self, arc: Arc) -> DigraphVertex:
        t, i = arc
        t2 = t % self.k + 1
        return (t2, self.colorings[t2 - 1][i - 1])

    def vertices(self) -> list[DigraphVertex]:
        out = []
        for t in range(1, self.k + 1):
            for c in range(1, max(self.colorings[t - 1]) + 1):
                out.append((t, c))
        return out

    def arcs(self) -> list[Arc]:
        return [(t, i) for t in range(1, self.k + 1) for i in range(1, self.n + 1)]


@dataclass(frozen=True)
class SimpleDigraph:
    """A plain arc-labelled digraph, for the generic tour machinery."""

    arc_list: tuple[tuple[Hashable, Hashable, Hashable], ...]  # (arc id, tail, head)

    def arcs(self) -> list[Hashable]:
        return [a for a, _, _ in self.arc_list]

    def tail(self, arc: Hashable) -> Hashable:
        return next(t for a, t, _ in self.arc_list if a == arc)

    def head(self, arc: Hashable) -> Hashable:
        return next(h for a, _, h in self.arc_list if a == arc)


@dataclass(frozen=True)
class EulerianDigraphTour:
    """An Eulerian arc sequence starting and ending at a type-k vertex."""

    digraph: ColoredDigraph
    arcs: tuple[Arc, ...]

    def validate(self) -> Optional[str]:
        dg = self.digraph
        if sorted(self.arcs) != sorted(dg.arcs()):
            return "tour does not use each arc exactly once"
        if dg.tail(self.arcs[0])[0] != dg.k:
            return "tour does not start at a vertex of type k"
        for a, b in zip(self.arcs, self.arcs[1:] + self.arcs[:1]):
            if dg.head(a) != dg.tail(b):
                return f"arcs {a} and {b} are not consecutive"
        return None


@dataclass(frozen=True)
class TreeRootedConstellation:
    """A rooted vertex-labelled constellation with a root-vertex arborescence."""

    constellation: Constellation
    arborescence: Arborescence

    @property
    def k(self) -> int:
        return self.constellation.k

    @property
    def n(self) -> int:
        return self.constellation.n

    def type_vector(self) -> tuple[int, ...]:
        return self.constellation.type_vector()

    def vertex_compositions(self) -> tuple[Composition, ...]:
        """Per type, the composition of hyperdegrees read off by label."""
        c = self.constellation
        out = []
        for t in range(1, c.k + 1):
            vs = c.vertices_of_type(t)
            parts = [0] * len(vs)
            for v in vs:
                parts[c.labels[v - 1] - 1] = c.hyperdegree(v)
            out.append(Composition(tuple(parts)))
        return tuple(out)

    def validate(self) -> Optional[str]:
        c = self.constellation
        problem = validate(c)
        if problem is not None:
            return problem
        if c.root is None:
            return "constellation is not rooted"
        if c.labels is None:
            return "constellation is not vertex-labelled"
        problem = validate_arborescence(c, self.arborescence)
        if problem is not None:
            return problem
        if self.arborescence.root_vertex != c.root_vertex:
            return "arborescence does not point to the root vertex"
        return None

    def to_json(self) -> dict:
        data = self.constellation.to_json()
        data["arborescence"] = {
            str(v + 1): list(e)
            for v, e in enumerate(self.arborescence.parent_edge)
            if e is not None
        }
        data["root_vertex"] = self.arborescence.root_vertex
        return data


# ---------------------------------------------------------------------------
# Xi: colored cacti as Eulerian tours
# ---------------------------------------------------------------------------


def xi(cf: ColoredFactorization) -> EulerianDigraphTour:
    """Encode a colored factorization as an Eulerian tour of its class digraph.

    The tour is the clockwise white-face reading of the cactus from the
    root corner of hyperedge 1; its arc labels are the hyperedge labels.
    """
    problem = cf.validate()
    if problem is not None:
        raise ValueError(problem)
    k, n = cf.k, cf.n
    invs = [inverse(p) for p in cf.perms]
    arcs: list[Arc] = [(k, 1)]
    g = 1
    for m in range(1, k * n):
        t = (m - 1) % k + 1
        g = invs[t - 1](g)
        arcs.append((t, g))
    if cf.perms[k - 1](1) != arcs[-1][1]:
        raise AssertionError("white-face tour failed to close")
    tour = EulerianDigraphTour(
        digraph=ColoredDigraph(k=k, n=n, colorings=cf.colorings), arcs=tuple(arcs)
    )
    problem = tour.validate()
    if problem is not None:
        raise AssertionError(f"xi produced an invalid tour: {problem}")
    return tour


def xi_inverse(tour: EulerianDigraphTour) -> ColoredFactorization:
    """Rebuild the colored factorization encoded by an Eulerian tour.

    Consecutive tour arcs (t-1, b), (t, a) force pi_t(a) = b; the result
    is relabelled so the product is (1,2,...,n) and the root hyperedge
    (the first arc's label) becomes 1.
    """
    problem = tour.validate()
    if problem is not None:
        raise ValueError(problem)
    dg = tour.digraph
    k, n = dg.k, dg.n
    images = [[0] * n for _ in range(k)]
    seq = tour.arcs
    for m in range(len(seq)):
        t, a = seq[m]
        _, b = seq[m - 1]
        images[t - 1][a - 1] = b
    perms = tuple(Permutation(tuple(img)) for img in images)
    product = compose_all(list(perms))
    root = seq[0][1]
    # relabel so that the product becomes the long cycle with root at 1
    s = [0] * (n + 1)
    x = root
    for j in range(n):
        if s[x]:
            raise ValueError("tour product is not a single n-cycle")
        s[x] = j + 1
        x = product(x)
    new_perms = []
    for p in perms:
        img = [0] * n
        for y in range(1, n + 1):
            img[s[y] - 1] = s[p(y)]
        new_perms.append(Permutation(tuple(img)))
    new_colorings = []
    for col in dg.colorings:
        out = [0] * n
        for i in range(1, n + 1):
            out[s[i] - 1] = col[i - 1]
        new_colorings.append(tuple(out))
    cf = ColoredFactorization(perms=tuple(new_perms), colorings=tuple(new_colorings))
    problem = cf.validate()
    if problem is not None:
        raise AssertionError(f"xi_inverse produced an invalid factorization: {problem}")
    return cf


# ---------------------------------------------------------------------------
# BEST decomposition of Eulerian tours
# ---------------------------------------------------------------------------


def best_decompose(tour: EulerianDigraphTour):
    """Split a tour into its last-exit arborescence and residual exit orders.

    Returns (tree, orders): ``tree[v]`` is the last outgoing arc of each
    non-start vertex (these form an arborescence toward the start vertex),
    and ``orders[v]`` the remaining outgoing arcs in usage order (for the
    start vertex, all of them; its first entry is the tour's first arc).
    """
    dg = tour.digraph
    v0 = dg.tail(tour.arcs[0])
    usage: dict[DigraphVertex, list[Arc]] = {v: [] for v in dg.vertices()}
    for arc in tour.arcs:
        usage[dg.tail(arc)].append(arc)
    tree: dict[DigraphVertex, Arc] = {}
    orders: dict[DigraphVertex, tuple[Arc, ...]] = {}
    for v, used in usage.items():
        if v == v0:
            orders[v] = tuple(used)
        else:
            tree[v] = used[-1]
            orders[v] = tuple(used[:-1])
    return tree, orders


def best_compose(
    digraph, tree: dict, orders: dict
) -> tuple[Hashable, ...]:
    """Replay the tour determined by an arborescence and residual orders.

    The start vertex is the one without a tree arc; every other vertex
    exits along its tree arc last.  Returns the arc sequence; raises if
    the replay is not Eulerian (i.e. the tree data is invalid).
    """
    (v0,) = set(orders) - set(tree)
    full: dict[Hashable, tuple] = {}
    for v in orders:
        full[v] = orders[v] if v == v0 else orders[v] + (tree[v],)
    ptr = {v: 0 for v in full}
    seq = []
    v = v0
    total = len(digraph.arcs())
    for _ in range(total):
        if ptr[v] >= len(full[v]):
            raise ValueError("replay stuck: not a valid arborescence decomposition")
        arc = full[v][ptr[v]]
        ptr[v] += 1
        if digraph.tail(arc) != v:
            raise ValueError(f"arc {arc} does not leave vertex {v}")
        seq.append(arc)
        v = digraph.head(arc)
    if v != v0 or any(ptr[u] != len(full[u]) for u in full):
        raise ValueError("replay did not close into an Eulerian tour")
    return tuple(seq)


def enumerate_eulerian_tours(digraph, v0) -> Iterator[tuple[Hashable, ...]]:
    """All Eulerian tours from v0, by direct backtracking (test oracle)."""
    arcs = list(digraph.arcs())
    out_arcs: dict[Hashable, list[Hashable]] = {}
    for a in arcs:
        out_arcs.setdefault(digraph.tail(a), []).append(a)
    used: set[Hashable] = set()
    seq: list[Hashable] = []

    def rec(v) -> Iterator[tuple[Hashable, ...]]:
        if len(seq) == len(arcs):
            if v == v0:
                yield tuple(seq)
            return
        for a in out_arcs.get(v, []):
            if a in used:
                continue
            used.add(a)
            seq.append(a)
            yield from rec(digraph.head(a))
            seq.pop()
            used.remove(a)

    yield from rec(v0)


def digraph_arborescences(digraph, v0) -> Iterator[dict]:
    """All arc sets {v != v0: outgoing arc} forming a tree toward v0."""
    arcs = list(digraph.arcs())
    vertices = sorted({digraph.tail(a) for a in arcs} | {digraph.head(a) for a in arcs})
    others = [v for v in vertices if v != v0]
    choices = [[a for a in arcs if digraph.tail(a) == v] for v in others]
    for combo in itertools.product(*choices):
        tree = dict(zip(others, combo))
        ok = True
        for v in others:
            seen = set()
            u = v
            while u != v0:
                if u in seen:
                    ok = False
                    break
                seen.add(u)
                u = digraph.head(tree[u])
            if not ok:
                break
        if ok:
            yield tree


# ---------------------------------------------------------------------------
# The bijection itself
# ---------------------------------------------------------------------------


def phi(cf: ColoredFactorization) -> TreeRootedConstellation:
    """Map a colored factorization to a vertex-labelled tree-rooted constellation.

    Composition of the tour encoding, the last-exit decomposition, and the
    reassembly of exit orders as clockwise rotations; hyperedge labels are
    then canonicalized away (first visit along the tour).
    """
    tour = xi(cf)
    dg = tour.digraph
    tree, orders = best_decompose(tour)
    v0 = dg.tail(tour.arcs[0])
    dverts = sorted(dg.vertices())
    vid = {dv: idx + 1 for idx, dv in enumerate(dverts)}
    rotation = []
    labels = []
    vertex_type = []
    parent: list[Optional[tuple[int, int]]] = [None] * len(dverts)
    for dv in dverts:
        t, c = dv
        vertex_type.append(t)
        labels.append(c)
        exits = orders[dv] if dv == v0 else orders[dv] + (tree[dv],)
        rotation.append(_norm_cycle([i for (_, i) in exits]))
        if dv != v0:
            parent[vid[dv] - 1] = (tree[dv][1], t)
    hyperedges = tuple(
        tuple(vid[(t, cf.colorings[t - 1][h - 1])] for t in range(1, dg.k + 1))
        for h in range(1, dg.n + 1)
    )
    c = Constellation(
        k=dg.k,
        n=dg.n,
        hyperedges=hyperedges,
        vertex_type=tuple(vertex_type),
        rotation=tuple(rotation),
        root=tour.arcs[0][1],
        labels=tuple(labels),
    )
    t_rooted = TreeRootedConstellation(
        constellation=c,
        arborescence=Arborescence(root_vertex=vid[v0], parent_edge=tuple(parent)),
    )
    result = canonical_tree_rooted(t_rooted)
    problem = result.validate()
    if problem is not None:
        raise AssertionError(f"phi produced an invalid object: {problem}")
    return result


def tree_rooted_tour(t_rooted: TreeRootedConstellation) -> list[Arc]:
    """Replay the Eulerian tour encoded by the rotations and the arborescence.

    Exit order at the root vertex starts at the root hyperedge; at every
    other vertex the clockwise rotation is rotated to end at the parent
    hyperedge (its last exit).
    """
    c = t_rooted.constellation
    a = t_rooted.arborescence
    v0 = c.root_vertex
    order: dict[int, tuple[int, ...]] = {}
    for v in range(1, c.num_vertices + 1):
        rot = c.rotation[v - 1]
        if v == v0:
            i = rot.index(c.root)
            order[v] = rot[i:] + rot[:i]
        else:
            h_par = a.parent_edge[v - 1][0]
            i = rot.index(h_par)
            order[v] = rot[i + 1 :] + rot[: i + 1]
    ptr = {v: 0 for v in order}
    seq: list[Arc] = []
    v = v0
    for _ in range(c.n * c.k):
        if ptr[v] >= len(order[v]):
            raise ValueError("tour replay stuck: invalid tree-rooted constellation")
        t = c.vertex_type[v - 1]
        h = order[v][ptr[v]]
        ptr[v] += 1
        seq.append((t, h))
        v = c.hyperedges[h - 1][t % c.k]
    if v != v0 or any(ptr[u] != len(order[u]) for u in order):
        raise ValueError("tour replay did not close")
    return seq


def canonical_tree_rooted(t_rooted: TreeRootedConstellation) -> TreeRootedConstellation:
    """Relabel hyperedges by first visit along the tour (root becomes 1)."""
    seq = tree_rooted_tour(t_rooted)
    s: dict[int, int] = {}
    for _, h in seq:
        if h not in s:
            s[h] = len(s) + 1
    new_c, vmap = relabel_hyperedges(t_rooted.constellation, s)
    parent: list[Optional[tuple[int, int]]] = [None] * new_c.num_vertices
    for v in range(1, t_rooted.constellation.num_vertices + 1):
        e = t_rooted.arborescence.parent_edge[v - 1]
        if e is not None:
            parent[vmap[v] - 1] = (s[e[0]], e[1])
    return TreeRootedConstellation(
        constellation=new_c,
        arborescence=Arborescence(
            root_vertex=vmap[t_rooted.arborescence.root_vertex],
            parent_edge=tuple(parent),
        ),
    )


def phi_inverse(t_rooted: TreeRootedConstellation) -> ColoredFactorization:
    """Invert phi: replay the tour and rebuild the colored factorization."""
    problem = t_rooted.validate()
    if problem is not None:
        raise ValueError(problem)
    c = t_rooted.constellation
    seq = tree_rooted_tour(t_rooted)
    colorings = tuple(
        tuple(c.labels[c.hyperedges[h - 1][t - 1] - 1] for h in range(1, c.n + 1))
        for t in range(1, c.k + 1)
    )
    tour = EulerianDigraphTour(
        digraph=ColoredDigraph(k=c.k, n=c.n, colorings=colorings), arcs=tuple(seq)
    )
    return xi_inverse(tour)


def enumerate_tree_rooted(
    n: int, k: int, p: Sequence[int]
) -> Iterator[TreeRootedConstellation]:
    """All vertex-labelled tree-rooted constellations of the given type."""
    p = tuple(p)
    for c in enumerate_rooted_constellations(n, k, p):
        v0 = c.root_vertex
        for arb in arborescences_toward(c, v0):
            by_type = [c.vertices_of_type(t) for t in range(1, k + 1)]
            for label_choice in itertools.product(
                *(itertools.permutations(range(1, len(vs) + 1)) for vs in by_type)
            ):
                labels = [0] * c.num_vertices
                for vs, perm in zip(by_type, label_choice):
                    for v, lab in zip(vs, perm):
                        labels[v - 1] = lab
                yield TreeRootedConstellation(
                    constellation=Constellation(
                        k=c.k,
                        n=c.n,
                        hyperedges=c.hyperedges,
                        vertex_type=c.vertex_type,
                        rotation=c.rotation,
                        root=c.root,
                        labels=tuple(labels),
                    ),
                    arborescence=arb,
                )
