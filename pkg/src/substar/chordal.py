"""Chordality, maximal cliques and clique trees."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Graph, GraphError, bits, to_mask
from .representation import TreeRepresentation, subtree_nodes, tree_diameter


class NotChordalError(GraphError):
    pass


@dataclass(frozen=True)
class ChordlessCycle:
    """An induced cycle of length at least four, as a cyclic vertex sequence."""

    cycle: tuple[int, ...]

    def is_valid(self, g: Graph) -> bool:
        c = self.cycle
        k = len(c)
        if k < 4 or len(set(c)) != k or any(not 0 <= v < g.n for v in c):
            return False
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                if g.has_edge(c[i], c[j]) != consecutive:
                    return False
        return True


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visit order; ties go to the lowest vertex."""
    weight = [0] * g.n
    unvisited = g.vertex_mask
    order = []
    while unvisited:
        v = max(bits(unvisited), key=lambda u: (weight[u], -u))
        order.append(v)
        unvisited &= ~(1 << v)
        for u in bits(g.adj[v] & unvisited):
            weight[u] += 1
    return order


def peo_violation(g: Graph, order: Sequence[int]) -> tuple[int, int, int] | None:
    """First ``(v, a, b)`` with ``a, b`` later non-adjacent neighbours of ``v``, if any."""
    later = g.vertex_mask
    for v in order:
        later &= ~(1 << v)
        nb = list(bits(g.adj[v] & later))
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if not g.has_edge(a, b):
                    return v, a, b
    return None


def is_perfect_elimination_order(g: Graph, order: Sequence[int]) -> bool:
    return sorted(order) == list(range(g.n)) and peo_violation(g, order) is None


def _cycle_through(g: Graph, v: int, a: int, b: int) -> tuple[int, ...] | None:
    # shortest a-b path avoiding N[v] apart from a and b closes an induced cycle with v
    blocked = (g.adj[v] | 1 << v) & ~(1 << a | 1 << b)
    parent = {a: a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in bits(g.adj[x] & ~blocked):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if b not in parent:
        return None
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return (v, *reversed(path))


def find_chordless_cycle(g: Graph, hint: tuple[int, int, int] | None = None) -> ChordlessCycle | None:
    candidates = []
    if hint is not None:
        candidates.append(hint)
    for v in range(g.n):
        nb = g.neighbors(v)
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if not g.has_edge(a, b):
                    candidates.append((v, a, b))
    for v, a, b in candidates:
        cyc = _cycle_through(g, v, a, b)
        if cyc is not None:
            return ChordlessCycle(cyc)
    return None


def is_chordal(g: Graph) -> list[int] | ChordlessCycle:
    """Return a perfect elimination order, or a chordless cycle if there is none.

    The order is the reverse of a maximum cardinality search and is checked
    before it is returned.
    """
    order = mcs_order(g)[::-1]
    bad = peo_violation(g, order)
    if bad is None:
        return order
    cycle = find_chordless_cycle(g, bad)
    if cycle is None or not cycle.is_valid(g):
        raise AssertionError("PEO check failed but no chordless cycle was found")
    return cycle


def maximal_cliques(g: Graph, peo: Sequence[int]) -> list[frozenset[int]]:
    """All maximal cliques of a chordal graph, sorted by their member lists."""
    if not is_perfect_elimination_order(g, peo):
        raise GraphError("not a perfect elimination order")
    later = g.vertex_mask
    candidates = []
    for v in peo:
        later &= ~(1 << v)
        candidates.append((g.adj[v] & later) | 1 << v)
    maximal = set()
    for c in candidates:
        if not any(c != d and c & d == c for d in candidates):
            maximal.add(c)
    for c in maximal:
        if not g.is_clique(c) or any(g.adj[u] & c == c for u in bits(g.vertex_mask & ~c)):
            raise AssertionError(f"clique {sorted(bits(c))} failed the maximality check")
    return sorted((frozenset(bits(c)) for c in maximal), key=sorted)


def _chordal_cliques(g: Graph) -> list[frozenset[int]]:
    res = is_chordal(g)
    if isinstance(res, ChordlessCycle):
        raise NotChordalError(f"graph is not chordal; induced cycle {res.cycle}")
    if not g.is_connected():
        raise GraphError("graph is not connected")
    return maximal_cliques(g, res)


def build_clique_tree(g: Graph) -> TreeRepresentation:
    """Maximum-weight spanning tree of the clique intersection graph (Kruskal)."""
    cliques = _chordal_cliques(g)
    m = len(cliques)
    weighted = []
    for i in range(m):
        for j in range(i + 1, m):
            w = len(cliques[i] & cliques[j])
            if w:
                weighted.append((-w, i, j))
    weighted.sort()
    comp = list(range(m))

    def find(x: int) -> int:
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    edges = []
    for _, i, j in weighted:
        ri, rj = find(i), find(j)
        if ri != rj:
            comp[ri] = rj
            edges.append((i, j))
    return TreeRepresentation(g.n, tuple(cliques), tuple(sorted(edges)))


def clique_graph_edges(cliques: Sequence[frozenset[int]]) -> list[tuple[int, int, int]]:
    """``(i, j, |Q_i & Q_j|)`` for every intersecting pair ``i < j``."""
    out = []
    for i in range(len(cliques)):
        for j in range(i + 1, len(cliques)):
            w = len(cliques[i] & cliques[j])
            if w:
                out.append((i, j, w))
    return out


def enumerate_clique_trees(g: Graph, max_subtree_diameter: int | None = None) -> Iterator[TreeRepresentation]:
    """Yield every clique tree of a connected chordal graph exactly once.

    Backtracks over clique-graph edges in index order, including or excluding
    each. Joining two partial subtrees by edge ``(i, j)`` keeps every vertex's
    node set connected exactly when each vertex present on both sides lies
    in ``Q_i & Q_j``, so incoherent branches are cut at the moment they arise.

    With ``max_subtree_diameter`` set, branches where some vertex's partial
    subtree already exceeds that diameter are cut too; since adding edges
    never shrinks a diameter, this yields exactly the clique trees meeting
    the bound, in the same relative order.
    """
    cliques = _chordal_cliques(g)
    masks = [to_mask(c) for c in cliques]
    m = len(cliques)
    cand = [(i, j) for i, j, _ in clique_graph_edges(cliques)]
    chosen: list[tuple[int, int]] = []

    def diam_ok(label: list[int], v_mask: int, i: int) -> bool:
        # diameter of each vertex's subtree within the component of node i
        nbrs = [[] for _ in range(m)]
        for a, b in chosen:
            nbrs[a].append(b)
            nbrs[b].append(a)
        root = label[i]
        for v in bits(v_mask):
            nodes = [k for k in range(m) if label[k] == root and masks[k] >> v & 1]
            if tree_diameter(nodes, nbrs) > max_subtree_diameter:
                return False
        return True

    def rec(idx: int, label: list[int], union: list[int]) -> Iterator[TreeRepresentation]:
        if len(chosen) == m - 1:
            yield TreeRepresentation(g.n, tuple(cliques), tuple(chosen))
            return
        if len(cand) - idx < m - 1 - len(chosen):
            return
        i, j = cand[idx]
        li, lj = label[i], label[j]
        if li != lj and not (union[li] & union[lj] & ~(masks[i] & masks[j])):
            new_label = [li if x == lj else x for x in label]
            new_union = union[:]
            new_union[li] |= union[lj]
            chosen.append((i, j))
            if max_subtree_diameter is None or diam_ok(new_label, masks[i] & masks[j], i):
                yield from rec(idx + 1, new_label, new_union)
            chosen.pop()
        yield from rec(idx + 1, label, union)

    if m == 1:
        yield TreeRepresentation(g.n, tuple(cliques), ())
        return
    yield from rec(0, list(range(m)), masks[:])


def is_valid_clique_tree(g: Graph, t: TreeRepresentation) -> bool:
    """Nodes are exactly the maximal cliques, edges form a tree, and every vertex's nodes are connected."""
    res = is_chordal(g)
    if isinstance(res, ChordlessCycle):
        return False
    cliques = maximal_cliques(g, res)
    if t.n != g.n or len(t.nodes) != len(set(t.nodes)) or set(t.nodes) != set(cliques):
        return False
    if not t.is_tree():
        return False
    nbrs = t.neighbor_lists()
    for v in range(g.n):
        if subtree_nodes(t, v, nbrs) is None:
            return False
    return True
