"""Tree representations: host tree nodes carrying vertex sets.

Vertex ``v`` is hosted by the nodes whose set contains ``v``; a valid
representation has a connected, non-empty host subtree for every vertex and
two vertices adjacent exactly when their host subtrees meet.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, GraphError


class RepresentationError(GraphError):
    pass


@dataclass(frozen=True)
class TreeRepresentation:
    n: int
    nodes: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(frozenset(s) for s in self.nodes))
        norm = tuple(sorted((min(e), max(e)) for e in self.edges))
        object.__setattr__(self, "edges", norm)

    def neighbor_lists(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in self.nodes]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        for row in nbrs:
            row.sort()
        return nbrs

    def is_tree(self) -> bool:
        m = len(self.nodes)
        if m == 0:
            return not self.edges
        if len(self.edges) != m - 1 or len(set(self.edges)) != len(self.edges):
            return False
        if any(a == b or not (0 <= a < m and 0 <= b < m) for a, b in self.edges):
            return False
        return len(_reach(self.neighbor_lists(), 0, range(m))) == m

    def hosting(self, v: int) -> list[int]:
        return [i for i, s in enumerate(self.nodes) if v in s]


def _reach(nbrs: Sequence[Sequence[int]], start: int, allowed: Iterable[int]) -> set[int]:
    allowed = set(allowed)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def tree_diameter(nodes: Sequence[int], nbrs: Sequence[Sequence[int]]) -> int:
    """Diameter of the forest induced on ``nodes``, maximised over its components."""
    allowed = set(nodes)
    best = 0
    for s in nodes:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if y in allowed and y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        best = max(best, max(dist.values()))
    return best


def subtree_nodes(t: TreeRepresentation, v: int, nbrs: Sequence[Sequence[int]] | None = None) -> list[int] | None:
    """Nodes hosting ``v`` if they are non-empty and connected, else ``None``."""
    hosts = t.hosting(v)
    if not hosts:
        return None
    if nbrs is None:
        nbrs = t.neighbor_lists()
    if len(_reach(nbrs, hosts[0], hosts)) != len(hosts):
        return None
    return hosts


def verify_representation(g: Graph, t: TreeRepresentation) -> bool:
    if t.n != g.n or not t.is_tree():
        return False
    if any(not 0 <= v < g.n for s in t.nodes for v in s):
        return False
    nbrs = t.neighbor_lists()
    hosts = []
    for v in range(g.n):
        h = subtree_nodes(t, v, nbrs)
        if h is None:
            return False
        hosts.append(set(h))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v) != bool(hosts[u] & hosts[v]):
                return False
    return True


def subtree_diameter(t: TreeRepresentation, v: int, nbrs: Sequence[Sequence[int]] | None = None) -> int:
    if nbrs is None:
        nbrs = t.neighbor_lists()
    hosts = subtree_nodes(t, v, nbrs)
    if hosts is None:
        raise RepresentationError(f"vertex {v} has an empty or disconnected host subtree")
    return tree_diameter(hosts, nbrs)


def subtree_diameters(t: TreeRepresentation) -> list[int]:
    nbrs = t.neighbor_lists()
    return [subtree_diameter(t, v, nbrs) for v in range(t.n)]


def is_substar_representation(t: TreeRepresentation) -> bool:
    """Every host subtree is a star, i.e. has diameter at most two."""
    return all(d <= 2 for d in subtree_diameters(t))


def compact(t: TreeRepresentation, keep: Sequence[int], edges: Iterable[tuple[int, int]]) -> TreeRepresentation:
    """Drop nodes not in ``keep`` and reindex the rest in order."""
    keep = sorted(keep)
    index = {old: new for new, old in enumerate(keep)}
    return TreeRepresentation(
        t.n,
        tuple(t.nodes[i] for i in keep),
        tuple((index[a], index[b]) for a, b in edges),
    )


def _tree_path(nbrs: Sequence[Sequence[int]], a: int, b: int) -> list[int]:
    parent = {a: a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in nbrs[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def contract_edge(t: TreeRepresentation, keep: int, drop: int) -> TreeRepresentation:
    """Contract tree edge ``keep-drop``; the merged node carries ``keep``'s set."""
    if (min(keep, drop), max(keep, drop)) not in t.edges:
        raise RepresentationError(f"nodes {keep} and {drop} are not adjacent")
    edges = []
    for a, b in t.edges:
        if {a, b} == {keep, drop}:
            continue
        edges.append((keep if a == drop else a, keep if b == drop else b))
    return compact(t, [i for i in range(len(t.nodes)) if i != drop], edges)


def normalize_representation(g: Graph, t: TreeRepresentation) -> TreeRepresentation:
    """Contract a valid representation until its nodes are the maximal cliques, once each.

    A node whose set is not a maximal clique is merged into its neighbour
    toward the nearest node carrying a maximal clique that contains it (ties
    to the lowest node index); that neighbour's set contains it, so the merge
    keeps the representation valid. Then nodes carrying equal sets are
    merged along the path between them. Contraction never lengthens a host
    subtree, so no vertex's subtree diameter grows.
    """
    from .chordal import ChordlessCycle, is_chordal, maximal_cliques

    if not verify_representation(g, t):
        raise RepresentationError("input is not a valid tree representation of the graph")
    peo = is_chordal(g)
    if isinstance(peo, ChordlessCycle):
        raise RepresentationError("graph with a tree representation must be chordal")
    maximal = set(maximal_cliques(g, peo))

    while True:
        nbrs = t.neighbor_lists()
        small = next((i for i, s in enumerate(t.nodes) if s not in maximal), None)
        if small is None:
            break
        dist = {small: 0}
        queue = deque([small])
        while queue:
            x = queue.popleft()
            for y in nbrs[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        targets = [j for j, s in enumerate(t.nodes) if s in maximal and t.nodes[small] <= s]
        if not targets:
            raise RepresentationError(f"no node carries a maximal clique containing node {small}")
        target = min(targets, key=lambda j: (dist[j], j))
        step = _tree_path(nbrs, small, target)[1]
        t = contract_edge(t, step, small)

    while True:
        seen: dict[frozenset[int], int] = {}
        pair = None
        for i, s in enumerate(t.nodes):
            if s in seen:
                pair = (seen[s], i)
                break
            seen[s] = i
        if pair is None:
            break
        path = _tree_path(t.neighbor_lists(), *pair)
        t = contract_edge(t, path[0], path[1])
    return t


def combine_components(parts: Sequence[tuple[Sequence[int], TreeRepresentation]], n: int) -> TreeRepresentation:
    """Glue per-component representations into one tree over the whole graph.

    Each part pairs the component's vertex list (component vertex ``i`` is
    ``verts[i]``) with a representation of the component. The first node of
    every later part is joined to node 0 of the first part; node sets of
    different components are disjoint, so the extra edges create no
    intersections and leave every host subtree unchanged.
    """
    nodes: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    for k, (verts, rep) in enumerate(parts):
        base = len(nodes)
        nodes.extend(frozenset(verts[v] for v in s) for s in rep.nodes)
        edges.extend((a + base, b + base) for a, b in rep.edges)
        if k and rep.nodes:
            edges.append((0, base))
    return TreeRepresentation(n, tuple(nodes), tuple(edges))


# -- text format --------------------------------------------------------------

def format_representation(t: TreeRepresentation) -> str:
    lines = [f"REP n={t.n} nodes={len(t.nodes)}"]
    for i, s in enumerate(t.nodes):
        lines.append(f"NODE {i}: " + ",".join(str(v) for v in sorted(s)))
    for a, b in t.edges:
        lines.append(f"EDGE {a} {b}")
    return "\n".join(lines)


def parse_representation(text: str) -> TreeRepresentation:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("REP "):
        raise RepresentationError("missing REP header")
    try:
        fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
        n, m = int(fields["n"]), int(fields["nodes"])
    except (ValueError, KeyError):
        raise RepresentationError(f"bad REP header: {lines[0]!r}") from None
    if len(lines) != 1 + m + max(m - 1, 0):
        raise RepresentationError("REP block has the wrong number of lines")
    nodes = []
    for i, line in enumerate(lines[1:1 + m]):
        head, _, body = line.partition(":")
        if head.split() != ["NODE", str(i)]:
            raise RepresentationError(f"bad NODE line: {line!r}")
        body = body.strip()
        nodes.append(frozenset(int(x) for x in body.split(",")) if body else frozenset())
    edges = []
    for line in lines[1 + m:]:
        toks = line.split()
        if len(toks) != 3 or toks[0] != "EDGE":
            raise RepresentationError(f"bad EDGE line: {line!r}")
        edges.append((int(toks[1]), int(toks[2])))
    return TreeRepresentation(n, tuple(nodes), tuple(edges))
