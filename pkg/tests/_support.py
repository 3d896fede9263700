"""Shared builders and brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import random

import networkx as nx

from substar.chordal import ChordlessCycle, build_clique_tree, is_chordal
from substar.forbidden import FamilyTag, make_forbidden
from substar.graph import Graph, enumerate_connected_graphs
from substar.representation import TreeRepresentation

H1 = make_forbidden(FamilyTag("H1"))
H1_ROLES = {r: i for i, r in enumerate(FamilyTag("H1").roles)}


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(len(index), [(index[a], index[b]) for a, b in h.edges])


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def chordal_connected(max_n: int):
    for n in range(1, max_n + 1):
        for g in enumerate_connected_graphs(n):
            if not isinstance(is_chordal(g), ChordlessCycle):
                yield g


def brute_code(g: Graph) -> tuple:
    """Lexicographically largest upper-triangle bit tuple over all n! labellings."""
    best = None
    for perm in itertools.permutations(range(g.n)):
        code = tuple(int(g.has_edge(perm[i], perm[j])) for j in range(1, g.n) for i in range(j))
        if best is None or code > best:
            best = code
    return best


def brute_max_weight_trees(cliques) -> set[frozenset]:
    """All maximum-weight spanning trees of the complete clique graph, by exhaustion."""
    m = len(cliques)
    pairs = list(itertools.combinations(range(m), 2))
    best, found = -1, set()
    for subset in itertools.combinations(pairs, m - 1):
        comp = list(range(m))

        def find(x):
            while comp[x] != x:
                x = comp[x]
            return x

        ok = True
        for a, b in subset:
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            comp[ra] = rb
        if not ok:
            continue
        w = sum(len(cliques[a] & cliques[b]) for a, b in subset)
        if w > best:
            best, found = w, set()
        if w == best:
            found.add(frozenset(subset))
    return found


def scramble_representation(g: Graph, rng: random.Random, steps: int | None = None) -> TreeRepresentation:
    """A random valid, usually non-canonical, representation grown from the clique tree."""
    t = build_clique_tree(g)
    nodes = [set(s) for s in t.nodes]
    edges = [list(e) for e in t.edges]
    for _ in range(rng.randint(1, 6) if steps is None else steps):
        op = rng.randrange(3)
        new = len(nodes)
        if op == 0 and edges:
            # subdivide an edge with a node between the two sets
            e = rng.choice(edges)
            i, j = e
            extra = {v for v in nodes[i] - nodes[j] if rng.random() < 0.5}
            nodes.append((nodes[i] & nodes[j]) | extra)
            e[1] = new
            edges.append([new, j])
        elif op == 1:
            # leaf carrying a non-empty part of an existing node
            i = rng.randrange(len(nodes))
            part = {v for v in nodes[i] if rng.random() < 0.6} or {min(nodes[i])}
            nodes.append(part)
            edges.append([i, new])
        else:
            # split a node into two copies sharing its neighbours
            i = rng.randrange(len(nodes))
            nodes.append(set(nodes[i]))
            for e in edges:
                if i in e and rng.random() < 0.5:
                    e[e.index(i)] = new
            edges.append([i, new])
    return TreeRepresentation(g.n, tuple(frozenset(s) for s in nodes), tuple(tuple(e) for e in edges))
