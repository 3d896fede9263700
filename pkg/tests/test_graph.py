import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from substar.forbidden import FamilyTag, make_forbidden
from substar.graph import (
    Graph,
    Graph6ParseError,
    GraphError,
    EdgeListParseError,
    are_isomorphic,
    canonical_code,
    enumerate_connected_graphs,
    find_induced_embedding,
    induced_subgraph,
    is_induced_embedding,
    parse_edge_list,
    parse_graph6,
    write_edge_list,
    write_graph6,
)

from _support import H1, H1_ROLES, brute_code, random_graph, to_nx


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, c in zip(pairs, chosen) if c])


def test_graph_rejects_bad_adjacency():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))
    with pytest.raises(GraphError):
        Graph(1, (0b1,))
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


# -- graph6 -------------------------------------------------------------------

@pytest.mark.parametrize("text,n,edges", [
    ("@", 1, []),
    ("Bw", 3, [(0, 1), (0, 2), (1, 2)]),
    ("Bg", 3, [(0, 1), (1, 2)]),
])
def test_parse_graph6_examples(text, n, edges):
    g = parse_graph6(text)
    assert g.n == n
    assert g.edges() == edges


def test_write_graph6_examples():
    assert write_graph6(Graph.complete(3)) == "Bw"
    assert write_graph6(Graph.empty(1)) == "@"
    assert write_graph6(Graph.empty(0)) == "?"


def test_graph6_header_is_stripped():
    assert parse_graph6(">>graph6<<Bw\n") == Graph.complete(3)


@pytest.mark.parametrize("text,offset", [
    ("", 0),
    ("B", 1),
    ("Bww", 2),
    ("B\x7f", 1),
    ("Bx", 1),          # padding bits set
    ("~?@?", 4),        # n=64 with no data bytes
    ("~?A?", 1),        # n=128 > 64
])
def test_parse_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6ParseError) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_graph6_matches_networkx_on_random_graphs():
    rng = random.Random(7)
    for _ in range(1000):
        g = random_graph(rng, rng.randint(0, 64))
        expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        text = write_graph6(g)
        assert text == expected
        assert parse_graph6(text) == g


@pytest.mark.slow
def test_graph6_round_trip_on_enumerated_graphs():
    for n in range(1, 9):
        for g in enumerate_connected_graphs(n):
            assert parse_graph6(write_graph6(g)) == g


def test_edge_list_round_trip_and_comments():
    text = "# triangle\n3 3\n0 1\n\n1 2  # closing\n0 2\n"
    g = parse_edge_list(text)
    assert g == Graph.complete(3)
    assert parse_edge_list(write_edge_list(g)) == g


@pytest.mark.parametrize("text", ["", "3\n", "3 2\n0 1\n", "2 1\n0 0\n", "2 1\n0 x\n", "2 1\n0 5\n"])
def test_edge_list_errors(text):
    with pytest.raises(EdgeListParseError):
        parse_edge_list(text)


# -- induced subgraphs ----------------------------------------------------------

def test_induced_subgraph_examples():
    assert induced_subgraph(Graph.complete(4), [0, 1, 2]) == Graph.complete(3)
    assert induced_subgraph(H1, []) == Graph.empty(0)
    five = [H1_ROLES[r] for r in "axwyb"]
    sub = induced_subgraph(H1, five)
    # sorted order of {a,x,w,y,b} is w,x,a,y,b -> path a-x-w-y-b
    assert are_isomorphic(sub, Graph.path(5))
    assert sub.num_edges() == 4
    with pytest.raises(GraphError):
        induced_subgraph(H1, [9])


# -- isomorphism ------------------------------------------------------------------

def test_isomorphism_examples():
    k3 = Graph.complete(3)
    assert are_isomorphic(k3, k3.relabel([2, 0, 1]))
    assert not are_isomorphic(Graph.path(4), Graph.star(3))
    h = make_forbidden(FamilyTag("H3", 3))
    perm = list(range(h.n))
    random.Random(3).shuffle(perm)
    assert are_isomorphic(h, h.relabel(perm))


@settings(max_examples=300, deadline=None)
@given(graphs(7), graphs(7))
def test_isomorphism_agrees_with_networkx(g, h):
    assert are_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


@settings(max_examples=100, deadline=None)
@given(graphs(7), st.randoms(use_true_random=False))
def test_isomorphism_is_reflexive_symmetric_under_relabel(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert are_isomorphic(g, g)
    assert are_isomorphic(g, h) and are_isomorphic(h, g)
    perm2 = list(range(g.n))
    rng.shuffle(perm2)
    assert are_isomorphic(g, h.relabel(perm2))


# -- canonical codes ---------------------------------------------------------------

def test_canonical_code_relabelings_of_p4():
    p4 = Graph.path(4)
    codes = {canonical_code(p4.relabel(perm)) for perm in itertools.permutations(range(4))}
    assert len(codes) == 1


def test_canonical_code_separates_the_eleven_4_vertex_graphs():
    pairs = list(itertools.combinations(range(4), 2))
    labelled = [Graph.from_edges(4, [p for i, p in enumerate(pairs) if mask >> i & 1]) for mask in range(64)]
    oracle_classes = {brute_code(g) for g in labelled}
    assert len(oracle_classes) == 11
    assert len({canonical_code(g) for g in labelled}) == 11


def test_canonical_code_empty_vs_complete():
    assert canonical_code(Graph.empty(3)) != canonical_code(Graph.complete(3))


def test_canonical_code_budget():
    with pytest.raises(GraphError):
        canonical_code(Graph.empty(11))


@settings(max_examples=200, deadline=None)
@given(graphs(6), graphs(6))
def test_canonical_code_is_complete_invariant(g, h):
    assert (canonical_code(g) == canonical_code(h)) == (brute_code(g) == brute_code(h) and g.n == h.n)


# -- enumeration ---------------------------------------------------------------------

def _oracle_connected_classes(n):
    pairs = list(itertools.combinations(range(n), 2))
    reps = set()
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if g.is_connected():
            reps.add(brute_code(g))
    return len(reps)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_counts_match_brute_force(n):
    assert sum(1 for _ in enumerate_connected_graphs(n)) == _oracle_connected_classes(n)


def test_enumeration_known_small_values():
    assert [sum(1 for _ in enumerate_connected_graphs(n)) for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]
    kinds = list(enumerate_connected_graphs(3))
    assert sorted(g.num_edges() for g in kinds) == [2, 3]


def test_enumeration_range():
    with pytest.raises(GraphError):
        list(enumerate_connected_graphs(0))
    with pytest.raises(GraphError):
        list(enumerate_connected_graphs(9))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_enumeration_is_connected_non_isomorphic_and_sorted(n):
    gs = list(enumerate_connected_graphs(n))
    codes = [canonical_code(g) for g in gs]
    assert codes == sorted(codes)
    assert len(set(codes)) == len(codes)
    assert all(g.is_connected() for g in gs)
    if n <= 6:
        for a, b in itertools.combinations(gs, 2):
            assert not nx.is_isomorphic(to_nx(a), to_nx(b))


# -- induced embeddings ------------------------------------------------------------------

def test_embedding_examples():
    k4 = Graph.complete(4)
    emb = find_induced_embedding(k4, Graph.complete(3))
    assert emb is not None and is_induced_embedding(k4, Graph.complete(3), emb)
    assert find_induced_embedding(k4, Graph.cycle(4)) is None
    assert find_induced_embedding(make_forbidden(FamilyTag("H3", 7)), H1) is None


def _brute_embeddable(host, pattern):
    for subset in itertools.permutations(range(host.n), pattern.n):
        if is_induced_embedding(host, pattern, subset):
            return True
    return False


@settings(max_examples=200, deadline=None)
@given(graphs(6), graphs(4))
def test_embedding_agrees_with_brute_force(host, pattern):
    emb = find_induced_embedding(host, pattern)
    assert (emb is not None) == _brute_embeddable(host, pattern)
    if emb is not None:
        assert is_induced_embedding(host, pattern, emb)
