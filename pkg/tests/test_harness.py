import pytest

from substar.forbidden import FamilyTag, make_forbidden
from substar.graph import Graph, GraphError, are_isomorphic, delete_vertex, find_induced_embedding, parse_graph6
from substar.harness import (
    census,
    census_csv,
    check_graph,
    format_census,
    minimality_check,
    verify_graphs,
    verify_theorem,
)
from substar.recognition import is_substar

from _support import H1, chordal_connected


def test_verify_up_to_five_has_no_non_substar():
    report = verify_theorem(5)
    assert report.ok
    assert all(t.non_substar == 0 for t in report.tallies.values())
    assert [report.tallies[n].chordal for n in range(1, 6)] == [1, 1, 2, 5, 15]


def test_verify_six_non_substar_is_exactly_h1_hosts():
    report = verify_theorem(6)
    assert report.ok
    flagged = [parse_graph6(s) for s in report.non_substar]
    assert any(are_isomorphic(g, H1) for g in flagged)
    hosts = [g for g in chordal_connected(6) if find_induced_embedding(g, H1) is not None]
    assert len(flagged) == len(hosts) == 1


def test_verify_range_errors():
    with pytest.raises(GraphError):
        verify_theorem(0)
    with pytest.raises(GraphError):
        verify_theorem(9)


def test_tallies_consistent():
    report = verify_theorem(7)
    for t in report.tallies.values():
        assert t.substar + t.non_substar == t.chordal
        assert t.switching + t.skipped == t.chordal


def test_check_graph_on_non_chordal():
    rec = check_graph(Graph.cycle(5))
    assert not rec.chordal and rec.oracle is None


def test_parallel_merge_is_deterministic():
    graphs = list(chordal_connected(6))
    a = verify_graphs(graphs, 6, workers=1)
    b = verify_graphs(graphs, 6, workers=2)
    assert a.format() == b.format()
    assert a.non_substar == b.non_substar


@pytest.mark.parametrize("family", [FamilyTag("H1"), FamilyTag("H3", 5), FamilyTag("H2C")])
def test_minimality_examples(family):
    assert minimality_check(family)


def test_h1_minus_z_is_p5_and_substar():
    z = FamilyTag("H1").roles.index("z")
    p5 = delete_vertex(H1, z)
    assert are_isomorphic(p5, Graph.path(5)) and is_substar(p5)


def test_minimality_range():
    with pytest.raises(GraphError):
        minimality_check(FamilyTag("H3", 9))


def test_census_rows():
    rows = census(6)
    assert rows[2] == (3, 2, 2, 2)
    assert rows[3] == (4, 6, 5, 5)
    n6 = rows[5]
    assert n6[0] == 6 and n6[3] < n6[2]
    text = format_census(rows)
    assert text.splitlines()[0].split() == ["n", "connected", "chordal", "substar"]
    csv = census_csv(rows).splitlines()
    assert csv[0] == "n,connected,chordal,substar" and csv[4] == "4,6,5,5"


def test_census_matches_report():
    rows = census(7)
    report = verify_theorem(7)
    for n, connected, chordal, substar in rows:
        t = report.tallies[n]
        assert (t.connected, t.chordal, t.substar) == (connected, chordal, substar)


def test_non_substar_members_detected_by_check_graph():
    rec = check_graph(make_forbidden(FamilyTag("H2B")))
    assert rec.oracle is False and rec.forbidden == "H2B" and rec.search == "forbidden"
