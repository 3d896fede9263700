"""Exhaustive checks of the substar characterization on small connected graphs."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .chordal import ChordlessCycle, is_chordal
from .forbidden import FamilyTag, find_forbidden, make_forbidden
from .graph import MAX_ENUMERATION_ORDER, Graph, GraphError, delete_vertex, enumerate_connected_graphs, write_graph6
from .recognition import (
    EXHAUSTED,
    FORBIDDEN,
    SKIPPED,
    SUBSTAR,
    is_substar,
    substar_oracle,
    switching_search,
)
from .representation import is_substar_representation, verify_representation

MAX_VERIFY_ORDER = MAX_ENUMERATION_ORDER


@dataclass
class Tally:
    connected: int = 0
    chordal: int = 0
    substar: int = 0
    non_substar: int = 0
    switching: int = 0
    skipped: int = 0
    exhausted: int = 0


@dataclass
class GraphCheck:
    graph6: str
    n: int
    chordal: bool
    oracle: bool | None = None
    forbidden: str | None = None
    search: str | None = None
    note: str = ""
    certificates_ok: bool = True


@dataclass
class VerificationReport:
    max_n: int
    tallies: dict[int, Tally] = field(default_factory=dict)
    discrepancies: list[tuple[str, str, str]] = field(default_factory=list)
    contradictions: list[tuple[str, str, str]] = field(default_factory=list)
    exhausted: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    bad_certificates: list[str] = field(default_factory=list)
    non_substar: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.discrepancies or self.contradictions or self.bad_certificates)

    def format(self) -> str:
        lines = [f"characterization check, connected graphs with n <= {self.max_n}"]
        lines.append(f"{'n':>3} {'connected':>10} {'chordal':>8} {'substar':>8} {'non-substar':>12}"
                     f" {'switching':>10} {'skipped':>8} {'exhausted':>10}")
        for n in sorted(self.tallies):
            t = self.tallies[n]
            lines.append(f"{n:>3} {t.connected:>10} {t.chordal:>8} {t.substar:>8} {t.non_substar:>12}"
                         f" {t.switching:>10} {t.skipped:>8} {t.exhausted:>10}")
        lines.append(f"discrepancies: {len(self.discrepancies)}")
        lines.append(f"switching contradictions: {len(self.contradictions)}")
        lines.append(f"invalid certificates: {len(self.bad_certificates)}")
        return "\n".join(lines)


def check_graph(g: Graph, step_limit: int | None = None) -> GraphCheck:
    """Run the oracle, the pattern search and the switching search on one connected graph."""
    rec = GraphCheck(write_graph6(g), g.n, not isinstance(is_chordal(g), ChordlessCycle))
    if not rec.chordal:
        return rec
    rep = substar_oracle(g)
    witness = find_forbidden(g)
    rec.oracle = rep is not None
    rec.forbidden = None if witness is None else str(witness.family)
    if rep is not None and not (verify_representation(g, rep) and is_substar_representation(rep)):
        rec.certificates_ok = False
    if witness is not None and not witness.is_valid(g):
        rec.certificates_ok = False
    res = switching_search(g, step_limit)
    rec.search, rec.note = res.status, res.note
    if res.status == SUBSTAR and not (verify_representation(g, res.representation)
                                      and is_substar_representation(res.representation)):
        rec.certificates_ok = False
    if res.status == FORBIDDEN and not res.witness.is_valid(g):
        rec.certificates_ok = False
    if res.status in (EXHAUSTED, SKIPPED):
        # fallback path: exactly one of the two exact routes must succeed
        if rec.oracle == (witness is not None):
            rec.certificates_ok = False
    return rec


def _check_one(args: tuple[Graph, int | None]) -> GraphCheck:
    return check_graph(*args)


def verify_graphs(graphs: Iterable[Graph], max_n: int, step_limit: int | None = None,
                  workers: int = 1) -> VerificationReport:
    """Build a report over ``graphs``; results are merged in input order whatever ``workers`` is."""
    graphs = list(graphs)
    jobs = [(g, step_limit) for g in graphs]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            checks = list(pool.map(_check_one, jobs, chunksize=64))
    else:
        checks = [_check_one(j) for j in jobs]
    report = VerificationReport(max_n)
    for n in sorted({g.n for g in graphs}):
        report.tallies[n] = Tally()
    for rec in checks:
        t = report.tallies[rec.n]
        t.connected += 1
        if not rec.chordal:
            continue
        t.chordal += 1
        if rec.oracle:
            t.substar += 1
        else:
            t.non_substar += 1
            report.non_substar.append(rec.graph6)
        oracle_verdict = "substar" if rec.oracle else "not-substar"
        if rec.oracle == (rec.forbidden is not None):
            char_verdict = "not-substar" if rec.forbidden else "substar"
            report.discrepancies.append((rec.graph6, oracle_verdict, char_verdict))
        if rec.search == SKIPPED:
            t.skipped += 1
            report.skipped.append(rec.graph6)
        else:
            t.switching += 1
            if rec.search == EXHAUSTED:
                t.exhausted += 1
                report.exhausted.append(rec.graph6)
            elif (rec.search == SUBSTAR) != rec.oracle:
                report.contradictions.append((rec.graph6, oracle_verdict, rec.search))
        if not rec.certificates_ok:
            report.bad_certificates.append(rec.graph6)
    return report


def _check_range(max_n: int) -> None:
    if not 1 <= max_n <= MAX_VERIFY_ORDER:
        raise GraphError(f"max_n must be in 1..{MAX_VERIFY_ORDER}, got {max_n}")


def verify_theorem(max_n: int, step_limit: int | None = None, workers: int = 1) -> VerificationReport:
    _check_range(max_n)
    graphs = [g for n in range(1, max_n + 1) for g in enumerate_connected_graphs(n)]
    return verify_graphs(graphs, max_n, step_limit, workers)


def minimality_check(family: FamilyTag) -> bool:
    """The member is not substar, but deleting any single vertex leaves a substar graph."""
    if family.tag == "H3" and family.k > 8:
        raise GraphError("minimality_check supports H3 with k <= 8")
    g = make_forbidden(family)
    if substar_oracle(g) is not None:
        return False
    return all(is_substar(delete_vertex(g, v)) for v in range(g.n))


def census(max_n: int) -> list[tuple[int, int, int, int]]:
    """Rows ``(n, connected, chordal, substar)`` for ``n = 1 .. max_n``."""
    _check_range(max_n)
    rows = []
    for n in range(1, max_n + 1):
        connected = chordal = substar = 0
        for g in enumerate_connected_graphs(n):
            connected += 1
            if isinstance(is_chordal(g), ChordlessCycle):
                continue
            chordal += 1
            substar += substar_oracle(g) is not None
        rows.append((n, connected, chordal, substar))
    return rows


def format_census(rows: list[tuple[int, int, int, int]]) -> str:
    lines = [f"{'n':>3} {'connected':>10} {'chordal':>8} {'substar':>8}"]
    lines += [f"{n:>3} {c:>10} {ch:>8} {s:>8}" for n, c, ch, s in rows]
    return "\n".join(lines)


def census_csv(rows: list[tuple[int, int, int, int]]) -> str:
    return "\n".join(["n,connected,chordal,substar"] + [",".join(map(str, r)) for r in rows]) + "\n"
