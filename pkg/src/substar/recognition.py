"""Substar recognition with certificates.

Two independent routes decide whether a chordal graph is a substar graph:

* :func:`substar_oracle` enumerates clique trees and looks for one where
  every host subtree is a star. Any substar representation contracts to
  such a clique tree without growing a subtree, so this is exact.
* :func:`switching_search` starts from one clique tree and repairs host
  subtrees of diameter three by rewiring neighbours of the central edge
  (the switching cascade). A cascade that gets stuck on both sides of the
  central edge yields a chain of vertices from which an induced H1, H2 or
  H3^k is read off.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .chordal import ChordlessCycle, build_clique_tree, enumerate_clique_trees, is_chordal
from .forbidden import FamilyTag, ForbiddenWitness, find_forbidden, make_forbidden, parse_witness
from .graph import Graph, GraphError, induced_subgraph
from .representation import (
    RepresentationError,
    TreeRepresentation,
    combine_components,
    format_representation,
    is_substar_representation,
    parse_representation,
    subtree_diameters,
    subtree_nodes,
    verify_representation,
)

log = logging.getLogger(__name__)

PLAIN = "plain"
MIRRORED = "mirrored"


class ExtractionError(AssertionError):
    """The vertices picked from two constructions do not induce a family member."""


# -- exhaustive oracle ----------------------------------------------------------

def substar_oracle(g: Graph) -> TreeRepresentation | None:
    """First clique tree (in enumeration order) whose host subtrees are all stars."""
    for t in enumerate_clique_trees(g, max_subtree_diameter=2):
        assert is_substar_representation(t)
        return t
    return None


def is_substar(g: Graph) -> bool:
    """Exact decision for any graph, component by component, via the oracle."""
    if isinstance(is_chordal(g), ChordlessCycle):
        return False
    return all(substar_oracle(induced_subgraph(g, comp)) is not None for comp in g.components())


# -- cascade primitives -----------------------------------------------------------

def is_good_neighbor(t: TreeRepresentation, q: int, q2: int, q3: int) -> bool:
    """Some vertex lies in both ``Q`` and ``Q2`` but not in ``Q3``."""
    if (min(q, q2), max(q, q2)) not in t.edges or q == q3:
        raise RepresentationError(f"node {q} is not a neighbour of {q2} other than {q3}")
    return bool((t.nodes[q] & t.nodes[q2]) - t.nodes[q3])


def switch_nodes(t: TreeRepresentation, s: Iterable[int], q2: int, q3: int) -> TreeRepresentation:
    """Move each node of ``s`` from ``q2`` to ``q3``: drop edge ``q q2``, add ``q q3``."""
    s = set(s)
    for q in s:
        if q == q3 or (min(q, q2), max(q, q2)) not in t.edges:
            raise RepresentationError(f"node {q} is not a neighbour of {q2} other than {q3}")
    edges = []
    for a, b in t.edges:
        if a in s and b == q2:
            edges.append((a, q3))
        elif b in s and a == q2:
            edges.append((b, q3))
        else:
            edges.append((a, b))
    return TreeRepresentation(t.n, t.nodes, tuple(edges))


def central_edge(t: TreeRepresentation, v: int) -> tuple[int, int]:
    """The middle edge shared by every longest path in a diameter-3 host subtree."""
    nbrs = t.neighbor_lists()
    hosts = subtree_nodes(t, v, nbrs)
    if hosts is None:
        raise RepresentationError(f"vertex {v} has no connected host subtree")
    allowed = set(hosts)
    ecc = {}
    for s in hosts:
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for x in frontier:
                for y in nbrs[x]:
                    if y in allowed and y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        ecc[s] = max(dist.values())
    if max(ecc.values()) != 3:
        raise RepresentationError(f"host subtree of {v} does not have diameter 3")
    center = sorted(q for q, e in ecc.items() if e == 2)
    if len(center) != 2 or center[1] not in nbrs[center[0]]:
        raise RepresentationError(f"host subtree of {v} has no unique central edge")
    return center[0], center[1]


@dataclass(frozen=True)
class Construction:
    """A blocking chain on the ``near`` side of the central edge ``near-far``.

    ``vertices`` is ``w_0 .. w_k`` with ``w_0 = z``; ``nodes`` is ``q^1 .. q^k``,
    distinct neighbours of ``near`` other than ``far``.
    """

    side: str
    near: int
    far: int
    vertices: tuple[int, ...]
    nodes: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.nodes)

    def is_valid(self, t: TreeRepresentation) -> bool:
        k = self.order
        if k < 1 or len(self.vertices) != k + 1:
            return False
        if len(set(self.nodes)) != k or len(set(self.vertices)) != k + 1:
            return False
        nbrs = t.neighbor_lists()
        if any(q == self.far or q not in nbrs[self.near] for q in self.nodes):
            return False
        for i, w in enumerate(self.vertices):
            hit = {j for j, q in enumerate(self.nodes, 1) if w in t.nodes[q]}
            if i == 0:
                expected = {1}
            elif i < k:
                expected = {i, i + 1}
            else:
                expected = {k}
            if hit != expected or (w in t.nodes[self.far]) != (i < k):
                return False
        return True


@dataclass
class CascadeState:
    """Level sets of one cascade; ``increased[i]`` maps problem vertices to their nodes in ``levels[i]``."""

    near: int
    far: int
    levels: list[list[int]] = field(default_factory=list)
    increased: list[dict[int, list[int]]] = field(default_factory=list)


def _find_chain(
    t: TreeRepresentation, z: int, near: int, far: int, levels: Sequence[Sequence[int]], side: str,
) -> Construction:
    j = len(levels)
    Qn, Qf = t.nodes[near], t.nodes[far]
    goods = [q for q in levels[-1] if (t.nodes[q] & Qn) - Qf]
    for last in goods:
        for end in sorted((t.nodes[last] & Qn) - Qf):
            found = _extend_back(t, z, near, far, levels, side, [last], [end], j - 1)
            if found is not None:
                return found
    raise AssertionError(f"cascade reached a good node at level {j} but no valid chain exists")


def _extend_back(t, z, near, far, levels, side, nodes, verts, level) -> Construction | None:
    # nodes/verts are built from the end of the chain toward z
    if level == 0:
        c = Construction(side, near, far, (z, *reversed(verts)), tuple(reversed(nodes)))
        return c if c.is_valid(t) else None
    nxt = nodes[-1]
    for q in levels[level - 1]:
        if q in nodes:
            continue
        for w in sorted(t.nodes[q] & t.nodes[nxt] & t.nodes[far]):
            if w == z or w in verts:
                continue
            found = _extend_back(t, z, near, far, levels, side, nodes + [q], verts + [w], level - 1)
            if found is not None:
                return found
    return None


def run_cascade(
    g: Graph, t: TreeRepresentation, z: int, q2: int, q3: int, side: str = PLAIN,
    state: CascadeState | None = None,
) -> Construction | TreeRepresentation:
    """Switch bad neighbours of ``q2`` over to ``q3`` level by level.

    Level 1 is the neighbours of ``q2`` (other than ``q3``) hosting ``z``.
    After switching a level, the vertices whose host subtree is now wider
    than it was in ``t`` name the next level: the neighbours of ``q2`` they
    still use. A good node at some level gives a construction of that order;
    a switch that widens nothing gives the repaired representation, in which
    ``z`` is hosted by a star. Pass ``state`` to collect the level sets.
    """
    if {q2, q3} != set(central_edge(t, z)):
        raise RepresentationError(f"{q2}-{q3} is not the central edge of vertex {z}")
    before = subtree_diameters(t)
    if state is None:
        state = CascadeState(q2, q3)
    nbrs = t.neighbor_lists()
    level = [q for q in nbrs[q2] if q != q3 and z in t.nodes[q]]
    current = t
    while True:
        if not level:
            raise AssertionError("cascade produced an empty level while subtrees were still widened")
        state.levels.append(level)
        if any(is_good_neighbor(t, q, q2, q3) for q in level):
            c = _find_chain(t, z, q2, q3, state.levels, side)
            log.debug("cascade %s from z=%d: construction of order %d", side, z, c.order)
            return c
        current = switch_nodes(current, level, q2, q3)
        if not verify_representation(g, current):
            raise AssertionError("switching bad neighbours broke the representation")
        after = subtree_diameters(current)
        widened = [x for x in range(g.n) if after[x] > before[x]]
        state.increased.append({x: [q for q in level if x in t.nodes[q]] for x in widened})
        if not widened:
            assert after[z] <= 2
            return current
        cur_nbrs = current.neighbor_lists()
        level = [q for q in cur_nbrs[q2] if q != q3 and any(x in t.nodes[q] for x in widened)]


# -- witness extraction ---------------------------------------------------------

def _complete(
    g: Graph, family: FamilyTag, fixed: Mapping[str, int], options: Mapping[str, Sequence[int]],
) -> ForbiddenWitness | None:
    """Fill the open roles from ``options`` so the whole map is an induced embedding."""
    pattern = make_forbidden(family)
    index = {r: i for i, r in enumerate(family.roles)}
    assign = dict(fixed)
    used = set(assign.values())
    if len(used) != len(assign):
        return None
    for r1 in assign:
        for r2 in assign:
            if r1 < r2 and pattern.has_edge(index[r1], index[r2]) != g.has_edge(assign[r1], assign[r2]):
                return None
    todo = sorted(options, key=lambda r: len(options[r]))

    def rec(i: int) -> bool:
        if i == len(todo):
            return True
        r = todo[i]
        for h in options[r]:
            if h in used:
                continue
            if all(pattern.has_edge(index[r], index[s]) == g.has_edge(h, assign[s]) for s in assign):
                assign[r] = h
                used.add(h)
                if rec(i + 1):
                    return True
                del assign[r]
                used.discard(h)
        return False

    if not rec(0):
        return None
    w = ForbiddenWitness(family, assign)
    return w if w.is_valid(g) else None


def extract_witness(
    g: Graph, t: TreeRepresentation, plain: Construction, mirrored: Construction,
) -> ForbiddenWitness:
    """Read an induced H1, H2 or H3^(k+l) off a plain and a mirrored construction."""
    q2, q3 = plain.near, plain.far
    if (mirrored.near, mirrored.far) != (q3, q2) or plain.vertices[0] != mirrored.vertices[0]:
        raise ExtractionError("constructions do not share a central edge and z")
    if not (plain.is_valid(t) and mirrored.is_valid(t)):
        raise ExtractionError("invalid construction")
    z = plain.vertices[0]
    N = t.nodes
    Q2, Q3 = N[q2], N[q3]
    k, l = plain.order, mirrored.order

    if k == 1 and l == 1:
        Q1, Q4 = N[plain.nodes[0]], N[mirrored.nodes[0]]
        x, y = plain.vertices[1], mirrored.vertices[1]
        a_opts = sorted(Q1 - Q2)
        b_opts = sorted(Q4 - Q3)
        u_opts = sorted(Q2 - Q1)
        v_opts = sorted(Q3 - Q4)
        shared = [w for w in u_opts if w in v_opts]
        fixed = {"z": z, "x": x, "y": y}
        attempts = [
            (FamilyTag("H1"), fixed, {"w": shared, "a": a_opts, "b": b_opts}),
            (FamilyTag("H1"), fixed, {"w": sorted(set(u_opts) | set(v_opts)), "a": a_opts, "b": b_opts}),
        ]
        h2 = {"u": u_opts, "a": a_opts, "v": v_opts, "b": b_opts}
        h2_swapped = {"u": v_opts, "a": b_opts, "v": u_opts, "b": a_opts}
        for tag in ("H2A", "H2B", "H2C"):
            attempts.append((FamilyTag(tag), fixed, h2))
            if tag == "H2B":
                attempts.append((FamilyTag(tag), {"z": z, "x": y, "y": x}, h2_swapped))
        for family, fx, opts in attempts:
            w = _complete(g, family, fx, opts)
            if w is not None:
                return w
        raise ExtractionError("order-1 constructions did not yield H1 or H2")

    fixed = {f"c{l}": z, "v": plain.vertices[k], "u": mirrored.vertices[l]}
    for i in range(1, k):
        fixed[f"c{l + i}"] = plain.vertices[i]
    for j in range(1, l):
        fixed[f"c{j}"] = mirrored.vertices[l - j]
    opts = {}
    for i in range(1, k + 1):
        opts[f"a{l + i}"] = sorted(N[plain.nodes[i - 1]] - Q2)
    for j in range(1, l + 1):
        opts[f"a{l + 1 - j}"] = sorted(N[mirrored.nodes[j - 1]] - Q3)
    w = _complete(g, FamilyTag("H3", k + l), fixed, opts)
    if w is None:
        raise ExtractionError(f"constructions of order {k} and {l} did not yield H3^{k + l}")
    return w


# -- switching search -------------------------------------------------------------

SUBSTAR = "substar"
FORBIDDEN = "forbidden"
EXHAUSTED = "exhausted"
SKIPPED = "skipped"


@dataclass
class SearchResult:
    status: str
    representation: TreeRepresentation | None = None
    witness: ForbiddenWitness | None = None
    steps: int = 0
    note: str = ""


def switching_search(g: Graph, step_limit: int | None = None) -> SearchResult:
    """Repair diameter-3 host subtrees of a clique tree until all are stars or a witness appears.

    Returns ``skipped`` when the initial clique tree already has a host
    subtree of diameter 4 or more, and ``exhausted`` when ``step_limit``
    rounds pass or the two constructions fail to yield a witness. Every
    ``substar`` and ``forbidden`` result is verified.
    """
    t = build_clique_tree(g)
    if step_limit is None:
        step_limit = 10 * g.n * len(t.nodes)
    diam = subtree_diameters(t)
    if diam and max(diam) > 3:
        return SearchResult(SKIPPED, note=f"initial clique tree has subtree diameter {max(diam)}")
    steps = 0
    while True:
        wide = [v for v, d in enumerate(diam) if d == 3]
        if not wide:
            if not (verify_representation(g, t) and is_substar_representation(t)):
                raise AssertionError("switching search produced an invalid substar representation")
            return SearchResult(SUBSTAR, representation=t, steps=steps)
        if steps >= step_limit:
            return SearchResult(EXHAUSTED, steps=steps, note="step limit reached")
        steps += 1
        z = wide[0]
        q2, q3 = central_edge(t, z)
        plain = run_cascade(g, t, z, q2, q3, PLAIN)
        if isinstance(plain, TreeRepresentation):
            t, diam = plain, subtree_diameters(plain)
            continue
        mirrored = run_cascade(g, t, z, q3, q2, MIRRORED)
        if isinstance(mirrored, TreeRepresentation):
            t, diam = mirrored, subtree_diameters(mirrored)
            continue
        try:
            witness = extract_witness(g, t, plain, mirrored)
        except ExtractionError as exc:
            log.info("witness extraction failed: %s", exc)
            return SearchResult(EXHAUSTED, steps=steps, note=f"extraction failed: {exc}")
        if not witness.is_valid(g):
            raise AssertionError("extracted witness is not an induced embedding")
        return SearchResult(FORBIDDEN, witness=witness, steps=steps)


# -- certificates -------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """``kind`` is ``substar``, ``not-substar`` or ``not-chordal``; ``evidence`` matches it."""

    kind: str
    evidence: TreeRepresentation | ForbiddenWitness | ChordlessCycle

    def is_valid(self, g: Graph) -> bool:
        if self.kind == "substar":
            return (isinstance(self.evidence, TreeRepresentation)
                    and verify_representation(g, self.evidence)
                    and is_substar_representation(self.evidence))
        if self.kind == "not-substar":
            return isinstance(self.evidence, ForbiddenWitness) and self.evidence.is_valid(g)
        if self.kind == "not-chordal":
            return isinstance(self.evidence, ChordlessCycle) and self.evidence.is_valid(g)
        return False

    @property
    def exit_code(self) -> int:
        return {"substar": 0, "not-substar": 1, "not-chordal": 2}[self.kind]

    def format(self) -> str:
        head = f"RESULT {self.kind}"
        ev = self.evidence
        if isinstance(ev, TreeRepresentation):
            body = format_representation(ev)
        elif isinstance(ev, ForbiddenWitness):
            body = ev.format()
        else:
            body = "CYCLE " + " ".join(str(v) for v in ev.cycle)
        return f"{head}\n{body}"


def parse_certificate(text: str) -> Certificate:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("RESULT "):
        raise GraphError("missing RESULT line")
    kind = lines[0].split(None, 1)[1]
    body = lines[1:]
    if kind == "substar":
        return Certificate(kind, parse_representation("\n".join(body)))
    if kind == "not-substar" and len(body) == 1:
        return Certificate(kind, parse_witness(body[0]))
    if kind == "not-chordal" and len(body) == 1 and body[0].startswith("CYCLE "):
        return Certificate(kind, ChordlessCycle(tuple(int(v) for v in body[0].split()[1:])))
    raise GraphError(f"malformed certificate for RESULT {kind}")


def _certify_component(h: Graph, step_limit: int | None) -> TreeRepresentation | ForbiddenWitness:
    res = switching_search(h, step_limit)
    if res.status == SUBSTAR:
        return res.representation
    if res.status == FORBIDDEN:
        return res.witness
    log.info("switching search %s (%s); using oracle and pattern search", res.status, res.note)
    rep = substar_oracle(h)
    if rep is not None:
        return rep
    witness = find_forbidden(h)
    if witness is None:
        raise AssertionError("graph is neither substar nor contains a forbidden subgraph")
    return witness


def recognize(g: Graph, step_limit: int | None = None) -> Certificate:
    """Certify whether ``g`` is a substar graph.

    Components are certified separately; the first component with a
    forbidden subgraph decides a negative answer, otherwise the component
    representations are joined into one host tree.
    """
    res = is_chordal(g)
    if isinstance(res, ChordlessCycle):
        return Certificate("not-chordal", res)
    parts = []
    for comp in g.components():
        ev = _certify_component(induced_subgraph(g, comp), step_limit)
        if isinstance(ev, ForbiddenWitness):
            cert = Certificate("not-substar", ev.relabel(comp))
            assert cert.is_valid(g)
            return cert
        parts.append((comp, ev))
    cert = Certificate("substar", combine_components(parts, g.n))
    assert cert.is_valid(g)
    return cert
