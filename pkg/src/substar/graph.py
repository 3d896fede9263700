"""Simple undirected graphs on vertices ``0..n-1`` with bitmask adjacency.

Also holds the small-graph machinery the rest of the package leans on:
graph6 and edge-list I/O, induced subgraphs, induced embedding search,
isomorphism, canonical codes and enumeration of connected graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 64
MAX_CANONICAL_ORDER = 10
MAX_ENUMERATION_ORDER = 8


class GraphError(ValueError):
    pass


class Graph6ParseError(GraphError):
    """Malformed graph6 input; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class EdgeListParseError(GraphError):
    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ORDER:
            raise GraphError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency rows do not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                raise GraphError(f"bad adjacency row for vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def is_clique(self, mask: int) -> bool:
        return all(not mask & ~(self.adj[v] | 1 << v) for v in bits(mask))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph where old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph(self.n, tuple(adj))

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n == 0 or len(self.components()) == 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph induced on ``s``, relabelled by the sorted order of ``s``."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for u in bits(g.adj[v]):
            if u in index:
                row |= 1 << index[u]
        adj.append(row)
    return Graph(len(verts), tuple(adj))


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


# -- graph6 -------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def write_graph6(g: Graph) -> str:
    out = [_g6_size(g.n)]
    acc = 0
    width = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            width += 1
            if width == 6:
                out.append(chr(acc + 63))
                acc = width = 0
    if width:
        out.append(chr((acc << (6 - width)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip("\r\n")
    base = 0
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
        base = len(_G6_HEADER)
    if not s:
        raise Graph6ParseError("empty graph6 string", base)
    data = []
    for i, ch in enumerate(s):
        c = ord(ch) - 63
        if not 0 <= c <= 63:
            raise Graph6ParseError(f"byte {ch!r} outside graph6 range", base + i)
        data.append(c)
    if data[0] == 63:
        if len(data) >= 2 and data[1] == 63:
            raise Graph6ParseError(f"order exceeds {MAX_ORDER}", base + 1)
        if len(data) < 4:
            raise Graph6ParseError("truncated order field", base + len(data))
        n = data[1] << 12 | data[2] << 6 | data[3]
        pos = 4
        if n > MAX_ORDER:
            raise Graph6ParseError(f"order {n} exceeds {MAX_ORDER}", base + 1)
    else:
        n = data[0]
        pos = 1
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        off = base + pos + min(len(body), need)
        raise Graph6ParseError(f"expected {need} data bytes for n={n}, got {len(body)}", off)
    if nbits % 6 and body and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6ParseError("nonzero padding bits", base + pos + need - 1)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


# -- edge lists ---------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise EdgeListParseError("missing header", 1)
    lineno, head = rows[0]
    try:
        n, m = (int(t) for t in head)
    except ValueError:
        raise EdgeListParseError("header must be 'n m'", lineno) from None
    if not 0 <= n <= MAX_ORDER or m < 0:
        raise EdgeListParseError(f"bad header values n={n} m={m}", lineno)
    if len(rows) - 1 != m:
        raise EdgeListParseError(f"expected {m} edges, found {len(rows) - 1}", lineno)
    edges = []
    for lineno, toks in rows[1:]:
        try:
            u, v = (int(t) for t in toks)
        except ValueError:
            raise EdgeListParseError("edge must be 'u v'", lineno) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise EdgeListParseError(f"invalid edge {u} {v}", lineno)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# -- induced embeddings and isomorphism -----------------------------------------

def is_induced_embedding(host: Graph, pattern: Graph, mapping: Sequence[int]) -> bool:
    if len(mapping) != pattern.n or len(set(mapping)) != pattern.n:
        return False
    if any(not 0 <= h < host.n for h in mapping):
        return False
    for a in range(pattern.n):
        for b in range(a + 1, pattern.n):
            if pattern.has_edge(a, b) != host.has_edge(mapping[a], mapping[b]):
                return False
    return True


def find_induced_embedding(host: Graph, pattern: Graph) -> tuple[int, ...] | None:
    """Map pattern vertices injectively into ``host`` preserving adjacency and non-adjacency.

    Backtracking with forward-checked candidate domains; the next pattern
    vertex is the one with the smallest domain, ties to the lowest index,
    and candidates are tried in ascending host order. Returns the mapping as
    a tuple indexed by pattern vertex, or ``None``.
    """
    p = pattern.n
    if p > host.n:
        return None
    if p == 0:
        return ()
    hfull = host.vertex_mask
    hdeg = host.degrees()
    pdeg = pattern.degrees()
    domains = []
    for a in range(p):
        dom = 0
        for h in range(host.n):
            if hdeg[h] >= pdeg[a] and host.n - 1 - hdeg[h] >= p - 1 - pdeg[a]:
                dom |= 1 << h
        if not dom:
            return None
        domains.append(dom)
    hnon = [hfull & ~row & ~(1 << h) for h, row in enumerate(host.adj)]
    mapping = [-1] * p

    def search(doms: list[int], unassigned: int) -> bool:
        if not unassigned:
            return True
        a = min(bits(unassigned), key=lambda x: doms[x].bit_count())
        rest = unassigned & ~(1 << a)
        padj = pattern.adj[a]
        for h in bits(doms[a]):
            new = doms[:]
            ok = True
            for b in bits(rest):
                d = new[b] & (host.adj[h] if padj >> b & 1 else hnon[h])
                if not d:
                    ok = False
                    break
                new[b] = d
            if ok:
                mapping[a] = h
                if search(new, rest):
                    return True
        mapping[a] = -1
        return False

    if search(domains, (1 << p) - 1):
        return tuple(mapping)
    return None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges() != h.num_edges():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return find_induced_embedding(h, g) is not None


# -- canonical form -----------------------------------------------------------

def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition; label-invariant."""
    while True:
        color = [0] * g.n
        for i, cell in enumerate(cells):
            for v in cell:
                color[v] = i
        masks = [to_mask(c) for c in cells]
        sig = {}
        for v in range(g.n):
            sig[v] = (color[v], tuple((g.adj[v] & m).bit_count() for m in masks))
        new = []
        for cell in cells:
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            for key in sorted(groups):
                new.append(groups[key])
        if len(new) == len(cells):
            return new
        cells = new


def _code_bits(g: Graph, order: Sequence[int]) -> int:
    code = 0
    for j in range(1, len(order)):
        row = g.adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def canonical_code(g: Graph) -> str:
    """Isomorphism-invariant string: maximal adjacency code over refined labellings.

    Individualisation-refinement search; every leaf is a discrete ordered
    partition and the code of a leaf is its upper triangle read column by
    column. The maximum over all leaves is a complete invariant.
    """
    if g.n > MAX_CANONICAL_ORDER:
        raise GraphError(f"canonical_code supports n <= {MAX_CANONICAL_ORDER}, got {g.n}")
    best = -1
    if g.n:
        stack = [_refine(g, [list(range(g.n))])]
        while stack:
            cells = stack.pop()
            target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
            if target is None:
                best = max(best, _code_bits(g, [c[0] for c in cells]))
                continue
            for v in cells[target]:
                rest = [u for u in cells[target] if u != v]
                stack.append(_refine(g, cells[:target] + [[v], rest] + cells[target + 1:]))
    width = g.n * (g.n - 1) // 2
    return f"{g.n}:{max(best, 0):0{(width + 3) // 4 or 1}x}"


def canonical_form(g: Graph) -> Graph:
    """A fixed representative of the isomorphism class, for display and dedup."""
    best_order = None
    best = -1
    stack = [_refine(g, [list(range(g.n))])] if g.n else []
    while stack:
        cells = stack.pop()
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code_bits(g, order)
            if code > best:
                best, best_order = code, order
            continue
        for v in cells[target]:
            rest = [u for u in cells[target] if u != v]
            stack.append(_refine(g, cells[:target] + [[v], rest] + cells[target + 1:]))
    if best_order is None:
        return g
    perm = [0] * g.n
    for pos, v in enumerate(best_order):
        perm[v] = pos
    return g.relabel(perm)


# -- enumeration --------------------------------------------------------------

@lru_cache(maxsize=None)
def _connected_classes(n: int) -> tuple[tuple[str, Graph], ...]:
    if n == 1:
        return (("1:0", Graph.empty(1)),)
    found: dict[str, Graph] = {}
    for _, base in _connected_classes(n - 1):
        for nbrs in range(1, 1 << (n - 1)):
            adj = list(base.adj)
            for u in bits(nbrs):
                adj[u] |= 1 << (n - 1)
            adj.append(nbrs)
            g = Graph.__new__(Graph)
            object.__setattr__(g, "n", n)
            object.__setattr__(g, "adj", tuple(adj))
            code = canonical_code(g)
            if code not in found:
                found[code] = canonical_form(g)
    return tuple(sorted(found.items()))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One connected graph per isomorphism class on ``n`` vertices, sorted by canonical code.

    Every connected graph has a vertex whose removal leaves it connected, so
    extending each connected class on ``n - 1`` vertices by one vertex with
    every non-empty neighbourhood reaches all classes.
    """
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise GraphError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}")
    for _, g in _connected_classes(n):
        yield g
