"""The minimal non-substar chordal graphs H1, H2 (three variants) and H3^k."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .graph import Graph, GraphError, find_induced_embedding, is_induced_embedding

FAMILIES = ("H1", "H2A", "H2B", "H2C", "H3")

_H1_ROLES = ("w", "x", "a", "y", "b", "z")
_H2_ROLES = ("u", "x", "a", "v", "y", "b", "z")
_H2_EXTRA = {
    "H2A": (),
    "H2B": (("u", "v"), ("v", "x"), ("v", "a")),
    "H2C": (("u", "v"), ("u", "y"), ("u", "b"), ("v", "x"), ("v", "a")),
}


@dataclass(frozen=True, order=True)
class FamilyTag:
    tag: str
    k: int | None = None

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise GraphError(f"unknown family {self.tag!r}")
        if self.tag == "H3":
            if self.k is None or self.k < 3:
                raise GraphError(f"H3 needs k >= 3, got {self.k}")
        elif self.k is not None:
            raise GraphError(f"{self.tag} takes no order parameter")

    @property
    def roles(self) -> tuple[str, ...]:
        """Role name of each pattern vertex, indexed by vertex."""
        if self.tag == "H1":
            return _H1_ROLES
        if self.tag == "H3":
            k = self.k
            return ("u", "v", *(f"c{i}" for i in range(1, k)), *(f"a{i}" for i in range(1, k + 1)))
        return _H2_ROLES

    def __str__(self) -> str:
        return self.tag if self.k is None else f"{self.tag}^{self.k}"


def _build(roles: tuple[str, ...], edges) -> Graph:
    index = {r: i for i, r in enumerate(roles)}
    return Graph.from_edges(len(roles), [(index[a], index[b]) for a, b in edges])


def make_forbidden(family: FamilyTag) -> Graph:
    roles = family.roles
    if family.tag == "H1":
        path = [("a", "x"), ("x", "w"), ("w", "y"), ("y", "b")]
        return _build(roles, path + [(r, "z") for r in "axwyb"])
    if family.tag == "H3":
        k = family.k
        clique = ["u", "v", *(f"c{i}" for i in range(1, k))]
        edges = [(p, q) for i, p in enumerate(clique) for q in clique[i + 1:] if {p, q} != {"u", "v"}]
        edges += [("u", "a1"), ("v", f"a{k}")]
        for i in range(1, k):
            edges += [(f"a{i}", f"c{i}"), (f"c{i}", f"a{i + 1}")]
        return _build(roles, edges)
    base = [("u", "x"), ("x", "a"), ("v", "y"), ("y", "b")] + [(r, "z") for r in "uxavyb"]
    return _build(roles, base + list(_H2_EXTRA[family.tag]))


def family_members(max_k: int) -> Iterator[FamilyTag]:
    for tag in ("H1", "H2A", "H2B", "H2C"):
        yield FamilyTag(tag)
    for k in range(3, max_k + 1):
        yield FamilyTag("H3", k)


@dataclass(frozen=True)
class ForbiddenWitness:
    family: FamilyTag
    roles: Mapping[str, int] = field(hash=False)

    def mapping(self) -> tuple[int, ...]:
        return tuple(self.roles[r] for r in self.family.roles)

    def is_valid(self, host: Graph) -> bool:
        if set(self.roles) != set(self.family.roles):
            return False
        return is_induced_embedding(host, make_forbidden(self.family), self.mapping())

    def relabel(self, verts) -> ForbiddenWitness:
        return ForbiddenWitness(self.family, {r: verts[v] for r, v in self.roles.items()})

    def format(self) -> str:
        k = f" k={self.family.k}" if self.family.k is not None else ""
        roles = ",".join(f"{r}={v}" for r, v in sorted(self.roles.items()))
        return f"WITNESS family={self.family.tag}{k} roles={roles}"


_WITNESS_RE = re.compile(r"^WITNESS family=(\w+)(?: k=(\d+))? roles=(\S+)$")


def parse_witness(line: str) -> ForbiddenWitness:
    m = _WITNESS_RE.match(line.strip())
    if not m:
        raise GraphError(f"bad WITNESS line: {line!r}")
    family = FamilyTag(m.group(1), int(m.group(2)) if m.group(2) else None)
    roles = {}
    for item in m.group(3).split(","):
        r, _, v = item.partition("=")
        roles[r] = int(v)
    return ForbiddenWitness(family, roles)


def find_forbidden(g: Graph) -> ForbiddenWitness | None:
    """First induced member of the family in the order H1, H2A, H2B, H2C, H3^3, H3^4, ..."""
    k_max = (g.n - 1) // 2
    for family in family_members(k_max):
        pattern = make_forbidden(family)
        if pattern.n > g.n:
            continue
        emb = find_induced_embedding(g, pattern)
        if emb is not None:
            w = ForbiddenWitness(family, dict(zip(family.roles, emb)))
            assert w.is_valid(g)
            return w
    return None
