"""Combinatorial shadows: data model, validation, finiteness and colourings.

A shadow is given by its regions (Euler characteristic, gleam, boundary tag),
its singular edges (the three regions along each edge, with multiplicity) and
its vertices.  A vertex lists six region slots ``(i, j, k, l, m, n)`` and four
incident edges whose region triples are ``(i,j,k), (i,m,n), (j,l,n), (k,l,m)``;
``(i,l), (j,m), (k,n)`` are the opposite pairs.

Boundary tags: ``"T"`` regions touch the coloured framed graph and get colour
``(d-1)/2``; ``"B"`` regions touch the auxiliary link and get colour 0.
"""

from __future__ import annotations

import json
import warnings
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator, Mapping

from .qalg import HalfInt, _admissible_tw, _r_admissible_tw

VERTEX_TRIPLES = ((0, 1, 2), (0, 4, 5), (1, 3, 5), (2, 3, 4))
OPPOSITE_PAIRS = ((0, 3), (1, 4), (2, 5))


class ShadowError(ValueError):
    pass


class InfiniteShadowError(ShadowError):
    pass


class InternalRegionWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Region:
    id: str
    euler: int
    gleam: HalfInt = HalfInt(0)
    boundary: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "gleam", HalfInt.of(self.gleam))
        if self.boundary not in (None, "T", "B"):
            raise ShadowError(f"region {self.id}: boundary must be 'T', 'B' or None")


@dataclass(frozen=True)
class SingularEdge:
    id: str
    regions: tuple


@dataclass(frozen=True)
class Vertex:
    id: str
    slots: tuple
    edges: tuple


@dataclass(frozen=True)
class ShadowPolyhedron:
    regions: tuple
    edges: tuple = ()
    vertices: tuple = ()
    label: str = ""
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "_index", {r.id: r for r in self.regions})

    def region(self, rid: str) -> Region:
        return self._index[rid]

    def vertex_ends(self) -> Counter:
        """Number of vertex-ends of every edge (loops count twice)."""
        ends = Counter({e.id: 0 for e in self.edges})
        for v in self.vertices:
            for eid in v.edges:
                ends[eid] += 1
        return ends

    def with_gleam(self, rid: str, gleam) -> "ShadowPolyhedron":
        regions = tuple(replace(r, gleam=HalfInt.of(gleam)) if r.id == rid else r for r in self.regions)
        return replace(self, regions=regions)

    # ---- serialisation ------------------------------------------------
    def to_json(self) -> dict:
        regions = []
        for r in self.regions:
            row = {"id": r.id, "euler": r.euler, "gleam_twice": r.gleam.twice}
            if r.boundary:
                row["boundary"] = r.boundary
            regions.append(row)
        return {
            "label": self.label,
            "regions": regions,
            "edges": [{"id": e.id, "regions": list(e.regions)} for e in self.edges],
            "vertices": [{"id": v.id, "slots": list(v.slots), "edges": list(v.edges)}
                         for v in self.vertices],
        }

    @classmethod
    def from_json(cls, data: Mapping, check: bool = True) -> "ShadowPolyhedron":
        try:
            regions = []
            for row in data["regions"]:
                boundary = row.get("boundary")
                if boundary is None and row.get("boundary_color_twice") == 0:
                    boundary = "B"
                regions.append(Region(str(row["id"]), int(row["euler"]),
                                      HalfInt(int(row.get("gleam_twice", 0))), boundary))
            edges = [SingularEdge(str(e["id"]), tuple(str(x) for x in e["regions"]))
                     for e in data.get("edges", [])]
            vertices = [Vertex(str(v["id"]), tuple(str(x) for x in v["slots"]),
                               tuple(str(x) for x in v["edges"]))
                        for v in data.get("vertices", [])]
        except (KeyError, TypeError) as exc:
            raise ShadowError(f"malformed shadow JSON: {exc}") from exc
        p = cls(regions, edges, vertices, str(data.get("label", "")))
        if check:
            problems = validate(p)
            if problems:
                raise ShadowError("; ".join(problems))
        return p

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def load_shadow(path) -> ShadowPolyhedron:
    return ShadowPolyhedron.from_json(json.loads(Path(path).read_text()))


def validate(p: ShadowPolyhedron) -> list[str]:
    """Structural diagnostics; an empty list means the shadow is well formed."""
    out = []
    ids = [r.id for r in p.regions]
    for rid, n in Counter(ids).items():
        if n > 1:
            out.append(f"region {rid}: duplicate id")
    known = set(ids)
    for r in p.regions:
        if r.euler > 2:
            out.append(f"region {r.id}: Euler characteristic {r.euler} > 2")
    edge_ids = Counter(e.id for e in p.edges)
    for eid, n in edge_ids.items():
        if n > 1:
            out.append(f"edge {eid}: duplicate id")
    edges = {e.id: e for e in p.edges}
    for e in p.edges:
        if len(e.regions) != 3:
            out.append(f"edge {e.id}: needs exactly 3 region slots")
        for rid in e.regions:
            if rid not in known:
                out.append(f"edge {e.id}: unknown region {rid}")
    for v in p.vertices:
        if len(v.slots) != 6 or len(v.edges) != 4:
            out.append(f"vertex {v.id}: needs 6 slots and 4 edges")
            continue
        for rid in v.slots:
            if rid not in known:
                out.append(f"vertex {v.id}: unknown region {rid}")
        for pos, (tri, eid) in enumerate(zip(VERTEX_TRIPLES, v.edges)):
            if eid not in edges:
                out.append(f"vertex {v.id}: unknown edge {eid}")
                continue
            want = Counter(v.slots[s] for s in tri)
            if Counter(edges[eid].regions) != want:
                out.append(f"vertex {v.id}: slot triple {pos} {sorted(want.elements())} "
                           f"does not match edge {eid} regions {sorted(edges[eid].regions)}")
    for eid, n in p.vertex_ends().items():
        if n > 2:
            out.append(f"edge {eid}: {n} vertex-ends (at most 2 allowed)")
    return out


@dataclass(frozen=True)
class Finiteness:
    finite: bool
    witness: tuple = ()

    def __bool__(self):
        return self.finite


def _propagation(p: ShadowPolyhedron, seeds):
    """Regions in the order their colour range becomes bounded.

    Returns ``(order, source)`` where ``source[rid]`` is the determining
    edge's other two region slots (``None`` for seeds).
    """
    bounded = dict.fromkeys(sorted(seeds))
    order = list(bounded)
    source = {rid: None for rid in order}
    edges = sorted(p.edges, key=lambda e: e.id)
    changed = True
    while changed:
        changed = False
        for e in edges:
            free = [k for k, rid in enumerate(e.regions) if rid not in bounded]
            if len(free) == 1:
                x = e.regions[free[0]]
                others = tuple(rid for k, rid in enumerate(e.regions) if k != free[0])
                bounded[x] = None
                order.append(x)
                source[x] = others
                changed = True
    return order, source


def finiteness_check(p: ShadowPolyhedron) -> Finiteness:
    """Finite iff boundedness propagates from the boundary regions to all regions."""
    seeds = [r.id for r in p.regions if r.boundary]
    order, _ = _propagation(p, seeds)
    missing = tuple(sorted(set(r.id for r in p.regions) - set(order)))
    return Finiteness(not missing, missing)


def first_betti(p: ShadowPolyhedron) -> int:
    """``b_1 = 1 - chi(P)`` for a shadow that retracts onto a graph.

    ``chi(P)`` counts open regions, vertices, non-circle singular edges and the
    trivalent boundary graph where singular edges end on the boundary.
    """
    if not finiteness_check(p):
        raise InfiniteShadowError("first_betti needs a graph-retracting shadow")
    ends = p.vertex_ends()
    non_circle = [e for e in p.edges if ends[e.id] > 0]
    boundary_points = sum(2 - ends[e.id] for e in non_circle)
    chi2 = 2 * sum(r.euler for r in p.regions) + 2 * len(p.vertices) - 2 * len(non_circle) - boundary_points
    if chi2 % 2:
        raise ShadowError("odd number of singular edge ends on the boundary")
    return 1 - chi2 // 2


class Coloring(Mapping):
    """Region id -> :class:`HalfInt` colour (stored doubled)."""

    __slots__ = ("_tw",)

    def __init__(self, twice: Mapping):
        self._tw = dict(twice)

    def __getitem__(self, rid):
        return HalfInt(self._tw[rid])

    def __iter__(self):
        return iter(self._tw)

    def __len__(self):
        return len(self._tw)

    def twice(self, rid) -> int:
        return self._tw[rid]

    def key(self) -> tuple:
        return tuple(sorted(self._tw.items()))

    def __repr__(self):
        return "Coloring({" + ", ".join(f"{k}: {HalfInt(v)}" for k, v in sorted(self._tw.items())) + "})"


def boundary_twice(region: Region, d: int) -> int:
    return d - 1 if region.boundary == "T" else 0


def is_admissible_coloring(p: ShadowPolyhedron, col: Coloring, d: int, r: int | None = None) -> bool:
    for reg in p.regions:
        if reg.boundary and col.twice(reg.id) != boundary_twice(reg, d):
            return False
        if r is not None and not 0 <= col.twice(reg.id) <= r - 2:
            return False
    for e in p.edges:
        tri = [col.twice(x) for x in e.regions]
        ok = _r_admissible_tw(*tri, r) if r is not None else _admissible_tw(*tri)
        if not ok:
            return False
    return True


def enumerate_colorings(p: ShadowPolyhedron, d: int, r: int | None = None) -> Iterator[Coloring]:
    """Admissible colourings relative to the boundary (``r``-admissible if ``r`` given).

    Deterministic order: propagation order of regions, ascending colours.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if r is not None and r < 3:
        raise ValueError("r must be >= 3")
    if any(reg.boundary is None for reg in p.regions):
        warnings.warn(f"shadow {p.label!r} has internal regions; gleam compatibility is not checked",
                      InternalRegionWarning, stacklevel=2)
    seeds = [reg.id for reg in p.regions if reg.boundary]
    order, source = _propagation(p, seeds)
    if r is None:
        if len(order) != len(p.regions):
            raise InfiniteShadowError(
                f"shadow {p.label!r} has infinitely many colourings; unbounded regions "
                f"{sorted(set(x.id for x in p.regions) - set(order))}")
    else:
        order += sorted(set(x.id for x in p.regions) - set(order))
    position = {rid: k for k, rid in enumerate(order)}
    checks = [[] for _ in order]
    for e in p.edges:
        checks[max(position[x] for x in e.regions)].append(e.regions)
    fixed = {rid: boundary_twice(p.region(rid), d) for rid in seeds}
    cap = r - 2 if r is not None else None

    def ok(tri, col):
        vals = [col[x] for x in tri]
        return _r_admissible_tw(*vals, r) if r is not None else _admissible_tw(*vals)

    col: dict[str, int] = {}

    def candidates(rid):
        if rid in fixed:
            c = fixed[rid]
            return [c] if cap is None or c <= cap else []
        src = source.get(rid)
        if src is None:
            return range(0, cap + 1)
        a, b = col[src[0]], col[src[1]]
        hi = a + b if cap is None else min(a + b, cap)
        return range(abs(a - b), hi + 1, 2)

    def dfs(k):
        if k == len(order):
            yield Coloring(col)
            return
        rid = order[k]
        for c in candidates(rid):
            col[rid] = c
            if all(ok(tri, col) for tri in checks[k]):
                yield from dfs(k + 1)
        col.pop(rid, None)

    yield from dfs(0)
