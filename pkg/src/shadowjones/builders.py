"""Shadows of the standard examples and the planar-diagram pipeline."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .qalg import HalfInt, QProduct, qproduct_sum, sixj_symmetric
from .qring import RATFN_ZERO, RationalFunc
from .shadow import Region, ShadowError, ShadowPolyhedron, SingularEdge, Vertex, validate


def _checked(p: ShadowPolyhedron) -> ShadowPolyhedron:
    problems = validate(p)
    if problems:
        raise ShadowError("; ".join(problems))
    return p


def unknot_shadow() -> ShadowPolyhedron:
    """A disc with gleam 0 bounded by the unknot."""
    return ShadowPolyhedron([Region("D", 1, HalfInt(0), "T")], label="unknot")


def trefoil_collapsed_shadow() -> ShadowPolyhedron:
    """A disc glued to the core of a Moebius strip.

    The annulus meets the core circle twice, so the single singular edge has
    region triple ``(D, A, A)`` and no vertices.
    """
    regions = [Region("D", 1, HalfInt(-3)), Region("A", 0, HalfInt(6), "T")]
    return _checked(ShadowPolyhedron(regions, [SingularEdge("c", ("D", "A", "A"))],
                                     label="trefoil-collapsed"))


def tetrahedron_shadow() -> ShadowPolyhedron:
    """The vertex local model: six discs of gleam 0, each touching the coloured graph."""
    names = ("i", "j", "k", "l", "m", "n")
    regions = [Region(x, 1, HalfInt(0), "T") for x in names]
    edges = [SingularEdge("e1", ("i", "j", "k")), SingularEdge("e2", ("i", "m", "n")),
             SingularEdge("e3", ("j", "l", "n")), SingularEdge("e4", ("k", "l", "m"))]
    v = Vertex("v", names, ("e1", "e2", "e3", "e4"))
    return _checked(ShadowPolyhedron(regions, edges, [v], label="tetrahedron"))


# ---------------------------------------------------------------------------
# Planar diagrams.


@dataclass(frozen=True)
class Strand:
    id: str
    framing: HalfInt = HalfInt(0)


@dataclass(frozen=True)
class Face:
    id: str
    euler: int
    boundary_curves: int = 0


@dataclass(frozen=True)
class DiagramEdge:
    id: str
    strand: str
    faces: tuple


@dataclass(frozen=True)
class Crossing:
    """Half-edges ``edges[0..3]`` counter-clockwise; ``faces[a]`` lies between
    half-edges ``a`` and ``a+1``; the over-strand runs through ``over`` and ``over+2``."""

    id: str
    edges: tuple
    faces: tuple
    over: int


@dataclass(frozen=True)
class PlanarDiagram:
    holes: int
    strands: tuple
    faces: tuple
    edges: tuple
    crossings: tuple
    label: str = ""

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "holes": self.holes,
            "strands": [{"id": s.id, "framing_twice": s.framing.twice} for s in self.strands],
            "faces": [{"id": f.id, "euler": f.euler, "boundary_curves": f.boundary_curves}
                      for f in self.faces],
            "edges": [{"id": e.id, "strand": e.strand, "faces": list(e.faces)} for e in self.edges],
            "crossings": [{"id": c.id, "edges": list(c.edges), "faces": list(c.faces), "over": c.over}
                          for c in self.crossings],
        }

    @classmethod
    def from_json(cls, data) -> "PlanarDiagram":
        try:
            return cls(
                int(data.get("holes", 0)),
                tuple(Strand(str(s["id"]), HalfInt(int(s.get("framing_twice", 0)))) for s in data["strands"]),
                tuple(Face(str(f["id"]), int(f["euler"]), int(f.get("boundary_curves", 0)))
                      for f in data["faces"]),
                tuple(DiagramEdge(str(e["id"]), str(e["strand"]), tuple(str(x) for x in e["faces"]))
                      for e in data["edges"]),
                tuple(Crossing(str(c["id"]), tuple(str(x) for x in c["edges"]),
                               tuple(str(x) for x in c["faces"]), int(c.get("over", 0)))
                      for c in data.get("crossings", [])),
                str(data.get("label", "")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ShadowError(f"malformed diagram JSON: {exc}") from exc


def load_diagram(path) -> PlanarDiagram:
    return PlanarDiagram.from_json(json.loads(Path(path).read_text()))


def diagram_problems(dg: PlanarDiagram) -> list[str]:
    out = []
    faces = {f.id for f in dg.faces}
    strands = {s.id for s in dg.strands}
    if faces & strands:
        out.append(f"face and strand ids overlap: {sorted(faces & strands)}")
    edges = {e.id: e for e in dg.edges}
    for e in dg.edges:
        if e.strand not in strands:
            out.append(f"edge {e.id}: unknown strand {e.strand}")
        if len(e.faces) != 2 or not set(e.faces) <= faces:
            out.append(f"edge {e.id}: needs two known faces")
    uses = {e: 0 for e in edges}
    for c in dg.crossings:
        if len(c.edges) != 4 or len(c.faces) != 4 or c.over not in (0, 1):
            out.append(f"crossing {c.id}: needs 4 edges, 4 faces and over in {{0, 1}}")
            continue
        for a, eid in enumerate(c.edges):
            if eid not in edges:
                out.append(f"crossing {c.id}: unknown edge {eid}")
                continue
            uses[eid] += 1
            if sorted(edges[eid].faces) != sorted((c.faces[a - 1], c.faces[a])):
                out.append(f"crossing {c.id}: half-edge {a} ({eid}) does not separate "
                           f"faces {c.faces[a - 1]} and {c.faces[a]}")
        for a in (0, 1):
            e0, e1 = edges.get(c.edges[a]), edges.get(c.edges[a + 2])
            if e0 and e1 and e0.strand != e1.strand:
                out.append(f"crossing {c.id}: half-edges {a} and {a + 2} lie on different strands")
    for eid, n in uses.items():
        if n not in (0, 2):
            out.append(f"edge {eid}: used by {n} crossing half-edges (0 or 2 expected)")
    curves = sum(f.boundary_curves for f in dg.faces)
    if curves != dg.holes + 1:
        out.append(f"faces carry {curves} boundary curves, expected {dg.holes + 1}")
    return out


def crossing_gleams(c: Crossing) -> list[HalfInt]:
    """Corner contributions: the two faces swept by the over-strand get -1/2."""
    out = [HalfInt(1)] * 4
    out[c.over] = HalfInt(-1)
    out[c.over + 2] = HalfInt(-1)
    return out


def diagram_to_shadow(dg: PlanarDiagram) -> ShadowPolyhedron:
    """Mapping cylinder of the projection plus the holed disc, with gleams."""
    problems = diagram_problems(dg)
    if problems:
        raise ShadowError("; ".join(problems))
    gleam = {f.id: HalfInt(0) for f in dg.faces}
    for c in dg.crossings:
        for f, g in zip(c.faces, crossing_gleams(c)):
            gleam[f] = gleam[f] + g
    regions = [Region(f.id, f.euler, gleam[f.id], "B" if f.boundary_curves else None)
               for f in dg.faces]
    regions += [Region(s.id, 0, s.framing, "T") for s in dg.strands]
    strand_of = {e.id: e.strand for e in dg.edges}
    edges = [SingularEdge(e.id, (e.faces[0], e.faces[1], e.strand)) for e in dg.edges]
    vertices = []
    for c in dg.crossings:
        f0, f1, f2, f3 = c.faces
        slots = (f0, strand_of[c.edges[0]], f3, f2, strand_of[c.edges[1]], f1)
        vertices.append(Vertex(c.id, slots, c.edges))
    return _checked(ShadowPolyhedron(regions, edges, vertices, label=dg.label))


def trefoil_diagram() -> PlanarDiagram:
    """Standard three-crossing trefoil diagram in a disc (no holes)."""
    faces = [Face("C", 1)] + [Face(f"L{k}", 1) for k in (1, 2, 3)] + [Face("O", 0, 1)]
    edges = []
    for k in (1, 2, 3):
        edges.append(DiagramEdge(f"ic{k}", "K", (f"L{k}", "C")))
        edges.append(DiagramEdge(f"oc{k}", "K", (f"L{k}", "O")))
    crossings = []
    for k in (1, 2, 3):
        nxt = k % 3 + 1
        crossings.append(Crossing(f"X{k}", (f"ic{k}", f"ic{nxt}", f"oc{nxt}", f"oc{k}"),
                                  ("C", f"L{nxt}", "O", f"L{k}"), 0))
    return PlanarDiagram(0, (Strand("K"),), tuple(faces), tuple(edges), tuple(crossings), "trefoil-diagram")


def trefoil_diagram_shadow() -> ShadowPolyhedron:
    """Three vertices, discs with gleams 1, 1, 1, -3/2 and two annuli."""
    regions = [Region("C", 1, HalfInt(-3))]
    regions += [Region(f"L{k}", 1, HalfInt(2)) for k in (1, 2, 3)]
    regions += [Region("O", 0, HalfInt(-3), "B"), Region("K", 0, HalfInt(0), "T")]
    edges = []
    for k in (1, 2, 3):
        edges.append(SingularEdge(f"ic{k}", (f"L{k}", "C", "K")))
        edges.append(SingularEdge(f"oc{k}", (f"L{k}", "O", "K")))
    vertices = []
    for k in (1, 2, 3):
        nxt = k % 3 + 1
        vertices.append(Vertex(f"X{k}", ("C", "K", f"L{k}", "O", "K", f"L{nxt}"),
                               (f"ic{k}", f"ic{nxt}", f"oc{nxt}", f"oc{k}")))
    return _checked(ShadowPolyhedron(regions, edges, vertices, label="trefoil-diagram"))


def circle_diagram(framing_twice: int = 0) -> PlanarDiagram:
    """A crossingless unknot in a disc."""
    return PlanarDiagram(0, (Strand("K", HalfInt(framing_twice)),),
                         (Face("D", 1), Face("O", 0, 1)),
                         (DiagramEdge("e", "K", ("D", "O")),), (), "circle")


def kink_diagram(over: int = 0) -> PlanarDiagram:
    """A one-crossing unknot (figure-eight curve) with blackboard framing."""
    faces = (Face("O", 0, 1), Face("E", 1), Face("W", 1))
    edges = (DiagramEdge("eE", "K", ("E", "O")), DiagramEdge("eW", "K", ("W", "O")))
    x = Crossing("X", ("eW", "eE", "eE", "eW"), ("O", "E", "O", "W"), over)
    return PlanarDiagram(0, (Strand("K"),), faces, edges, (x,), "kink")


# ---------------------------------------------------------------------------
# Universal shadows.

# Region germ at a vertex <-> pair of half-edge labels, in slot order i..n.
SLOT_PAIRS = ((0, 1), (0, 2), (0, 3), (2, 3), (1, 3), (1, 2))


@dataclass(frozen=True)
class GraphEdge:
    """Half-edge ``(v, a)`` joined to ``(w, b)``; sheet ``{a, x}`` continues as
    ``{b, gluing[k]}`` where ``x`` is the k-th smallest label other than ``a``."""

    ends: tuple
    gluing: tuple


@dataclass(frozen=True)
class FourValentGraph:
    vertices: int
    edges: tuple
    label: str = ""

    def problems(self) -> list[str]:
        out = []
        if self.vertices < 1:
            out.append("need at least one vertex")
        seen = {}
        for n, e in enumerate(self.edges):
            if len(e.ends) != 2:
                out.append(f"edge {n}: needs two ends")
                continue
            for v, a in e.ends:
                if not (0 <= v < self.vertices and 0 <= a < 4):
                    out.append(f"edge {n}: bad half-edge ({v}, {a})")
                seen[(v, a)] = seen.get((v, a), 0) + 1
            b = e.ends[1][1]
            if sorted(e.gluing) != [x for x in range(4) if x != b]:
                out.append(f"edge {n}: gluing must permute the labels other than {b}")
        for v in range(self.vertices):
            for a in range(4):
                if seen.get((v, a), 0) != 1:
                    out.append(f"half-edge ({v}, {a}) used {seen.get((v, a), 0)} times")
        return out

    def to_json(self) -> dict:
        return {"label": self.label, "vertices": self.vertices,
                "edges": [{"ends": [list(x) for x in e.ends], "gluing": list(e.gluing)} for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> "FourValentGraph":
        try:
            edges = tuple(GraphEdge(tuple(tuple(int(y) for y in x) for x in e["ends"]),
                                    tuple(int(x) for x in e["gluing"])) for e in data["edges"])
            return cls(int(data["vertices"]), edges, str(data.get("label", "")))
        except (KeyError, TypeError, ValueError) as exc:
            raise ShadowError(f"malformed graph JSON: {exc}") from exc


def bouquet_graph(twisted: bool = False) -> FourValentGraph:
    """One vertex with two loops.

    The plain gluing has three regions; the twisted one re-glues the sheets
    along both loops and has four.
    """
    if twisted:
        return FourValentGraph(1, (GraphEdge(((0, 0), (0, 1)), (0, 3, 2)),
                                   GraphEdge(((0, 2), (0, 3)), (1, 0, 2))), "bouquet-twisted")
    return FourValentGraph(1, (GraphEdge(((0, 0), (0, 1)), (0, 2, 3)),
                               GraphEdge(((0, 2), (0, 3)), (0, 1, 2))), "bouquet")


def theta_graph() -> FourValentGraph:
    """Two vertices joined by four edges, sheets glued straight across."""
    edges = tuple(GraphEdge(((0, a), (1, a)), tuple(x for x in range(4) if x != a)) for a in range(4))
    return FourValentGraph(2, edges, "theta")


def chain_graph(c: int) -> FourValentGraph:
    """``c`` vertices in a cycle, joined by double edges (``c >= 2``)."""
    if c < 2:
        return bouquet_graph()
    edges = []
    for v in range(c):
        w = (v + 1) % c
        edges.append(GraphEdge(((v, 2), (w, 0)), (1, 2, 3)))
        edges.append(GraphEdge(((v, 3), (w, 1)), (0, 2, 3)))
    return FourValentGraph(c, tuple(edges), f"chain-{c}")


def universal_shadow(g: FourValentGraph) -> ShadowPolyhedron:
    """Neighbourhood of the singular set: annular regions, gleam 0, all touching the link."""
    problems = g.problems()
    if problems:
        raise ShadowError("; ".join(problems))
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in range(g.vertices):
        for pair in SLOT_PAIRS:
            find((v, pair))
    for e in g.edges:
        (v, a), (w, b) = e.ends
        others = [x for x in range(4) if x != a]
        for x, y in zip(others, e.gluing):
            ra = find((v, tuple(sorted((a, x)))))
            rb = find((w, tuple(sorted((b, y)))))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find((v, pair)) for v in range(g.vertices) for pair in SLOT_PAIRS})
    name = {root: f"R{k}" for k, root in enumerate(roots)}

    def region_of(v, pair):
        return name[find((v, tuple(sorted(pair))))]

    edges = []
    edge_at = {}
    for n, e in enumerate(g.edges):
        (v, a), _ = e.ends
        tri = tuple(region_of(v, (a, x)) for x in range(4) if x != a)
        edges.append(SingularEdge(f"E{n}", tri))
        for end in e.ends:
            edge_at[end] = f"E{n}"
    vertices = [Vertex(f"V{v}", tuple(region_of(v, pair) for pair in SLOT_PAIRS),
                       tuple(edge_at[(v, a)] for a in range(4))) for v in range(g.vertices)]
    regions = [Region(name[root], 0, HalfInt(0), "T") for root in roots]
    return _checked(ShadowPolyhedron(regions, edges, vertices, label=f"universal-{g.label}"))


def universal_jones_closed_form(c: int, d: int) -> RationalFunc:
    """``[d]**c * sixj((d-1)/2)**c`` for odd ``d``, zero for even ``d``."""
    if c < 1 or d < 2:
        raise ValueError("need c >= 1 and d >= 2")
    if d % 2 == 0:
        return RATFN_ZERO
    return (qproduct_sum([QProduct(1, 0, {d: 1})]) * sixj_symmetric((d - 1) // 2)) ** c


BUILDERS = {
    "unknot": unknot_shadow,
    "trefoil-diagram": trefoil_diagram_shadow,
    "trefoil-collapsed": trefoil_collapsed_shadow,
    "tetrahedron": tetrahedron_shadow,
}


def universal_for(c: int) -> ShadowPolyhedron:
    if c < 1:
        raise ValueError("c must be >= 1")
    if c == 1:
        return universal_shadow(bouquet_graph())
    if c == 2:
        return universal_shadow(theta_graph())
    return universal_shadow(chain_graph(c))
