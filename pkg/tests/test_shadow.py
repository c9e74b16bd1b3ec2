import json
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shadowjones import builders as B
from shadowjones.qalg import HalfInt
from shadowjones.shadow import (
    VERTEX_TRIPLES,
    InfiniteShadowError,
    InternalRegionWarning,
    Region,
    ShadowError,
    ShadowPolyhedron,
    SingularEdge,
    Vertex,
    enumerate_colorings,
    finiteness_check,
    first_betti,
    is_admissible_coloring,
    load_shadow,
    validate,
)

ALL_BUILT = {
    "unknot": B.unknot_shadow,
    "trefoil-collapsed": B.trefoil_collapsed_shadow,
    "trefoil-diagram": B.trefoil_diagram_shadow,
    "tetrahedron": B.tetrahedron_shadow,
    "bouquet": lambda: B.universal_shadow(B.bouquet_graph()),
    "bouquet-twisted": lambda: B.universal_shadow(B.bouquet_graph(True)),
    "theta": lambda: B.universal_shadow(B.theta_graph()),
    "chain-3": lambda: B.universal_for(3),
    "kink": lambda: B.diagram_to_shadow(B.kink_diagram()),
    "circle": lambda: B.diagram_to_shadow(B.circle_diagram()),
}


@pytest.mark.parametrize("name", sorted(ALL_BUILT))
def test_builders_validate_and_are_finite(name):
    p = ALL_BUILT[name]()
    assert validate(p) == []
    assert finiteness_check(p)


@pytest.mark.parametrize("name,b1", [("unknot", 0), ("trefoil-collapsed", 0), ("trefoil-diagram", 0),
                                     ("tetrahedron", 0), ("bouquet", 2), ("theta", 3), ("chain-3", 4),
                                     ("kink", 0), ("circle", 0)])
def test_first_betti(name, b1):
    assert first_betti(ALL_BUILT[name]()) == b1


@pytest.mark.parametrize("name", sorted(ALL_BUILT))
def test_json_round_trip(name, tmp_path):
    p = ALL_BUILT[name]()
    path = tmp_path / "s.json"
    path.write_text(p.dumps())
    assert load_shadow(path) == p


def test_validate_reports_problems():
    p = ShadowPolyhedron(
        [Region("a", 3), Region("b", 1), Region("b", 1)],
        [SingularEdge("e", ("a", "b")), SingularEdge("f", ("a", "b", "zz"))],
        [Vertex("v", ("a", "a", "a", "a", "a", "a"), ("e", "e", "e", "q"))],
    )
    problems = " | ".join(validate(p))
    for fragment in ("Euler characteristic 3", "duplicate id", "exactly 3 region slots",
                     "unknown region zz", "unknown edge q", "3 vertex-ends"):
        assert fragment in problems


def test_loader_rejects_bad_shadow():
    data = B.tetrahedron_shadow().to_json()
    data["vertices"][0]["slots"][0] = "l"
    with pytest.raises(ShadowError, match="does not match edge"):
        ShadowPolyhedron.from_json(data)
    with pytest.raises(ShadowError, match="malformed"):
        ShadowPolyhedron.from_json({"regions": [{"id": "x"}]})


def test_legacy_boundary_colour_field():
    data = {"regions": [{"id": "x", "euler": 1, "boundary_color_twice": 0}]}
    assert ShadowPolyhedron.from_json(data).region("x").boundary == "B"


def test_infinite_shadow_is_detected():
    p = ShadowPolyhedron([Region("D", 1, HalfInt(0))], label="closed")
    res = finiteness_check(p)
    assert not res and res.witness == ("D",)
    with pytest.raises(InfiniteShadowError):
        list(enumerate_colorings(p, 2))
    # with a cutoff the closed disc can take every colour up to (r-2)/2
    with pytest.warns(InternalRegionWarning):
        assert len(list(enumerate_colorings(p, 2, r=6))) == 5


def test_self_adjacent_region_cannot_bound_itself():
    # disc meeting the edge twice, annulus once: the disc stays unbounded
    p = ShadowPolyhedron([Region("D", 1), Region("A", 0, HalfInt(0), "T")],
                         [SingularEdge("c", ("D", "D", "A"))])
    assert not finiteness_check(p)


@pytest.mark.parametrize("d,count", [(2, 2), (3, 3), (6, 6)])
def test_trefoil_colouring_counts(d, count):
    cols = list(enumerate_colorings(B.trefoil_collapsed_shadow(), d))
    assert len(cols) == count
    assert [c.twice("D") for c in cols] == list(range(0, 2 * count, 2))


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7])
def test_universal_has_one_colouring_exactly_for_odd_d(d):
    cols = list(enumerate_colorings(B.universal_shadow(B.theta_graph()), d))
    assert len(cols) == (d % 2)


@given(st.sampled_from(sorted(ALL_BUILT)), st.integers(2, 6))
def test_enumeration_is_sound_and_complete(name, d):
    p = ALL_BUILT[name]()
    cols = list(enumerate_colorings(p, d))
    assert all(is_admissible_coloring(p, c, d) for c in cols)
    assert len({c.key() for c in cols}) == len(cols)


@given(st.sampled_from(["trefoil-collapsed", "trefoil-diagram", "kink"]), st.integers(2, 5), st.integers(3, 12))
def test_r_admissible_colourings_are_a_subset(name, d, r):
    p = ALL_BUILT[name]()
    plain = {c.key() for c in enumerate_colorings(p, d)}
    capped = [c for c in enumerate_colorings(p, d, r=r)]
    assert all(is_admissible_coloring(p, c, d, r) for c in capped)
    assert {c.key() for c in capped} <= plain


@pytest.mark.parametrize("name", ["trefoil-diagram", "bouquet", "bouquet-twisted", "theta", "kink"])
def test_vertex_delta_factors_regroup_onto_edges(name):
    """Every vertex triple is matched by the edge sitting in that slot, so
    the four Delta factors of each vertex are exactly two per edge."""
    p = ALL_BUILT[name]()
    from_vertices = Counter()
    for v in p.vertices:
        for tri, eid in zip(VERTEX_TRIPLES, v.edges):
            from_vertices[eid] += 1
            edge = next(e for e in p.edges if e.id == eid)
            assert Counter(v.slots[s] for s in tri) == Counter(edge.regions)
    assert all(n == 2 for n in from_vertices.values())


def test_shipped_data_files_load():
    import importlib.resources as res

    data = res.files("shadowjones") / "data"
    diagram = B.PlanarDiagram.from_json(json.loads((data / "trefoil_diagram.json").read_text()))
    assert B.diagram_to_shadow(diagram) == B.trefoil_diagram_shadow()
    graph = B.FourValentGraph.from_json(json.loads((data / "theta_graph.json").read_text()))
    assert B.universal_shadow(graph) == B.universal_shadow(B.theta_graph())
