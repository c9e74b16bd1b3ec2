import pytest
from hypothesis import given
from hypothesis import strategies as st

from shadowjones import builders as B
from shadowjones.qalg import HalfInt
from shadowjones.shadow import ShadowError, first_betti, validate


def test_diagram_shadow_matches_hand_built_trefoil():
    assert B.diagram_to_shadow(B.trefoil_diagram()) == B.trefoil_diagram_shadow()


def test_trefoil_diagram_gleams():
    p = B.trefoil_diagram_shadow()
    gleams = {r.id: r.gleam for r in p.regions}
    assert gleams["C"] == HalfInt(-3) and gleams["O"] == HalfInt(-3)
    assert all(gleams[f"L{k}"] == HalfInt(2) for k in (1, 2, 3))


@pytest.mark.parametrize("over", [0, 1])
def test_crossing_gleams_sum_to_zero(over):
    c = B.Crossing("X", ("a", "b", "c", "e"), ("f0", "f1", "f2", "f3"), over)
    g = B.crossing_gleams(c)
    assert sum(x.twice for x in g) == 0
    assert sorted(x.twice for x in g) == [-1, -1, 1, 1]
    # the two faces on opposite corners share a sign
    assert g[0] == g[2] and g[1] == g[3]


def test_swapping_over_strand_flips_gleams():
    c0 = B.Crossing("X", ("a", "b", "c", "e"), ("f0", "f1", "f2", "f3"), 0)
    c1 = B.Crossing("X", ("a", "b", "c", "e"), ("f0", "f1", "f2", "f3"), 1)
    assert [-x.twice for x in B.crossing_gleams(c0)] == [x.twice for x in B.crossing_gleams(c1)]


def test_diagram_round_trip_and_problems():
    dg = B.trefoil_diagram()
    assert B.PlanarDiagram.from_json(dg.to_json()) == dg
    assert B.diagram_problems(dg) == []
    data = dg.to_json()
    data["crossings"][0]["edges"] = data["crossings"][0]["edges"][:3]
    with pytest.raises(ShadowError):
        B.diagram_to_shadow(B.PlanarDiagram.from_json(data))


def test_circle_framing_sets_outer_gleam():
    p = B.diagram_to_shadow(B.circle_diagram(framing_twice=4))
    assert validate(p) == [] and first_betti(p) == 0
    assert any(r.gleam == HalfInt.of(2) for r in p.regions)


@pytest.mark.parametrize("g", [B.bouquet_graph(), B.bouquet_graph(True), B.theta_graph(), B.chain_graph(3),
                               B.chain_graph(5)])
def test_graphs_are_well_formed(g):
    assert g.problems() == []
    assert B.FourValentGraph.from_json(g.to_json()) == g


@pytest.mark.parametrize("twisted,regions", [(False, 3), (True, 4)])
def test_bouquet_structures_differ(twisted, regions):
    assert len(B.universal_shadow(B.bouquet_graph(twisted)).regions) == regions


@given(st.integers(1, 6))
def test_universal_shadow_shape(c):
    p = B.universal_for(c)
    assert validate(p) == []
    assert len(p.vertices) == c
    assert all(r.gleam == HalfInt(0) and r.euler == 0 for r in p.regions)
    assert first_betti(p) == c + 1


def test_bad_gluing_is_reported():
    g = B.theta_graph()
    data = g.to_json()
    data["edges"][0]["gluing"] = [0, 0, 1]
    assert B.FourValentGraph.from_json(data).problems()


def test_closed_form_rejects_bad_input():
    with pytest.raises(ValueError):
        B.universal_jones_closed_form(0, 3)
    assert B.universal_jones_closed_form(2, 4).is_zero()


def test_universal_for_rejects_zero():
    with pytest.raises(ValueError):
        B.universal_for(0)
