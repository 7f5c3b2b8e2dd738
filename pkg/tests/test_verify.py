import json

import pytest

from atomsym import corpus
from atomsym.combmap import perm_compose
from atomsym.errors import GenusNotZero, NotAnAutomorphism
from atomsym.groups import closure, from_elements
from atomsym.reeb import build_mesh, lift_atom
from atomsym.symmetry import automorphism_group, mesh_group
from atomsym.verify import ATOM_CHECKS, MESH_CHECKS, lefschetz_check, verify_atom, verify_mesh

from scenarios import vertex_rotation_scenario


@pytest.mark.parametrize(
    "name, order, label",
    [("octahedron", 12, "A4"), ("rose_5", 5, "Z_5"), ("icosidodecahedron", 60, "A5"), ("banana_4", 8, "D_4")],
)
def test_atom_reports(name, order, label):
    r = verify_atom(corpus.load(name), input=name)
    assert r.passed
    assert (r.group_order, r.group_class) == (order, label)
    assert [c.name for c in r.checks] == list(ATOM_CHECKS)
    assert all(c.status == "pass" for c in r.checks)


def test_rose2_json():
    r = verify_atom(corpus.rose(2), input="rose_2.atom.json")
    d = json.loads(r.to_json())
    assert d["class"] == "Z_2" and d["group_order"] == 2
    assert {c["status"] for c in d["checks"]} == {"pass"}
    assert d["checks"][5]["witness"]["chi"] == 2


def test_trivial_subgroup_lefschetz_not_applicable():
    a = corpus.rose(3)
    r = verify_atom(a, from_elements(a.map.dart_count, []))
    assert r.check("TWO_INVARIANT_CELLS").status == "not-applicable"
    assert r.passed


def test_subgroup_must_consist_of_automorphisms():
    a = corpus.rose(2)
    with pytest.raises(NotAnAutomorphism):
        verify_atom(a, closure(4, [a.map.sigma]))


def test_lefschetz_fails_on_bad_group():
    a = corpus.rose(2)
    bogus = from_elements(4, [(1, 0, 3, 2)])
    assert lefschetz_check(a, bogus).status == "fail"


def test_double_bubble_report():
    r = verify_mesh(corpus.double_bubble_mesh())
    assert [c.name for c in r.checks] == list(MESH_CHECKS)
    assert r.check("FIX_EDGE_IMPLIES_CYCLIC").status == "pass"
    w = {x["node"]: x for x in r.check("FIX_EDGE_IMPLIES_CYCLIC").witness}
    assert w[1]["class"] == "Z_2"
    assert r.check("SINGLE_VERTEX_CASE").status == "not-applicable"
    assert r.passed


def test_octa_sym_mesh_report():
    r = verify_mesh(corpus.octa_sym_mesh())
    assert r.group_class == "A4"
    assert r.check("FIX_NONEMPTY_SUBTREE").witness["edges"] == []
    assert r.check("FIX_EDGE_IMPLIES_CYCLIC").status == "not-applicable"
    assert r.check("SINGLE_VERTEX_CASE").status == "not-applicable"
    assert r.passed


def test_banana3_single_vertex_case():
    mesh, group, _ = vertex_rotation_scenario(3)
    r = verify_mesh(mesh, group)
    c = r.check("SINGLE_VERTEX_CASE")
    assert c.status == "pass"
    assert (c.witness["k"], c.witness["k1"], c.witness["k2"]) == (3, 3, 3)
    assert {c.witness["z1"], c.witness["z2"]} == {0, 1}
    assert all(g[0] == 0 and g[1] == 1 for g in group.elements)
    assert r.check("MORSE_K2").status == "not-applicable"


def test_banana2_morse_case():
    mesh, group, _ = vertex_rotation_scenario(2)
    r = verify_mesh(mesh, group)
    assert r.check("SINGLE_VERTEX_CASE").status == "pass"
    assert r.check("MORSE_K2").status == "pass"
    assert r.check("MORSE_K2").witness["k"] == 2


@pytest.mark.parametrize("name", ["rose_4", "banana_3", "cuboctahedron", "icosidodecahedron"])
def test_case_branches_exclusive(name):
    mesh = lift_atom(corpus.load(name)).mesh
    r = verify_mesh(mesh)
    assert r.passed
    assert not (
        r.check("SINGLE_VERTEX_CASE").status == "pass" and r.check("FIX_EDGE_IMPLIES_CYCLIC").status != "not-applicable"
    )


def test_full_banana_group_is_not_cyclic_case():
    mesh = lift_atom(corpus.banana(3)).mesh
    r = verify_mesh(mesh)
    assert r.group_class == "D_3"
    assert r.check("SINGLE_VERTEX_CASE").status == "not-applicable"


def test_mesh_genus_checked():
    # 3x3 torus triangulation with a generic height function
    n = 3
    idx = lambda i, j: (i % n) * n + (j % n)  # noqa: E731
    tris = []
    for i in range(n):
        for j in range(n):
            tris += [(idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)), (idx(i, j), idx(i + 1, j + 1), idx(i, j + 1))]
    values = [3 * i + j + (i * j) / 100 for i in range(n) for j in range(n)]
    try:
        torus = build_mesh(values, tris)
    except Exception:
        pytest.skip("torus field degenerate")
    with pytest.raises(GenusNotZero):
        verify_mesh(torus)


def test_report_json_deterministic():
    a = verify_atom(corpus.cuboctahedron(), input="x").to_json()
    b = verify_atom(corpus.cuboctahedron(), input="x").to_json()
    assert a == b
    mesh, group, g = vertex_rotation_scenario(3)
    assert verify_mesh(mesh, group).to_json() == verify_mesh(mesh, mesh_group(mesh, [perm_compose(g, g)])).to_json()
    assert automorphism_group(corpus.banana(3)).order == 6
