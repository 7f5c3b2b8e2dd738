import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomsym import corpus
from atomsym.atom import (
    boundary_arc_count,
    make_atom,
    parse_atom,
    saddle_order,
    serialize_atom,
)
from atomsym.combmap import build_map
from atomsym.errors import (
    AtomSyntaxError,
    DegreeTwoVertex,
    GenusNonZero,
    OddDegreeVertex,
    SignAlternationViolation,
)

from oracles import random_atom

ROSE2 = ([1, 2, 3, 0], [1, 0, 3, 2])
THETA = ([1, 2, 0, 4, 5, 3], [3, 5, 4, 0, 2, 1])


def test_rose2_valid():
    a = make_atom(*ROSE2, {0: -1, 1: 1, 3: 1})
    assert a.map.num_faces == 3
    assert saddle_order(a, 0) == 2


def test_rose2_all_positive_rejected():
    with pytest.raises(SignAlternationViolation):
        make_atom(*ROSE2, {0: 1, 1: 1, 3: 1})


def test_rose2_signs_must_cover_faces():
    with pytest.raises(SignAlternationViolation):
        make_atom(*ROSE2, {0: -1, 1: 1})
    with pytest.raises(SignAlternationViolation):
        make_atom(*ROSE2, {0: -1, 1: 1, 2: 1})


def test_octahedron_tetrahedral_colouring():
    a = corpus.octahedron()
    m = a.map
    assert (m.num_vertices, m.num_edges, m.num_faces) == (6, 12, 8)
    assert sorted(a.face_sign.values()) == [-1] * 4 + [1] * 4
    assert all(saddle_order(a, c[0]) == 2 for c in m.vertices())


def test_rose3_order():
    a = corpus.rose(3)
    assert saddle_order(a, 0) == 3


def test_torus_rejected():
    m = build_map(4, [1, 2, 3, 0], [2, 3, 0, 1])
    with pytest.raises(GenusNonZero):
        from atomsym.atom import validate_atom

        validate_atom(m, {f[0]: 1 for f in m.faces()})


def test_theta_graph_has_odd_vertices():
    m = build_map(6, *THETA)
    assert m.genus() == 0
    with pytest.raises(OddDegreeVertex, match="at vertex 0"):
        make_atom(*THETA, {f[0]: 1 for f in m.faces()})


def test_degree_two_rejected():
    with pytest.raises(DegreeTwoVertex):
        make_atom([1, 0], [1, 0], {0: 1, 1: -1})


def test_boundary_arcs():
    a = corpus.rose(2)
    assert boundary_arc_count(a, 0) == 2
    assert boundary_arc_count(a, 1) == 1
    c = corpus.cuboctahedron()
    sizes = sorted(boundary_arc_count(c, f[0]) for f in c.map.faces())
    assert sizes == [3] * 8 + [4] * 6


def test_corners_alternate():
    for name in corpus.ATOM_NAMES:
        a = corpus.load(name)
        m = a.map
        for cyc in m.vertices():
            signs = [a.corner_sign(d) for d in cyc]
            assert all(signs[i] != signs[i - 1] for i in range(len(signs)))


def test_rose2_file_roundtrip():
    text = corpus.text("rose_2")
    assert serialize_atom(parse_atom(text)) == text
    assert text == '{\n  "darts": 4,\n  "sigma": [1, 2, 3, 0],\n  "alpha": [1, 0, 3, 2],\n  "signs": {"0": "-", "1": "+", "3": "+"}\n}\n'


def test_octahedron_file():
    a = parse_atom(corpus.text("octahedron"))
    assert (a.map.num_vertices, a.map.num_edges, a.map.num_faces) == (6, 12, 8)


@pytest.mark.parametrize(
    "obj",
    [
        {"darts": 4, "sigma": [1, 2, 3], "alpha": [1, 0, 3, 2], "signs": {}},
        {"darts": 4, "sigma": [1, 2, 3, 0], "alpha": [1, 0, 3, 2]},
        {"darts": "4", "sigma": [1, 2, 3, 0], "alpha": [1, 0, 3, 2], "signs": {}},
        {"darts": 4, "sigma": [1, 2, 3, 0], "alpha": [1, 0, 3, 2], "signs": {"x": "+"}},
        {"darts": 4, "sigma": [1, 2, 3, 0], "alpha": [1, 0, 3, 2], "signs": {"0": "0"}},
        [1, 2, 3],
    ],
)
def test_syntax_errors(obj):
    with pytest.raises(AtomSyntaxError):
        parse_atom(json.dumps(obj))


def test_invalid_json():
    with pytest.raises(AtomSyntaxError):
        parse_atom("{not json")


def test_unicode_minus_accepted():
    text = corpus.text("rose_2").replace('"-"', '"\\u2212"')
    assert parse_atom(text) == corpus.rose(2)


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_random_atom_roundtrip(rng):
    a = random_atom(rng)
    assert parse_atom(serialize_atom(a)) == a


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_atom_euler_identities(rng):
    a = random_atom(rng)
    m = a.map
    assert m.num_vertices - m.num_edges + m.num_faces == 2
    assert sum(saddle_order(a, c[0]) for c in m.vertices()) == m.num_edges
    D = m.dart_count
    assert sum(m.degree(c[0]) for c in m.vertices()) == 2 * m.num_edges == D
    assert sum(boundary_arc_count(a, f) for f in a.face_sign) == D
    assert set(a.face_sign.values()) == {1, -1}
    # every edge separates a positive face from a negative one
    assert sum(boundary_arc_count(a, f) for f, s in a.face_sign.items() if s > 0) == m.num_edges
    assert sum(boundary_arc_count(a, f) for f, s in a.face_sign.items() if s < 0) == m.num_edges


def test_relabelled_atom_still_valid():
    rng = random.Random(3)
    a = corpus.icosidodecahedron()
    p = list(range(a.map.dart_count))
    rng.shuffle(p)
    r = a.map.relabel(p)
    signs = {r.face_of[p[f]]: s for f, s in a.face_sign.items()}
    from atomsym.atom import validate_atom

    validate_atom(r, signs)
