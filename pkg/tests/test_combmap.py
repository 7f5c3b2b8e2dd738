import pytest
from hypothesis import given
from hypothesis import strategies as st

from atomsym import corpus
from atomsym.combmap import (
    OrientedMap,
    build_map,
    perm_compose,
    perm_identity,
    perm_invert,
    perm_orbits,
    perm_order,
)
from atomsym.errors import Disconnected, GenusNegative, InvolutionViolation, NotAPermutation

perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(n))))


def rose2():
    return build_map(4, [1, 2, 3, 0], [1, 0, 3, 2])


def test_rose2_counts():
    m = rose2()
    assert (m.num_vertices, m.num_edges, m.num_faces) == (1, 2, 3)
    assert m.euler_characteristic() == 2
    assert m.genus() == 0


def test_rose2_faces():
    assert sorted(rose2().faces()) == [(0, 2), (1,), (3,)]


def test_single_loop():
    m = build_map(2, [1, 0], [1, 0])
    assert (m.num_vertices, m.num_edges, m.num_faces) == (1, 1, 2)
    assert m.faces() == [(0,), (1,)]
    assert m.euler_characteristic() == 2


def test_octahedron_map():
    m = corpus.octahedron().map
    assert m.dart_count == 24
    assert m.num_faces == 8
    assert all(len(f) == 3 for f in m.faces())
    assert m.euler_characteristic() == 2 and m.genus() == 0


def test_torus():
    m = build_map(4, [1, 2, 3, 0], [2, 3, 0, 1])
    assert m.euler_characteristic() == 0
    assert m.genus() == 1


def test_alpha_fixed_point_rejected():
    with pytest.raises(InvolutionViolation):
        build_map(2, [1, 0], [0, 1])


def test_alpha_not_involution_rejected():
    with pytest.raises(InvolutionViolation):
        build_map(4, [1, 2, 3, 0], [1, 2, 3, 0])


def test_not_a_permutation():
    with pytest.raises(NotAPermutation):
        build_map(4, [0, 0, 1, 2], [1, 0, 3, 2])
    with pytest.raises(NotAPermutation):
        build_map(2, [1, 0, 2], [1, 0])


def test_disconnected():
    with pytest.raises(Disconnected):
        build_map(4, [1, 0, 3, 2], [1, 0, 3, 2])


def test_genus_negative_on_unchecked_disconnected_map():
    # bypasses build_map: two isolated edges give chi = 4
    m = OrientedMap(4, (0, 1, 2, 3), (1, 0, 3, 2))
    assert m.euler_characteristic() == 4
    with pytest.raises(GenusNegative):
        m.genus()


def test_cell_ids_are_minimal_darts():
    m = corpus.cuboctahedron().map
    for orbits, label in ((m.vertices(), m.vertex_of), (m.edges(), m.edge_of), (m.faces(), m.face_of)):
        for orb in orbits:
            assert all(label[d] == min(orb) for d in orb)


def test_face_convention_phi_is_sigma_after_alpha():
    m = rose2()
    for d in range(4):
        assert m.phi[d] == m.sigma[m.alpha[d]]


@given(perms)
def test_inverse(p):
    assert perm_compose(p, perm_invert(p)) == perm_identity(len(p))


@given(perms)
def test_orbits_partition(p):
    orbits = perm_orbits(p)
    assert sorted(d for o in orbits for d in o) == list(range(len(p)))
    for o in orbits:
        assert o[0] == min(o)
        for i, d in enumerate(o):
            assert p[d] == o[(i + 1) % len(o)]


@given(perms)
def test_order_is_lcm_of_cycles(p):
    q = tuple(p)
    k = perm_order(p)
    for _ in range(k - 1):
        q = perm_compose(p, q)
    assert q == perm_identity(len(p))


@given(st.integers(0, 10**6))
def test_relabel_preserves_counts(seed):
    import random

    rng = random.Random(seed)
    m = corpus.cuboctahedron().map
    p = list(range(m.dart_count))
    rng.shuffle(p)
    r = m.relabel(p)
    assert (r.num_vertices, r.num_edges, r.num_faces) == (m.num_vertices, m.num_edges, m.num_faces)
    assert sorted(map(len, r.faces())) == sorted(map(len, m.faces()))
