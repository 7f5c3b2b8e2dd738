import pytest

from atomsym import corpus
from atomsym.atom import parse_atom, serialize_atom
from atomsym.reeb import parse_mesh, serialize_mesh
from atomsym.symmetry import automorphism_group, face_action
from atomsym.groups import classify

from oracles import brute_force_automorphisms, centralizer_automorphisms


@pytest.mark.parametrize("name", corpus.names())
def test_bundled_file_matches_builder(name):
    assert corpus.text(name) == corpus.render(name)


@pytest.mark.parametrize("name", corpus.names())
def test_byte_roundtrip(name):
    text = corpus.text(name)
    if name in corpus.MESH_NAMES:
        assert serialize_mesh(parse_mesh(text)) == text
    else:
        assert serialize_atom(parse_atom(text)) == text


@pytest.mark.parametrize("name", corpus.ATOM_NAMES)
def test_expected_classes(name):
    a = corpus.load(name)
    assert classify(face_action(a)).label == corpus.EXPECTED_CLASS[name]


@pytest.mark.parametrize("name", [n for n in corpus.ATOM_NAMES if n.startswith(("rose", "banana"))])
def test_group_matches_centralizer_oracle(name):
    a = corpus.load(name)
    assert set(automorphism_group(a).elements) == centralizer_automorphisms(a)


def test_centralizer_oracle_agrees_with_full_filter():
    for name in ("rose_2", "rose_3", "rose_4", "banana_2"):
        a = corpus.load(name)
        assert centralizer_automorphisms(a) == brute_force_automorphisms(a)


def test_unknown_name():
    with pytest.raises(KeyError):
        corpus.text("nope")


def test_regenerate(tmp_path):
    corpus.regenerate(tmp_path)
    for name in corpus.names():
        assert (tmp_path / corpus.filename(name)).read_text() == corpus.text(name)
