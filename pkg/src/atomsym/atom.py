r"""
Signed atoms.

An atom is a genus-0 oriented map (the critical level component ``K``
embedded in the sphere) together with a sign on each face recording whether
the function is above (``+1``) or below (``-1``) the critical value on that
complementary disk.

Corner convention: at the vertex of dart ``d`` the corner between ``d`` and
``sigma(d)`` lies in the face containing ``alpha(d)``. With ``phi = sigma o
alpha`` this holds because ``phi(alpha(d)) = sigma(d)``. For rose-2
(``sigma = (0 1 2 3)``, ``alpha = 0<->1, 2<->3``) the corners around the
single vertex lie in faces ``(1,)``, ``(0, 2)``, ``(3,)``, ``(0, 2)``.

File format (UTF-8 JSON)::

    {"darts": 4, "sigma": [...], "alpha": [...], "signs": {"0": "-", "1": "+"}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from atomsym.combmap import OrientedMap, build_map
from atomsym.errors import (
    AtomSyntaxError,
    DegreeTwoVertex,
    GenusNegative,
    GenusNonZero,
    NoVertices,
    OddDegreeVertex,
    SignAlternationViolation,
)

_SIGN_TEXT = {1: "+", -1: "-"}
_TEXT_SIGN = {"+": 1, "-": -1, "\u2212": -1}


@dataclass(frozen=True)
class Atom:
    map: OrientedMap
    face_sign: Mapping[int, int]

    def sign_of_dart(self, d: int) -> int:
        """Sign of the face containing dart ``d``."""
        return self.face_sign[self.map.face_of[d]]

    def corner_sign(self, d: int) -> int:
        """Sign of the corner between ``d`` and ``sigma(d)``."""
        return self.sign_of_dart(self.map.alpha[d])

    def __eq__(self, other):
        if not isinstance(other, Atom):
            return NotImplemented
        return self.map == other.map and dict(self.face_sign) == dict(other.face_sign)

    def __hash__(self):
        return hash((self.map, tuple(sorted(self.face_sign.items()))))


def validate_atom(m: OrientedMap, face_sign: Mapping[int, int]) -> Atom:
    """Check the atom invariants and return the validated :class:`Atom`."""
    try:
        g = m.genus()
    except GenusNegative as exc:
        raise GenusNonZero(str(exc)) from None
    if g != 0:
        raise GenusNonZero(f"map has genus {g}")
    if m.num_vertices == 0:
        raise NoVertices("a critical level needs at least one vertex")
    for cyc in m.vertices():
        if len(cyc) % 2:
            raise OddDegreeVertex(f"at vertex {cyc[0]} (degree {len(cyc)})")
        if len(cyc) == 2:
            raise DegreeTwoVertex(f"at vertex {cyc[0]} (degree 2 is a regular point)")
    face_ids = {c[0] for c in m.faces()}
    signs = {int(k): int(v) for k, v in face_sign.items()}
    if set(signs) != face_ids:
        raise SignAlternationViolation(
            f"signs given for faces {sorted(signs)}, map has faces {sorted(face_ids)}"
        )
    for f, s in signs.items():
        if s not in (1, -1):
            raise SignAlternationViolation(f"face {f} has sign {s}, expected +1 or -1")
    atom = Atom(m, signs)
    for cyc in m.vertices():
        for i, d in enumerate(cyc):
            prev = cyc[i - 1]
            if atom.corner_sign(prev) == atom.corner_sign(d):
                raise SignAlternationViolation(
                    f"at vertex {cyc[0]}: corners before and after dart {d} have the same sign"
                )
    return atom


def saddle_order(atom: Atom, vertex: int) -> int:
    """Half the degree of ``vertex`` (its order as a saddle)."""
    return atom.map.degree(vertex) // 2


def boundary_arc_count(atom: Atom, face: int) -> int:
    """Number of boundary arcs of the disk ``face`` (length of its phi-orbit)."""
    return len(atom.map.face(face))


def atom_to_dict(atom: Atom) -> dict:
    m = atom.map
    return {
        "darts": m.dart_count,
        "sigma": list(m.sigma),
        "alpha": list(m.alpha),
        "signs": {str(f): _SIGN_TEXT[atom.face_sign[f]] for f in sorted(atom.face_sign)},
    }


def serialize_atom(atom: Atom) -> str:
    """Canonical text: fixed key order, sign keys sorted numerically."""
    d = atom_to_dict(atom)
    signs = ", ".join(f"{json.dumps(k)}: {json.dumps(v)}" for k, v in d["signs"].items())
    return (
        "{\n"
        f'  "darts": {d["darts"]},\n'
        f'  "sigma": {json.dumps(d["sigma"])},\n'
        f'  "alpha": {json.dumps(d["alpha"])},\n'
        f'  "signs": {{{signs}}}\n'
        "}\n"
    )


def atom_from_dict(obj) -> Atom:
    if not isinstance(obj, dict) or set(obj) != {"darts", "sigma", "alpha", "signs"}:
        raise AtomSyntaxError('expected an object with exactly "darts", "sigma", "alpha", "signs"')
    n = obj["darts"]
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise AtomSyntaxError(f'"darts" must be a positive integer, got {n!r}')
    for key in ("sigma", "alpha"):
        arr = obj[key]
        if not isinstance(arr, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in arr):
            raise AtomSyntaxError(f'"{key}" must be an array of integers')
        if len(arr) != n:
            raise AtomSyntaxError(f'"{key}" has length {len(arr)}, expected {n}')
    raw = obj["signs"]
    if not isinstance(raw, dict):
        raise AtomSyntaxError('"signs" must be an object')
    signs = {}
    for k, v in raw.items():
        try:
            f = int(k)
        except ValueError:
            raise AtomSyntaxError(f"sign key {k!r} is not an integer") from None
        if v not in _TEXT_SIGN:
            raise AtomSyntaxError(f"sign {v!r} for face {k} is not '+' or '-'")
        signs[f] = _TEXT_SIGN[v]
    m = build_map(n, obj["sigma"], obj["alpha"])
    return validate_atom(m, signs)


def parse_atom(text: str) -> Atom:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AtomSyntaxError(f"invalid JSON: {exc}") from None
    return atom_from_dict(obj)


def make_atom(sigma, alpha, signs: Mapping[int, int]) -> Atom:
    """Convenience constructor from raw arrays."""
    return validate_atom(build_map(len(sigma), sigma, alpha), signs)
