"""Bundled example atoms and meshes.

The JSON files under ``data/`` are produced by the builders below; run
``python -m atomsym.corpus`` to regenerate them.
"""

from __future__ import annotations

import math
from importlib import resources
from pathlib import Path

from atomsym.atom import Atom, parse_atom, serialize_atom, validate_atom
from atomsym.combmap import OrientedMap, build_map
from atomsym.errors import SignAlternationViolation
from atomsym.reeb import ScalarMesh, build_mesh, lift_atom, parse_mesh, serialize_mesh

ATOM_NAMES = (
    [f"rose_{n}" for n in range(2, 7)]
    + [f"banana_{n}" for n in range(2, 6)]
    + ["octahedron", "cuboctahedron", "icosidodecahedron"]
)
MESH_NAMES = ["double_bubble_mesh", "octa_sym_mesh"]

# classification of each bundled atom's symmetry group (banana_n: computed)
EXPECTED_CLASS = {
    **{f"rose_{n}": f"Z_{n}" for n in range(2, 7)},
    **{f"banana_{n}": f"D_{n}" for n in range(2, 6)},
    "octahedron": "A4",
    "cuboctahedron": "S4",
    "icosidodecahedron": "A5",
}


def alternating_signs(m: OrientedMap, base_sign: int = 1) -> dict[int, int]:
    """The face 2-colouring in which the two sides of every edge differ.

    The face containing dart 0 gets ``base_sign``.
    """
    signs = {m.face_of[0]: base_sign}
    todo = [m.face_of[0]]
    darts_of = {c[0]: c for c in m.faces()}
    while todo:
        f = todo.pop()
        for d in darts_of[f]:
            g = m.face_of[m.alpha[d]]
            if g not in signs:
                signs[g] = -signs[f]
                todo.append(g)
            elif signs[g] == signs[f]:
                raise SignAlternationViolation("faces admit no alternating sign pattern")
    return signs


def rose(n: int) -> Atom:
    """One saddle of order ``n`` with ``n`` positive petals."""
    D = 2 * n
    sigma = [(d + 1) % D for d in range(D)]
    alpha = [d ^ 1 for d in range(D)]
    m = build_map(D, sigma, alpha)
    return validate_atom(m, alternating_signs(m, -1))


def banana(n: int) -> Atom:
    """Two saddles of order ``n`` joined by ``2n`` arcs (``2n`` bigon faces)."""
    k = 2 * n
    sigma = [(d + 1) % k for d in range(k)] + [k + (d + 1) % k for d in range(k)]
    alpha = [0] * (2 * k)
    for i in range(k):
        j = k + (-i) % k
        alpha[i], alpha[j] = j, i
    m = build_map(2 * k, sigma, alpha)
    return validate_atom(m, alternating_signs(m, 1))


def _polyhedron_map(points) -> OrientedMap:
    pts = sorted(points)
    n = len(pts)

    def sub(p, q):
        return tuple(a - b for a, b in zip(p, q))

    def dot(p, q):
        return sum(a * b for a, b in zip(p, q))

    def cross(p, q):
        return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])

    dist = {(i, j): dot(sub(pts[i], pts[j]), sub(pts[i], pts[j])) for i in range(n) for j in range(n) if i != j}
    dmin = min(dist.values())
    nbrs = {i: [j for j in range(n) if j != i and abs(dist[(i, j)] - dmin) < 1e-9] for i in range(n)}
    darts = []
    for i in range(n):
        p = pts[i]
        ref = sub(pts[min(nbrs[i])], p)
        u = sub(ref, tuple(x * dot(ref, p) / dot(p, p) for x in p))
        w = cross(p, u)

        def angle(j, p=p, u=u, w=w):
            q = sub(pts[j], p)
            return math.atan2(dot(q, w), dot(q, u)) % (2 * math.pi)

        ring = sorted(nbrs[i], key=angle)
        darts.append([(i, j) for j in ring])
    flat = [d for ring in darts for d in ring]
    index = {d: k for k, d in enumerate(flat)}
    sigma = [0] * len(flat)
    for ring in darts:
        for a, d in enumerate(ring):
            sigma[index[d]] = index[ring[(a + 1) % len(ring)]]
    alpha = [index[(j, i)] for (i, j) in flat]
    return build_map(len(flat), sigma, alpha)


def _triangles_positive(m: OrientedMap) -> Atom:
    base = 1 if len(m.face(m.face_of[0])) == 3 else -1
    return validate_atom(m, alternating_signs(m, base))


def octahedron() -> Atom:
    pts = []
    for i in range(3):
        for s in (1, -1):
            p = [0, 0, 0]
            p[i] = s
            pts.append(tuple(p))
    return _triangles_positive(_polyhedron_map(pts))


def cuboctahedron() -> Atom:
    pts = set()
    for i in range(3):
        for s in (1, -1):
            for t in (1, -1):
                p = [s, t]
                p.insert(i, 0)
                pts.add(tuple(p))
    return _triangles_positive(_polyhedron_map(pts))


def icosidodecahedron() -> Atom:
    phi = (1 + math.sqrt(5)) / 2
    pts = set()
    for i in range(3):
        for s in (1, -1):
            p = [0.0, 0.0, 0.0]
            p[i] = s * phi
            pts.add(tuple(p))
    for a in (0.5, -0.5):
        for b in (phi / 2, -phi / 2):
            for c in (phi * phi / 2, -phi * phi / 2):
                for r in range(3):
                    v = (a, b, c)
                    pts.add(tuple(round(x, 12) for x in v[r:] + v[:r]))
    return _triangles_positive(_polyhedron_map(pts))


def double_bubble_mesh() -> ScalarMesh:
    """Ten-vertex sphere: two peaks, one pit and one saddle of order 2.

    Vertices: 0 saddle, 1/3 positive and 2/4 negative link vertices of the
    saddle, 5/6 peaks, 7 pit, 8/9 separators. The half-turn
    ``(1 3)(2 4)(5 6)(8 9)`` swaps the peaks.
    """
    values = [0, 1, -1, 1, -1, 3, 3, -3, -2, -2]
    s, a, b, c, d, p1, p2, pit, x, y = range(10)
    left = [(a, p1, b), (a, d, p1), (b, p1, x), (x, p1, pit), (pit, p1, y), (y, p1, d)]
    swap = {s: s, a: c, b: d, c: a, d: b, p1: p2, p2: p1, pit: pit, x: y, y: x}
    tris = [(s, a, b), (s, b, c), (s, c, d), (s, d, a)] + left + [tuple(swap[v] for v in t) for t in left]
    return build_mesh(values, tris)


DOUBLE_BUBBLE_SWAP = (0, 3, 4, 1, 2, 6, 5, 7, 9, 8)


def octa_sym_mesh() -> ScalarMesh:
    """Sphere with six equal-valued saddles forming the octahedron atom."""
    return lift_atom(octahedron()).mesh


def build(name: str):
    if name.startswith("rose_"):
        return rose(int(name[5:]))
    if name.startswith("banana_"):
        return banana(int(name[7:]))
    return globals()[name]()


def filename(name: str) -> str:
    return f"{name}.mesh.json" if name in MESH_NAMES else f"{name}.atom.json"


def names() -> list[str]:
    return list(ATOM_NAMES) + list(MESH_NAMES)


def text(name: str) -> str:
    """Bundled file contents for ``name``."""
    if name not in names():
        raise KeyError(f"unknown corpus entry {name!r}")
    return resources.files("atomsym").joinpath("data", filename(name)).read_text(encoding="utf-8")


def load(name: str):
    t = text(name)
    return parse_mesh(t) if name in MESH_NAMES else parse_atom(t)


def render(name: str) -> str:
    obj = build(name)
    return serialize_mesh(obj) if name in MESH_NAMES else serialize_atom(obj)


def regenerate(directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name in names():
        (directory / filename(name)).write_text(render(name), encoding="utf-8")


if __name__ == "__main__":
    regenerate(Path(__file__).parent / "data")
