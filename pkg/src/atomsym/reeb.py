r"""
PL scalar fields on closed oriented triangulated surfaces and their
Kronrod-Reeb graphs.

Values are exact :class:`~fractions.Fraction` instances. Vertices are
classified by the sign pattern of their link, ties between non-adjacent
regular vertices being broken by vertex index. Equal values on the two ends of
a mesh edge are only allowed between saddles; this is how a critical level
component carrying several saddles is encoded.

The graph is built level by level. For every distinct vertex value ``t`` the
components of ``f^{-1}(t)`` are computed with a union-find over the vertices at
``t`` and the mesh edges crossing ``t``; for every open interval between two
consecutive values the components of the interlevel set are computed the same
way over the edges spanning the interval. Interval components are glued to the
level components at both ends, and the level components that are regular
circles are then contracted away.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from atomsym.atom import Atom, validate_atom
from atomsym.combmap import build_map
from atomsym.errors import (
    AtomSyntaxError,
    DegenerateLevel,
    NotASaddleNode,
    NotClosedSurface,
)
from atomsym.unionfind import UnionFind

MINIMUM = "minimum"
MAXIMUM = "maximum"
SADDLE = "saddle-component"


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class VertexType:
    kind: str  # "minimum", "maximum", "regular" or "saddle"
    order: int  # saddle order k (0 for extrema, 1 for regular points)


@dataclass(eq=False)
class ScalarMesh:
    values: tuple[Fraction, ...]
    triangles: tuple[tuple[int, int, int], ...]
    link: dict[int, tuple[int, ...]] = field(repr=False)
    opposite: dict[tuple[int, int], int] = field(repr=False)
    _types: list = field(default_factory=list, repr=False)

    @property
    def vertex_count(self) -> int:
        return len(self.values)

    def edges(self) -> list[tuple[int, int]]:
        return sorted({_edge(a, b) for (a, b) in self.opposite})

    def euler_characteristic(self) -> int:
        return self.vertex_count - len(self.edges()) + len(self.triangles)

    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    def key(self, v: int) -> tuple[Fraction, int]:
        return (self.values[v], v)

    def vertex_type(self, v: int) -> VertexType:
        return self._types[v]

    def __eq__(self, other):
        if not isinstance(other, ScalarMesh):
            return NotImplemented
        return self.values == other.values and self.triangles == other.triangles

    def __hash__(self):
        return hash((self.values, self.triangles))


def _classify(mesh: ScalarMesh, v: int) -> VertexType:
    kv = mesh.key(v)
    signs = [1 if mesh.key(w) > kv else -1 for w in mesh.link[v]]
    changes = sum(1 for i in range(len(signs)) if signs[i] != signs[i - 1])
    if changes == 0:
        return VertexType(MINIMUM if signs[0] > 0 else MAXIMUM, 0)
    if changes == 2:
        return VertexType("regular", 1)
    return VertexType("saddle", changes // 2)


def build_mesh(values: Sequence, triangles: Sequence[Sequence[int]]) -> ScalarMesh:
    """Validate a closed oriented triangulated surface carrying exact values."""
    vals = tuple(Fraction(x) for x in values)
    n = len(vals)
    tris = []
    directed: dict[tuple[int, int], int] = {}
    for t in triangles:
        t = tuple(int(x) for x in t)
        if len(t) != 3 or any(not 0 <= x < n for x in t):
            raise NotClosedSurface(f"triangle {t} is not a triple of vertex indices")
        if len(set(t)) != 3:
            raise NotClosedSurface(f"degenerate triangle {t}")
        a, b, c = t
        for e, opp in (((a, b), c), ((b, c), a), ((c, a), b)):
            if e in directed:
                raise NotClosedSurface(f"directed edge {e} used twice (orientation or manifold defect)")
            directed[e] = opp
        tris.append(t)
    for (a, b) in directed:
        if (b, a) not in directed:
            raise NotClosedSurface(f"edge {_edge(a, b)} lies on a single triangle")
    # link of v, counterclockwise: triangle (v, a, b) gives a -> b
    nxt: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for (a, b), c in directed.items():
        nxt[a][b] = c
    link = {}
    for v in range(n):
        succ = nxt[v]
        if not succ:
            raise NotClosedSurface(f"vertex {v} lies on no triangle")
        start = min(succ)
        cyc = [start]
        w = succ[start]
        while w != start:
            cyc.append(w)
            w = succ[w]
        if len(cyc) != len(succ):
            raise NotClosedSurface(f"link of vertex {v} is not a single cycle")
        link[v] = tuple(cyc)
    uf = UnionFind(n)
    for a, b in directed:
        uf.union(a, b)
    if len(uf.classes()) != 1:
        raise NotClosedSurface("mesh is not connected")
    for t in tris:
        if vals[t[0]] == vals[t[1]] == vals[t[2]]:
            raise DegenerateLevel(f"triangle {t} is flat at value {vals[t[0]]}")
    mesh = ScalarMesh(vals, tuple(tris), link, directed)
    mesh._types = [_classify(mesh, v) for v in range(n)]
    for a, b in mesh.edges():
        if vals[a] == vals[b]:
            if mesh._types[a].kind != "saddle" or mesh._types[b].kind != "saddle":
                raise DegenerateLevel(f"edge {(a, b)} is level at {vals[a]} between non-saddle vertices")
    for v in range(n):
        if mesh._types[v].kind == "saddle":
            _crossings(mesh, v)  # validates the level pattern around v
    return mesh


def _crossings(mesh: ScalarMesh, v: int) -> list[tuple]:
    """Level-curve crossings of the link of ``v``, counterclockwise.

    A crossing is ``("v", w)`` for a link vertex at the level of ``v`` or
    ``("e", (a, b))`` for a link edge ``a -> b`` strictly crossing it. Each
    entry is followed by the sign of the sector that comes after it.
    """
    c = mesh.values[v]
    lk = mesh.link[v]
    m = len(lk)
    out = []
    for i in range(m):
        a, b = lk[i], lk[(i + 1) % m]
        fa, fb = mesh.values[a], mesh.values[b]
        if fa == c:
            if fb == c:
                raise DegenerateLevel(f"triangle {(v, a, b)} is flat")
            prev = mesh.values[lk[i - 1]]
            if (prev - c) * (fb - c) >= 0:
                raise DegenerateLevel(f"level edge {(v, a)} does not separate sectors of opposite sign")
            out.append((("v", a), 1 if fb > c else -1))
        elif fb != c and (fa - c) * (fb - c) < 0:
            out.append((("e", (a, b)), 1 if fb > c else -1))
    return out


def saddle_order_at(mesh: ScalarMesh, v: int) -> int:
    """Half the number of level-curve crossings of the link of ``v``."""
    return len(_crossings(mesh, v)) // 2


# ---------------------------------------------------------------------------
# Reeb graph


@dataclass(frozen=True)
class ReebNode:
    id: int
    value: Fraction
    tag: str
    vertices: tuple[int, ...]
    crossing_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ReebEdge:
    id: int
    lower: int
    upper: int
    low_value: Fraction
    high_value: Fraction
    bottom_edges: frozenset  # mesh edges of the lowest interlevel component
    top_edges: frozenset  # mesh edges of the highest interlevel component


@dataclass
class ReebGraph:
    nodes: list[ReebNode]
    edges: list[ReebEdge]

    def degree(self, node: int) -> int:
        return sum((e.lower == node) + (e.upper == node) for e in self.edges)

    def is_tree(self) -> bool:
        if len(self.nodes) - len(self.edges) != 1:
            return False
        uf = UnionFind(len(self.nodes))
        for e in self.edges:
            uf.union(e.lower, e.upper)
        return len(uf.classes()) == 1

    def leaves(self) -> list[int]:
        return [n.id for n in self.nodes if self.degree(n.id) == 1]

    def node_of_vertex(self, v: int) -> int | None:
        for n in self.nodes:
            if v in n.vertices:
                return n.id
        return None

    def edges_in_range(self, c) -> int:
        return sum(1 for e in self.edges if e.low_value < c < e.high_value)

    def to_dot(self) -> str:
        lines = ["graph reeb {"]
        for n in self.nodes:
            lines.append(f'  n{n.id} [label="v={_fmt(n.value)} ({n.tag})"];')
        for e in self.edges:
            lines.append(f"  n{e.lower} -- n{e.upper};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"id": n.id, "value": _fmt(n.value), "tag": n.tag, "vertices": list(n.vertices)}
                for n in self.nodes
            ],
            "edges": [{"id": e.id, "lower": e.lower, "upper": e.upper} for e in self.edges],
        }


def _fmt(x: Fraction):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _level_components(mesh: ScalarMesh, t: Fraction):
    """Components of ``f^{-1}(t)`` as lists of elements ``("v", i)`` / ``("e", (a, b))``."""
    vals = mesh.values
    elems: dict = {}
    for v, x in enumerate(vals):
        if x == t:
            elems[("v", v)] = len(elems)
    for a, b in mesh.edges():
        if min(vals[a], vals[b]) < t < max(vals[a], vals[b]):
            elems[("e", (a, b))] = len(elems)
    uf = UnionFind(len(elems))
    for tri in mesh.triangles:
        here = []
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            if vals[a] == t:
                here.append(elems[("v", a)])
            key = ("e", _edge(a, b))
            if key in elems:
                here.append(elems[key])
        for x in here[1:]:
            uf.union(here[0], x)
    keys = list(elems)
    return [[keys[i] for i in cls] for cls in uf.classes()], elems, uf


def _interlevel_components(mesh: ScalarMesh, lo: Fraction, hi: Fraction):
    vals = mesh.values
    span = [e for e in mesh.edges() if min(vals[e[0]], vals[e[1]]) <= lo and max(vals[e[0]], vals[e[1]]) >= hi]
    index = {e: i for i, e in enumerate(span)}
    uf = UnionFind(len(span))
    for tri in mesh.triangles:
        here = [index[_edge(tri[i], tri[(i + 1) % 3])] for i in range(3) if _edge(tri[i], tri[(i + 1) % 3]) in index]
        for x in here[1:]:
            uf.union(here[0], x)
    return [[span[i] for i in cls] for cls in uf.classes()]


def reeb_graph(mesh: ScalarMesh) -> ReebGraph:
    """Kronrod-Reeb graph of the PL field on ``mesh``."""
    vals = mesh.values
    levels = sorted(set(vals))
    raw_nodes = []  # (level index, elements)
    elem_to_raw: list[dict] = []
    for li, t in enumerate(levels):
        comps, _, _ = _level_components(mesh, t)
        lookup = {}
        for comp in comps:
            rid = len(raw_nodes)
            raw_nodes.append((li, comp))
            for el in comp:
                lookup[el] = rid
        elem_to_raw.append(lookup)
    raw_up: dict[int, list] = {i: [] for i in range(len(raw_nodes))}
    raw_down: dict[int, list] = {i: [] for i in range(len(raw_nodes))}
    raw_edges = []  # (lower raw, upper raw, mesh edges)
    for li in range(len(levels) - 1):
        lo, hi = levels[li], levels[li + 1]
        for comp in _interlevel_components(mesh, lo, hi):
            a, b = comp[0]
            if vals[a] > vals[b]:
                a, b = b, a
            low_el = ("v", a) if vals[a] == lo else ("e", (min(a, b), max(a, b)))
            high_el = ("v", b) if vals[b] == hi else ("e", (min(a, b), max(a, b)))
            low = elem_to_raw[li][low_el]
            high = elem_to_raw[li + 1][high_el]
            rid = len(raw_edges)
            raw_edges.append((low, high, frozenset(comp)))
            raw_up[low].append(rid)
            raw_down[high].append(rid)

    critical = []
    for rid, (li, comp) in enumerate(raw_nodes):
        verts = [el[1] for el in comp if el[0] == "v"]
        kinds = {mesh.vertex_type(v).kind for v in verts}
        is_crit = bool(kinds - {"regular"}) or len(raw_up[rid]) != 1 or len(raw_down[rid]) != 1
        if is_crit and "regular" in kinds:
            raise DegenerateLevel(
                f"level {levels[li]} mixes critical and regular vertices in one component: {sorted(verts)}"
            )
        if is_crit:
            critical.append(rid)

    def sort_key(rid):
        li, comp = raw_nodes[rid]
        return (levels[li], min((el[1] for el in comp if el[0] == "v"), default=-1), str(sorted(comp)))

    critical.sort(key=sort_key)
    node_id = {rid: i for i, rid in enumerate(critical)}
    nodes = []
    for rid in critical:
        li, comp = raw_nodes[rid]
        verts = tuple(sorted(el[1] for el in comp if el[0] == "v"))
        cross = tuple(sorted(el[1] for el in comp if el[0] == "e"))
        if not raw_down[rid]:
            tag = MINIMUM
        elif not raw_up[rid]:
            tag = MAXIMUM
        else:
            tag = SADDLE
        nodes.append(ReebNode(node_id[rid], levels[li], tag, verts, cross))

    edges = []
    for rid in critical:
        for first in raw_up[rid]:
            cur = first
            while True:
                top = raw_edges[cur][1]
                if top in node_id:
                    break
                (cur,) = raw_up[top]
            lo_node, hi_node = node_id[rid], node_id[top]
            edges.append(
                (lo_node, hi_node, min(raw_edges[first][2]), raw_edges[first][2], raw_edges[cur][2])
            )
    edges.sort(key=lambda e: (e[0], e[1], e[2]))
    out_edges = [
        ReebEdge(i, lo, hi, nodes[lo].value, nodes[hi].value, bottom, top)
        for i, (lo, hi, _, bottom, top) in enumerate(edges)
    ]
    return ReebGraph(nodes, out_edges)


def star(reeb: ReebGraph, v: int) -> list[int]:
    """Ids of the Reeb edges incident to node ``v``, in increasing order."""
    return [e.id for e in reeb.edges if v in (e.lower, e.upper)]


# ---------------------------------------------------------------------------
# atom extraction


@dataclass(frozen=True)
class ExtractedAtom:
    atom: Atom
    node: int
    darts: tuple[tuple[int, tuple], ...]  # dart -> (mesh vertex, crossing)
    atom_vertex_to_mesh: dict[int, int]
    face_to_star_edge: dict[int, int]

    def dart_index(self) -> dict:
        return {key: i for i, key in enumerate(self.darts)}

    def induced_dart_perm(self, g: Sequence[int]) -> tuple[int, ...]:
        """Dart permutation induced by a mesh vertex permutation fixing the node."""
        index = self.dart_index()
        out = []
        for v, cr in self.darts:
            if cr[0] == "v":
                img = ("v", g[cr[1]])
            else:
                a, b = cr[1]
                img = ("e", (g[a], g[b]))
            out.append(index[(g[v], img)])
        return tuple(out)


def _trace(mesh: ScalarMesh, v: int, crossing: tuple) -> tuple[int, tuple]:
    """Follow the level polyline leaving ``v`` through ``crossing`` to its other end."""
    vals = mesh.values
    c = vals[v]
    if crossing[0] == "v":
        return crossing[1], ("v", v)
    a, b = crossing[1]  # triangle (v, a, b) counterclockwise
    for _ in range(len(mesh.triangles) + 1):
        q = mesh.opposite[(b, a)]  # triangle (b, a, q) across the edge
        if vals[q] == c:
            # at q the link edge is b -> a (triangle (q, b, a))
            return q, ("e", (b, a))
        if (vals[a] - c) * (vals[q] - c) < 0:
            b = q  # leave through a -> q
        else:
            a = q  # leave through q -> b
    raise DegenerateLevel("level polyline does not close up")


def _extract(mesh: ScalarMesh, reeb: ReebGraph, node: int) -> ExtractedAtom:
    nd = reeb.nodes[node]
    if nd.tag != SADDLE:
        raise NotASaddleNode(f"node {node} is a {nd.tag}")
    saddles = [v for v in nd.vertices if mesh.vertex_type(v).kind == "saddle"]
    if not saddles or len(saddles) != len(nd.vertices):
        raise NotASaddleNode(f"node {node} carries no saddle vertex")
    darts = []
    corner_sign = []
    corner_vertex = []
    per_vertex = []
    for v in saddles:
        cr = _crossings(mesh, v)
        lk = mesh.link[v]
        start = len(darts)
        for (key, sgn) in cr:
            darts.append((v, key))
            corner_sign.append(sgn)
            # first link vertex of the sector following the crossing
            if key[0] == "v":
                w = lk[(lk.index(key[1]) + 1) % len(lk)]
            else:
                w = key[1][1]
            corner_vertex.append(w)
        per_vertex.append(range(start, len(darts)))
    index = {k: i for i, k in enumerate(darts)}
    D = len(darts)
    sigma = [0] * D
    for rng in per_vertex:
        ids = list(rng)
        for i, d in enumerate(ids):
            sigma[d] = ids[(i + 1) % len(ids)]
    alpha = [0] * D
    for d, (v, key) in enumerate(darts):
        w, key2 = _trace(mesh, v, key)
        alpha[d] = index[(w, key2)]
    m = build_map(D, sigma, alpha)
    signs: dict[int, int] = {}
    face_edge: dict[int, int] = {}
    for d in range(D):
        f = m.face_of[m.alpha[d]]
        s = corner_sign[d]
        if signs.setdefault(f, s) != s:
            raise DegenerateLevel(f"face {f} of the level component has corners of both signs")
        v, w = darts[d][0], corner_vertex[d]
        me = _edge(v, w)
        eid = None
        for e in reeb.edges:
            if e.lower == node and s > 0 and me in e.bottom_edges:
                eid = e.id
            elif e.upper == node and s < 0 and me in e.top_edges:
                eid = e.id
        if eid is None or face_edge.setdefault(f, eid) != eid:
            raise DegenerateLevel(f"face {f} does not match a unique Reeb edge")
    atom = validate_atom(m, signs)
    vmap = {cyc[0]: darts[cyc[0]][0] for cyc in m.vertices()}
    return ExtractedAtom(atom, node, tuple(darts), vmap, face_edge)


def extract_atom(mesh: ScalarMesh, node: int, reeb: ReebGraph | None = None) -> Atom:
    """Signed atom of the critical level component at the saddle node ``node``."""
    if reeb is None:
        reeb = reeb_graph(mesh)
    return _extract(mesh, reeb, node).atom


def extract(mesh: ScalarMesh, node: int, reeb: ReebGraph | None = None) -> ExtractedAtom:
    """Like :func:`extract_atom` but keeps the correspondence with the mesh."""
    if reeb is None:
        reeb = reeb_graph(mesh)
    return _extract(mesh, reeb, node)


# ---------------------------------------------------------------------------
# lifting an atom to a mesh


@dataclass(frozen=True)
class LiftedAtom:
    mesh: ScalarMesh
    atom: Atom

    @property
    def layout(self):
        m = self.atom.map
        verts = [c[0] for c in m.vertices()]
        faces = [c[0] for c in m.faces()]
        return verts, faces

    def vertex_perm(self, h: Sequence[int]) -> tuple[int, ...]:
        """Mesh vertex permutation induced by the atom automorphism ``h``."""
        m = self.atom.map
        verts, faces = self.layout
        V, F = len(verts), len(faces)
        vpos = {v: i for i, v in enumerate(verts)}
        fpos = {f: i for i, f in enumerate(faces)}
        out = [0] * self.mesh.vertex_count
        for v in verts:
            out[vpos[v]] = vpos[m.vertex_of[h[v]]]
        for f in faces:
            out[V + fpos[f]] = V + fpos[m.face_of[h[f]]]
        base = V + F
        for d in range(m.dart_count):
            for j in range(3):
                out[base + 3 * d + j] = base + 3 * h[d] + j
        return tuple(out)


def lift_atom(atom: Atom) -> LiftedAtom:
    """Triangulated sphere whose field has ``atom`` as its only saddle level.

    Saddles sit at 0; each dart ``d`` gets three vertices on the side of its
    face (near its tail, middle, near its head) at values ``s``, ``3s/2`` and
    ``2s`` where ``s`` is the face sign; each face gets a center at ``3s``.
    """
    m = atom.map
    verts = [c[0] for c in m.vertices()]
    faces = [c[0] for c in m.faces()]
    V, F = len(verts), len(faces)
    vpos = {v: i for i, v in enumerate(verts)}
    fpos = {f: i for i, f in enumerate(faces)}
    base = V + F

    def T(d):
        return base + 3 * d

    def M(d):
        return base + 3 * d + 1

    def H(d):
        return base + 3 * d + 2

    values: list[Fraction] = [Fraction(0)] * V
    for f in faces:
        values.append(Fraction(3 * atom.face_sign[f]))
    for d in range(m.dart_count):
        s = atom.sign_of_dart(d)
        values += [Fraction(s), Fraction(3 * s, 2), Fraction(2 * s)]
    sigma, alpha, phi = m.sigma, m.alpha, m.phi
    tris = []
    for x in range(m.dart_count):
        w = vpos[m.vertex_of[x]]
        ax = alpha[x]
        tris.append((w, T(x), H(ax)))
        tris.append((w, H(ax), T(sigma[x])))
        if x < ax:
            tris += [
                (T(x), M(x), M(ax)),
                (T(x), M(ax), H(ax)),
                (M(x), H(x), T(ax)),
                (M(x), T(ax), M(ax)),
            ]
        c = V + fpos[m.face_of[x]]
        tris += [(c, M(x), T(x)), (c, H(x), M(x)), (c, T(phi[x]), H(x))]
    return LiftedAtom(build_mesh(values, tris), atom)


# ---------------------------------------------------------------------------
# file format


def mesh_from_dict(obj) -> ScalarMesh:
    if not isinstance(obj, dict) or set(obj) != {"values", "triangles"}:
        raise AtomSyntaxError('expected an object with exactly "values" and "triangles"')
    vals = []
    for x in obj["values"] if isinstance(obj["values"], list) else [None]:
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise AtomSyntaxError(f"value {x!r} is not an integer or a 'p/q' string")
        try:
            vals.append(Fraction(x))
        except (ValueError, ZeroDivisionError):
            raise AtomSyntaxError(f"value {x!r} is not a rational") from None
    tris = obj["triangles"]
    if not isinstance(tris, list) or not all(
        isinstance(t, list) and len(t) == 3 and all(isinstance(i, int) and not isinstance(i, bool) for i in t)
        for t in tris
    ):
        raise AtomSyntaxError('"triangles" must be an array of integer triples')
    return build_mesh(vals, tris)


def parse_mesh(text: str) -> ScalarMesh:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AtomSyntaxError(f"invalid JSON: {exc}") from None
    return mesh_from_dict(obj)


def serialize_mesh(mesh: ScalarMesh) -> str:
    vals = ", ".join(json.dumps(int(x)) if x.denominator == 1 else json.dumps(_fmt(x)) for x in mesh.values)
    tris = ",\n    ".join(json.dumps(list(t)) for t in mesh.triangles)
    return "{\n" f'  "values": [{vals}],\n' f'  "triangles": [\n    {tris}\n  ]\n' "}\n"
