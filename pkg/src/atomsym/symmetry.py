"""Symmetries of atoms and of meshes, and the actions they induce on faces and
on the Reeb tree.

Automorphisms of a connected map are found by extension: an automorphism is
determined by the image of one dart, so for each candidate image of dart 0 the
relations ``h sigma = sigma h`` and ``h alpha = alpha h`` are propagated over
the map until they either define a permutation or contradict each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from atomsym.atom import Atom, boundary_arc_count, saddle_order
from atomsym.combmap import OrientedMap, Perm, build_map, perm_compose, perm_identity, perm_invert, perm_order
from atomsym.errors import (
    ConsistencyError,
    EmptyFixedSet,
    GenusNotZero,
    KernelNotTrivial,
    LefschetzViolation,
    NotAnAutomorphism,
    ValueNotPreserved,
    VertexNotFixed,
)
from atomsym.groups import PermGroup, closure, from_elements, is_cyclic
from atomsym.reeb import ReebGraph, ScalarMesh, star
from atomsym.unionfind import UnionFind


def _extend(m: OrientedMap, base: int, image: int, reverse: bool = False) -> Perm | None:
    D = m.dart_count
    sig, alpha = m.sigma, m.alpha
    sig_img = perm_invert(sig) if reverse else sig
    h = [-1] * D
    h[base] = image
    stack = [base]
    while stack:
        d = stack.pop()
        e = h[d]
        for dn, en in ((sig[d], sig_img[e]), (alpha[d], alpha[e])):
            if h[dn] < 0:
                h[dn] = en
                stack.append(dn)
            elif h[dn] != en:
                return None
    if len(set(h)) != D:
        return None
    return tuple(h)


def map_automorphisms(
    m: OrientedMap,
    label: Callable[[int], Hashable] | None = None,
    reverse: bool = False,
) -> list[Perm]:
    """All automorphisms of ``m`` preserving the dart labelling ``label``.

    With ``reverse=True`` the orientation-reversing ones are returned instead
    (``h sigma = sigma^-1 h``).
    """
    base = 0
    deg = [len(m.vertex(m.vertex_of[d])) for d in range(m.dart_count)]
    flen = [len(m.face(m.face_of[d])) for d in range(m.dart_count)]
    lab = [label(d) for d in range(m.dart_count)] if label else [None] * m.dart_count
    out = []
    for image in range(m.dart_count):
        if deg[image] != deg[base] or lab[image] != lab[base]:
            continue
        if not reverse and flen[image] != flen[base]:
            continue
        h = _extend(m, base, image, reverse)
        if h is None:
            continue
        if label and any(lab[h[d]] != lab[d] for d in range(m.dart_count)):
            continue
        out.append(h)
    return sorted(out)


def is_map_automorphism(atom: Atom, h: Sequence[int]) -> bool:
    m = atom.map
    h = tuple(h)
    if sorted(h) != list(range(m.dart_count)):
        return False
    if perm_compose(h, m.sigma) != perm_compose(m.sigma, h):
        return False
    if perm_compose(h, m.alpha) != perm_compose(m.alpha, h):
        return False
    return all(atom.sign_of_dart(h[d]) == atom.sign_of_dart(d) for d in range(m.dart_count))


def automorphism_group(atom: Atom) -> PermGroup:
    """Orientation- and sign-preserving automorphisms of ``atom`` acting on darts."""
    return from_elements(atom.map.dart_count, map_automorphisms(atom.map, atom.sign_of_dart))


def reversing_automorphisms(atom: Atom) -> list[Perm]:
    """Orientation-reversing, sign-preserving automorphisms (not used by any check)."""
    m = atom.map
    out = []
    for h in map_automorphisms(m, reverse=True):
        # a reversing map sends the face of d to the face of alpha(h(d))
        if all(atom.sign_of_dart(m.alpha[h[d]]) == atom.sign_of_dart(d) for d in range(m.dart_count)):
            out.append(h)
    return out


def subgroup_closure(atom: Atom, elements: Iterable[Sequence[int]]) -> PermGroup:
    gens = [tuple(h) for h in elements]
    for h in gens:
        if not is_map_automorphism(atom, h):
            raise NotAnAutomorphism(f"{list(h)} is not a sign-preserving automorphism")
    return closure(atom.map.dart_count, gens)


# ---------------------------------------------------------------------------
# action on faces


def face_ids(atom: Atom) -> list[int]:
    return [c[0] for c in atom.map.faces()]


def face_perm(atom: Atom, h: Sequence[int]) -> Perm:
    """Permutation of face indices (positions in ``face_ids``) induced by ``h``."""
    ids = face_ids(atom)
    pos = {f: i for i, f in enumerate(ids)}
    return tuple(pos[atom.map.face_of[h[f]]] for f in ids)


def face_action(atom: Atom, group: PermGroup | None = None) -> PermGroup:
    """Image of ``group`` on the faces; raises if the action has a kernel."""
    if group is None:
        group = automorphism_group(atom)
    F = atom.map.num_faces
    ident = perm_identity(F)
    images = {}
    for h in group.elements:
        fp = face_perm(atom, h)
        if fp == ident and h != group.identity:
            raise KernelNotTrivial(f"non-identity automorphism {list(h)} fixes every face")
        images[h] = fp
    out = from_elements(F, images.values())
    if out.order != group.order:
        raise KernelNotTrivial("face action is not injective")
    return out


def face_kernel(atom: Atom, group: PermGroup) -> list[Perm]:
    ident = perm_identity(atom.map.num_faces)
    return [h for h in group.elements if face_perm(atom, h) == ident]


# ---------------------------------------------------------------------------
# cells


class Cell(NamedTuple):
    dim: int
    id: int  # minimal dart of the orbit

    def __str__(self) -> str:
        return f"{('vertex', 'edge', 'face')[self.dim]} {self.id}"


def cells(atom: Atom) -> list[Cell]:
    m = atom.map
    return (
        [Cell(0, c[0]) for c in m.vertices()]
        + [Cell(1, c[0]) for c in m.edges()]
        + [Cell(2, c[0]) for c in m.faces()]
    )


def _cell_of(m: OrientedMap, dim: int):
    return (m.vertex_of, m.edge_of, m.face_of)[dim]


def cell_image(atom: Atom, h: Sequence[int], cell: Cell) -> Cell:
    return Cell(cell.dim, _cell_of(atom.map, cell.dim)[h[cell.id]])


def fixed_cells(atom: Atom, h: Sequence[int]) -> list[Cell]:
    return [c for c in cells(atom) if cell_image(atom, h, c) == c]


def invariant_cells(atom: Atom, h: Sequence[int]) -> list[Cell]:
    """Cells left invariant by ``h``; exactly two unless ``h`` is the identity."""
    h = tuple(h)
    out = fixed_cells(atom, h)
    if h != perm_identity(len(h)) and len(out) != 2:
        raise LefschetzViolation(f"{list(h)} leaves {len(out)} cells invariant: {[str(c) for c in out]}")
    return out


@dataclass(frozen=True)
class CellStabilizer:
    cell: Cell
    group: PermGroup
    cyclic: bool
    bound: int  # k for a vertex, n for a face, 1 for an edge
    arcs: tuple[int, ...]  # darts the stabilizer permutes freely
    orbit_sizes: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def divides(self) -> bool:
        return self.bound % self.order == 0

    @property
    def free(self) -> bool:
        """Every orbit on the arcs has full length, and the orbits tile the arcs."""
        n = self.order
        return all(s == n for s in self.orbit_sizes) and n * len(self.orbit_sizes) == len(self.arcs)

    def certificate(self) -> dict:
        return {
            "cell": str(self.cell),
            "order": self.order,
            "bound": self.bound,
            "cyclic": self.cyclic,
            "divides": self.divides,
            "free": self.free,
            "orbits": len(self.orbit_sizes),
        }


def _orbit_sizes(elements, points) -> tuple[int, ...]:
    seen = set()
    sizes = []
    for p in points:
        if p in seen:
            continue
        orb = {g[p] for g in elements}
        seen |= orb
        sizes.append(len(orb))
    return tuple(sizes)


def cell_stabilizer(atom: Atom, group: PermGroup, cell: Cell) -> CellStabilizer:
    """Subgroup of ``group`` leaving ``cell`` invariant, with its action on arcs.

    For a vertex of order ``k`` the arcs are the ``k`` darts followed by a
    positive sector; for a face they are the darts along its boundary.
    """
    cell = Cell(*cell)
    m = atom.map
    stab = [h for h in group.elements if cell_image(atom, h, cell) == cell]
    sub = from_elements(group.degree, stab)
    if cell.dim == 0:
        bound = saddle_order(atom, cell.id)
        arcs = tuple(d for d in m.vertex(cell.id) if atom.corner_sign(d) > 0)
    elif cell.dim == 1:
        bound = 1
        arcs = tuple(sorted({cell.id, m.alpha[cell.id]}))
    else:
        bound = boundary_arc_count(atom, cell.id)
        arcs = m.face(cell.id)
    sizes = _orbit_sizes(stab, arcs)
    return CellStabilizer(cell, sub, is_cyclic(sub), bound, arcs, sizes)


# ---------------------------------------------------------------------------
# mesh symmetries and the action on the Reeb tree


def mesh_map(mesh: ScalarMesh) -> tuple[OrientedMap, list[tuple[int, int]]]:
    """The triangulation as an oriented map; darts are directed mesh edges."""
    darts = sorted(mesh.opposite)
    index = {d: i for i, d in enumerate(darts)}
    sigma = [0] * len(darts)
    alpha = [0] * len(darts)
    for (a, b), i in index.items():
        sigma[i] = index[(a, mesh.opposite[(a, b)])]
        alpha[i] = index[(b, a)]
    return build_map(len(darts), sigma, alpha), darts


def mesh_automorphism_group(mesh: ScalarMesh) -> PermGroup:
    """Orientation-preserving simplicial automorphisms preserving the values."""
    m, darts = mesh_map(mesh)
    vals = mesh.values
    autos = map_automorphisms(m, lambda d: (vals[darts[d][0]], vals[darts[d][1]]))
    perms = []
    for h in autos:
        g = [0] * mesh.vertex_count
        for i, (a, b) in enumerate(darts):
            g[a] = darts[h[i]][0]
        perms.append(tuple(g))
    return from_elements(mesh.vertex_count, perms)


def check_mesh_symmetry(mesh: ScalarMesh, g: Sequence[int]) -> None:
    g = tuple(g)
    if sorted(g) != list(range(mesh.vertex_count)):
        raise NotAnAutomorphism(f"{list(g)} is not a vertex permutation")
    for v in range(mesh.vertex_count):
        if mesh.values[g[v]] != mesh.values[v]:
            raise ValueNotPreserved(f"vertex {v} ({mesh.values[v]}) sent to {g[v]} ({mesh.values[g[v]]})")
    for (a, b), c in mesh.opposite.items():
        if mesh.opposite.get((g[a], g[b])) != g[c]:
            raise NotAnAutomorphism(f"triangle {(a, b, c)} is not sent to a positively oriented triangle")


def mesh_group(mesh: ScalarMesh, generators: Iterable[Sequence[int]]) -> PermGroup:
    gens = [tuple(g) for g in generators]
    for g in gens:
        check_mesh_symmetry(mesh, g)
    return closure(mesh.vertex_count, gens)


@dataclass(frozen=True)
class TreeAction:
    group: PermGroup  # acting on mesh vertices
    node_perms: dict  # group element -> permutation of Reeb nodes
    edge_perms: dict  # group element -> permutation of Reeb edges

    def image_group(self, reeb: ReebGraph) -> PermGroup:
        return from_elements(len(reeb.nodes), self.node_perms.values())


def _node_lookup(reeb: ReebGraph):
    by_vertex, by_edge = {}, {}
    for n in reeb.nodes:
        for v in n.vertices:
            by_vertex[v] = n.id
        for e in n.crossing_edges:
            by_edge[e] = n.id
    return by_vertex, by_edge


def _apply_edge(g, e):
    a, b = g[e[0]], g[e[1]]
    return (a, b) if a < b else (b, a)


def reeb_action(mesh: ScalarMesh, reeb: ReebGraph, group: PermGroup) -> TreeAction:
    """Permutations of Reeb nodes and edges induced by a group of mesh symmetries."""
    by_vertex, by_edge = _node_lookup(reeb)
    bottom = {}
    for e in reeb.edges:
        for me in e.bottom_edges:
            bottom[(e.low_value, me)] = e.id
    node_perms, edge_perms = {}, {}
    for g in group.elements:
        check_mesh_symmetry(mesh, g)
        nperm = []
        for n in reeb.nodes:
            imgs = {by_vertex.get(g[v]) for v in n.vertices} | {by_edge.get(_apply_edge(g, e)) for e in n.crossing_edges}
            if len(imgs) != 1 or None in imgs:
                raise ConsistencyError(f"node {n.id} has no well-defined image")
            (img,) = imgs
            if reeb.nodes[img].value != n.value:
                raise ValueNotPreserved(f"node {n.id} sent to a node of another value")
            nperm.append(img)
        eperm = []
        for e in reeb.edges:
            imgs = {bottom.get((e.low_value, _apply_edge(g, me))) for me in e.bottom_edges}
            if len(imgs) != 1 or None in imgs:
                raise ConsistencyError(f"Reeb edge {e.id} has no well-defined image")
            (img,) = imgs
            ie = reeb.edges[img]
            if (ie.lower, ie.upper) != (nperm[e.lower], nperm[e.upper]):
                raise ConsistencyError(f"Reeb edge {e.id} is not mapped compatibly with its ends")
            eperm.append(img)
        node_perms[g] = tuple(nperm)
        edge_perms[g] = tuple(eperm)
    for g in group.generators:
        for h in group.elements:
            gh = perm_compose(g, h)
            if node_perms[gh] != perm_compose(node_perms[g], node_perms[h]) or edge_perms[gh] != perm_compose(
                edge_perms[g], edge_perms[h]
            ):
                raise ConsistencyError("tree action is not a homomorphism")
    return TreeAction(group, node_perms, edge_perms)


@dataclass(frozen=True)
class FixedSubtree:
    nodes: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def has_edge(self) -> bool:
        return bool(self.edges)


def fixed_subtree(reeb: ReebGraph, action: TreeAction) -> FixedSubtree:
    """Nodes and edges fixed by every group element; a non-empty subtree."""
    if not reeb.is_tree():
        raise GenusNotZero("the Reeb graph is not a tree")
    nodes = tuple(
        n.id for n in reeb.nodes if all(p[n.id] == n.id for p in action.node_perms.values())
    )
    edges = tuple(
        e.id for e in reeb.edges if all(p[e.id] == e.id for p in action.edge_perms.values())
    )
    if not nodes:
        raise EmptyFixedSet("no Reeb node is fixed by the whole group")
    pos = {n: i for i, n in enumerate(nodes)}
    uf = UnionFind(len(nodes))
    for eid in edges:
        e = reeb.edges[eid]
        if e.lower not in pos or e.upper not in pos:
            raise ConsistencyError(f"fixed edge {eid} has a moved endpoint")
        uf.union(pos[e.lower], pos[e.upper])
    if len(uf.classes()) != 1:
        raise ConsistencyError("fixed set is disconnected")
    return FixedSubtree(nodes, edges)


def local_stabilizer(action_or_atom, v: int | None = None, reeb: ReebGraph | None = None, group=None) -> PermGroup:
    """Restriction of the action to the star of a fixed node ``v``.

    Given an :class:`Atom` this is the action on its faces (the star of its
    central node), for ``group`` or the full automorphism group.
    """
    if isinstance(action_or_atom, Atom):
        return face_action(action_or_atom, group)
    action = action_or_atom
    if reeb is None:
        raise TypeError("reeb graph required for a tree action")
    if any(p[v] != v for p in action.node_perms.values()):
        raise VertexNotFixed(f"node {v} is not fixed by the group")
    st = star(reeb, v)
    pos = {e: i for i, e in enumerate(st)}
    perms = [tuple(pos[p[e]] for e in st) for p in action.edge_perms.values()]
    return from_elements(len(st), perms)


def cyclic_generator(group: PermGroup) -> Perm | None:
    for g in group.elements:
        if perm_order(g) == group.order:
            return g
    return None
