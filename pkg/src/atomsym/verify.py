"""Structured checks of the symmetry statements on atoms and meshes.

Every check ends up in the report exactly once, with status ``pass``,
``fail`` or ``not-applicable`` and a JSON-serialisable witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from atomsym.atom import Atom
from atomsym.errors import ConsistencyError, GenusNotZero, NotAnAutomorphism
from atomsym.groups import (
    PermGroup,
    classify,
    dihedral_witness,
    from_elements,
    is_closed,
    is_cyclic,
    is_in_so3_list,
    order_profile,
)
from atomsym.reeb import ReebGraph, ScalarMesh, reeb_graph, saddle_order_at
from atomsym.symmetry import (
    automorphism_group,
    cell_stabilizer,
    cells,
    check_mesh_symmetry,
    face_kernel,
    face_perm,
    fixed_cells,
    fixed_subtree,
    is_map_automorphism,
    local_stabilizer,
    mesh_automorphism_group,
    reeb_action,
)

PASS, FAIL, NA = "pass", "fail", "not-applicable"

ATOM_CHECKS = (
    "SO3_CLASS",
    "KERNEL_TRIVIAL",
    "VERTEX_STAB_DIVIDES_K",
    "EDGE_STAB_TRIVIAL",
    "FACE_STAB_DIVIDES_N",
    "TWO_INVARIANT_CELLS",
    "FREE_SECTOR_ACTION",
)
MESH_CHECKS = (
    "SO3_CLASS",
    "FIX_NONEMPTY_SUBTREE",
    "FIX_EDGE_IMPLIES_CYCLIC",
    "SINGLE_VERTEX_CASE",
    "MORSE_K2",
)


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: object = None

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness}


@dataclass
class VerificationReport:
    input: str
    group_order: int
    group_class: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def check(self, name: str) -> Check:
        (c,) = [c for c in self.checks if c.name == name]
        return c

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "group_order": self.group_order,
            "class": self.group_class,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"input {self.input}", f"group order {self.group_order}, class {self.group_class}"]
        for c in self.checks:
            lines.append(f"  {c.status.upper():<15} {c.name}")
        return "\n".join(lines) + "\n"


def _profile(group: PermGroup) -> dict:
    return {str(k): v for k, v in order_profile(group).items()}


def _class_witness(group: PermGroup) -> dict:
    cls = classify(group)
    w = {"class": cls.label, "order": group.order, "profile": _profile(group)}
    if cls.kind == "D":
        r, s = dihedral_witness(group)
        w["dihedral"] = {"r": list(r), "s": list(s)}
    return w


def lefschetz_check(atom: Atom, group: PermGroup) -> Check:
    """Each non-identity element leaves exactly ``chi = 2`` cells invariant."""
    chi = atom.map.euler_characteristic()
    others = [h for h in group.elements if h != group.identity]
    if not others:
        return Check("TWO_INVARIANT_CELLS", NA, {"chi": chi, "reason": "trivial group: every cell is invariant"})
    for h in others:
        inv = fixed_cells(atom, h)
        if len(inv) != 2 or chi != 2:
            return Check(
                "TWO_INVARIANT_CELLS",
                FAIL,
                {"chi": chi, "element": list(h), "invariant_cells": [str(c) for c in inv]},
            )
    return Check("TWO_INVARIANT_CELLS", PASS, {"chi": chi, "lefschetz": chi, "elements_checked": len(others)})


def _validate_subgroup(atom: Atom, group: PermGroup) -> None:
    for h in group.elements:
        if not is_map_automorphism(atom, h):
            raise NotAnAutomorphism(f"{list(h)} is not a sign-preserving automorphism")
    if not is_closed(group):
        raise NotAnAutomorphism("supplied elements do not form a group")


def verify_atom(atom: Atom, subgroup: PermGroup | None = None, input: str = "<atom>") -> VerificationReport:
    group = subgroup if subgroup is not None else automorphism_group(atom)
    if subgroup is not None:
        _validate_subgroup(atom, group)
    m = atom.map
    faces_group = from_elements(m.num_faces, (face_perm(atom, h) for h in group.elements))
    report = VerificationReport(input, group.order, classify(group).label)
    checks = report.checks

    cls = classify(faces_group)
    w = _class_witness(faces_group)
    checks.append(Check("SO3_CLASS", PASS if is_in_so3_list(cls) else FAIL, w))

    kernel = face_kernel(atom, group)
    if kernel == [group.identity]:
        checks.append(Check("KERNEL_TRIVIAL", PASS, {"kernel_order": 1}))
    else:
        bad = [h for h in kernel if h != group.identity]
        checks.append(Check("KERNEL_TRIVIAL", FAIL, {"kernel_order": len(kernel), "element": list(bad[0])}))

    stabs = {c: cell_stabilizer(atom, group, c) for c in cells(atom)}

    vrec, vbad = [], []
    for c in (c for c in stabs if c.dim == 0):
        s = stabs[c]
        rec = {"vertex": c.id, "k": s.bound, "order": s.order, "cyclic": s.cyclic}
        vrec.append(rec)
        if not (s.cyclic and s.divides):
            vbad.append(rec)
    checks.append(Check("VERTEX_STAB_DIVIDES_K", FAIL if vbad else PASS, vbad or vrec))

    ebad = [{"edge": c.id, "order": stabs[c].order} for c in stabs if c.dim == 1 and stabs[c].order != 1]
    checks.append(
        Check("EDGE_STAB_TRIVIAL", FAIL if ebad else PASS, ebad or {"edges": m.num_edges, "max_order": 1})
    )

    frec, fbad = [], []
    for c in (c for c in stabs if c.dim == 2):
        s = stabs[c]
        rec = {"face": c.id, "n": s.bound, "order": s.order, "cyclic": s.cyclic}
        frec.append(rec)
        if not (s.cyclic and s.divides):
            fbad.append(rec)
    checks.append(Check("FACE_STAB_DIVIDES_N", FAIL if fbad else PASS, fbad or frec))

    checks.append(lefschetz_check(atom, group))

    free_bad = [s.certificate() for c, s in stabs.items() if c.dim in (0, 2) and not s.free]
    checks.append(
        Check(
            "FREE_SECTOR_ACTION",
            FAIL if free_bad else PASS,
            free_bad or {"vertices": m.num_vertices, "faces": m.num_faces},
        )
    )
    return report


def _single_vertex_witness(mesh: ScalarMesh, reeb: ReebGraph, group: PermGroup, node: int, k: int):
    fixed = [z for z in reeb.nodes[node].vertices if all(g[z] == z for g in group.elements)]
    orders = {z: saddle_order_at(mesh, z) for z in fixed}
    for i, z1 in enumerate(fixed):
        for z2 in fixed[i + 1 :]:
            if gcd(orders[z1], orders[z2]) % k == 0:
                return {"node": node, "k": k, "z1": z1, "z2": z2, "k1": orders[z1], "k2": orders[z2]}, None
    return None, {"node": node, "k": k, "fixed_saddles": [{"vertex": z, "order": orders[z]} for z in fixed]}


def verify_mesh(mesh: ScalarMesh, group: PermGroup | None = None, input: str = "<mesh>") -> VerificationReport:
    if mesh.genus() != 0:
        raise GenusNotZero(f"mesh has genus {mesh.genus()}")
    reeb = reeb_graph(mesh)
    if group is None:
        group = mesh_automorphism_group(mesh)
    else:
        for g in group.elements:
            check_mesh_symmetry(mesh, g)
    report = VerificationReport(input, group.order, classify(group).label)
    checks = report.checks
    action = reeb_action(mesh, reeb, group)
    try:
        fix = fixed_subtree(reeb, action)
    except ConsistencyError as exc:
        checks.append(Check("SO3_CLASS", NA, None))
        checks.append(Check("FIX_NONEMPTY_SUBTREE", FAIL, {"error": str(exc)}))
        for name in MESH_CHECKS[2:]:
            checks.append(Check(name, NA, None))
        return report

    local = {v: local_stabilizer(action, v, reeb) for v in fix.nodes}
    classes = {v: classify(g) for v, g in local.items()}
    rec = [{"node": v, "class": classes[v].label, "order": local[v].order} for v in fix.nodes]
    so3_ok = all(is_in_so3_list(c) for c in classes.values())
    checks.append(Check("SO3_CLASS", PASS if so3_ok else FAIL, rec))

    checks.append(Check("FIX_NONEMPTY_SUBTREE", PASS, {"nodes": list(fix.nodes), "edges": list(fix.edges)}))

    if fix.has_edge:
        ok = all(is_cyclic(g) for g in local.values())
        checks.append(Check("FIX_EDGE_IMPLIES_CYCLIC", PASS if ok else FAIL, rec))
    else:
        checks.append(Check("FIX_EDGE_IMPLIES_CYCLIC", NA, {"fixed_edges": 0}))

    single = None
    if len(fix.nodes) == 1 and not fix.has_edge:
        (v,) = fix.nodes
        if is_cyclic(local[v]) and local[v].order >= 2:
            single = (v, local[v].order)
    if single is None:
        checks.append(Check("SINGLE_VERTEX_CASE", NA, None))
        checks.append(Check("MORSE_K2", NA, None))
        return report
    v, k = single
    found, missing = _single_vertex_witness(mesh, reeb, group, v, k)
    checks.append(Check("SINGLE_VERTEX_CASE", PASS if found else FAIL, found or missing))
    saddles = [z for z in range(mesh.vertex_count) if mesh.vertex_type(z).kind == "saddle"]
    if all(saddle_order_at(mesh, z) == 2 for z in saddles):
        checks.append(Check("MORSE_K2", PASS if k == 2 else FAIL, {"node": v, "k": k}))
    else:
        checks.append(Check("MORSE_K2", NA, {"saddle_orders": sorted({saddle_order_at(mesh, z) for z in saddles})}))
    return report
