"""Command-line interface.

Exit codes: 0 when everything ran and all checks passed, 1 on input errors,
2 when a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from atomsym import corpus
from atomsym.atom import Atom, parse_atom, saddle_order
from atomsym.errors import AtomsymError
from atomsym.groups import classify
from atomsym.reeb import extract, parse_mesh, reeb_graph
from atomsym.symmetry import automorphism_group, face_action, face_ids, mesh_group, subgroup_closure
from atomsym.verify import verify_atom, verify_mesh


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise AtomsymError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    text = _read(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = None
    if isinstance(obj, dict) and "values" in obj:
        return parse_mesh(text)
    return parse_atom(text)


def _gens(raw: str | None):
    if raw is None:
        return None
    try:
        gens = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise AtomsymError(f"--gens is not valid JSON: {exc}") from None
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise AtomsymError("--gens must be a JSON array of permutation arrays")
    return gens


def _emit(text: str, out) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def cmd_validate(args, out) -> int:
    atom = parse_atom(_read(args.path))
    m = atom.map
    orders = [saddle_order(atom, c[0]) for c in m.vertices()]
    _emit(
        f"V={m.num_vertices} E={m.num_edges} F={m.num_faces} chi={m.euler_characteristic()} "
        f"saddle orders: {' '.join(map(str, orders))}",
        out,
    )
    return 0


def _atom_group(atom: Atom, gens):
    return automorphism_group(atom) if gens is None else subgroup_closure(atom, gens)


def cmd_analyze(args, out) -> int:
    atom = parse_atom(_read(args.path))
    group = _atom_group(atom, _gens(args.gens))
    faces = face_action(atom, group)
    cls = classify(faces)
    ids = face_ids(atom)
    orbits = [[ids[i] for i in orb] for orb in faces.orbits()]
    if args.json:
        payload = {
            "order": group.order,
            "class": cls.label,
            "face_orbits": orbits,
            "generators": [list(g) for g in group.generators],
        }
        _emit(json.dumps(payload, indent=2), out)
    else:
        _emit(f"order {group.order}, class {cls.label}", out)
        _emit("face orbits: " + " ".join("{" + ",".join(map(str, o)) + "}" for o in orbits), out)
    return 0


def cmd_reeb(args, out) -> int:
    mesh = parse_mesh(_read(args.path))
    reeb = reeb_graph(mesh)
    if args.dot:
        Path(args.dot).write_text(reeb.to_dot(), encoding="utf-8")
    if args.json:
        _emit(json.dumps(reeb.to_dict(), indent=2), out)
        return 0
    shape = "tree" if reeb.is_tree() else "graph"
    _emit(
        f"{len(reeb.nodes)} nodes, {len(reeb.edges)} edges ({shape}), genus {mesh.genus()}, "
        f"{len(reeb.leaves())} leaves",
        out,
    )
    for n in reeb.nodes:
        line = f"  node {n.id}: v={n.value} ({n.tag}) degree {reeb.degree(n.id)}"
        if n.tag == "saddle-component":
            a = extract(mesh, n.id, reeb).atom
            line += f", atom V={a.map.num_vertices} E={a.map.num_edges} F={a.map.num_faces}"
        _emit(line, out)
    return 0


def cmd_verify(args, out) -> int:
    obj = _load(args.path)
    gens = _gens(args.gens)
    name = Path(args.path).name
    if isinstance(obj, Atom):
        report = verify_atom(obj, None if gens is None else subgroup_closure(obj, gens), input=name)
    else:
        report = verify_mesh(obj, None if gens is None else mesh_group(obj, gens), input=name)
    _emit(report.to_json() if args.json else report.to_text(), out)
    return 0 if report.passed else 2


def cmd_corpus(args, out) -> int:
    if args.action == "list":
        for name in corpus.names():
            _emit(f"{name}\t{corpus.filename(name)}", out)
        return 0
    if not args.name:
        raise AtomsymError("corpus emit needs a name")
    try:
        text = corpus.text(args.name)
    except KeyError as exc:
        raise AtomsymError(str(exc.args[0])) from None
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="atomsym", description="Symmetries of critical levels of functions on the sphere.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check an atom file and print its summary")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="symmetry group of an atom")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.add_argument("--gens", help="JSON list of dart permutations generating a subgroup")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("reeb", help="Kronrod-Reeb graph of a mesh")
    s.add_argument("path")
    s.add_argument("--dot", metavar="PATH", help="write the graph in DOT format")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_reeb)

    s = sub.add_parser("verify", help="run all checks on an atom or mesh")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.add_argument("--gens", help="JSON list of permutations generating the acting group")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus", help="bundled examples")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("name", nargs="?")
    s.add_argument("-o", "--output", metavar="PATH")
    s.set_defaults(func=cmd_corpus)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args, out)
    except AtomsymError as exc:
        err.write(f"{type(exc).__name__} {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
