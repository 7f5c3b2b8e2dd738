"""Subgroup scenarios on lifted banana atoms."""

from __future__ import annotations

from atomsym import corpus
from atomsym.combmap import perm_order
from atomsym.reeb import lift_atom
from atomsym.symmetry import automorphism_group, mesh_group


def vertex_rotation_scenario(n: int):
    """Lift banana_n and keep only the n-fold rotation fixing both saddles.

    Returns ``(mesh, group, rotation)``.
    """
    atom = corpus.banana(n)
    m = atom.map
    lifted = lift_atom(atom)
    (rot, *_) = [
        h
        for h in automorphism_group(atom).elements
        if perm_order(h) == n and all(m.vertex_of[h[v[0]]] == v[0] for v in m.vertices())
    ]
    g = lifted.vertex_perm(rot)
    return lifted.mesh, mesh_group(lifted.mesh, [g]), g
