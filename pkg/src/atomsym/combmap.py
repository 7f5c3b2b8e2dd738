r"""
Oriented combinatorial maps.

A map on ``D`` darts is a pair of permutations ``(sigma, alpha)``:

* ``sigma`` sends a dart to the next dart counterclockwise around its vertex,
* ``alpha`` is a fixed-point-free involution pairing the two darts of an edge.

Vertices are the cycles of ``sigma``, edges the cycles of ``alpha`` and faces
the cycles of ``phi = sigma o alpha`` (``alpha`` applied first). This face
convention is used everywhere in the package.

Every cell is identified by the smallest dart of its orbit.

EXAMPLES::

    >>> m = build_map(4, [1, 2, 3, 0], [1, 0, 3, 2])
    >>> m.faces()
    [(0, 2), (1,), (3,)]
    >>> m.euler_characteristic(), m.genus()
    (2, 0)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from atomsym.errors import Disconnected, GenusNegative, InvolutionViolation, NotAPermutation

Perm = tuple[int, ...]


def perm_check(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def perm_compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Return ``p o q`` (``q`` applied first)."""
    return tuple(p[i] for i in q)


def perm_invert(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_orbits(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of ``p``, each starting at its minimal element, sorted by it."""
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = p[d]
        cycles.append(tuple(cycle))
    return cycles


def perm_order(p: Sequence[int]) -> int:
    from math import lcm

    out = 1
    for c in perm_orbits(p):
        out = lcm(out, len(c))
    return out


def perms_transitive(n: int, gens: Iterable[Sequence[int]]) -> bool:
    gens = list(gens)
    if n == 0:
        return True
    seen = {0}
    todo = [0]
    while todo:
        d = todo.pop()
        for g in gens:
            e = g[d]
            if e not in seen:
                seen.add(e)
                todo.append(e)
    return len(seen) == n


@dataclass(frozen=True)
class OrientedMap:
    """A connected graph cellularly embedded in a closed oriented surface.

    Use :func:`build_map` to construct validated instances.
    """

    dart_count: int
    sigma: Perm
    alpha: Perm

    @cached_property
    def phi(self) -> Perm:
        return perm_compose(self.sigma, self.alpha)

    @cached_property
    def _vertices(self) -> list[tuple[int, ...]]:
        return perm_orbits(self.sigma)

    @cached_property
    def _edges(self) -> list[tuple[int, ...]]:
        return perm_orbits(self.alpha)

    @cached_property
    def _faces(self) -> list[tuple[int, ...]]:
        return perm_orbits(self.phi)

    def vertices(self) -> list[tuple[int, ...]]:
        return list(self._vertices)

    def edges(self) -> list[tuple[int, ...]]:
        return list(self._edges)

    def faces(self) -> list[tuple[int, ...]]:
        """Facial orbits of ``phi``, each starting at its minimal dart, sorted."""
        return list(self._faces)

    @staticmethod
    def _labels(orbits: list[tuple[int, ...]], n: int) -> tuple[int, ...]:
        lab = [0] * n
        for c in orbits:
            for d in c:
                lab[d] = c[0]
        return tuple(lab)

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """``vertex_of[d]`` is the id (minimal dart) of the vertex of ``d``."""
        return self._labels(self._vertices, self.dart_count)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        return self._labels(self._edges, self.dart_count)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        return self._labels(self._faces, self.dart_count)

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return self.dart_count // 2

    @property
    def num_faces(self) -> int:
        return len(self._faces)

    def vertex(self, v: int) -> tuple[int, ...]:
        """The sigma-cycle with id ``v``."""
        for c in self._vertices:
            if c[0] == v:
                return c
        raise KeyError(v)

    def face(self, f: int) -> tuple[int, ...]:
        for c in self._faces:
            if c[0] == f:
                return c
        raise KeyError(f)

    def degree(self, v: int) -> int:
        return len(self.vertex(v))

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    def genus(self) -> int:
        chi = self.euler_characteristic()
        if chi % 2 or chi > 2:
            raise GenusNegative(f"Euler characteristic {chi} gives no valid genus")
        return (2 - chi) // 2

    def relabel(self, p: Sequence[int]) -> "OrientedMap":
        """The isomorphic map whose dart ``p[d]`` plays the role of ``d``."""
        pinv = perm_invert(p)
        sigma = tuple(p[self.sigma[pinv[d]]] for d in range(self.dart_count))
        alpha = tuple(p[self.alpha[pinv[d]]] for d in range(self.dart_count))
        return build_map(self.dart_count, sigma, alpha)


def build_map(dart_count: int, sigma: Sequence[int], alpha: Sequence[int]) -> OrientedMap:
    """Validate ``(sigma, alpha)`` and return an :class:`OrientedMap`.

    Raises :class:`NotAPermutation`, :class:`InvolutionViolation` or
    :class:`Disconnected`.
    """
    if not isinstance(dart_count, int) or dart_count <= 0 or dart_count % 2:
        raise InvolutionViolation(f"dart count must be a positive even integer, got {dart_count}")
    sigma = tuple(int(x) for x in sigma)
    alpha = tuple(int(x) for x in alpha)
    if not perm_check(sigma, dart_count):
        raise NotAPermutation("sigma is not a permutation of the darts")
    if not perm_check(alpha, dart_count):
        raise NotAPermutation("alpha is not a permutation of the darts")
    for d in range(dart_count):
        if alpha[d] == d:
            raise InvolutionViolation(f"alpha fixes dart {d}")
        if alpha[alpha[d]] != d:
            raise InvolutionViolation(f"alpha is not an involution at dart {d}")
    if not perms_transitive(dart_count, (sigma, alpha)):
        raise Disconnected("sigma and alpha do not act transitively on darts")
    return OrientedMap(dart_count, sigma, alpha)
