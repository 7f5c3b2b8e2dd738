r"""
Finite permutation groups stored by their full element list, and their
classification among the finite rotation groups ``Z_n, D_n, A4, S4, A5``.

EXAMPLES::

    >>> G = closure(4, [(1, 0, 2, 3), (1, 2, 3, 0)])
    >>> G.order, classify(G).label
    (24, 'S4')
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from atomsym.combmap import Perm, perm_compose, perm_identity, perm_invert, perm_order
from atomsym.errors import DegreeMismatch, GroupTooLarge

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return perm_identity(self.degree)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._element_set

    @property
    def _element_set(self) -> frozenset:
        s = self.__dict__.get("_eset")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_eset", s)
        return s

    def is_trivial(self) -> bool:
        return self.order == 1

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbits on ``{0..degree-1}``, sorted by their minimal point."""
        from atomsym.unionfind import UnionFind

        uf = UnionFind(self.degree)
        for g in self.generators:
            for i, j in enumerate(g):
                uf.union(i, j)
        return uf.classes()

    def same_elements(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self._element_set == other._element_set


def closure(degree: int, generators: Iterable[Sequence[int]], cap: int = DEFAULT_CAP) -> PermGroup:
    """Breadth-first closure of ``generators``; the identity is always included."""
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise DegreeMismatch(f"{g} is not a permutation of {degree} points")
        if g not in gens:
            gens.append(g)
    ident = perm_identity(degree)
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        x = elements[i]
        i += 1
        for g in gens:
            y = perm_compose(g, x)
            if y not in seen:
                if len(elements) >= cap:
                    raise GroupTooLarge(f"group exceeds {cap} elements")
                seen.add(y)
                elements.append(y)
    return PermGroup(degree, tuple(elements), tuple(gens))


def from_elements(degree: int, elements: Iterable[Sequence[int]]) -> PermGroup:
    """Wrap a known-closed element list, keeping it sorted for determinism."""
    els = sorted({tuple(e) for e in elements})
    ident = perm_identity(degree)
    if ident not in els:
        els.insert(0, ident)
    else:
        els.remove(ident)
        els.insert(0, ident)
    return PermGroup(degree, tuple(els), tuple(e for e in els if e != ident))


def is_closed(group: PermGroup) -> bool:
    s = group._element_set
    if group.identity not in s:
        return False
    return all(perm_compose(a, b) in s for a in group.elements for b in group.elements) and all(
        perm_invert(a) in s for a in group.elements
    )


def order_profile(group: PermGroup) -> dict[int, int]:
    """Number of elements of each order, keys sorted."""
    c = Counter(perm_order(g) for g in group.elements)
    return dict(sorted(c.items()))


def is_cyclic(group: PermGroup) -> bool:
    return any(perm_order(g) == group.order for g in group.elements)


def power(p: Perm, k: int) -> Perm:
    out = perm_identity(len(p))
    for _ in range(k):
        out = perm_compose(p, out)
    return out


@dataclass(frozen=True)
class GroupClass:
    """Isomorphism type of a finite group, restricted to the rotation-group list."""

    kind: str  # "Z", "D", "A4", "S4", "A5" or "Other"
    n: int = 0

    @property
    def label(self) -> str:
        if self.kind in ("Z", "D"):
            return f"{self.kind}_{self.n}"
        return self.kind

    def __str__(self) -> str:
        return self.label


_PROFILES = {
    (12, ((1, 1), (2, 3), (3, 8))): "A4",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "S4",
    (60, ((1, 1), (2, 15), (3, 20), (5, 24))): "A5",
}


def dihedral_witness(group: PermGroup) -> tuple[Perm, Perm] | None:
    """Return ``(r, s)`` with ``r^n = s^2 = (rs)^2 = 1`` generating the group as ``D_n``."""
    if group.order % 2 or group.order < 4:
        return None
    n = group.order // 2
    for r in group.elements:
        if perm_order(r) != n:
            continue
        rot = set()
        x = group.identity
        for _ in range(n):
            rot.add(x)
            x = perm_compose(r, x)
        outside = [g for g in group.elements if g not in rot]
        if all(perm_order(g) == 2 for g in outside):
            s = outside[0]
            rs = perm_compose(r, s)
            ident = group.identity
            if power(r, n) == ident and perm_compose(s, s) == ident and perm_compose(rs, rs) == ident:
                return r, s
    return None


def classify(group: PermGroup) -> GroupClass:
    n = group.order
    if is_cyclic(group):
        return GroupClass("Z", n)
    if dihedral_witness(group) is not None:
        return GroupClass("D", n // 2)
    key = (n, tuple(order_profile(group).items()))
    if key in _PROFILES:
        return GroupClass(_PROFILES[key])
    return GroupClass("Other")


def is_in_so3_list(cls: GroupClass) -> bool:
    if cls.kind in ("Z", "D"):
        return cls.n >= 1
    return cls.kind in ("A4", "S4", "A5")


def induced(group: PermGroup, degree: int, act) -> PermGroup:
    """Image of ``group`` under ``act``, a function mapping an element to a permutation."""
    return from_elements(degree, (act(g) for g in group.elements))


def subgroup_orbit_sizes(elements: Sequence[Perm], points: Sequence[int]) -> list[int]:
    """Orbit sizes on ``points`` of the group whose full element list is ``elements``."""
    pts = set(points)
    sizes = []
    seen = set()
    for p in points:
        if p in seen:
            continue
        orb = {g[p] for g in elements}
        if not orb <= pts:
            raise ValueError("points are not invariant")
        seen |= orb
        sizes.append(len(orb))
    return sizes

