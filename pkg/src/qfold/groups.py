"""Finite groups given by generators, and their actions on vertex sets.

Elements come in two interchangeable representations: permutations of
``{1..n}`` stored as image tuples, and elements of a cyclic group ``Z/n``
stored as a reduced power of the distinguished generator.  A group is the
closure of a generator list, enumerated breadth-first from the identity so
that element order is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

__all__ = [
    "Perm",
    "Cyc",
    "GroupElement",
    "PermGroup",
    "Subgroup",
    "generate_group",
    "VertexAction",
    "build_vertex_action",
    "orbits",
    "stabilizer",
]

GENERATION_CAP = 10_000


@dataclass(frozen=True)
class Perm:
    """A permutation of {1..n}, stored as its image tuple (1-based)."""

    img: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.img) != list(range(1, len(self.img) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.img)}: {self.img}")

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(tuple(range(1, degree + 1)))

    @property
    def degree(self) -> int:
        return len(self.img)

    def __call__(self, point: int) -> int:
        return self.img[point - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        # (p * q)(i) = p(q(i)): q acts first.
        if not isinstance(other, Perm) or other.degree != self.degree:
            return NotImplemented
        return Perm(tuple(self.img[j - 1] for j in other.img))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.img, start=1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.img, start=1))

    def sort_key(self) -> tuple:
        return ("perm", self.img)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its minimum, sorted."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return sorted(out)

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "1"
        sep = " " if self.degree > 9 else ""
        return "".join("(" + sep.join(str(p) for p in c) + ")" for c in cycs)

    def to_json(self) -> dict:
        return {"type": "perm", "img": list(self.img)}


@dataclass(frozen=True)
class Cyc:
    """An element of the cyclic group Z/mod: a power of the generator."""

    mod: int
    pow: int

    def __post_init__(self) -> None:
        if self.mod < 1:
            raise ValueError("cyclic modulus must be positive")
        object.__setattr__(self, "pow", self.pow % self.mod)

    @staticmethod
    def identity(mod: int) -> "Cyc":
        return Cyc(mod, 0)

    def __mul__(self, other: "Cyc") -> "Cyc":
        if not isinstance(other, Cyc) or other.mod != self.mod:
            return NotImplemented
        return Cyc(self.mod, self.pow + other.pow)

    def inverse(self) -> "Cyc":
        return Cyc(self.mod, -self.pow)

    def is_identity(self) -> bool:
        return self.pow == 0

    def sort_key(self) -> tuple:
        return ("cyc", self.mod, self.pow)

    def __str__(self) -> str:
        if self.pow == 0:
            return "1"
        sym = {2: "eps", 3: "w", 4: "z"}.get(self.mod, "g")
        return sym if self.pow == 1 else f"{sym}^{self.pow}"

    def to_json(self) -> dict:
        return {"type": "cyclic", "mod": self.mod, "pow": self.pow}


GroupElement = Union[Perm, Cyc]


def element_from_json(data: dict) -> GroupElement:
    kind = data.get("type")
    if kind == "perm":
        return Perm(tuple(data["img"]))
    if kind == "cyclic":
        return Cyc(int(data["mod"]), int(data["pow"]))
    raise ValueError(f"unknown group element type: {kind!r}")


def _compatible(a: GroupElement, b: GroupElement) -> bool:
    if isinstance(a, Perm) and isinstance(b, Perm):
        return a.degree == b.degree
    if isinstance(a, Cyc) and isinstance(b, Cyc):
        return a.mod == b.mod
    return False


class PermGroup:
    """Closure of a generator list, elements enumerated breadth-first.

    ``elements[0]`` is the identity.  For every later element ``i`` the pair
    ``parents[i] == (j, t)`` satisfies ``elements[i] == elements[j] * generators[t]``,
    which lets actions be extended from generators to all elements without
    recomputing words.
    """

    def __init__(self, generators: Sequence[GroupElement], cap: int = GENERATION_CAP):
        gens = tuple(generators)
        if not gens:
            raise ValueError("at least one generator required")
        first = gens[0]
        for g in gens[1:]:
            if not _compatible(first, g):
                raise ValueError("generators mix representations or degrees")
        if isinstance(first, Perm):
            ident: GroupElement = Perm.identity(first.degree)
        else:
            ident = Cyc.identity(first.mod)

        elements: list[GroupElement] = [ident]
        index: dict[GroupElement, int] = {ident: 0}
        parents: list[tuple[int, int]] = [(-1, -1)]
        head = 0
        while head < len(elements):
            x = elements[head]
            for t, g in enumerate(gens):
                y = x * g
                if y not in index:
                    if len(elements) >= cap:
                        raise ValueError(f"group too large (cap {cap})")
                    index[y] = len(elements)
                    elements.append(y)
                    parents.append((head, t))
            head += 1

        self.generators = gens
        self.elements = tuple(elements)
        self.parents = tuple(parents)
        self._index = index

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def __contains__(self, g: GroupElement) -> bool:
        return g in self._index

    def index(self, g: GroupElement) -> int:
        return self._index[g]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return set(self.elements) == set(other.elements)

    def __hash__(self) -> int:
        return hash(frozenset(self.elements))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup(<{gens}>, order {self.order})"

    def is_cyclic_of(self, order: int) -> GroupElement | None:
        """A generator of full order if the group is cyclic of that order."""
        if self.order != order:
            return None
        for g in self.elements:
            x, n = g, 1
            while not x.is_identity():
                x, n = x * g, n + 1
            if n == order:
                return g
        return None

    def to_json(self) -> dict:
        return {"generators": [g.to_json() for g in self.generators]}

    @staticmethod
    def from_json(data: dict) -> "PermGroup":
        return PermGroup([element_from_json(g) for g in data["generators"]])


def generate_group(generators: Sequence[GroupElement], cap: int = GENERATION_CAP) -> PermGroup:
    """Close a generator list into a PermGroup (error above ``cap`` elements)."""
    return PermGroup(generators, cap=cap)


@dataclass(frozen=True)
class Subgroup:
    """A subset of a parent group verified to be closed; order divides parent order."""

    parent: PermGroup
    elements: tuple[GroupElement, ...]

    def __post_init__(self) -> None:
        members = set(self.elements)
        if len(members) != len(self.elements):
            raise ValueError("duplicate elements in subgroup")
        for g in self.elements:
            if g not in self.parent:
                raise ValueError(f"{g} not in parent group")
            for h in self.elements:
                if g * h not in members:
                    raise ValueError("subset is not closed under multiplication")
        if self.parent.order % len(self.elements) != 0:
            raise AssertionError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.elements)


class VertexAction:
    """A homomorphism from a group to permutations of {1..n_points}.

    Built from one vertex map per generator; maps for all other elements are
    composed along the group's breadth-first parent structure and every
    product relation is re-checked, so an assignment that does not respect
    the multiplication table is rejected.
    """

    def __init__(self, group: PermGroup, gen_maps: Sequence[Sequence[int]], n_points: int):
        gen_maps = tuple(tuple(m) for m in gen_maps)
        if len(gen_maps) != len(group.generators):
            raise ValueError("one vertex map per generator required")
        for m in gen_maps:
            if sorted(m) != list(range(1, n_points + 1)):
                raise ValueError(f"vertex map is not a permutation of 1..{n_points}: {m}")

        ident = tuple(range(1, n_points + 1))
        maps: list[tuple[int, ...]] = [ident] * group.order
        for i in range(1, group.order):
            j, t = group.parents[i]
            prev, gen = maps[j], gen_maps[t]
            # elements[i] = elements[j] * gens[t] acts by applying gens[t] first.
            maps[i] = tuple(prev[gen[v - 1] - 1] for v in ident)
        for i, x in enumerate(group.elements):
            for t, g in enumerate(group.generators):
                k = group.index(x * g)
                composed = tuple(maps[i][gen_maps[t][v - 1] - 1] for v in ident)
                if composed != maps[k]:
                    raise ValueError("action ill-defined: vertex maps violate the multiplication table")

        self.group = group
        self.n_points = n_points
        self.gen_maps = gen_maps
        self._maps = tuple(maps)

    def vertex_map(self, g: GroupElement) -> tuple[int, ...]:
        return self._maps[self.group.index(g)]

    def apply(self, g: GroupElement, point: int) -> int:
        return self._maps[self.group.index(g)][point - 1]


def build_vertex_action(group: PermGroup, gen_maps: Sequence[Sequence[int]], n_points: int) -> VertexAction:
    return VertexAction(group, gen_maps, n_points)


def orbits(action: VertexAction) -> list[tuple[int, ...]]:
    """Orbit partition, sorted by minimal point; each orbit starts at its
    minimal point and continues in group enumeration order."""
    seen: set[int] = set()
    out: list[tuple[int, ...]] = []
    for v in range(1, action.n_points + 1):
        if v in seen:
            continue
        orbit: list[int] = []
        for g in action.group.elements:
            w = action.apply(g, v)
            if w not in seen:
                seen.add(w)
                orbit.append(w)
        out.append(tuple(orbit))
    return out


def stabilizer(action: VertexAction, point: int) -> Subgroup:
    """Stabilizer subgroup of a point; orbit-stabilizer identity is asserted."""
    fixing = tuple(g for g in action.group.elements if action.apply(g, point) == point)
    sub = Subgroup(action.group, fixing)
    orbit_size = len({action.apply(g, point) for g in action.group.elements})
    if orbit_size * sub.order != action.group.order:
        raise AssertionError("orbit-stabilizer identity failed")
    return sub
