"""Folding a symmetric quiver into an exchange matrix over a group ring.

A group acting on a quiver by automorphisms folds it to an m x m matrix over
the rational group ring, one row per orbit: entry (i, j) collects, for every
group element g, the signed arrow count from the i-th representative to g
applied to the j-th representative, weighted by the j-th stabilizer order.
The result is skew-symmetrizable with respect to the inverse-transposing
involution, with symmetrizer entries 1/|stabilizer|.  Changing one orbit
representative conjugates the matrix by a diagonal group-element matrix
(weaving); matrices conjugate under diagonal-times-permutation are weaving
isomorphic.  A matrix over an integral group ring with trivial stabilizers
unfolds back to a canonical quiver with a free action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .groups import GroupElement, PermGroup, Subgroup, VertexAction, orbits, stabilizer
from .quivers import MutationSequence, Quiver, apply_sequence, cycle_generalized_sequence, mutate
from .ring import GroupRingElement, circ

__all__ = [
    "QuiverAction",
    "act_on_quiver",
    "FoldedMatrix",
    "fold",
    "set_mutate",
    "matrix_mutate",
    "weave",
    "weaving_isomorphic",
    "canonical_unfold",
    "theorem_mutation_commutes",
]


@dataclass(frozen=True)
class QuiverAction:
    """A group action on a quiver by automorphisms, with folding data.

    ``representatives[k]`` is the chosen vertex of ``orbits[k]``; stabilizer
    orders are taken at the representatives.
    """

    quiver: Quiver
    group: PermGroup
    action: VertexAction = field(compare=False)
    orbits: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    stab_orders: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.orbits)

    def orbit_of(self, vertex: int) -> int:
        """1-based orbit index containing a vertex."""
        for k, orb in enumerate(self.orbits, start=1):
            if vertex in orb:
                return k
        raise ValueError(f"vertex {vertex} not in any orbit")

    def with_representative(self, k: int, vertex: int) -> "QuiverAction":
        if vertex not in self.orbits[k - 1]:
            raise ValueError(f"vertex {vertex} is not in orbit {k}")
        reps = list(self.representatives)
        reps[k - 1] = vertex
        return act_on_quiver(self.group, self.quiver, self.action.gen_maps, tuple(reps))


def act_on_quiver(
    group: PermGroup,
    quiver: Quiver,
    gen_maps: Sequence[Sequence[int]],
    representatives: Optional[Sequence[int]] = None,
) -> QuiverAction:
    """Validate one vertex map per generator as a quiver automorphism action.

    Raises when a map is not an automorphism (with a witness arrow in the
    message) or when the maps do not respect the group's multiplication
    table.  Representatives default to each orbit's minimal vertex.
    """
    action = VertexAction(group, gen_maps, quiver.n)
    for t, m in enumerate(action.gen_maps):
        for i in range(1, quiver.n + 1):
            for j in range(1, quiver.n + 1):
                if quiver.arrows(m[i - 1], m[j - 1]) != quiver.arrows(i, j):
                    raise ValueError(
                        f"generator {t + 1} is not an automorphism: "
                        f"arrow count {i}->{j} is {quiver.arrows(i, j)} but its image "
                        f"{m[i - 1]}->{m[j - 1]} has {quiver.arrows(m[i - 1], m[j - 1])}"
                    )
    orbs = tuple(orbits(action))
    if representatives is None:
        reps = tuple(orb[0] for orb in orbs)
    else:
        reps = tuple(representatives)
        if len(reps) != len(orbs):
            raise ValueError(f"expected {len(orbs)} representatives, got {len(reps)}")
        for k, (r, orb) in enumerate(zip(reps, orbs), start=1):
            if r not in orb:
                raise ValueError(f"representative {r} is not in orbit {k} {orb}")
    stabs = tuple(stabilizer(action, r).order for r in reps)
    return QuiverAction(quiver, group, action, orbs, reps, stabs)


@dataclass(frozen=True)
class FoldedMatrix:
    """A square matrix over a group ring, skew-symmetrizable under the
    inverse-transposing involution with symmetrizer 1/stab_orders[i]."""

    group: PermGroup = field(compare=False)
    entries: tuple[tuple[GroupRingElement, ...], ...]
    stab_orders: tuple[int, ...]
    representatives: Optional[tuple[int, ...]] = field(default=None, compare=False)
    provenance: Optional[QuiverAction] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        m = len(self.entries)
        if any(len(row) != m for row in self.entries):
            raise ValueError("entries must form a square matrix")
        if len(self.stab_orders) != m:
            raise ValueError("one stabilizer order per row required")
        order = self.group.order
        for i in range(m):
            if order % self.stab_orders[i] != 0:
                raise ValueError("stabilizer orders must divide the group order")
            for j in range(i, m):
                e = self.entries[i][j]
                for _, c in e.terms:
                    if order % c.denominator != 0:
                        raise AssertionError(
                            f"entry ({i + 1},{j + 1}) has denominator {c.denominator} "
                            f"not dividing group order {order}"
                        )
                expected = -Fraction(self.stab_orders[j], self.stab_orders[i]) * e.involution()
                if self.entries[j][i] != expected:
                    raise AssertionError(
                        f"matrix is not skew-symmetrizable at ({i + 1},{j + 1}): "
                        f"{self.entries[j][i]} != {expected}"
                    )

    @property
    def m(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> GroupRingElement:
        return self.entries[i - 1][j - 1]

    def pretty(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def to_json(self) -> dict:
        data = {
            "group": self.group.to_json(),
            "m": self.m,
            "stab_orders": list(self.stab_orders),
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }
        if self.representatives is not None:
            data["reps"] = list(self.representatives)
        return data

    @staticmethod
    def from_json(data: dict) -> "FoldedMatrix":
        group = PermGroup.from_json(data["group"])
        entries = tuple(
            tuple(GroupRingElement.from_json(group, e) for e in row)
            for row in data["entries"]
        )
        if len(entries) != int(data["m"]):
            raise ValueError("m does not match matrix size")
        reps = tuple(int(r) for r in data["reps"]) if "reps" in data else None
        return FoldedMatrix(group, entries, tuple(int(s) for s in data["stab_orders"]), reps)


def fold(qa: QuiverAction) -> FoldedMatrix:
    """Fold a symmetric quiver to its matrix over the group ring."""
    m = qa.m
    rows = []
    for i in range(m):
        xi = qa.representatives[i]
        row = []
        for j in range(m):
            xj = qa.representatives[j]
            coeffs = {}
            for g in qa.group.elements:
                count = qa.quiver.arrows(xi, qa.action.apply(g, xj))
                if count:
                    coeffs[g] = Fraction(count, qa.stab_orders[j])
            row.append(GroupRingElement.from_terms(qa.group, coeffs, strict=False))
        rows.append(tuple(row))
    return FoldedMatrix(
        qa.group, tuple(rows), qa.stab_orders, qa.representatives, provenance=qa
    )


def orbit_is_cycle_free(qa: QuiverAction, k: int) -> bool:
    """No arrows between any two vertices of orbit k (1-based)."""
    orb = qa.orbits[k - 1]
    return all(qa.quiver.arrows(u, v) == 0 for u in orb for v in orb)


def set_mutate(qa: QuiverAction, k: int) -> QuiverAction:
    """Mutate once at every vertex of a cycle-free orbit.

    The mutations commute (checked by comparing two traversal orders), and
    the group still acts on the result by the same vertex maps.
    """
    if not 1 <= k <= qa.m:
        raise IndexError(f"orbit index {k} out of range 1..{qa.m}")
    if not orbit_is_cycle_free(qa, k):
        raise ValueError(f"orbit {k} is not cycle-free")
    orb = qa.orbits[k - 1]
    q_fwd = qa.quiver
    for v in orb:
        q_fwd = mutate(q_fwd, v)
    q_rev = qa.quiver
    for v in reversed(orb):
        q_rev = mutate(q_rev, v)
    assert q_fwd == q_rev, "orbit mutations failed to commute"
    try:
        return act_on_quiver(qa.group, q_fwd, qa.action.gen_maps, qa.representatives)
    except ValueError as exc:  # pragma: no cover - would indicate a broken theorem
        raise RuntimeError(f"group action broken by set mutation at orbit {k}: {exc}")


def orbit_mutation_sequence(qa: QuiverAction, k: int) -> MutationSequence:
    """Quiver-level mutation sequence that realizes one mutation of orbit k.

    A cycle-free orbit mutates once at each of its vertices (any order,
    they commute).  An orbit forming a single oriented cycle gets the
    cycle's generalized-mutation sequence mapped onto it, walking the cycle
    from the orbit representative, with the closing exchange of the last
    two cycle vertices as the post-permutation.  Denser orbits have no
    quiver-level recipe here.
    """
    if not 1 <= k <= qa.m:
        raise IndexError(f"orbit index {k} out of range 1..{qa.m}")
    orb = qa.orbits[k - 1]
    if orbit_is_cycle_free(qa, k):
        return MutationSequence(tuple(orb))
    cyc = [qa.representatives[k - 1]]
    while len(cyc) < len(orb):
        nxt = [v for v in orb if qa.quiver.arrows(cyc[-1], v) > 0 and v not in cyc]
        if len(nxt) != 1:
            raise ValueError(f"orbit {k} is not a single oriented cycle")
        cyc.append(nxt[0])
    if qa.quiver.arrows(cyc[-1], cyc[0]) == 0 or any(
        abs(qa.quiver.arrows(u, v)) > 1 for u in orb for v in orb
    ):
        raise ValueError(f"orbit {k} is not a single oriented cycle")
    base = cycle_generalized_sequence(len(cyc))
    perm = list(range(1, qa.quiver.n + 1))
    perm[cyc[-2] - 1], perm[cyc[-1] - 1] = perm[cyc[-1] - 1], perm[cyc[-2] - 1]
    return MutationSequence(tuple(cyc[s - 1] for s in base.steps), tuple(perm))


def orbit_mutate(qa: QuiverAction, k: int) -> QuiverAction:
    """Mutate orbit k through its quiver-level sequence, keeping the action."""
    q = apply_sequence(qa.quiver, orbit_mutation_sequence(qa, k))
    try:
        return act_on_quiver(qa.group, q, qa.action.gen_maps, qa.representatives)
    except ValueError as exc:  # pragma: no cover - would indicate a broken theorem
        raise RuntimeError(f"group action broken by orbit mutation at {k}: {exc}")


def matrix_mutate(B: FoldedMatrix, k: int) -> FoldedMatrix:
    """Mutate a folded matrix at an index whose diagonal entry is zero."""
    if not 1 <= k <= B.m:
        raise IndexError(f"index {k} out of range 1..{B.m}")
    if not B.entry(k, k).is_zero():
        raise ValueError(f"diagonal entry at {k} is nonzero: use a diagonal rule")
    out = _matrix_mutate_raw(B, k)
    assert _matrix_mutate_raw(out, k) == B, "matrix mutation is not involutive"
    return out


def _matrix_mutate_raw(B: FoldedMatrix, k: int) -> FoldedMatrix:
    k0 = k - 1
    rows = []
    for i in range(B.m):
        row = []
        for j in range(B.m):
            if i == k0 or j == k0:
                row.append(-B.entries[i][j])
            else:
                row.append(B.entries[i][j] + circ(B.entries[i][k0], B.entries[k0][j]))
        rows.append(tuple(row))
    return FoldedMatrix(B.group, tuple(rows), B.stab_orders, B.representatives)


def weave(B: FoldedMatrix, j: int, g: GroupElement) -> FoldedMatrix:
    """Conjugate by the diagonal matrix with g in slot j: the matrix obtained
    by moving the j-th representative to g applied to it."""
    if not 1 <= j <= B.m:
        raise IndexError(f"index {j} out of range 1..{B.m}")
    if g not in B.group:
        raise ValueError(f"{g} is not an element of the group")
    gg = GroupRingElement.basis(B.group, g)
    gi = GroupRingElement.basis(B.group, g.inverse())
    j0 = j - 1
    rows = []
    for i in range(B.m):
        row = []
        for l in range(B.m):
            e = B.entries[i][l]
            if i == j0:
                e = gg * e
            if l == j0:
                e = e * gi
            row.append(e)
        rows.append(tuple(row))
    out = FoldedMatrix(B.group, tuple(rows), B.stab_orders, None)
    if B.provenance is not None:
        moved = B.provenance.action.apply(g, B.provenance.representatives[j0])
        qa = B.provenance.with_representative(j, moved)
        refolded = fold(qa)
        assert refolded.entries == out.entries, "weave disagrees with refolding"
        return refolded
    return out


def conjugate(B: FoldedMatrix, perm: Sequence[int], diag: Sequence[GroupElement]) -> FoldedMatrix:
    """Apply a weaving transformation: reindex by ``perm`` (old index i moves
    to perm[i-1]) and conjugate row/column j by diag[j-1]."""
    m = B.m
    perm = tuple(perm)
    basis = [GroupRingElement.basis(B.group, g) for g in diag]
    inv = [GroupRingElement.basis(B.group, g.inverse()) for g in diag]
    entries = [[None] * m for _ in range(m)]
    stabs = [0] * m
    for i in range(m):
        stabs[perm[i] - 1] = B.stab_orders[i]
        for j in range(m):
            entries[perm[i] - 1][perm[j] - 1] = basis[perm[i] - 1] * B.entries[i][j] * inv[perm[j] - 1]
    return FoldedMatrix(B.group, tuple(tuple(r) for r in entries), tuple(stabs))


def weaving_isomorphic(B1: FoldedMatrix, B2: FoldedMatrix) -> Optional[tuple[tuple[int, ...], tuple[GroupElement, ...]]]:
    """Search for (permutation, diagonal) conjugating B1 onto B2.

    The permutation must match stabilizer orders.  Returns the first witness
    in lexicographic order, or None.
    """
    if B1.group != B2.group or B1.m != B2.m:
        return None
    if sorted(B1.stab_orders) != sorted(B2.stab_orders):
        return None
    m = B1.m
    G = B1.group.elements
    for perm in itertools.permutations(range(1, m + 1)):
        if any(B2.stab_orders[perm[i] - 1] != B1.stab_orders[i] for i in range(m)):
            continue
        for diag in itertools.product(G, repeat=m):
            if conjugate(B1, perm, diag).entries == B2.entries:
                return perm, diag
    return None


def canonical_unfold(B: FoldedMatrix) -> QuiverAction:
    """Unfold a matrix with trivial stabilizers and integer entries into the
    quiver on m * |G| vertices with the free left translation action.

    Vertex (i, h) gets index (i-1)*|G| + position(h) + 1.  Every positive
    coefficient a at group element g in entry (i, j) contributes a arrows
    (i, h) -> (j, h*g) for each h.  Folding back at the identity
    representatives returns the input exactly (asserted).
    """
    if any(s != 1 for s in B.stab_orders):
        raise ValueError("unfolding requires trivial stabilizers")
    for row in B.entries:
        for e in row:
            if not e.is_integral():
                raise ValueError("unfolding requires integer coefficients")
    G = B.group
    N = G.order
    m = B.m
    n = m * N
    pos = {g: p for p, g in enumerate(G.elements)}
    b = [[0] * n for _ in range(n)]

    def vid(i: int, h: GroupElement) -> int:
        return i * N + pos[h]

    for i in range(m):
        for j in range(m):
            for g, c in B.entries[i][j].terms:
                if c <= 0:
                    continue
                a = int(c)
                for h in G.elements:
                    u, v = vid(i, h), vid(j, h * g)
                    b[u][v] += a
                    b[v][u] -= a
    quiver = Quiver(tuple(tuple(row) for row in b))
    gen_maps = []
    for t in G.generators:
        gmap = [0] * n
        for i in range(m):
            for h in G.elements:
                gmap[vid(i, h)] = vid(i, t * h) + 1
        gen_maps.append(tuple(gmap))
    reps = tuple(vid(i, G.identity) + 1 for i in range(m))
    qa = act_on_quiver(G, quiver, gen_maps, reps)
    refolded = fold(qa)
    assert refolded.entries == B.entries, "refolding the canonical unfolding failed"
    return qa


def theorem_mutation_commutes(qa: QuiverAction, k: int) -> bool:
    """Folding after set mutation equals matrix mutation after folding."""
    return fold(set_mutate(qa, k)).entries == matrix_mutate(fold(qa), k).entries
