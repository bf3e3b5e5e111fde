"""Quivers as skew-symmetric integer matrices, with mutation and framing.

A quiver on n vertices is the matrix ``b`` with ``b[i][j] = l`` when there
are ``l`` arrows from i+1 to j+1 (and ``-l`` for the reverse direction); no
loops, no 2-cycles.  Vertices are addressed 1-based everywhere in the public
interface.  A subset of vertices may be frozen: frozen vertices are never
mutated and arrows between two frozen vertices are forced to zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = [
    "Quiver",
    "MutationSequence",
    "mutate",
    "apply_sequence",
    "relabel",
    "are_isomorphic",
    "frame",
    "vertex_color",
    "is_reddening",
    "is_generalized_mutation",
    "cycle_generalized_sequence",
    "cycle_quiver",
]


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


@dataclass(frozen=True)
class Quiver:
    b: tuple[tuple[int, ...], ...]
    frozen: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        n = len(self.b)
        object.__setattr__(self, "b", tuple(tuple(row) for row in self.b))
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        for i, row in enumerate(self.b):
            if len(row) != n:
                raise ValueError("matrix must be square")
            if row[i] != 0:
                raise ValueError(f"loop at vertex {i + 1}")
            for j in range(n):
                if row[j] != -self.b[j][i]:
                    raise ValueError("matrix must be skew-symmetric")
        for v in self.frozen:
            if not 1 <= v <= n:
                raise ValueError(f"frozen vertex {v} out of range")
        for i in self.frozen:
            for j in self.frozen:
                if self.b[i - 1][j - 1] != 0:
                    raise ValueError("arrows between frozen vertices are not allowed")

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def mutable(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, self.n + 1) if v not in self.frozen)

    def arrows(self, i: int, j: int) -> int:
        """Signed arrow count from vertex i to vertex j (1-based)."""
        return self.b[i - 1][j - 1]

    @staticmethod
    def from_arrows(n: int, arrows: Sequence[tuple[int, int]] | Sequence[tuple[int, int, int]],
                    frozen: Sequence[int] = ()) -> "Quiver":
        """Build from a list of (source, target) or (source, target, count)."""
        b = [[0] * n for _ in range(n)]
        for arrow in arrows:
            i, j = arrow[0], arrow[1]
            w = arrow[2] if len(arrow) > 2 else 1
            b[i - 1][j - 1] += w
            b[j - 1][i - 1] -= w
        return Quiver(tuple(tuple(row) for row in b), frozenset(frozen))

    def arrow_list(self) -> list[tuple[int, int, int]]:
        """All (source, target, count) triples with positive count."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if self.b[i][j] > 0:
                    out.append((i + 1, j + 1, self.b[i][j]))
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "frozen": sorted(self.frozen), "b": [list(r) for r in self.b]}

    @staticmethod
    def from_json(data: dict) -> "Quiver":
        b = tuple(tuple(int(x) for x in row) for row in data["b"])
        if len(b) != int(data["n"]):
            raise ValueError("n does not match matrix size")
        return Quiver(b, frozenset(int(v) for v in data.get("frozen", ())))


def _mutate_raw(q: Quiver, k: int) -> Quiver:
    n = q.n
    k0 = k - 1
    b = q.b
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k0 or j == k0:
                new[i][j] = -b[i][j]
            else:
                new[i][j] = b[i][j] + _pos(b[i][k0]) * _pos(b[k0][j]) - _neg(b[i][k0]) * _neg(b[k0][j])
    # frozen-frozen entries carry no mutation information; keep them zero
    for i in q.frozen:
        for j in q.frozen:
            new[i - 1][j - 1] = 0
    return Quiver(tuple(tuple(row) for row in new), q.frozen)


def mutate(q: Quiver, k: int) -> Quiver:
    """Mutate at vertex k (1-based, mutable); mutating twice returns the input."""
    if not 1 <= k <= q.n:
        raise IndexError(f"vertex {k} out of range 1..{q.n}")
    if k in q.frozen:
        raise ValueError(f"vertex {k} is frozen")
    out = _mutate_raw(q, k)
    assert _mutate_raw(out, k) == q, "mutation is not involutive"
    return out


def relabel(q: Quiver, perm: Sequence[int]) -> Quiver:
    """Rename vertex v to perm[v-1].  A permutation shorter than n must cover
    an initial segment and is extended by the identity on the remaining
    vertices (used for sequences whose permutation touches only mutable
    vertices of a framed quiver)."""
    perm = tuple(perm)
    if len(perm) < q.n:
        if any(p > len(perm) for p in perm):
            raise ValueError("partial permutation must map its segment to itself")
        perm = perm + tuple(range(len(perm) + 1, q.n + 1))
    if sorted(perm) != list(range(1, q.n + 1)):
        raise ValueError("not a permutation of the vertex set")
    b = [[0] * q.n for _ in range(q.n)]
    for i in range(q.n):
        for j in range(q.n):
            b[perm[i] - 1][perm[j] - 1] = q.b[i][j]
    frozen = frozenset(perm[v - 1] for v in q.frozen)
    return Quiver(tuple(tuple(row) for row in b), frozen)


@dataclass(frozen=True)
class MutationSequence:
    """Mutation steps applied left to right, then an optional vertex relabeling."""

    steps: tuple[int, ...]
    post_permutation: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.post_permutation is not None:
            object.__setattr__(self, "post_permutation", tuple(self.post_permutation))


def apply_sequence(q: Quiver, seq: MutationSequence, with_permutation: bool = True) -> Quiver:
    for k in seq.steps:
        q = mutate(q, k)
    if with_permutation and seq.post_permutation is not None:
        q = relabel(q, seq.post_permutation)
    return q


def _signature(q: Quiver, v: int) -> tuple:
    row = q.b[v - 1]
    ins = sorted(-x for x in row if x < 0)
    outs = sorted(x for x in row if x > 0)
    return (v in q.frozen, len(ins), len(outs), tuple(ins), tuple(outs))


def are_isomorphic(q1: Quiver, q2: Quiver, fix_frozen: bool = False) -> Optional[tuple[int, ...]]:
    """Search for a vertex bijection carrying q1's matrix onto q2's.

    Returns the image tuple (vertex v of q1 maps to result[v-1] in q2) or
    None.  Frozen vertices map to frozen vertices; with ``fix_frozen`` they
    must map to themselves.  Backtracking assigns vertices in order of
    ascending candidate count, pruning with degree/weight signatures.
    """
    if q1.n != q2.n or len(q1.frozen) != len(q2.frozen):
        return None
    n = q1.n
    sig2: dict[tuple, list[int]] = {}
    for v in range(1, n + 1):
        sig2.setdefault(_signature(q2, v), []).append(v)
    candidates: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        if fix_frozen and v in q1.frozen:
            if v not in q2.frozen or _signature(q1, v) != _signature(q2, v):
                return None
            candidates[v] = [v]
        else:
            candidates[v] = list(sig2.get(_signature(q1, v), []))
            if not candidates[v]:
                return None
    order = sorted(range(1, n + 1), key=lambda v: len(candidates[v]))
    image = [0] * (n + 1)
    used = [False] * (n + 1)

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for w in candidates[v]:
            if used[w]:
                continue
            ok = True
            for u in order[:pos]:
                if q1.arrows(v, u) != q2.arrows(w, image[u]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used[w] = True
            if extend(pos + 1):
                return True
            used[w] = False
            image[v] = 0
        return False

    if not extend(0):
        return None
    return tuple(image[1:])


def frame(q: Quiver) -> Quiver:
    """Attach a frozen companion i' = i + n to every vertex with one arrow i -> i'."""
    if q.frozen:
        raise ValueError("cannot frame a quiver that already has frozen vertices")
    n = q.n
    b = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            b[i][j] = q.b[i][j]
        b[i][n + i] = 1
        b[n + i][i] = -1
    return Quiver(tuple(tuple(row) for row in b), frozenset(range(n + 1, 2 * n + 1)))


def vertex_color(fq: Quiver, i: int) -> str:
    """'green' if no frozen vertex has an arrow into i, 'red' if i has no
    arrow into any frozen vertex, else 'neither'."""
    if i in fq.frozen:
        raise ValueError(f"vertex {i} is frozen")
    green = all(fq.arrows(f, i) <= 0 for f in fq.frozen)
    red = all(fq.arrows(i, f) <= 0 for f in fq.frozen)
    if green and red:
        # only possible with no framing arrows at all; treat as neither
        return "neither"
    if green:
        return "green"
    if red:
        return "red"
    return "neither"


def is_reddening(q: Quiver, seq: MutationSequence) -> bool:
    """True when applying the steps to the framed quiver turns every mutable
    vertex red (the relabeling part of the sequence is ignored here)."""
    fq = apply_sequence(frame(q), seq, with_permutation=False)
    return all(vertex_color(fq, v) == "red" for v in range(1, q.n + 1))


def is_generalized_mutation(q: Quiver, seq: MutationSequence) -> Optional[tuple[int, ...]]:
    """Check that a sequence behaves as a single mutation of q as a whole:
    it must be reddening, and applying it twice to the framed quiver (with
    the relabeling after each pass) must give a quiver isomorphic to the
    framed start with all frozen vertices fixed.  Returns the isomorphism
    witness restricted to mutable vertices, or None."""
    if not is_reddening(q, seq):
        return None
    fq = frame(q)
    twice = apply_sequence(apply_sequence(fq, seq), seq)
    witness = are_isomorphic(twice, fq, fix_frozen=True)
    if witness is None:
        return None
    return witness[: q.n]


def cycle_generalized_sequence(n: int) -> MutationSequence:
    """The mutation sequence that acts as one generalized mutation of the
    single-arrow oriented n-cycle: 1..n followed by n-2 down to 1, with the
    last two vertices exchanged afterwards."""
    if n < 3:
        raise ValueError("cycle must have at least 3 vertices")
    steps = tuple(range(1, n + 1)) + tuple(range(n - 2, 0, -1))
    perm = list(range(1, n + 1))
    perm[n - 2], perm[n - 1] = perm[n - 1], perm[n - 2]
    return MutationSequence(steps, tuple(perm))


def cycle_quiver(n: int) -> Quiver:
    """Single-arrow oriented cycle 1 -> 2 -> ... -> n -> 1."""
    return Quiver.from_arrows(n, [(i, i % n + 1) for i in range(1, n + 1)])
