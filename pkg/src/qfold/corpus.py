"""Named quivers, group actions, and folded matrices used across the test suite.

Everything here is data: small hand-checkable quivers with their symmetry
actions, the folded matrices they produce, and a family of exploration seeds
over cyclic group rings. Tests treat these as ground truth, so the entries
are written out literally rather than computed.
"""

import itertools
from fractions import Fraction

from .groups import Cyc, Perm, PermGroup
from .quivers import Quiver
from .ring import GroupRingElement
from .folding import FoldedMatrix, QuiverAction, act_on_quiver

Z2 = PermGroup([Cyc(2, 1)])
Z3 = PermGroup([Cyc(3, 1)])
Z4 = PermGroup([Cyc(4, 1)])

EPS = Cyc(2, 1)
OMEGA = Cyc(3, 1)
OMEGA2 = Cyc(3, 2)
ZETA = Cyc(4, 1)
ZETA2 = Cyc(4, 2)
ZETA3 = Cyc(4, 3)


def _ring(group, cell):
    if isinstance(cell, GroupRingElement):
        return cell
    if isinstance(cell, dict):
        return GroupRingElement.from_terms(group, cell)
    coeff = Fraction(cell)
    if not coeff:
        return GroupRingElement.zero(group)
    return GroupRingElement.from_terms(group, {group.identity: coeff})


def _matrix(group, rows, stab_orders=None):
    entries = tuple(tuple(_ring(group, cell) for cell in row) for row in rows)
    if stab_orders is None:
        stab_orders = (1,) * len(entries)
    return FoldedMatrix(group, entries, tuple(stab_orders))


# Exploration seeds over Z[Z/3]. The path has an omega-weighted end edge,
# the cycle adds a fourth vertex closing a square, the five-vertex block is
# the largest seed whose exchange graph is left uncounted.
Z3_PATH3 = _matrix(Z3, (
    (0, {Cyc(3, 0): 1, OMEGA: -1}, 0),
    ({Cyc(3, 0): -1, OMEGA2: 1}, 0, 1),
    (0, -1, 0),
))

Z3_CYCLE4 = _matrix(Z3, (
    (0, {Cyc(3, 0): 1, OMEGA: -1}, 0, -1),
    ({Cyc(3, 0): -1, OMEGA2: 1}, 0, 1, 0),
    (0, -1, 0, 1),
    (1, 0, -1, 0),
))

Z3_BLOCK5 = _matrix(Z3, (
    (0, {Cyc(3, 0): 1, OMEGA: -1}, 0, 0, 0),
    ({Cyc(3, 0): -1, OMEGA2: 1}, 0, 1, 0, -1),
    (0, -1, 0, -1, {Cyc(3, 0): 1, OMEGA: 1}),
    (0, 0, 1, 0, {OMEGA: -1}),
    (0, 1, {Cyc(3, 0): -1, OMEGA2: -1}, {OMEGA2: 1}, 0),
))

# Seeds over Z[Z/4]; the triangle seed has a complete exchange graph with
# exactly seven weaving classes.
Z4_PATH3 = _matrix(Z4, (
    (0, {Cyc(4, 0): 1, ZETA: -1}, 0),
    ({Cyc(4, 0): -1, ZETA3: 1}, 0, 1),
    (0, -1, 0),
))

Z4_TRIANGLE4 = _matrix(Z4, (
    (0, {Cyc(4, 0): 1, ZETA: -1}, 0, 0),
    ({Cyc(4, 0): -1, ZETA3: 1}, 0, 1, -1),
    (0, -1, 0, {Cyc(4, 0): 1, ZETA: 1}),
    (0, 1, {Cyc(4, 0): -1, ZETA3: -1}, 0),
))

NAMED_MATRICES = {
    "z3-path3": Z3_PATH3,
    "z3-cycle4": Z3_CYCLE4,
    "z3-block5": Z3_BLOCK5,
    "z4-path3": Z4_PATH3,
    "z4-triangle4": Z4_TRIANGLE4,
}


def star_quiver():
    """Four sources feeding one sink."""
    return Quiver.from_arrows(5, [(2, 1), (3, 1), (4, 1), (5, 1)])


def star_action(reps=(1, 2, 3)):
    """Order-two symmetry swapping arms 2<->4 and 3<->5."""
    return act_on_quiver(Z2, star_quiver(), [(1, 4, 5, 2, 3)], reps)


def hexagon_quiver():
    """Oriented six-cycle."""
    return Quiver.from_arrows(6, [(i, i % 6 + 1) for i in range(1, 7)])


def hexagon_z3_action(reps=(1, 2)):
    """Rotation by two steps, three-fold symmetry."""
    return act_on_quiver(Z3, hexagon_quiver(), [(3, 4, 5, 6, 1, 2)], reps)


def hexagon_z2_action(reps=(1, 2, 3)):
    """Rotation by three steps, two-fold symmetry."""
    return act_on_quiver(Z2, hexagon_quiver(), [(4, 5, 6, 1, 2, 3)], reps)


HEXAGON_Z3_FOLD = _matrix(Z3, (
    (0, {Cyc(3, 0): 1, OMEGA2: -1}),
    ({Cyc(3, 0): -1, OMEGA: 1}, 0),
))

HEXAGON_Z2_FOLD = _matrix(Z2, (
    (0, 1, {EPS: -1}),
    (-1, 0, 1),
    ({EPS: 1}, -1, 0),
))


def crossed_chains_quiver():
    """Two three-chains whose middle vertices feed the opposite ends."""
    return Quiver.from_arrows(6, [(1, 3), (2, 4), (3, 6), (4, 5), (5, 3), (6, 4)])


def crossed_chains_action(reps=(1, 3, 5)):
    """Order-two symmetry exchanging the two chains."""
    return act_on_quiver(Z2, crossed_chains_quiver(), [(2, 1, 4, 3, 6, 5)], reps)


CROSSED_FOLD_135 = _matrix(Z2, (
    (0, 1, 0),
    (-1, 0, {Cyc(2, 0): -1, EPS: 1}),
    (0, {Cyc(2, 0): 1, EPS: -1}, 0),
))

CROSSED_FOLD_235 = _matrix(Z2, (
    (0, {EPS: 1}, 0),
    ({EPS: -1}, 0, {Cyc(2, 0): -1, EPS: 1}),
    (0, {Cyc(2, 0): 1, EPS: -1}, 0),
))


def markov_quiver():
    """Three vertices with doubled arrows in a cycle."""
    return Quiver.from_arrows(3, [(1, 2, 2), (2, 3, 2), (3, 1, 2)])


def markov_action(reps=(1,)):
    """Rotation of the doubled cycle."""
    return act_on_quiver(Z3, markov_quiver(), [(2, 3, 1)], reps)


MARKOV_SEED = _matrix(Z3, ((({OMEGA: 2, OMEGA2: -2}),),))


def triple_chain_quiver(n):
    """Three parallel chains of length n joined by a central oriented triangle.

    Vertex (level k, row r) has id 3*(k - 1) + r; tails point toward the
    triangle at level 1.
    """
    assert n >= 1
    arrows = [(1, 2), (2, 3), (3, 1)]
    for k in range(2, n + 1):
        for r in (1, 2, 3):
            arrows.append((3 * (k - 1) + r, 3 * (k - 2) + r))
    return Quiver.from_arrows(3 * n, arrows)


def triple_chain_action(n):
    """Cyclic rotation of the three rows at every level."""
    gen = tuple(3 * ((v - 1) // 3) + ((v - 1) % 3 + 1) % 3 + 1 for v in range(1, 3 * n + 1))
    reps = tuple(3 * k + 1 for k in range(n))
    return act_on_quiver(Z3, triple_chain_quiver(n), [gen], reps)


def triple_chain_fold(n):
    """Tridiagonal matrix with the order-three diagonal in the corner."""
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j == 1:
                row.append({OMEGA: 1, OMEGA2: -1})
            elif i == j + 1:
                row.append(1)
            elif j == i + 1:
                row.append(-1)
            else:
                row.append(0)
        rows.append(row)
    return _matrix(Z3, rows)


# Cuboctahedron: vertices are the twelve signed coordinate pairs, edges join
# vertices at dot product one, and each edge is oriented by the sign of the
# triple product with the shared quadrant direction.

CUBOCTA_VERTICES = tuple(sorted(
    v for v in itertools.product((-1, 0, 1), repeat=3)
    if sorted(map(abs, v)) == [0, 1, 1]
))

_CUBOCTA_INDEX = {v: i + 1 for i, v in enumerate(CUBOCTA_VERTICES)}


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _sign(x):
    return (x > 0) - (x < 0)


def cuboctahedron_quiver():
    arrows = []
    for u, v in itertools.combinations(CUBOCTA_VERTICES, 2):
        if sum(a * b for a, b in zip(u, v)) != 1:
            continue
        c = tuple(_sign(a + b) for a, b in zip(u, v))
        orient = sum(a * b for a, b in zip(_cross(u, v), c))
        assert orient != 0
        if orient > 0:
            arrows.append((_CUBOCTA_INDEX[u], _CUBOCTA_INDEX[v]))
        else:
            arrows.append((_CUBOCTA_INDEX[v], _CUBOCTA_INDEX[u]))
    return Quiver.from_arrows(12, arrows)


# The rotation group of the cuboctahedron permutes the four cube diagonals;
# sending each rotation matrix to that permutation is an isomorphism onto
# the symmetric group on four letters.

_DIAGONALS = ((1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1))


def _rotations():
    found = {}
    for perm in itertools.permutations(range(3)):
        parity = 1
        seen = list(perm)
        for i in range(3):
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                parity = -parity
        for signs in itertools.product((1, -1), repeat=3):
            if parity * signs[0] * signs[1] * signs[2] != 1:
                continue
            rot = tuple(tuple(signs[r] if perm[r] == c else 0 for c in range(3))
                        for r in range(3))
            img = []
            for d in _DIAGONALS:
                rd = tuple(sum(rot[r][c] * d[c] for c in range(3)) for r in range(3))
                neg = tuple(-x for x in rd)
                hit = [k + 1 for k, diag in enumerate(_DIAGONALS) if diag in (rd, neg)]
                assert len(hit) == 1
                img.append(hit[0])
            found[tuple(img)] = rot
    assert len(found) == 24
    return found


_ROTATION_BY_PERM = _rotations()


def rotation_vertex_map(p):
    """Vertex permutation of the cuboctahedron realizing a diagonal permutation."""
    rot = _ROTATION_BY_PERM[p.img]
    out = []
    for v in CUBOCTA_VERTICES:
        rv = tuple(sum(rot[r][c] * v[c] for c in range(3)) for r in range(3))
        out.append(_CUBOCTA_INDEX[rv])
    return tuple(out)


def cuboctahedron_action(generators, reps=None):
    group = PermGroup(list(generators))
    gen_maps = [rotation_vertex_map(p) for p in generators]
    return act_on_quiver(group, cuboctahedron_quiver(), gen_maps, reps)


CUBOCTA_SUBGROUPS = {
    "c4": (Perm((2, 3, 4, 1)),),
    "klein": (Perm((2, 1, 4, 3)), Perm((3, 4, 1, 2))),
    "c3": (Perm((2, 3, 1, 4)),),
    "d4": (Perm((2, 3, 4, 1)), Perm((3, 2, 1, 4))),
    "s4": (Perm((2, 1, 3, 4)), Perm((2, 3, 4, 1))),
}


def _cubocta_expected():
    e4 = Perm((1, 2, 3, 4))
    g = Perm((2, 3, 4, 1))
    g3 = Perm((4, 1, 2, 3))
    a = Perm((2, 1, 4, 3))
    b = Perm((3, 4, 1, 2))
    c = Perm((4, 3, 2, 1))
    r = Perm((2, 3, 1, 4))
    r2 = Perm((3, 1, 2, 4))
    u = Perm((3, 2, 1, 4))
    half = Fraction(1, 2)

    c4 = _matrix(PermGroup([g]), (
        ({g: 1, g3: -1}, {e4: 1, g: -1}, 0),
        ({e4: -1, g3: 1}, 0, {e4: 1, g3: -1}),
        (0, {e4: -1, g: 1}, {g3: 1, g: -1}),
    ))
    klein = _matrix(PermGroup([a, b]), (
        (0, {e4: 1, a: -1}, {e4: -1, b: 1}),
        ({e4: -1, a: 1}, 0, {e4: 1, c: -1}),
        ({e4: 1, b: -1}, {e4: -1, c: 1}, 0),
    ))
    c3 = _matrix(PermGroup([r]), (
        ({r: 1, r2: -1}, 1, {r: -1}, 0),
        (-1, 0, {e4: 1, r: 1}, -1),
        ({r2: 1}, {e4: -1, r2: -1}, 0, 1),
        (0, 1, -1, {r2: 1, r: -1}),
    ))
    # The dihedral and full-group entries below are pinned by hand from the
    # geometry: every entry of a fold must stay invariant under right
    # translation by the column stabilizer, which forces the supports seen
    # here. Off-diagonal halves come from the order-two stabilizer of the
    # square orbit.
    ab = Perm((2, 1, 4, 3))
    d4 = _matrix(PermGroup([g, u]), (
        ({g3: 1, g: -1}, {e4: half, ab: -half, u: half, g3: -half}),
        ({e4: -1, ab: 1, g: 1, u: -1}, 0),
    ), stab_orders=(1, 2))
    p234 = Perm((1, 3, 4, 2))
    p243 = Perm((1, 4, 2, 3))
    p1324 = Perm((3, 4, 2, 1))
    p1423 = Perm((4, 3, 1, 2))
    s4 = _matrix(PermGroup([Perm((2, 1, 3, 4)), g]), (
        ({p234: -half, p243: half, r: -half, r2: half,
          g: -half, g3: half, p1324: half, p1423: -half},),
    ), stab_orders=(2,))
    return {"c4": c4, "klein": klein, "c3": c3, "d4": d4, "s4": s4}


CUBOCTA_FOLDS = _cubocta_expected()
