"""Verification suites runnable from the CLI and reused by the test suite.

Each suite returns a list of CheckResult records. The grids compare the
closed-form diagonal mutation rules against the unfold-mutate-refold oracle
entry by entry, so a passing run means two independent computation routes
agree exactly.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import corpus
from .explore import exchange_graph, reddening_search
from .folding import (FoldedMatrix, canonical_unfold, fold, matrix_mutate,
                      orbit_is_cycle_free, set_mutate, theorem_mutation_commutes,
                      weaving_isomorphic)
from .groups import Cyc, Perm, PermGroup
from .quivers import cycle_generalized_sequence, cycle_quiver, is_generalized_mutation
from .ring import GroupRingElement
from .special import (markov_adjacent_mutate, markov_oracle, mutate_diag3,
                      mutate_diag4, refold_oracle)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _check(results, name, ok, detail=""):
    results.append(CheckResult(name, bool(ok), detail))


def _pos(x):
    return x if x > 0 else 0


def _neg(x):
    return x if x < 0 else 0


def _cyclic_element(group, mod, coeffs):
    return GroupRingElement.from_terms(
        group, {Cyc(mod, t): c for t, c in enumerate(coeffs)})


def _random_element(group, rng, bound):
    coeffs = {}
    for g in group.elements:
        c = rng.randint(-bound, bound)
        if c:
            coeffs[g] = c
    return GroupRingElement.from_terms(group, coeffs)


def random_skew_matrix(group, m, rng, bound=2, order3_diagonal=False):
    """Random sigma-skew matrix with trivial stabilizers and integral entries."""
    zero = GroupRingElement.zero(group)
    entries = [[zero for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = _random_element(group, rng, bound)
            entries[i][j] = x
            entries[j][i] = -x.involution()
    if order3_diagonal:
        g = next(h for h in group.elements if h != h.inverse())
        for i in range(m):
            if rng.random() < 0.3:
                entries[i][i] = GroupRingElement.from_terms(
                    group, {g: 1, g.inverse(): -1})
    return FoldedMatrix(group, tuple(tuple(row) for row in entries), (1,) * m)


THEOREM_GROUPS = (
    ("Z/2", PermGroup([Cyc(2, 1)]), 6),
    ("Z/3", PermGroup([Cyc(3, 1)]), 4),
    ("Z/4", PermGroup([Cyc(4, 1)]), 3),
    ("S3", PermGroup([Perm((2, 1, 3)), Perm((2, 3, 1))]), 2),
)


def suite_theorems(trials=200, seed=20240814):
    """Set mutation commutes with matrix mutation; folds are sigma-skew;
    fold(canonical_unfold(B)) round-trips."""
    rng = random.Random(seed)
    results = []
    per_group = trials // len(THEOREM_GROUPS)
    checked = mutated = 0
    ok = True
    witness = ""
    for label, group, max_m in THEOREM_GROUPS:
        allow_diag = group.order > 2
        for _ in range(per_group):
            m = rng.randint(1, max_m)
            B = random_skew_matrix(group, m, rng,
                                   order3_diagonal=allow_diag and rng.random() < 0.5)
            qa = canonical_unfold(B)
            checked += 1
            F = fold(qa)
            for i in range(m):
                for j in range(m):
                    ratio = Fraction(qa.stab_orders[j], qa.stab_orders[i])
                    if F.entries[j][i] != (-ratio) * F.entries[i][j].involution():
                        ok = False
                        witness = f"{label} m={m} skew failed at ({i+1},{j+1})"
            for k in range(1, m + 1):
                if not orbit_is_cycle_free(qa, k):
                    continue
                mutated += 1
                if not theorem_mutation_commutes(qa, k):
                    ok = False
                    witness = f"{label} m={m} orbit {k}"
    _check(results, "set mutation commutes with matrix mutation",
           ok, witness or f"{checked} quivers, {mutated} orbit mutations")

    rng = random.Random(seed + 1)
    ok = True
    witness = ""
    for label, group, max_m in (THEOREM_GROUPS[1], THEOREM_GROUPS[2]):
        for _ in range(50):
            m = rng.randint(1, max_m)
            B = random_skew_matrix(group, m, rng, bound=3)
            if fold(canonical_unfold(B)).entries != B.entries:
                ok = False
                witness = f"{label} m={m}"
    _check(results, "fold(canonical_unfold(B)) = B", ok, witness or "100 matrices")
    return results


def _diag3_grid_matrix(group, a, b, c):
    w, w2 = Cyc(3, 1), Cyc(3, 2)
    diag = GroupRingElement.from_terms(group, {w: 1, w2: -1})
    x = _cyclic_element(group, 3, (a, b, c))
    return FoldedMatrix(group, (
        (diag, x), (-x.involution(), GroupRingElement.zero(group))), (1, 1))


def _diag3_branch(a, b, c):
    """Strict-sign case table for the identity coefficient after mutation."""
    if a > 0 and b + a > 0 and c > 0:
        return -b
    if a > 0 and b + a > 0 and c < 0:
        return -b - c
    if a > 0 and b + a < 0 and c > 0:
        return a
    if a > 0 and b + a < 0 and c < 0:
        return a - c
    if a < 0 and c + a > 0 and b > 0:
        return a - b
    if a < 0 and c + a > 0 and b < 0:
        return a
    if a < 0 and c + a < 0 and b > 0:
        return -b - c
    if a < 0 and c + a < 0 and b < 0:
        return -c
    return None


def suite_diag3():
    """Order-3 diagonal rule against the refold oracle on the full small grid."""
    group = PermGroup([Cyc(3, 1)])
    results = []
    agree = invol = diag_kept = closed = branch = True
    cells = branch_cells = 0
    for a, b, c in product(range(-2, 3), repeat=3):
        B = _diag3_grid_matrix(group, a, b, c)
        M = mutate_diag3(B, 1)
        R = refold_oracle(B, 1)
        cells += 1
        if M.entries != R.entries:
            agree = False
        if mutate_diag3(M, 1).entries != B.entries:
            invol = False
        if M.entries[0][0] != B.entries[0][0]:
            diag_kept = False
        a_new = M.entries[0][1].coeff(group.identity)
        if a_new != a - _pos(b + _pos(a)) - _neg(c + _neg(a)):
            closed = False
        expected = _diag3_branch(a, b, c)
        if expected is not None:
            branch_cells += 1
            if a_new != expected:
                branch = False
    _check(results, "diag3 rule matches refold oracle", agree, f"{cells} cells")
    _check(results, "diag3 rule is an involution", invol)
    _check(results, "diag3 rule preserves the diagonal", diag_kept)
    _check(results, "diag3 identity coefficient closed form", closed)
    _check(results, "diag3 strict-sign case table", branch, f"{branch_cells} cells")
    return results


def _diag4_grid_matrix(group, a, b, c, d):
    z, z3 = Cyc(4, 1), Cyc(4, 3)
    diag = GroupRingElement.from_terms(group, {z: 1, z3: -1})
    x = _cyclic_element(group, 4, (a, b, c, d))
    return FoldedMatrix(group, (
        (diag, x), (-x.involution(), GroupRingElement.zero(group))), (1, 1))


def _diag4_identity_form(a, b, c, d):
    p = d + _neg(a)
    return a - _neg(p) - _pos(-p + _neg(c + _neg(p)) + _pos(b + _pos(a) + _pos(p)))


def suite_diag4():
    """Order-4 diagonal rule against the refold oracle on the full small grid."""
    group = PermGroup([Cyc(4, 1)])
    results = []
    agree = invol = diag_kept = closed = True
    cells = 0
    for a, b, c, d in product(range(-2, 3), repeat=4):
        B = _diag4_grid_matrix(group, a, b, c, d)
        M = mutate_diag4(B, 1)
        R = refold_oracle(B, 1)
        cells += 1
        if M.entries != R.entries:
            agree = False
        if mutate_diag4(M, 1).entries != B.entries:
            invol = False
        if M.entries[0][0] != B.entries[0][0]:
            diag_kept = False
        if M.entries[0][1].coeff(group.identity) != _diag4_identity_form(a, b, c, d):
            closed = False
    _check(results, "diag4 rule matches refold oracle", agree, f"{cells} cells")
    _check(results, "diag4 rule is an involution", invol)
    _check(results, "diag4 rule preserves the diagonal", diag_kept)
    _check(results, "diag4 identity coefficient closed form", closed)
    return results


def _markov_grid_matrix(group, a, b, c):
    w, w2 = Cyc(3, 1), Cyc(3, 2)
    diag = GroupRingElement.from_terms(group, {w: 2, w2: -2})
    x = _cyclic_element(group, 3, (a, b, c))
    return FoldedMatrix(group, (
        (diag, x), (-x.involution(), GroupRingElement.zero(group))), (1, 1))


def suite_markov():
    """Doubled-cycle diagonal rule against the nine-vertex unfolding oracle."""
    group = PermGroup([Cyc(3, 1)])
    results = []
    agree = diag_kept = True
    cells = 0
    for a, b, c in product(range(-2, 3), repeat=3):
        B = _markov_grid_matrix(group, a, b, c)
        M = markov_adjacent_mutate(B, 1)
        expected = markov_oracle(B)
        cells += 1
        if M.matrix.entries[0][1] != expected:
            agree = False
        if M.matrix.entries[0][0] != B.entries[0][0]:
            diag_kept = False
    _check(results, "markov rule matches nine-vertex oracle", agree, f"{cells} cells")
    _check(results, "markov rule preserves the diagonal", diag_kept)
    zeroB = _markov_grid_matrix(group, 0, 0, 0)
    M = markov_adjacent_mutate(zeroB, 1)
    _check(results, "markov rule fixes the decoupled matrix",
           M.matrix.entries == zeroB.entries)
    return results


def suite_corpus():
    """Folds of the named examples, exchange-graph counts, reddening bounds."""
    results = []

    qa = corpus.crossed_chains_action((1, 3, 5))
    _check(results, "crossed chains fold, representatives (1,3,5)",
           fold(qa).entries == corpus.CROSSED_FOLD_135.entries)
    qa = corpus.crossed_chains_action((2, 3, 5))
    _check(results, "crossed chains fold, representatives (2,3,5)",
           fold(qa).entries == corpus.CROSSED_FOLD_235.entries)

    _check(results, "hexagon threefold fold up to weaving",
           weaving_isomorphic(fold(corpus.hexagon_z3_action()),
                              corpus.HEXAGON_Z3_FOLD) is not None)
    _check(results, "hexagon twofold fold up to weaving",
           weaving_isomorphic(fold(corpus.hexagon_z2_action()),
                              corpus.HEXAGON_Z2_FOLD) is not None)

    for name in ("c4", "klein", "c3", "d4", "s4"):
        B = fold(corpus.cuboctahedron_action(corpus.CUBOCTA_SUBGROUPS[name]))
        _check(results, f"cuboctahedron fold {name} up to weaving",
               weaving_isomorphic(B, corpus.CUBOCTA_FOLDS[name]) is not None)

    _check(results, "markov quiver folds to the doubled-cycle seed",
           fold(corpus.markov_action()).entries == corpus.MARKOV_SEED.entries)
    _check(results, "triple chain folds are tridiagonal",
           all(fold(corpus.triple_chain_action(n)).entries
               == corpus.triple_chain_fold(n).entries for n in (1, 2, 3, 4)))

    anchor = mutate_diag3(_diag3_grid_matrix(PermGroup([Cyc(3, 1)]), 1, 0, 0), 1)
    _check(results, "order-3 diagonal mutation anchor value",
           anchor.entries[0][1]
           == GroupRingElement.from_terms(anchor.group, {Cyc(3, 2): -1}))

    ok = all(is_generalized_mutation(cycle_quiver(n), cycle_generalized_sequence(n))
             is not None for n in (3, 4, 5, 6))
    _check(results, "cycle sequence is a generalized mutation, n=3..6", ok)

    graph = exchange_graph(corpus.Z4_TRIANGLE4)
    _check(results, "z4-triangle4 exchange graph has exactly 7 classes",
           graph.complete and len(graph.nodes) == 7, f"{len(graph.nodes)} nodes")
    counts = {}
    for name in ("z3-path3", "z4-path3", "z3-cycle4"):
        g = exchange_graph(corpus.NAMED_MATRICES[name])
        counts[name] = (len(g.nodes), g.complete)
    _check(results, "seed exchange graphs complete within budget",
           all(done for _, done in counts.values()),
           ", ".join(f"{k}: {v[0]}" for k, v in counts.items()))
    _check(results, "seed exchange graph class counts are stable",
           counts == {"z3-path3": (7, True), "z4-path3": (8, True),
                      "z3-cycle4": (27, True)})

    _check(results, "markov quiver has no reddening sequence to depth 8",
           reddening_search(corpus.markov_quiver(), 8) is None)

    roundtrip = all(
        FoldedMatrix.from_json(M.to_json()).entries == M.entries
        for M in corpus.NAMED_MATRICES.values())
    _check(results, "named matrices round-trip through JSON", roundtrip)
    return results


SUITES = {
    "theorems": suite_theorems,
    "diag3": suite_diag3,
    "diag4": suite_diag4,
    "markov": suite_markov,
    "corpus": suite_corpus,
}


def run_suite(name: str):
    if name == "all":
        out = []
        for key in ("theorems", "diag3", "diag4", "markov", "corpus"):
            out.extend(SUITES[key]())
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite: {name}")
    return SUITES[name]()
