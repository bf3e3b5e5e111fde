import pytest

from qfold import corpus
from qfold.folding import FoldedMatrix, fold
from qfold.groups import Cyc, PermGroup
from qfold.ring import GroupRingElement
from qfold.special import (
    MARKOV_STEPS,
    diagonal_rule_kind,
    markov_adjacent_mutate,
    markov_oracle,
    markov_unfolded_quiver,
    mutate_diag3,
    mutate_diag4,
    mutate_rule,
    refold_oracle,
)
from qfold.verify import (
    _diag3_grid_matrix,
    _diag4_grid_matrix,
    _markov_grid_matrix,
)

Z3 = PermGroup([Cyc(3, 1)])
Z4 = PermGroup([Cyc(4, 1)])


def test_rule_kind_detection():
    assert diagonal_rule_kind(corpus.CROSSED_FOLD_135, 1) == ("standard", None)
    kind, g = diagonal_rule_kind(_diag3_grid_matrix(Z3, 0, 1, 1), 1)
    assert kind == "diag3" and g in (Cyc(3, 1), Cyc(3, 2))
    kind, g = diagonal_rule_kind(_diag4_grid_matrix(Z4, 0, 0, 1, 1), 1)
    assert kind == "diag4" and g in (Cyc(4, 1), Cyc(4, 3))
    kind, g = diagonal_rule_kind(corpus.MARKOV_SEED, 1)
    assert kind == "markov"


def test_rule_kind_rejects_unrecognized_diagonal():
    three = GroupRingElement.from_terms(Z3, {Cyc(3, 1): 3, Cyc(3, 2): -3})
    M = FoldedMatrix(Z3, ((three,),), (1,))
    assert diagonal_rule_kind(M, 1) == (None, None)


def test_diag3_matches_refolding_on_a_sample():
    for (a, b, c) in ((0, 0, 0), (1, -1, 2), (-2, 1, 1), (2, 2, -2)):
        B = _diag3_grid_matrix(Z3, a, b, c)
        assert mutate_diag3(B, 1).entries == refold_oracle(B, 1).entries


def test_diag3_is_involutive_and_keeps_diagonal():
    B = _diag3_grid_matrix(Z3, 1, -2, 1)
    out = mutate_diag3(B, 1)
    assert out.entry(1, 1) == B.entry(1, 1)
    assert mutate_diag3(out, 1).entries == B.entries


def test_diag3_strict_sign_anchor():
    B = _diag3_grid_matrix(Z3, 1, 0, 0)
    out = mutate_diag3(B, 1)
    assert out.entries[0][1] == GroupRingElement.from_terms(Z3, {Cyc(3, 2): -1})


def test_diag4_matches_refolding_on_a_sample():
    for (a, b, c, d) in ((0, 0, 0, 0), (1, 0, -1, 1), (-1, 2, 0, -2), (2, -1, 1, 0)):
        B = _diag4_grid_matrix(Z4, a, b, c, d)
        assert mutate_diag4(B, 1).entries == refold_oracle(B, 1).entries


def test_diag4_is_involutive():
    B = _diag4_grid_matrix(Z4, -1, 1, 2, 0)
    assert mutate_diag4(mutate_diag4(B, 1), 1).entries == B.entries


def test_markov_rule_mutates_adjacent_entries_only():
    B = _markov_grid_matrix(corpus.Z3, 1, 1, 1)
    out = markov_adjacent_mutate(B, 1)
    assert out.matrix.entry(1, 1) == B.entry(1, 1)
    assert out.stale


def test_markov_matches_oracle_on_a_sample():
    for (a, b, c) in ((0, 0, 0), (1, 0, -1), (2, -2, 1)):
        B = _markov_grid_matrix(corpus.Z3, a, b, c)
        ours = markov_adjacent_mutate(B, 1).matrix.entry(1, 2)
        assert ours == markov_oracle(B)


def test_markov_decoupled_matrix_is_a_fixed_point():
    B = _markov_grid_matrix(corpus.Z3, 0, 0, 0)
    assert markov_adjacent_mutate(B, 1).matrix.entries == B.entries


def test_markov_unfolded_quiver_shape():
    q = markov_unfolded_quiver(_markov_grid_matrix(corpus.Z3, 1, -1, 0))
    assert q.n == 9
    assert len(MARKOV_STEPS) == 12


def test_refold_oracle_rejects_unsupported_diagonals():
    three = GroupRingElement.from_terms(Z3, {Cyc(3, 1): 3, Cyc(3, 2): -3})
    M = FoldedMatrix(Z3, ((three,),), (1,))
    with pytest.raises(ValueError):
        refold_oracle(M, 1)


def test_mutate_rule_dispatches_by_diagonal():
    kind, out, stale = mutate_rule(corpus.CROSSED_FOLD_135, 2, "auto")
    assert kind == "standard" and not stale
    B = _diag3_grid_matrix(Z3, 1, 0, 0)
    kind, out, stale = mutate_rule(B, 1, "auto")
    assert kind == "diag3" and not stale
    kind, out, stale = mutate_rule(corpus.MARKOV_SEED, 1, "auto")
    assert kind == "markov" and stale == frozenset()
    kind, out, stale = mutate_rule(_markov_grid_matrix(corpus.Z3, 1, 1, 1), 1, "auto")
    assert kind == "markov" and (2, 2) in stale


def test_mutate_rule_rejects_mismatched_rule_name():
    with pytest.raises(ValueError):
        mutate_rule(corpus.CROSSED_FOLD_135, 2, "diag3")
    with pytest.raises(ValueError):
        mutate_rule(corpus.CROSSED_FOLD_135, 2, "nonsense")
