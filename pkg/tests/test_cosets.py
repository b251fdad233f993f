from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetgeom.cosets import (
    CosetLimitError,
    CosetTable,
    coset_action,
    low_index_subgroups,
    schreier_generators,
    table_from_permutations,
    todd_coxeter,
)
from cosetgeom.dessin import Dessin
from cosetgeom.perm import Permutation, evaluate
from cosetgeom.words import G_DOUBLE_PRIME, G_PRIME, Presentation, Word, parse_word

from oracles import transitive_pair_counts

F = Presentation.free()
G = Presentation.involution()


def test_tc_whole_group():
    t = todd_coxeter(G, [Word("a"), Word("b")])
    assert t.n == 1


def test_tc_cyclic_subgroup_has_infinite_index():
    # cosets H b (a b)^k are pairwise distinct
    with pytest.raises(CosetLimitError):
        todd_coxeter(G, [Word("a")], max_cosets=2000)


def test_tc_index_two_kernel():
    t = todd_coxeter(G, [Word("a"), Word("bab")])
    assert t.n == 2
    assert [str(w) for w in t.transversal] == ["e", "b"]
    g0, g1 = coset_action(t)
    assert g0.is_identity()
    assert str(g1) == "(1,2)"


def test_tc_octahedron_stabilizer():
    g0 = Permutation.from_cycles("(1,2,3)(4,5,6)", 6)
    g1 = Permutation.from_cycles("(2,4)(3,5)", 6)
    t0 = table_from_permutations(g0, g1)
    t = todd_coxeter(G, schreier_generators(t0, G))
    assert t.n == 6
    assert [str(w) for w in t.transversal] == ["e", "a", "A", "ab", "Ab", "abA"]
    a, b = coset_action(t)
    assert (str(a), str(b)) == ("(1,2,3)(4,5,6)", "(2,4)(3,5)")


def test_tc_index_one_action_is_trivial():
    t = todd_coxeter(F, [Word("a"), Word("b")])
    a, b = coset_action(t)
    assert a.is_identity() and b.is_identity()


def test_tc_budget():
    with pytest.raises(CosetLimitError):
        todd_coxeter(G, [], max_cosets=50)


def test_tc_prime_index_15_round_trip(pg32):
    d = pg32.dessins[0]
    t0 = table_from_permutations(d.g0, d.g1)
    t = todd_coxeter(G_PRIME, schreier_generators(t0, G))
    assert t.n == 15
    assert Dessin.from_table(t).is_isomorphic(d)


@pytest.mark.parametrize("n,subgroups,classes", [(1, 1, 1), (2, 3, 3), (3, 7, 3), (4, 23, 10), (5, 71, 15)])
def test_low_index_counts_on_G(n, subgroups, classes):
    assert len(low_index_subgroups(G, n, up_to_conjugacy=False)) == subgroups
    assert len(low_index_subgroups(G, n, up_to_conjugacy=True)) == classes


def test_low_index_counts_match_oracle():
    for n in range(1, 6):
        subs, classes = transitive_pair_counts(n)
        assert len(low_index_subgroups(G, n, False)) == subs
        assert len(low_index_subgroups(G, n, True)) == classes


def test_low_index_free_group_oracle():
    subs, classes = transitive_pair_counts(4, involution=False)
    assert len(low_index_subgroups(F, 4, False)) == subs
    assert len(low_index_subgroups(F, 4, True)) == classes


def test_low_index_rejects_zero():
    with pytest.raises(ValueError):
        low_index_subgroups(G, 0)


def test_low_index_node_budget():
    with pytest.raises(CosetLimitError):
        low_index_subgroups(G_DOUBLE_PRIME, 63, max_nodes=500)


def test_low_index_jobs_deterministic():
    serial = low_index_subgroups(G, 7, True, jobs=1)
    parallel = low_index_subgroups(G, 7, True, jobs=2)
    assert [t.flat() for t in serial] == [t.flat() for t in parallel]


def test_table_json_round_trip():
    for t in low_index_subgroups(G, 4, False):
        data = json.loads(json.dumps(t.to_json()))
        assert CosetTable.from_json(data) == t


# --- properties --------------------------------------------------------------

@pytest.mark.parametrize("p,n", [(G, 6), (F, 3), (G_PRIME, 8), (G_PRIME, 15)])
def test_tables_are_complete_and_consistent(p, n):
    for t in low_index_subgroups(p, n, True):
        assert t.satisfies(p.relators)
        assert t.is_transitive()
        for c in "aAbB":
            inv = {"a": "A", "A": "a", "b": "B", "B": "b"}[c]
            assert all(t.action[inv][t.action[c][k]] == k for k in range(t.n))
        for k, w in enumerate(t.transversal):
            assert t.trace(0, w) == k


def test_relator_images_in_G_double_prime():
    g0, g1 = coset_action(low_index_subgroups(G_DOUBLE_PRIME, 7, True)[0])
    for r in ("bb", "a^4", "(ab)^7", "(ABab)^6"):
        assert evaluate(parse_word(r), g0, g1).is_identity()


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_all_subgroups_partition_into_classes(n):
    classes = low_index_subgroups(G, n, True)
    reps = [Dessin.from_table(t) for t in classes]
    canon = {d.canonical(): i for i, d in enumerate(reps)}
    hits = [0] * len(reps)
    for t in low_index_subgroups(G, n, False):
        hits[canon[Dessin.from_table(t).canonical()]] += 1
    assert all(h > 0 for h in hits)
    # a class has as many members as the index of the normalizer
    for d, h in zip(reps, hits):
        distinct = {table_from_permutations(d.g0, d.g1, b).flat() for b in range(d.n)}
        assert h == len(distinct)


@settings(max_examples=20)
@given(st.integers(1, 5), st.data())
def test_round_trip_through_schreier_generators(n, data):
    tables = low_index_subgroups(G, n, False)
    t = data.draw(st.sampled_from(tables))
    back = todd_coxeter(G, schreier_generators(t, G))
    assert back == t
