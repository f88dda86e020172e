import pytest

from krh import library as L
from krh import moves, tangle
from krh.centrality import (
    bead_graph,
    bfs_cut_set,
    check_bead_push_identities,
    identity7_candidates,
    is_central,
    ordering_string,
    tangle_central_element,
    tree_bead_push,
    well_formed,
)
from krh.hopf import ribbon_element
from krh.tangle import TangleError


def test_one_and_v_are_central(alg):
    assert is_central(alg.one, alg).all_zero
    assert is_central(ribbon_element(alg), alg).all_zero


def test_x_not_central_in_h4(h4):
    cert = is_central(h4.basis(h4.index("x")), h4)
    assert not cert.all_zero
    assert h4.labels[cert.witness] == "g"


@pytest.mark.parametrize("make", [L.curl, L.double_curl, L.trefoil_string, L.encircled_strand])
def test_tangle_elements_central(make, alg):
    _, cert = tangle_central_element(make(), alg)
    assert cert.all_zero


def test_bead_push_identities(alg):
    rep = check_bead_push_identities(alg)
    assert rep.passed, rep.summary()


def test_identity7_pattern(uq, h4):
    for a in (uq, h4):
        cands = identity7_candidates(a)
        assert [k for k, v in cands.items() if v] == ["2,3,1"]
    assert "2,3,1" in check_bead_push_identities(uq)["rule 7 (under TR)"].detail


def test_identity_strand_trace():
    tr = tree_bead_push(tangle.identity(1))
    assert tr.cut_set == [] and tr.pairings == []
    assert tr.output == ("", 0)
    assert tr.parenthesis_check


def test_trefoil_ordering(uq):
    tr = tree_bead_push(L.trefoil_string(), algebra=uq)
    assert tr.ordering == "(1,21),(22,(23,31),32),33"
    assert tr.parenthesis_check and tr.condition1
    assert tr.rules_verified
    assert {s["rule"] for s in tr.step_log} <= set(range(1, 9))


def test_bad_cut_sets():
    T = L.trefoil_string()
    with pytest.raises(TangleError):
        tree_bead_push(T, [0, 1, 2])  # cuts the input edge
    with pytest.raises(TangleError):
        tree_bead_push(T, [1])  # leaves a cycle
    with pytest.raises(TangleError):
        tree_bead_push(T, [99])


def test_every_tree_of_trefoil_is_well_formed():
    import itertools

    T = L.trefoil_string()
    edges, _ = bead_graph(T)
    seen = 0
    for cut in itertools.combinations(range(len(edges)), 3):
        try:
            tr = tree_bead_push(T, list(cut))
        except TangleError:
            continue
        seen += 1
        assert tr.parenthesis_check and tr.condition1
    assert seen >= 8


def test_random_diagrams_conditions():
    for seed in range(20):
        T = moves.random_diagram(5, seed, inputs=1)
        edges, _ = bead_graph(T)
        tr = tree_bead_push(T, bfs_cut_set(edges))
        assert tr.parenthesis_check and tr.condition1
        assert tr.output[1] == 0


def test_ordering_helpers():
    labels = ["1", "21", "22", "23", "31", "32", "33"]
    pairs = [("1", "21"), ("22", "32"), ("23", "31")]
    assert ordering_string(labels, pairs) == "(1,21),(22,(23,31),32),33"
    assert well_formed(labels, pairs)
    assert not well_formed(labels, [("1", "22"), ("21", "23")])


def test_tree_push_rejects_closed():
    with pytest.raises(TangleError):
        tree_bead_push(L.trefoil())
