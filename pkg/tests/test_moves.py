import pytest

from krh import library as L
from krh import moves, tangle
from krh.evaluator import evaluate, hennings_invariant
from krh.moves import MoveError, apply_move, find_sites, random_diagram, random_move_sequence


def test_random_diagram_deterministic():
    assert random_diagram(6, 3) == random_diagram(6, 3)
    T = random_diagram(6, 3, inputs=1)
    assert (T.inputs, T.outputs) == (1, 1)
    assert T.crossing_count <= 6


@pytest.mark.parametrize("move", moves.MOVES)
def test_each_move_preserves_tr(move, uq):
    hits = 0
    for seed in range(30):
        T = random_diagram(5, seed)
        sites = find_sites(T, move)
        if not sites:
            continue
        U = apply_move(T, move, sites[seed % len(sites)])
        assert evaluate(U, uq) == evaluate(T, uq)
        hits += 1
    assert hits > 0


def test_pair_insertion_on_closed_diagram(alg):
    T = L.trefoil()
    site = next(s for s in find_sites(T, "M2") if s.direction == "insert")
    assert evaluate(apply_move(T, "M2", site), alg).value == evaluate(T, alg).value


def test_switchback_on_curl(alg):
    T = L.closure(L.curl())
    sites = find_sites(T, "M4")
    assert sites
    for s in sites[:4]:
        assert evaluate(apply_move(T, "M4", s), alg).value == evaluate(T, alg).value


def test_open_tangle_element_invariant(uq):
    for seed in range(10):
        T = random_diagram(5, seed, inputs=1)
        U = random_move_sequence(T, 4, seed)
        assert evaluate(U, uq) == evaluate(T, uq)


def test_apply_move_rejects_mismatch():
    with pytest.raises(MoveError):
        apply_move(tangle.identity(1), "M2", moves.Site("M2", 0, 2, (), "remove"))


def test_flat_moves_keep_degree():
    for seed in range(10):
        T = random_diagram(5, seed, inputs=1, kinds=("flat",))
        U = random_move_sequence(T, 5, seed, moves=moves.FLAT_MOVES, flat=True)
        assert tangle.whitney_degree(U) == tangle.whitney_degree(T)


def test_double_component_open_strand(uq):
    T = L.encircled_strand()
    D = moves.double_component(T, 0)
    assert (D.inputs, D.outputs) == (2, 2)
    assert evaluate(D, uq).tensor() == uq.coproduct_of(evaluate(T, uq).element())


@pytest.mark.parametrize("framings", [(1, 1), (2, -1), (-1, 3), (1, -2)])
def test_handle_slide_preserves_inv(framings, uq):
    T = L.chain_link(framings)
    S = moves.handle_slide(T, 1, 0)
    assert S != T
    assert hennings_invariant(S, uq).INV == hennings_invariant(T, uq).INV


def test_handle_slide_needs_two_components():
    with pytest.raises(tangle.TangleError):
        moves.handle_slide(L.framed_unknot(1), 0, 0)
