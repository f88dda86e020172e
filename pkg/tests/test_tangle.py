import pytest

from krh import library as L
from krh import tangle
from krh.tangle import Slice, TangleDiagram, TangleError, TangleParseError, parse_tangle, serialize_tangle


def test_parse_and_serialize_roundtrip():
    text = "tangle 1 -> 1\ncup@1\nbead@1 2*K\nunder@0 ; cap@1  # trailing comment\n"
    T = parse_tangle(text)
    assert T.inputs == T.outputs == 1
    assert [s.kind for s in T.slices] == ["cup", "bead", "under", "cap"]
    assert parse_tangle(serialize_tangle(T)) == T


@pytest.mark.parametrize(
    "text, line",
    [
        ("tangle 1 -> 1\ncup@0\nfoo@1", 3),
        ("tangle 1 -> 1\ncap@0", 2),
        ("tangle 0 -> 0\ncup@0\nover@1", 3),
        ("tangle 1 -> 3\n", 1),
        ("bogus", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(TangleParseError) as err:
        parse_tangle(text)
    assert err.value.line == line


def test_widths_and_counts():
    T = L.trefoil()
    assert T.widths == [0, 2, 4, 4, 4, 4, 2, 0]
    assert T.crossing_count == 3
    assert T.is_closed


def test_compose_and_tensor():
    c = L.curl()
    T = tangle.compose(c, c)
    assert len(T.slices) == 6
    U = tangle.tensor(c, tangle.identity(1))
    assert (U.inputs, U.outputs) == (2, 2)
    with pytest.raises(TangleError):
        tangle.compose(c, tangle.identity(2))


def test_mirror_swaps_crossings():
    assert [s.kind for s in tangle.mirror(L.curl()).slices] == ["cup", "over", "cap"]


@pytest.mark.parametrize(
    "T, deg",
    [
        (tangle.identity(1), 0),
        (L.unknot(), 1),
        (L.curl(), 1),
        (L.reverse_curl(), 1),
        (L.flat_curl(), 1),
        (L.flat_curl_inverse(), -1),
        (L.double_curl(), 2),
    ],
)
def test_whitney_degrees(T, deg):
    assert tangle.whitney_degree(T) == deg


def test_whitney_independent_of_start_segment():
    T = L.framed_unknot(3)
    tr = tangle.traverse(T)[0]
    degs = {tangle.whitney_degree(T, 0, pt) for pt in tr.points}
    assert len(degs) == 1


def test_components():
    assert len(tangle.traverse(L.hopf_link())) == 2
    assert len(tangle.traverse(L.unlink([1, 2, -1]))) == 3
    assert len(tangle.traverse(L.encircled_strand())) == 2


@pytest.mark.parametrize(
    "T, matrix, sig",
    [
        (L.hopf_link(), [[0, 1], [1, 0]], 0),
        (L.framed_unknot(3), [[3]], 1),
        (L.framed_unknot(-2), [[-2]], -1),
        (L.unlink([1, -1]), [[1, 0], [0, -1]], 0),
    ],
)
def test_linking_data(T, matrix, sig):
    d = tangle.linking_data(T).to_dict()
    assert d["matrix"] == matrix
    assert d["signature"] == sig
    assert d["b_plus"] + d["b_minus"] + d["n_0"] == d["components"]


def test_degenerate_linking_counts_nullity():
    d = tangle.linking_data(L.chain_link((1, 1))).to_dict()
    assert d["n_0"] == 1


def test_double_doubles_strands():
    D = tangle.double(L.curl())
    assert (D.inputs, D.outputs) == (2, 2)
    assert D.crossing_count == 4


def test_invalid_slice_rejected():
    with pytest.raises(TangleError):
        TangleDiagram(1, 1, (Slice("over", 0),))
