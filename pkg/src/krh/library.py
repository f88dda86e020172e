"""A small library of standard diagrams."""

from __future__ import annotations

from .tangle import Slice, TangleDiagram, TangleError, parse_tangle

__all__ = [
    "curl",
    "reverse_curl",
    "double_curl",
    "trefoil_string",
    "encircled_strand",
    "closure",
    "framed_unknot",
    "unknot",
    "unlink",
    "hopf_link",
    "trefoil",
    "flat_curl",
    "flat_curl_inverse",
    "chain_link",
    "STANDARD",
    "standard",
]


def _t(inputs, outputs, words) -> TangleDiagram:
    out = []
    for w in words:
        kind, pos = w.split("@")
        out.append(Slice(kind, int(pos)))
    return TangleDiagram(inputs, outputs, tuple(out))


def curl() -> TangleDiagram:
    """The curl whose value is the ribbon element v."""
    return _t(1, 1, ["cup@1", "under@0", "cap@1"])


def reverse_curl() -> TangleDiagram:
    """The opposite curl, with value v^-1."""
    return _t(1, 1, ["cup@1", "over@0", "cap@1"])


def double_curl() -> TangleDiagram:
    return _t(1, 1, ["cup@1", "under@0", "cap@1", "cup@1", "under@0", "cap@1"])


def flat_curl() -> TangleDiagram:
    """The flat curl G, of Whitney degree +1."""
    return _t(1, 1, ["cup@1", "flat@0", "cap@1"])


def flat_curl_inverse() -> TangleDiagram:
    """The flat curl of Whitney degree -1."""
    return _t(1, 1, ["cup@0", "flat@1", "cap@0"])


def trefoil_string() -> TangleDiagram:
    """Trefoil cut open into a 1-1 tangle (three twists of a 2-braid, one strand closed)."""
    return _t(1, 1, ["cup@1", "over@0", "over@0", "over@0", "cap@1"])


def encircled_strand() -> TangleDiagram:
    """A strand passing once through an unknotted, unframed circle."""
    return _t(1, 1, ["cup@0", "under@1", "over@0", "cap@1"])


def closure(T: TangleDiagram) -> TangleDiagram:
    """Close a 1-1 tangle by an arc on its left."""
    if (T.inputs, T.outputs) != (1, 1):
        raise TangleError("closure needs a 1-1 tangle")
    return TangleDiagram(0, 0, (Slice("cup", 0),) + tuple(s.shifted(1) for s in T.slices) + (Slice("cap", 0),))


def framed_unknot(n: int) -> TangleDiagram:
    """Unknot with framing n (|n| twists); surgery on it gives L(n, 1)."""
    kind = "over" if n > 0 else "under"
    return _t(0, 0, ["cup@0"] + [f"{kind}@0"] * abs(n) + ["cap@0"])


def unknot() -> TangleDiagram:
    return _t(0, 0, ["cup@0", "cap@0"])


def unlink(framings) -> TangleDiagram:
    """Disjoint framed unknots side by side."""
    words = []
    for f in framings:
        words.extend(str(s) for s in framed_unknot(f).slices)
    return _t(0, 0, words)


def hopf_link() -> TangleDiagram:
    """Hopf link with both framings zero."""
    return _t(0, 0, ["cup@0", "cup@2", "over@1", "over@1", "cap@2", "cap@0"])


def trefoil() -> TangleDiagram:
    return closure(trefoil_string())


def chain_link(framings=(1, 1)) -> TangleDiagram:
    """Two-component chain (Hopf link) with given framings."""
    a, b = framings
    words = ["cup@0"]
    words += [("over@0" if a > 0 else "under@0")] * abs(a)
    words += ["cup@2"]
    words += [("over@2" if b > 0 else "under@2")] * abs(b)
    words += ["over@1", "over@1", "cap@2", "cap@0"]
    return _t(0, 0, words)


STANDARD = {
    "identity": lambda: parse_tangle("tangle 1 -> 1"),
    "curl": curl,
    "reverse_curl": reverse_curl,
    "double_curl": double_curl,
    "trefoil_string": trefoil_string,
    "encircled_strand": encircled_strand,
    "unknot": unknot,
    "trefoil": trefoil,
    "hopf_link": hopf_link,
}


def standard(name: str) -> TangleDiagram:
    try:
        return STANDARD[name]()
    except KeyError:
        raise KeyError(f"unknown standard tangle {name!r}") from None
