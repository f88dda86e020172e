"""Unoriented tangle diagrams as words of horizontal slices.

A diagram is read from bottom to top.  Level ``t`` is the row of strands
just below slice ``t``; level 0 holds the inputs and level ``len(slices)``
the outputs.  Slice kinds:

``cup@i``    creates two new strands at positions i, i+1
``cap@i``    joins the strands at i, i+1
``over@i``   crossing R of strands i, i+1 (the strand running from bottom
             right to top left is on top)
``under@i``  crossing L (the other strand on top)
``flat@i``   flat crossing P of the immersion category
``bead@i v`` algebra element ``v`` on strand i

Composition ``compose(A, B)`` puts A below B.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Slice",
    "TangleDiagram",
    "TangleError",
    "TangleParseError",
    "Traversal",
    "LinkingData",
    "parse_tangle",
    "serialize_tangle",
    "identity",
    "compose",
    "tensor",
    "double",
    "tangle_antipode",
    "traverse",
    "components",
    "whitney_degree",
    "linking_data",
    "signature",
    "CROSSINGS",
]

KINDS = ("cup", "cap", "over", "under", "flat", "bead")
CROSSINGS = ("over", "under", "flat")
_OPPOSITE = {"over": "under", "under": "over", "flat": "flat"}


class TangleError(ValueError):
    """Invalid diagram (arity or position out of range)."""


class TangleParseError(TangleError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass(frozen=True)
class Slice:
    kind: str
    pos: int
    bead: object = None  # bead text or AlgebraElement (bead slices only)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise TangleError(f"unknown slice kind {self.kind!r}")
        if not isinstance(self.pos, int) or self.pos < 0:
            raise TangleError(f"slice position must be a nonnegative integer, got {self.pos!r}")
        if (self.kind == "bead") != (self.bead is not None):
            raise TangleError("bead value given for a non-bead slice" if self.bead is not None else "bead slice without a value")

    @property
    def is_crossing(self) -> bool:
        return self.kind in CROSSINGS

    def shifted(self, k: int) -> "Slice":
        return Slice(self.kind, self.pos + k, self.bead)

    def __str__(self):
        if self.kind == "bead":
            return f"bead@{self.pos} {self.bead}"
        return f"{self.kind}@{self.pos}"


def opposite(kind: str) -> str:
    return _OPPOSITE[kind]


@dataclass(frozen=True)
class TangleDiagram:
    inputs: int
    outputs: int
    slices: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))
        widths = _widths(self.inputs, self.slices)
        if widths[-1] != self.outputs:
            raise TangleError(f"diagram ends with {widths[-1]} strands but declares {self.outputs} outputs")

    @property
    def widths(self) -> list:
        """Strand count at each level (``len(slices) + 1`` entries)."""
        return _widths(self.inputs, self.slices)

    @property
    def is_closed(self) -> bool:
        return self.inputs == 0 and self.outputs == 0

    @property
    def crossing_count(self) -> int:
        return sum(1 for s in self.slices if s.is_crossing)

    @property
    def has_beads(self) -> bool:
        return any(s.kind == "bead" for s in self.slices)

    def __len__(self):
        return len(self.slices)

    def replace(self, start: int, stop: int, new: Iterable[Slice]) -> "TangleDiagram":
        return TangleDiagram(self.inputs, self.outputs, self.slices[:start] + tuple(new) + self.slices[stop:])

    def __str__(self):
        return serialize_tangle(self)


def _widths(inputs: int, slices: Sequence[Slice]) -> list:
    if not isinstance(inputs, int) or inputs < 0:
        raise TangleError("inputs must be a nonnegative integer")
    w = inputs
    out = [w]
    for n, s in enumerate(slices):
        if not isinstance(s, Slice):
            raise TangleError(f"slice {n} is not a Slice")
        if s.kind == "cup":
            if s.pos > w:
                raise TangleError(f"slice {n} ({s}): position out of range for {w} strands")
            w += 2
        elif s.kind == "bead":
            if s.pos >= w:
                raise TangleError(f"slice {n} ({s}): position out of range for {w} strands")
        else:
            if s.pos + 1 >= w:
                raise TangleError(f"slice {n} ({s}): position out of range for {w} strands")
            if s.kind == "cap":
                w -= 2
        out.append(w)
    return out


# ---------------------------------------------------------------------------
# text format

_HEADER = re.compile(r"^tangle\s+(\d+)\s*->\s*(\d+)$")
_SLICE = re.compile(r"^(cup|cap|over|under|flat|bead)\s*@\s*(\d+)(?:\s+(.+))?$")


def parse_tangle(text: str) -> TangleDiagram:
    """Parse the line-oriented tangle format (``;`` also separates slices)."""
    header = None
    slices: list = []
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for part in line.split(";"):
            part = part.strip()
            if part:
                items.append((lineno, part))
    if not items:
        raise TangleParseError("empty tangle file (missing 'tangle <in> -> <out>' header)")
    lineno, first = items[0]
    m = _HEADER.match(first)
    if not m:
        raise TangleParseError(f"expected 'tangle <inputs> -> <outputs>', got {first!r}", lineno)
    header = (int(m.group(1)), int(m.group(2)))
    width = header[0]
    for lineno, part in items[1:]:
        m = _SLICE.match(part)
        if not m:
            word = part.split("@")[0].split()[0]
            if word not in KINDS:
                raise TangleParseError(f"unknown slice keyword {word!r}", lineno)
            raise TangleParseError(f"malformed slice {part!r}", lineno)
        kind, pos, rest = m.group(1), int(m.group(2)), m.group(3)
        if kind == "bead":
            if not rest:
                raise TangleParseError("bead slice needs a value", lineno)
            s = Slice(kind, pos, rest.strip())
        else:
            if rest:
                raise TangleParseError(f"unexpected text after {kind}@{pos}", lineno)
            s = Slice(kind, pos)
        try:
            width = _widths(width, [s])[-1]
        except TangleError as exc:
            msg = str(exc).split(": ", 1)[-1]
            raise TangleParseError(msg, lineno) from None
        slices.append(s)
    if width != header[1]:
        raise TangleParseError(f"diagram ends with {width} strands but the header declares {header[1]} outputs", items[-1][0])
    return TangleDiagram(header[0], header[1], tuple(slices))


def serialize_tangle(T: TangleDiagram) -> str:
    lines = [f"tangle {T.inputs} -> {T.outputs}"]
    lines.extend(str(s) for s in T.slices)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# operations


def identity(n: int) -> TangleDiagram:
    return TangleDiagram(n, n, ())


def compose(A: TangleDiagram, B: TangleDiagram) -> TangleDiagram:
    """A below B."""
    if A.outputs != B.inputs:
        raise TangleError(f"cannot compose: {A.outputs} outputs into {B.inputs} inputs")
    return TangleDiagram(A.inputs, B.outputs, A.slices + B.slices)


def tensor(A: TangleDiagram, B: TangleDiagram) -> TangleDiagram:
    """A to the left of B: A's slices first, then B's shifted past A's outputs."""
    shift = A.outputs
    return TangleDiagram(A.inputs + B.inputs, A.outputs + B.outputs, A.slices + tuple(s.shifted(shift) for s in B.slices))


def _double_slice(s: Slice) -> list:
    i = s.pos
    if s.kind == "cup":
        return [Slice("cup", 2 * i), Slice("cup", 2 * i + 1)]
    if s.kind == "cap":
        return [Slice("cap", 2 * i + 1), Slice("cap", 2 * i)]
    if s.is_crossing:
        k = s.kind
        return [Slice(k, 2 * i + 1), Slice(k, 2 * i), Slice(k, 2 * i + 2), Slice(k, 2 * i + 1)]
    raise TangleError("cannot double a diagram with beads")


def double(T: TangleDiagram) -> TangleDiagram:
    """Replace every strand by two parallel copies."""
    out: list = []
    for s in T.slices:
        out.extend(_double_slice(s))
    return TangleDiagram(2 * T.inputs, 2 * T.outputs, tuple(out))


def tangle_antipode(T: TangleDiagram) -> TangleDiagram:
    """Rotate by a half turn: cups on the right below, caps on the left above."""
    n, m = T.inputs, T.outputs
    out = [Slice("cup", m + k) for k in range(n)]
    out.extend(s.shifted(m) for s in T.slices)
    out.extend(Slice("cap", m - 1 - k) for k in range(m))
    return TangleDiagram(m, n, tuple(out))


def mirror(T: TangleDiagram) -> TangleDiagram:
    """Swap over and under crossings."""
    return TangleDiagram(T.inputs, T.outputs, tuple(Slice(_OPPOSITE[s.kind], s.pos) if s.kind in ("over", "under") else s for s in T.slices))


# ---------------------------------------------------------------------------
# traversal


@dataclass
class Traversal:
    """One component walked in a fixed direction.

    ``events`` holds, in order:

    * ``("bead", t, role, h)`` -- a bead from slice t met with ``h`` half
      turns accumulated so far; role is ``"e"`` / ``"e'"`` (crossing legs),
      ``"s(e)"`` for the under-crossing left leg, or ``"bead"``
    * ``("turn", t, +1 | -1)`` -- passing an extremum clockwise / anticlockwise
    * ``("cross", t, line, direction)`` -- passing crossing t on line ``"/"``
      or ``"\\"`` moving up (+1) or down (-1)
    """

    closed: bool
    start: tuple
    end: tuple | None = None
    events: list = dc_field(default_factory=list)
    points: list = dc_field(default_factory=list)
    half_turns: int = 0

    @property
    def degree(self) -> int:
        """Whitney degree (half the number of signed half turns)."""
        if self.half_turns % 2:
            raise TangleError("strand with an odd number of half turns has no integer Whitney degree")
        return self.half_turns // 2

    def beads(self) -> list:
        return [e for e in self.events if e[0] == "bead"]

    def crossings(self) -> list:
        return [e for e in self.events if e[0] == "cross"]


def _point_beads(T: TangleDiagram, t: int, p: int) -> list:
    """Beads on point (t, p), bottom to top, as ``(slice, role)``."""
    out = []
    if t > 0:
        s = T.slices[t - 1]
        if s.kind == "over" and p in (s.pos, s.pos + 1):
            out.append((t - 1, "e" if p == s.pos else "e'"))
    if t < len(T.slices):
        s = T.slices[t]
        if s.kind == "under" and p in (s.pos, s.pos + 1):
            out.append((t, "s(e)" if p == s.pos else "e'"))
        elif s.kind == "bead" and p == s.pos:
            out.append((t, "bead"))
    return out


def _walk(T: TangleDiagram, t: int, p: int, direction: int, closed: bool) -> Traversal:
    L = len(T.slices)
    tr = Traversal(closed=closed, start=(t, p, direction))
    start = (t, p, direction)
    h = 0
    while True:
        tr.points.append((t, p))
        beads = _point_beads(T, t, p)
        for sl, role in (beads if direction > 0 else reversed(beads)):
            tr.events.append(("bead", sl, role, h))
        if direction > 0:
            if t == L:
                tr.end = ("output", p)
                break
            s = T.slices[t]
            i = s.pos
            if s.kind == "cup":
                t, p = t + 1, (p if p < i else p + 2)
            elif s.kind == "cap":
                if p == i:
                    h += 1
                    tr.events.append(("turn", t, 1))
                    p, direction = i + 1, -1
                elif p == i + 1:
                    h -= 1
                    tr.events.append(("turn", t, -1))
                    p, direction = i, -1
                else:
                    t, p = t + 1, (p if p < i else p - 2)
            elif s.is_crossing:
                if p == i:
                    tr.events.append(("cross", t, "/", 1))
                    t, p = t + 1, i + 1
                elif p == i + 1:
                    tr.events.append(("cross", t, "\\", 1))
                    t, p = t + 1, i
                else:
                    t += 1
            else:
                t += 1
        else:
            if t == 0:
                tr.end = ("input", p)
                break
            s = T.slices[t - 1]
            i = s.pos
            if s.kind == "cup":
                if p == i:
                    h -= 1
                    tr.events.append(("turn", t - 1, -1))
                    p, direction = i + 1, 1
                elif p == i + 1:
                    h += 1
                    tr.events.append(("turn", t - 1, 1))
                    p, direction = i, 1
                else:
                    t, p = t - 1, (p if p < i else p - 2)
            elif s.kind == "cap":
                t, p = t - 1, (p if p < i else p + 2)
            elif s.is_crossing:
                if p == i:
                    tr.events.append(("cross", t - 1, "\\", -1))
                    t, p = t - 1, i + 1
                elif p == i + 1:
                    tr.events.append(("cross", t - 1, "/", -1))
                    t, p = t - 1, i
                else:
                    t -= 1
            else:
                t -= 1
        if closed and (t, p, direction) == start:
            break
    tr.half_turns = h
    return tr


def traverse(T: TangleDiagram) -> list:
    """Walk every component once.

    Open strands come first, started at their first endpoint (inputs left
    to right, then outputs left to right) and walked into the diagram.
    Closed components follow in order of their lowest cup, started on the
    cup's left leg going up.
    """
    L = len(T.slices)
    seen: set = set()
    out = []
    starts = [(0, p, 1) for p in range(T.inputs)] + [(L, p, -1) for p in range(T.outputs)]
    for t, p, d in starts:
        if (t, p) in seen:
            continue
        tr = _walk(T, t, p, d, closed=False)
        seen.update(tr.points)
        out.append(tr)
    for t, s in enumerate(T.slices):
        if s.kind == "cup" and (t + 1, s.pos) not in seen:
            tr = _walk(T, t + 1, s.pos, 1, closed=True)
            seen.update(tr.points)
            out.append(tr)
    return out


def components(T: TangleDiagram) -> list:
    """Partition of the points ``(level, position)`` into components."""
    return [sorted(set(tr.points)) for tr in traverse(T)]


def component_of_point(T: TangleDiagram) -> dict:
    out = {}
    for c, tr in enumerate(traverse(T)):
        for pt in tr.points:
            out[pt] = c
    return out


def whitney_degree(T: TangleDiagram, component: int = 0, start_segment: tuple | None = None) -> int:
    """Whitney degree of one component.

    Open strands are walked from their first endpoint.  A closed component
    is walked upward from ``start_segment`` (a point ``(level, position)``),
    defaulting to the left leg of its lowest cup.
    """
    trs = traverse(T)
    if not 0 <= component < len(trs):
        raise TangleError(f"no component {component}")
    tr = trs[component]
    if start_segment is None or not tr.closed:
        if start_segment is not None and tuple(start_segment) not in tr.points:
            raise TangleError("start segment is not on this component")
        return tr.degree
    if tuple(start_segment) not in tr.points:
        raise TangleError("start segment is not on this component")
    t, p = start_segment
    return _walk(T, t, p, 1, closed=True).degree


# ---------------------------------------------------------------------------
# linking data


@dataclass(frozen=True)
class LinkingData:
    components: int
    matrix: tuple
    signature: int
    positive: int
    negative: int
    null: int

    def to_dict(self) -> dict:
        return {
            "components": self.components,
            "matrix": [list(r) for r in self.matrix],
            "signature": self.signature,
            "b_plus": self.positive,
            "b_minus": self.negative,
            "n_0": self.null,
        }


def crossing_signs(T: TangleDiagram) -> dict:
    """Sign of every crossing for the traversal orientation: slice -> (sign, comp_a, comp_b).

    L (under) with both strands going up is +1, R (over) is -1; each strand
    pointing down flips the sign.
    """
    info: dict = {}
    for c, tr in enumerate(traverse(T)):
        for _, t, line, direction in tr.crossings():
            info.setdefault(t, []).append((c, direction))
    out = {}
    for t, legs in info.items():
        kind = T.slices[t].kind
        if kind == "flat":
            raise TangleError("flat crossings have no sign")
        sign = 1 if kind == "under" else -1
        for _, direction in legs:
            sign *= direction
        out[t] = (sign, legs[0][0], legs[1][0])
    return out


def signature(matrix) -> tuple:
    """``(b_plus, b_minus, n_0)`` of a symmetric rational matrix by exact congruence."""
    M = [[Fraction(x) for x in row] for row in matrix]
    n = len(M)
    for i in range(n):
        for j in range(n):
            if M[i][j] != M[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if M[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j: row and column operation
            for k in range(n):
                M[i][k] += M[j][k]
            for k in range(n):
                M[k][i] += M[k][j]
            piv = i
        d = M[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = M[r][piv] / d
            if f:
                for k in range(n):
                    M[r][k] -= f * M[piv][k]
                for k in range(n):
                    M[k][r] -= f * M[k][piv]
        for k in range(n):
            if k != piv:
                M[piv][k] = M[k][piv] = Fraction(0)
    return pos, neg, n - pos - neg


def linking_data(T: TangleDiagram) -> LinkingData:
    if not T.is_closed:
        raise TangleError("linking data needs a closed diagram")
    c = len(traverse(T))
    M = [[Fraction(0)] * c for _ in range(c)]
    for sign, a, b in crossing_signs(T).values():
        if a == b:
            M[a][a] += sign
        else:
            M[a][b] += Fraction(sign, 2)
            M[b][a] += Fraction(sign, 2)
    for r in M:
        for x in r:
            if x.denominator != 1:
                raise TangleError("odd number of crossings between two components")
    mat = tuple(tuple(int(x) for x in r) for r in M)
    bp, bm, n0 = signature(mat)
    return LinkingData(c, mat, bp - bm, bp, bm, n0)
