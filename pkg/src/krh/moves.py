"""Local moves on slice words, random diagrams and handle slides.

Moves (each usable in both directions):

``M0``  ``[cup@k+1, cap@k]`` or ``[cup@k, cap@k+1]``  <->  nothing (zig-zag)
``M2``  ``[X@k, Y@k]`` <-> nothing, with ``Y`` the opposite crossing of X
``M3``  ``[a@k, b@k+1, c@k]`` <-> ``[c@k+1, b@k, a@k+1]``, unless a = c != b
``M4``  ``[X@k, cap@k+1]`` <-> ``[Y@k+1, cap@k]`` and
        ``[cup@k, X@k+1]`` <-> ``[cup@k+1, Y@k]``
``FlatCurlCancel``  a flat curl next to a flat curl of the opposite degree
        <-> nothing

Crossing kinds never mix the flat and the knotted world: M3 needs all three
crossings flat or none flat.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .tangle import (
    Slice,
    TangleDiagram,
    TangleError,
    component_of_point,
    opposite,
)

__all__ = [
    "MOVES",
    "FLAT_MOVES",
    "Site",
    "MoveError",
    "find_sites",
    "apply_move",
    "random_diagram",
    "random_move_sequence",
    "double_component",
    "handle_slide",
]

MOVES = ("M0", "M2", "M3", "M4")
FLAT_MOVES = ("M0", "M2", "M3", "M4", "FlatCurlCancel")


class MoveError(TangleError):
    """The requested move does not match the diagram at the given site."""


@dataclass(frozen=True)
class Site:
    """A concrete rewrite: replace ``slices[start:stop]`` by ``new``."""

    move: str
    start: int
    stop: int
    new: tuple
    direction: str  # "remove", "insert" or "swap"

    def to_dict(self) -> dict:
        return {
            "move": self.move,
            "start": self.start,
            "stop": self.stop,
            "new": [str(s) for s in self.new],
            "direction": self.direction,
        }


def _S(kind, pos):
    return Slice(kind, pos)


def _is_x(s: Slice, flat: bool | None = None) -> bool:
    if not s.is_crossing:
        return False
    if flat is None:
        return True
    return (s.kind == "flat") == flat


def _g(k):
    return (_S("cup", k + 1), _S("flat", k), _S("cap", k + 1))


def _ginv(k):
    return (_S("cup", k), _S("flat", k + 1), _S("cap", k))


def _window_sites(T: TangleDiagram, move: str, flat_ok: bool) -> list:
    sl = T.slices
    n = len(sl)
    out = []
    for t in range(n):
        a = sl[t]
        b = sl[t + 1] if t + 1 < n else None
        c = sl[t + 2] if t + 2 < n else None
        if move == "M0" and b is not None:
            if a.kind == "cup" and b.kind == "cap" and abs(a.pos - b.pos) == 1:
                out.append(Site("M0", t, t + 2, (), "remove"))
        elif move == "M2" and b is not None:
            if _is_x(a) and _is_x(b) and a.pos == b.pos and b.kind == opposite(a.kind):
                if a.kind != "flat" or flat_ok:
                    out.append(Site("M2", t, t + 2, (), "remove"))
        elif move == "M3" and c is not None:
            if _is_x(a) and _is_x(b) and _is_x(c):
                flats = {x.kind == "flat" for x in (a, b, c)}
                if len(flats) == 1 and (flat_ok or flats == {False}):
                    if not (a.kind == c.kind != b.kind):
                        if b.pos == a.pos + 1 and c.pos == a.pos:
                            k = a.pos
                            new = (_S(c.kind, k + 1), _S(b.kind, k), _S(a.kind, k + 1))
                            out.append(Site("M3", t, t + 3, new, "swap"))
                        elif b.pos + 1 == a.pos and c.pos == a.pos:
                            k = b.pos
                            new = (_S(c.kind, k), _S(b.kind, k + 1), _S(a.kind, k))
                            out.append(Site("M3", t, t + 3, new, "swap"))
        elif move == "M4" and b is not None:
            ok = lambda x: _is_x(x) and (flat_ok or x.kind != "flat")
            # cap form
            if ok(a) and b.kind == "cap":
                if b.pos == a.pos + 1:
                    k = a.pos
                    out.append(Site("M4", t, t + 2, (_S(opposite(a.kind), k + 1), _S("cap", k)), "swap"))
                elif a.pos == b.pos + 1:
                    k = b.pos
                    out.append(Site("M4", t, t + 2, (_S(opposite(a.kind), k), _S("cap", k + 1)), "swap"))
            # cup form
            if a.kind == "cup" and ok(b):
                if b.pos == a.pos + 1:
                    k = a.pos
                    out.append(Site("M4", t, t + 2, (_S("cup", k + 1), _S(opposite(b.kind), k)), "swap"))
                elif a.pos == b.pos + 1:
                    k = b.pos
                    out.append(Site("M4", t, t + 2, (_S("cup", k), _S(opposite(b.kind), k + 1)), "swap"))
        elif move == "FlatCurlCancel" and t + 6 <= n:
            w = sl[t : t + 6]
            for k in {w[0].pos - 1, w[0].pos} - {-1}:
                if w == _g(k) + _ginv(k) or w == _ginv(k) + _g(k):
                    out.append(Site("FlatCurlCancel", t, t + 6, (), "remove"))
    return out


def _insert_sites(T: TangleDiagram, move: str, flat_ok: bool) -> list:
    widths = T.widths
    out = []
    for t, w in enumerate(widths):
        if move == "M0":
            for k in range(w):
                out.append(Site("M0", t, t, (_S("cup", k + 1), _S("cap", k)), "insert"))
                out.append(Site("M0", t, t, (_S("cup", k), _S("cap", k + 1)), "insert"))
        elif move == "M2":
            for k in range(w - 1):
                out.append(Site("M2", t, t, (_S("over", k), _S("under", k)), "insert"))
                out.append(Site("M2", t, t, (_S("under", k), _S("over", k)), "insert"))
                if flat_ok:
                    out.append(Site("M2", t, t, (_S("flat", k), _S("flat", k)), "insert"))
        elif move == "FlatCurlCancel" and flat_ok:
            for k in range(w):
                out.append(Site("FlatCurlCancel", t, t, _g(k) + _ginv(k), "insert"))
                out.append(Site("FlatCurlCancel", t, t, _ginv(k) + _g(k), "insert"))
    return out


def find_sites(T: TangleDiagram, move: str, insertions: bool = True, flat: bool = False) -> list:
    """All places where ``move`` applies, in a deterministic order.

    ``flat=True`` also allows moves on flat crossings (and FlatCurlCancel).
    """
    if move not in FLAT_MOVES:
        raise MoveError(f"unknown move {move!r}")
    if move == "FlatCurlCancel" and not flat:
        return []
    out = _window_sites(T, move, flat)
    if insertions:
        out += _insert_sites(T, move, flat)
    return out


def apply_move(T: TangleDiagram, move: str, site) -> TangleDiagram:
    """Apply ``move`` at ``site``.

    ``site`` is a :class:`Site` (as returned by :func:`find_sites`) or a
    slice index, meaning the first non-inserting site starting there.
    """
    if isinstance(site, Site):
        if site.move != move:
            raise MoveError(f"site is for {site.move}, not {move}")
        if site.direction != "insert":
            valid = _window_sites(T, move, flat_ok=True)
            if site not in valid:
                raise MoveError(f"{move} does not match at slices {site.start}..{site.stop - 1}")
        elif site.start > len(T.slices):
            raise MoveError("insertion point out of range")
    else:
        cands = [s for s in _window_sites(T, move, flat_ok=True) if s.start == site]
        if not cands:
            raise MoveError(f"{move} does not match at slice {site}")
        site = cands[0]
    try:
        return T.replace(site.start, site.stop, site.new)
    except TangleError as exc:
        raise MoveError(f"{move} at slice {site.start} gives an invalid diagram: {exc}") from None


# ---------------------------------------------------------------------------
# random diagrams


def random_diagram(
    max_crossings: int,
    seed: int,
    inputs: int = 0,
    outputs: int | None = None,
    kinds=("over", "under"),
    max_width: int = 6,
) -> TangleDiagram:
    """A random valid diagram with at most ``max_crossings`` crossings.

    Deterministic in ``seed``.  ``outputs`` defaults to ``inputs``.
    """
    rng = random.Random(seed)
    outputs = inputs if outputs is None else outputs
    if (inputs + outputs) % 2:
        raise TangleError("inputs + outputs must be even")
    target = rng.randint(0, max_crossings)
    slices = []
    w = inputs
    crossings = 0
    steps = 0
    while True:
        steps += 1
        opts = []
        if w + 2 <= max_width:
            opts.append("cup")
        if crossings < target and w >= 2:
            opts += ["x"] * 3
        if w >= 2 and w > outputs and (crossings >= target or steps > 4):
            opts += ["cap"] * 2
        if crossings >= target and w == outputs and (w > 0 or slices):
            break
        if crossings >= target:
            opts = [o for o in opts if o != "cup"] or (["cup"] if w < outputs else opts)
        if not opts:
            opts = ["cup"]
        op = rng.choice(opts)
        if op == "cup":
            slices.append(Slice("cup", rng.randint(0, w)))
            w += 2
        elif op == "cap":
            slices.append(Slice("cap", rng.randint(0, w - 2)))
            w -= 2
        else:
            slices.append(Slice(rng.choice(kinds), rng.randint(0, w - 2)))
            crossings += 1
    return TangleDiagram(inputs, outputs, tuple(slices))


def random_move_sequence(
    T: TangleDiagram,
    iters: int,
    seed: int,
    moves=MOVES,
    flat: bool = False,
    max_slices: int | None = None,
    log: list | None = None,
) -> TangleDiagram:
    """Apply ``iters`` random applicable moves; deterministic in ``seed``.

    Insertions are suppressed once the word is longer than ``max_slices``
    (default: twice the starting length plus 8).  Applied sites are appended
    to ``log`` when given.
    """
    rng = random.Random(seed)
    if max_slices is None:
        max_slices = 2 * len(T.slices) + 8
    for _ in range(iters):
        grow = len(T.slices) < max_slices
        sites = []
        for m in moves:
            sites += find_sites(T, m, insertions=grow, flat=flat)
        removal = [s for s in sites if s.direction != "insert"]
        if not sites:
            break
        # bias towards local rewrites so the diagram keeps its interesting parts
        pool = removal if removal and rng.random() < 0.6 else sites
        site = rng.choice(pool)
        T = apply_move(T, site.move, site)
        if log is not None:
            log.append(site)
    return T


# ---------------------------------------------------------------------------
# handle slides


def double_component(T: TangleDiagram, comp: int) -> TangleDiagram:
    """Replace one component by two blackboard-parallel copies."""
    if T.has_beads:
        raise TangleError("cannot double a component of a beaded diagram")
    cop = component_of_point(T)
    if comp not in set(cop.values()):
        raise TangleError(f"no component {comp}")
    def pos(t, p):
        return p + sum(1 for q in range(p) if cop[(t, q)] == comp)

    def mine(t, p):
        return cop[(t, p)] == comp

    out = []
    for t, s in enumerate(T.slices):
        i = s.pos
        if s.kind == "cup":
            np_ = pos(t + 1, i)
            out += [_S("cup", np_), _S("cup", np_ + 1)] if mine(t + 1, i) else [_S("cup", np_)]
        elif s.kind == "cap":
            np_ = pos(t, i)
            out += [_S("cap", np_ + 1), _S("cap", np_)] if mine(t, i) else [_S("cap", np_)]
        else:
            np_ = pos(t, i)
            a, b = mine(t, i), mine(t, i + 1)
            k = s.kind
            if a and b:
                out += [_S(k, np_ + 1), _S(k, np_), _S(k, np_ + 2), _S(k, np_ + 1)]
            elif a:
                out += [_S(k, np_ + 1), _S(k, np_)]
            elif b:
                out += [_S(k, np_), _S(k, np_ + 1)]
            else:
                out.append(_S(k, np_))
    top = len(T.slices)
    ins = T.inputs + sum(1 for q in range(T.inputs) if mine(0, q))
    outs = T.outputs + sum(1 for q in range(T.outputs) if mine(top, q))
    return TangleDiagram(ins, outs, tuple(out))


def handle_slide(T: TangleDiagram, moving: int, over: int) -> TangleDiagram:
    """Slide component ``moving`` over component ``over`` (closed framed links).

    ``over`` is doubled with its blackboard framing, and ``moving`` is joined
    to the adjacent copy by an untwisted band at the lowest level where the
    two sit side by side.
    """
    if not T.is_closed:
        raise TangleError("handle slides need a closed diagram")
    if moving == over:
        raise TangleError("a component cannot slide over itself")
    cop = component_of_point(T)
    widths = T.widths
    site = None
    for t, w in enumerate(widths):
        for p in range(w - 1):
            pair = (cop[(t, p)], cop[(t, p + 1)])
            if pair in ((moving, over), (over, moving)):
                site = (t, p, pair[0] == moving)
                break
        if site:
            break
    if site is None:
        raise TangleError("the two components are never adjacent; no band site")
    D = double_component(T, over)
    t, p, moving_left = site
    shift = sum(1 for q in range(p) if cop[(t, q)] == over)
    np_ = p + shift  # new position of the left strand of the pair
    # after doubling: moving strand at np_ with copies at np_+1, np_+2, or
    # copies at np_, np_+1 with the moving strand at np_+2
    k = np_ if moving_left else np_ + 1
    # slice index of level t in the doubled word
    level = sum(
        (2 if (s.kind in ("cup", "cap") and _touches(cop, t2, s, over)) else
         4 if (s.is_crossing and _both(cop, t2, s, over)) else
         2 if (s.is_crossing and _one(cop, t2, s, over)) else 1)
        for t2, s in enumerate(T.slices[:t])
    )
    return D.replace(level, level, (_S("cap", k), _S("cup", k)))


def _touches(cop, t, s, comp):
    if s.kind == "cup":
        return cop[(t + 1, s.pos)] == comp
    return cop[(t, s.pos)] == comp


def _both(cop, t, s, comp):
    return cop[(t, s.pos)] == comp and cop[(t, s.pos + 1)] == comp


def _one(cop, t, s, comp):
    return (cop[(t, s.pos)] == comp) != (cop[(t, s.pos + 1)] == comp)
