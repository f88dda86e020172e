"""Acceptance criteria 1-15, one test each.

Every test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly with ``python tests/test_acceptance.py``.
Criteria that cannot hold as stated are run in full and marked as strict
expected failures, next to a test of the part that does hold.
"""

import itertools
import time
from pathlib import Path

import pytest

from krh import library as L
from krh import moves, tangle
from krh.builtins import builtin_algebra, builtin_names
from krh.centrality import (
    bead_graph,
    bfs_cut_set,
    check_bead_push_identities,
    identity7_candidates,
    tangle_central_element,
    tree_bead_push,
)
from krh.evaluator import (
    InvariantUndefined,
    check_circle_identities,
    evaluate,
    hennings_invariant,
    ribbon_data,
)
from krh.goldens import dump, golden_path, golden_payload
from krh.hopf import (
    check_hopf_axioms,
    check_quasitriangular,
    check_ribbon,
    drinfeld_u,
    integral_report,
    right_integral,
    trace_functional,
    trace_report,
)
from krh.tangle import Slice, TangleDiagram

RESULTS: dict = {}
ALGEBRAS = builtin_names()
GOLDENS = Path(__file__).resolve().parent.parent / "goldens"


def record(n: int, ok: bool, detail: str = "", scope: str = ""):
    key = f"{n:2d}" + (f" [{scope}]" if scope else "")
    RESULTS[key] = (ok, detail)
    print(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def algebras():
    return [builtin_algebra(a) for a in ALGEBRAS]


# 1 -------------------------------------------------------------------------


def criterion_1():
    slow, bad = [], []
    for a in algebras():
        for suite in (check_hopf_axioms, check_quasitriangular, check_ribbon):
            t0 = time.perf_counter()
            rep = suite(a)
            dt = time.perf_counter() - t0
            if not rep.passed:
                bad.append(f"{a.name}:{suite.__name__}")
            if dt >= 10:
                slow.append(f"{a.name}:{suite.__name__} {dt:.1f}s")
    return record(1, not bad and not slow, f"failures={bad} slow={slow}")


def test_criterion_01_axiom_suites():
    assert criterion_1()


# 2 -------------------------------------------------------------------------


def criterion_2():
    bad = []
    for a in algebras():
        u = drinfeld_u(a)
        ui = a.inverse(u)
        if any(a.antipode_of(a.basis(i), 2) != u * a.basis(i) * ui for i in range(a.dim)):
            bad.append(f"{a.name}:s^2")
        rho = a.rho
        ss: dict = {}
        for (i, j), c in rho.items():
            for k, x in a.antipode_of(a.basis(i)).items():
                for l, y in a.antipode_of(a.basis(j)).items():
                    v = ss.get((k, l), a.field.zero) + c * x * y
                    ss[(k, l)] = v
        if {k: v for k, v in ss.items() if v} != rho:
            bad.append(f"{a.name}:(s(x)s)rho")
    return record(2, not bad, f"failures={bad}")


def test_criterion_02_drinfeld():
    assert criterion_2()


# 3 -------------------------------------------------------------------------


def criterion_3(names=ALGEBRAS, scope=""):
    bad = []
    for name in names:
        a = builtin_algebra(name)
        try:
            lam = right_integral(a)
        except Exception as exc:  # dimension != 1
            bad.append(f"{name}:{exc}")
            continue
        rep = integral_report(a, lam).extend(trace_report(a, trace_functional(a, lam)))
        bad += [f"{name}:{r.name}" for r in rep.failures()]
    return record(3, not bad, f"failures={bad}", scope)


@pytest.mark.xfail(strict=True, reason="Sweedler's algebra is not unimodular; its integral properties fail")
def test_criterion_03_integral_all_builtins():
    assert criterion_3()


def test_criterion_03_integral_unimodular_builtins():
    names = [n for n in ALGEBRAS if n != "sweedler_h4"]
    assert criterion_3(names, "unimodular builtins only")
    assert len(right_integral(builtin_algebra("sweedler_h4")).support()) == 1


# 4 -------------------------------------------------------------------------


def criterion_4():
    t0 = time.perf_counter()
    bad = []
    plan = [("uq_sl2_prime_q4", 200)] + [(n, 40) for n in ALGEBRAS if n != "uq_sl2_prime_q4"]
    for name, count in plan:
        a = builtin_algebra(name)
        for seed in range(count):
            for ends in (0, 1):
                T = moves.random_diagram(8, 1000 * seed + ends, inputs=ends)
                U = moves.random_move_sequence(T, 1 + seed % 3, seed)
                if evaluate(U, a) != evaluate(T, a):
                    bad.append((name, seed, ends))
    dt = time.perf_counter() - t0
    return record(4, not bad and dt < 300, f"violations={bad[:3]} time={dt:.1f}s")


def test_criterion_04_move_invariance():
    assert criterion_4()


# 5 -------------------------------------------------------------------------


def criterion_5():
    bad = []
    for a in algebras():
        rib = ribbon_data(a)
        if evaluate(L.curl(), a).element() != rib.v or evaluate(L.reverse_curl(), a).element() != rib.v_inv:
            bad.append(a.name)
    return record(5, not bad, f"failures={bad}")


def test_criterion_05_ribbon_curl():
    assert criterion_5()


# 6 -------------------------------------------------------------------------


def criterion_6():
    bad = []
    for a in algebras():
        for seed in range(25):
            T = moves.random_diagram(5, seed, inputs=1)
            aT = evaluate(T, a).element()
            open_comp = next(i for i, w in enumerate(tangle.traverse(T)) if not w.closed)
            D = moves.double_component(T, open_comp)
            if evaluate(D, a, term_budget=None).tensor() != a.coproduct_of(aT):
                bad.append((a.name, seed))
    return record(6, not bad, f"failures={bad[:5]}")


def test_criterion_06_coproduct_naturality():
    assert criterion_6()


# 7 -------------------------------------------------------------------------


def antipode_diagram(label):
    return TangleDiagram(1, 1, (Slice("cup", 1), Slice("bead", 1, label), Slice("cap", 0)))


def criterion_7():
    bad = []
    for a in algebras():
        for i in range(a.dim):
            ev = evaluate(antipode_diagram(a.labels[i]), a)
            if ev.element() != a.antipode_of(a.basis(i)):
                bad.append((a.name, a.labels[i]))
    return record(7, not bad, f"failures={bad}")


def test_criterion_07_antipode_lemma():
    assert criterion_7()


# 8 -------------------------------------------------------------------------


def criterion_8(names=ALGEBRAS, scope=""):
    bad = []
    for name in names:
        rep = check_circle_identities(builtin_algebra(name))
        bad += [f"{name}:{r.name}" for r in rep.failures()]
    return record(8, not bad, f"failures={bad}", scope)


@pytest.mark.xfail(strict=True, reason="the trace of Sweedler's algebra is not a trace (not unimodular)")
def test_criterion_08_circle_identities_all_builtins():
    assert criterion_8()


def test_criterion_08_circle_identities_unimodular_builtins():
    assert criterion_8([n for n in ALGEBRAS if n != "sweedler_h4"], "unimodular builtins only")


# 9 -------------------------------------------------------------------------


def criterion_9():
    bad, used = [], []
    bases = [L.trefoil(), L.hopf_link(), L.chain_link((1, 2)), L.framed_unknot(3), moves.random_diagram(5, 11)]
    for a in algebras():
        try:
            hennings_invariant(L.unknot(), a)
        except InvariantUndefined:
            continue
        used.append(a.name)
        for T in bases:
            inv = hennings_invariant(T, a).INV
            for eps in (1, -1):
                if hennings_invariant(tangle.tensor(T, L.framed_unknot(eps)), a).INV != inv:
                    bad.append((a.name, "blowup", eps))
        for fr in [(1, 1), (2, -1), (-1, 3), (1, -2), (3, 2)]:
            T = L.chain_link(fr)
            if hennings_invariant(moves.handle_slide(T, 1, 0), a).INV != hennings_invariant(T, a).INV:
                bad.append((a.name, "slide", fr))
    return record(9, not bad and "uq_sl2_prime_q4" in used, f"algebras={used} failures={bad}")


def test_criterion_09_kirby_invariance():
    assert criterion_9()


# 10 ------------------------------------------------------------------------


def lens_values(ns):
    a = builtin_algebra("uq_sl2_prime_q4")
    return {n: hennings_invariant(L.framed_unknot(n), a).INV for n in ns}


def criterion_10(ns=tuple(n for n in range(-8, 9) if n), scope=""):
    vals = lens_values(ns)
    clashes = [(m, n) for m, n in itertools.combinations(ns, 2) if vals[m] == vals[n]]
    frozen = all(
        golden_path(GOLDENS, "uq_sl2_prime_q4", f"lens_{n}").read_text() == dump(golden_payload("uq_sl2_prime_q4", f"lens_{n}"))
        for n in ns
    )
    shown = ", ".join(f"{n}:{vals[n]}" for n in ns)
    return record(10, not clashes and frozen, f"values {shown}; clashes={clashes[:4]}{'...' if len(clashes) > 4 else ''}", scope)


@pytest.mark.xfail(strict=True, reason="L(n,1) and L(-n,1) are the same unoriented manifold; INV = |n| on both")
def test_criterion_10_lens_separation_signed():
    assert criterion_10()


def test_criterion_10_lens_separation_positive():
    assert criterion_10(tuple(range(1, 9)), "n = 1..8 only")


# 11 ------------------------------------------------------------------------


def encircled_closed_form(a):
    lam = ribbon_data(a).lam
    out = a.zero
    for (e, e2), c in a.rho.items():
        for (f, f2), d in a.rho.items():
            out = out + (c * d * lam(a.basis(f) * a.basis(e2))) * (a.basis(f2) * a.basis(e))
    return out


def criterion_11():
    bad = []
    for a in algebras():
        for make in (L.curl, L.double_curl, L.trefoil_string, L.encircled_strand):
            el, cert = tangle_central_element(make(), a)
            if not cert.all_zero:
                bad.append((a.name, make.__name__))
        if evaluate(L.encircled_strand(), a).element() != encircled_closed_form(a):
            bad.append((a.name, "closed form"))
    return record(11, not bad, f"failures={bad}")


def test_criterion_11_centrality():
    assert criterion_11()


# 12 ------------------------------------------------------------------------


def criterion_12():
    bad, pattern = [], set()
    for a in algebras():
        rep = check_bead_push_identities(a)
        bad += [f"{a.name}:{r.name}" for r in rep.failures()]
        ok = {k for k, v in identity7_candidates(a).items() if v}
        if len(ok) == 1:
            pattern |= ok
        elif "2,3,1" not in ok:
            bad.append(f"{a.name}:identity 7")
    found = pattern == {"2,3,1"}
    return record(12, not bad and found, f"identity 7 pattern a2 s(e) (x) a3 e' s^-1(a1): {found}; failures={bad}")


def test_criterion_12_bead_push_lemma():
    assert criterion_12()


# 13 ------------------------------------------------------------------------


def criterion_13():
    bad = []
    uq = builtin_algebra("uq_sl2_prime_q4")
    for seed in range(50):
        T = moves.random_diagram(5, 500 + seed, inputs=1)
        edges, _ = bead_graph(T)
        tr = tree_bead_push(T, bfs_cut_set(edges), uq)
        if not (tr.parenthesis_check and tr.condition1 and tr.rules_verified is not False):
            bad.append(seed)
    return record(13, not bad, f"failures={bad}")


def test_criterion_13_tree_bead_push():
    assert criterion_13()


# 14 ------------------------------------------------------------------------


def criterion_14():
    bad = []
    wd = tangle.whitney_degree
    expect = [
        ("identity", tangle.identity(1), 0),
        ("circle", L.unknot(), 1),
        ("curl", L.flat_curl(), 1),
        ("inverse curl", L.flat_curl_inverse(), -1),
    ]
    bad += [name for name, T, d in expect if wd(T) != d]
    for seed in range(100):
        ends = seed % 2
        T = moves.random_diagram(6, 700 + seed, inputs=ends, kinds=("flat",))
        U = moves.random_move_sequence(T, 4, seed, moves=moves.FLAT_MOVES, flat=True)
        degs = lambda D: sorted(w.degree for w in tangle.traverse(D))
        if (ends and wd(U) != wd(T)) or (not ends and sum(degs(U)) != sum(degs(T))):
            bad.append(seed)
    return record(14, not bad, f"failures={bad}")


def test_criterion_14_whitney():
    assert criterion_14()


# 15 ------------------------------------------------------------------------


def criterion_15():
    a = builtin_algebra("uq_sl2_prime_q4")
    assert a.dim == 16
    t0 = time.perf_counter()
    rep = hennings_invariant(L.trefoil(), a)
    dt = time.perf_counter() - t0
    return record(15, dt < 60, f"INV(trefoil) = {rep.INV} in {dt:.2f}s")


def test_criterion_15_performance():
    assert criterion_15()


if __name__ == "__main__":
    for n in range(1, 16):
        globals()[f"criterion_{n}"]()
