"""Command line front end: ``krh <command> [options]``.

Exit codes: 0 on success, 1 when a check fails, 2 for usage or parse errors.
All scalars are printed exactly in the scalar grammar.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import library, moves, tangle
from .algebra_io import AlgebraFileError, load_algebra
from .builtins import builtin_algebra, builtin_names
from .centrality import check_bead_push_identities, is_central, tree_bead_push
from .evaluator import (
    DEFAULT_TERM_BUDGET,
    BudgetExceeded,
    EvaluationError,
    InvariantUndefined,
    evaluate,
    hennings_invariant,
)
from .field import ScalarParseError
from .hopf import (
    AlgebraDataError,
    AxiomReport,
    check_hopf_axioms,
    check_quasitriangular,
    check_ribbon,
    integral_report,
    right_integral,
    trace_functional,
    trace_report,
)
from .tangle import TangleDiagram, TangleError

COMMANDS = ("check-algebra", "integral", "eval", "invariant", "central", "whitney", "moves-fuzz")
FUZZ_DEFAULT_ALGEBRA = "uq_sl2_prime_q4"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    algebra_path: str | None = None
    builtin: str | None = None
    tangle_path: str | None = None
    seed: int = 0
    iters: int = 100
    max_crossings: int = 6
    term_budget: int = DEFAULT_TERM_BUDGET
    output_format: str = "text"
    prove_tree: list | None = None

    def __post_init__(self):
        if self.algebra_path and self.builtin:
            raise UsageError("give either --algebra or --builtin, not both")
        if self.term_budget <= 0:
            raise UsageError("--term-budget must be positive")


# ---------------------------------------------------------------------------
# loading


def _algebra(cfg: RunConfig, default: str | None = None):
    if cfg.algebra_path:
        return load_algebra(cfg.algebra_path)
    name = cfg.builtin or default
    if name is None:
        raise UsageError("this command needs --algebra <file> or --builtin <name>")
    try:
        return builtin_algebra(name)
    except KeyError:
        raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(builtin_names())}") from None


def _tangle(cfg: RunConfig) -> TangleDiagram:
    """Read ``--tangle``; ``std:<name>`` picks a diagram from the library."""
    src = cfg.tangle_path
    if src is None:
        raise UsageError("this command needs --tangle <file>")
    if src.startswith("std:"):
        try:
            return library.standard(src[4:])
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    try:
        text = Path(src).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read tangle file: {exc}") from None
    # a file with nothing in it is the empty diagram
    if not any(line.split("#", 1)[0].strip(" ;\t") for line in text.splitlines()):
        return TangleDiagram(0, 0, ())
    return tangle.parse_tangle(text)


# ---------------------------------------------------------------------------
# commands; each returns (exit code, payload dict, text lines)


def cmd_check_algebra(cfg: RunConfig):
    alg = _algebra(cfg)
    rep = AxiomReport()
    sections = {"hopf": check_hopf_axioms(alg)}
    rep.extend(sections["hopf"])
    if alg.has_rho:
        sections["quasitriangular"] = check_quasitriangular(alg)
        rep.extend(sections["quasitriangular"])
    if alg.G is not None and alg.has_rho:
        sections["ribbon"] = check_ribbon(alg)
        rep.extend(sections["ribbon"])
    payload = {
        "algebra": alg.name or cfg.algebra_path,
        "dim": alg.dim,
        "passed": rep.passed,
        "sections": {k: v.to_dict() for k, v in sections.items()},
    }
    lines = [f"algebra {payload['algebra']} (dim {alg.dim})"]
    for k, v in sections.items():
        lines.append(f"[{k}]")
        lines.append(v.summary())
    lines.append("PASS" if rep.passed else f"FAIL ({len(rep.failures())} failures)")
    return (0 if rep.passed else 1), payload, lines


def cmd_integral(cfg: RunConfig):
    alg = _algebra(cfg)
    try:
        lam = right_integral(alg)
    except AlgebraDataError as exc:
        return 1, {"error": str(exc)}, [f"FAIL {exc}"]
    rep = integral_report(alg, lam)
    coeffs = {alg.labels[i]: str(lam.on_basis(i)) for i in lam.support()}
    payload = {"algebra": alg.name, "lambda": coeffs, "support": [alg.labels[i] for i in lam.support()]}
    lines = ["lambda: " + ", ".join(f"{k} -> {v}" for k, v in coeffs.items())]
    if alg.G is not None:
        tr = trace_functional(alg, lam)
        rep.extend(trace_report(alg, tr))
        payload["trace"] = {alg.labels[i]: str(tr.on_basis(i)) for i in tr.support()}
        lines.append("tr: " + ", ".join(f"{k} -> {v}" for k, v in payload["trace"].items()))
    payload["report"] = rep.to_dict()
    lines.append(rep.summary())
    return (0 if rep.passed else 1), payload, lines


def cmd_eval(cfg: RunConfig):
    alg = _algebra(cfg)
    T = _tangle(cfg)
    res = evaluate(T, alg, cfg.term_budget)
    payload = {"algebra": alg.name, "tangle": tangle.serialize_tangle(T), "result": res.to_dict()}
    d = res.to_dict()
    if d["kind"] == "closed":
        lines = [f"TR = {d['value']}"]
    elif "element" in d:
        lines = [f"word = {res.word()}", f"degree = {res.degree}", f"a(T) = {res.element()}"]
    else:
        lines = [f"{len(d['terms'])} nonzero terms on {d['strands']} strands, degrees {d['degrees']}"]
    return 0, payload, lines


def cmd_invariant(cfg: RunConfig):
    alg = _algebra(cfg)
    T = _tangle(cfg)
    rep = hennings_invariant(T, alg, cfg.term_budget)
    d = rep.to_dict()
    payload = {"algebra": alg.name, **d}
    lines = [
        f"TR = {d['TR']}",
        f"c = {d['components']}  sigma = {d['signature']}  b+ = {d['b_plus']}  b- = {d['b_minus']}  n0 = {d['n_0']}",
        f"INV = {d['INV']}",
    ]
    return 0, payload, lines


def cmd_central(cfg: RunConfig):
    alg = _algebra(cfg)
    T = _tangle(cfg)
    a = evaluate(T, alg, cfg.term_budget).element()
    cert = is_central(a, alg)
    rules = check_bead_push_identities(alg)
    payload = {"algebra": alg.name, "certificate": cert.to_dict(), "bead_push_rules": rules.to_dict()}
    lines = [f"a(T) = {a}", f"central: {cert.all_zero} ({cert.commutators_checked} commutators)"]
    ok = cert.all_zero and rules.passed
    if any(s.kind == "flat" or s.kind == "bead" for s in T.slices):
        payload["trace"] = None
        lines.append("tree push skipped: diagram has flat crossings or beads")
    else:
        trace = tree_bead_push(T, cfg.prove_tree, alg)
        payload["trace"] = trace.to_dict()
        lines += [
            f"cut set: {trace.cut_set}",
            f"ordering: {trace.ordering}",
            "pairings: " + ", ".join(f"{p}~{q} ({d:+d})" for p, q, d in trace.pairings),
            f"parentheses well formed: {trace.parenthesis_check}",
            f"exponent differences all +-1: {trace.condition1}",
        ]
        ok = ok and trace.parenthesis_check and trace.condition1 and bool(trace.rules_verified)
    return (0 if ok else 1), payload, lines


def cmd_whitney(cfg: RunConfig):
    T = _tangle(cfg)
    walks = tangle.traverse(T)
    degs = [tangle.whitney_degree(T, i) for i in range(len(walks))]
    payload = {"components": [{"closed": w.closed, "degree": d} for w, d in zip(walks, degs)], "total": sum(degs)}
    lines = [f"component {i} ({'closed' if w.closed else 'open'}): {d}" for i, (w, d) in enumerate(zip(walks, degs))]
    lines.append(f"total: {sum(degs)}")
    return 0, payload, lines




def cmd_moves_fuzz(cfg: RunConfig):
    """Random diagrams, random moves, exact comparison of the evaluations."""
    alg = _algebra(cfg, FUZZ_DEFAULT_ALGEBRA)
    rng = random.Random(cfg.seed)
    checked = skipped = 0
    for trial in range(cfg.iters):
        dseed = rng.randrange(2**31)
        mseed = rng.randrange(2**31)
        ends = rng.choice((0, 1))
        T = moves.random_diagram(cfg.max_crossings, dseed, inputs=ends)
        log: list = []
        U = moves.random_move_sequence(T, rng.randint(1, 3), mseed, log=log)
        try:
            before = evaluate(T, alg, cfg.term_budget)
            after = evaluate(U, alg, cfg.term_budget)
        except BudgetExceeded:
            skipped += 1
            continue
        checked += 1
        if before != after:
            repro = {
                "trial": trial,
                "seed": cfg.seed,
                "diagram_seed": dseed,
                "move_seed": mseed,
                "before": tangle.serialize_tangle(T),
                "after": tangle.serialize_tangle(U),
                "moves": [s.to_dict() for s in log],
                "value_before": before.to_dict(),
                "value_after": after.to_dict(),
            }
            payload = {"algebra": alg.name, "checked": checked, "violations": 1, "first_violation": repro}
            lines = [f"VIOLATION at trial {trial}", json.dumps(repro, indent=2)]
            return 1, payload, lines
    payload = {"algebra": alg.name, "iters": cfg.iters, "checked": checked, "skipped_over_budget": skipped, "violations": 0}
    lines = [f"{checked} diagrams checked on {alg.name}, {skipped} skipped over budget, 0 violations"]
    return 0, payload, lines


HANDLERS = {
    "check-algebra": cmd_check_algebra,
    "integral": cmd_integral,
    "eval": cmd_eval,
    "invariant": cmd_invariant,
    "central": cmd_central,
    "whitney": cmd_whitney,
    "moves-fuzz": cmd_moves_fuzz,
}


# ---------------------------------------------------------------------------
# entry point


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="krh", description="Exact Hopf algebra invariants of tangles, links and 3-manifolds.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--algebra", metavar="FILE", help="algebra spec (JSON)")
    src.add_argument("--builtin", metavar="NAME", help="builtin algebra: " + ", ".join(builtin_names()))
    p.add_argument("--tangle", metavar="FILE", help="tangle file, or std:<name> for a library diagram")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--max-crossings", type=int, default=6)
    p.add_argument("--term-budget", type=int, default=DEFAULT_TERM_BUDGET)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--prove-tree", metavar="IDS", help="comma-separated edge ids to cut (central)")
    return p




def _parse_cut(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--prove-tree expects comma-separated integers, got {text!r}") from None


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = RunConfig(
            command=args.command,
            algebra_path=args.algebra,
            builtin=args.builtin,
            tangle_path=args.tangle,
            seed=args.seed,
            iters=args.iters,
            max_crossings=args.max_crossings,
            term_budget=args.term_budget,
            output_format=args.format,
            prove_tree=_parse_cut(args.prove_tree),
        )
        code, payload, lines = HANDLERS[cfg.command](cfg)
    except (UsageError, AlgebraFileError, ScalarParseError, TangleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantUndefined, BudgetExceeded, EvaluationError, AlgebraDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.output_format == "json":
        print(json.dumps({"command": cfg.command, "exit_code": code, **payload}, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
