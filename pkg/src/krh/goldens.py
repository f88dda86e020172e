"""Golden files: frozen exact outputs under ``goldens/<algebra>/<tangle>.json``.

``python -m krh.goldens --regenerate [root]`` rewrites them; the test suite
only compares unless run with ``--regen-goldens``.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from . import library
from .builtins import builtin_algebra, builtin_names
from .evaluator import InvariantUndefined, evaluate, hennings_invariant

LENS_RANGE = [n for n in range(-8, 9) if n]


def golden_tangles() -> dict:
    out = {name: make for name, make in library.STANDARD.items()}
    for n in LENS_RANGE:
        out[f"lens_{n}"] = (lambda n=n: library.framed_unknot(n))
    return out


def golden_payload(alg_name: str, tangle_name: str) -> dict:
    alg = builtin_algebra(alg_name)
    T = golden_tangles()[tangle_name]()
    out = {"algebra": alg_name, "tangle": tangle_name, "eval": evaluate(T, alg).to_dict()}
    if T.is_closed:
        try:
            out["invariant"] = hennings_invariant(T, alg).to_dict()
        except InvariantUndefined as exc:
            out["invariant"] = {"undefined": str(exc)}
    return out


def golden_cases() -> list:
    cases = []
    for a in builtin_names():
        for t in golden_tangles():
            if t.startswith("lens_") and a != "uq_sl2_prime_q4":
                continue
            cases.append((a, t))
    return cases


def golden_path(root, alg_name: str, tangle_name: str) -> Path:
    return Path(root) / alg_name.replace(":", "_") / f"{tangle_name}.json"


def dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def regenerate(root) -> int:
    n = 0
    for a, t in golden_cases():
        p = golden_path(root, a, t)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(dump(golden_payload(a, t)))
        n += 1
    return n


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="Check or rewrite the golden files.")
    ap.add_argument("root", nargs="?", default="goldens")
    ap.add_argument("--regenerate", action="store_true")
    args = ap.parse_args(argv)
    if args.regenerate:
        print(f"wrote {regenerate(args.root)} golden files")
        return 0
    bad = [c for c in golden_cases() if golden_path(args.root, *c).read_text() != dump(golden_payload(*c))]
    for a, t in bad:
        print(f"mismatch: {a}/{t}")
    return 1 if bad else 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
