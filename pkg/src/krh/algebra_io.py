"""JSON algebra files.

Layout::

    {
      "name": "optional",
      "field": {"cyclotomic_order": 4},
      "dim": 4,
      "basis": ["1", "g", "x", "gx"],
      "mult":      [{"i": 0, "j": 1, "k": 1, "coeff": "1"}, ...],
      "coproduct": [{"i": 2, "j": 2, "k": 1, "coeff": "1"}, ...],
      "antipode":  [{"i": 2, "j": 3, "coeff": "1"}, ...],
      "unit":   ["1", "0", "0", "0"],
      "counit": ["1", "1", "0", "0"],
      "rho":    [{"i": 0, "j": 0, "coeff": "1/2"}, ...],
      "grouplike_G": ["0", "1", "0", "0"]
    }

Sparse lists omit zero entries.  Every coefficient is a string in the scalar
grammar (plain JSON integers are accepted too).
"""

from __future__ import annotations

import json

from .field import ScalarParseError, field
from .hopf import AlgebraDataError, HopfAlgebra

__all__ = ["AlgebraFileError", "load_algebra", "load_algebra_text", "dump_algebra", "algebra_to_dict", "parse_element"]


class AlgebraFileError(ValueError):
    """Malformed algebra file; the message names the offending location."""


def _scalar(fld, raw, where):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise AlgebraFileError(f"{where}: expected a scalar string, got {raw!r}")
    try:
        return fld.coerce(raw)
    except ScalarParseError as exc:
        raise AlgebraFileError(f"{where}: {exc}") from None


def _index(raw, d, where):
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise AlgebraFileError(f"{where}: expected an integer index, got {raw!r}")
    if not 0 <= raw < d:
        raise AlgebraFileError(f"{where}: index {raw} out of range 0..{d - 1}")
    return raw


def _sparse(doc, key, keys, fld, d, required=True):
    if key not in doc:
        if required:
            raise AlgebraFileError(f"missing field {key!r}")
        return None
    entries = doc[key]
    if not isinstance(entries, list):
        raise AlgebraFileError(f"{key}: expected a list of entries")
    out: dict = {}
    for n, ent in enumerate(entries):
        where = f"{key}[{n}]"
        if not isinstance(ent, dict):
            raise AlgebraFileError(f"{where}: expected an object")
        missing = [k for k in keys + ("coeff",) if k not in ent]
        if missing:
            raise AlgebraFileError(f"{where}: missing {', '.join(missing)}")
        idx = tuple(_index(ent[k], d, f"{where}.{k}") for k in keys)
        c = _scalar(fld, ent["coeff"], f"{where}.coeff")
        out[idx] = out[idx] + c if idx in out else c
    return out


def _dense(doc, key, fld, d, required=True):
    if key not in doc or doc[key] is None:
        if required:
            raise AlgebraFileError(f"missing field {key!r}")
        return None
    vals = doc[key]
    if not isinstance(vals, list) or len(vals) != d:
        raise AlgebraFileError(f"{key}: expected a list of {d} scalars")
    return [_scalar(fld, v, f"{key}[{n}]") for n, v in enumerate(vals)]


def algebra_from_dict(doc: dict, name: str | None = None) -> HopfAlgebra:
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object")
    try:
        order = doc["field"]["cyclotomic_order"]
    except (KeyError, TypeError):
        raise AlgebraFileError("missing field.cyclotomic_order") from None
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise AlgebraFileError(f"field.cyclotomic_order: expected a positive integer, got {order!r}")
    fld = field(order)
    d = doc.get("dim")
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise AlgebraFileError(f"dim: expected a positive integer, got {d!r}")
    labels = doc.get("basis")
    if not isinstance(labels, list) or len(labels) != d or not all(isinstance(x, str) for x in labels):
        raise AlgebraFileError(f"basis: expected {d} label strings")
    if len(set(labels)) != d:
        raise AlgebraFileError("basis: labels must be distinct")
    mult = _sparse(doc, "mult", ("i", "j", "k"), fld, d)
    cop = _sparse(doc, "coproduct", ("i", "j", "k"), fld, d)
    anti = _sparse(doc, "antipode", ("i", "j"), fld, d)
    rho = _sparse(doc, "rho", ("i", "j"), fld, d, required=False)
    unit = _dense(doc, "unit", fld, d)
    counit = _dense(doc, "counit", fld, d)
    G = _dense(doc, "grouplike_G", fld, d, required=False)
    try:
        return HopfAlgebra(
            fld, labels, mult, unit, cop, counit, anti,
            rho=rho, grouplike=G, name=name or doc.get("name", ""),
        )
    except AlgebraDataError as exc:
        raise AlgebraFileError(str(exc)) from None


def load_algebra_text(text: str, name: str | None = None) -> HopfAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return algebra_from_dict(doc, name)


def load_algebra(path) -> HopfAlgebra:
    with open(path, encoding="utf-8") as fh:
        return load_algebra_text(fh.read())


def algebra_to_dict(alg: HopfAlgebra) -> dict:
    def sparse(entries, keys):
        return [
            dict(zip(keys, idx), coeff=str(c))
            for idx, c in sorted(entries.items())
        ]

    doc = {
        "name": alg.name,
        "field": {"cyclotomic_order": alg.field.n},
        "dim": alg.dim,
        "basis": list(alg.labels),
        "mult": sparse(alg._m, ("i", "j", "k")),
        "coproduct": sparse(alg._D, ("i", "j", "k")),
        "antipode": sparse(alg._S, ("i", "j")),
        "unit": alg.unit.to_strings(),
        "counit": [str(c) for c in alg.counit.coeffs],
    }
    if alg.has_rho:
        doc["rho"] = sparse(alg._rho, ("i", "j"))
    if alg.G is not None:
        doc["grouplike_G"] = alg.G.to_strings()
    return doc


def dump_algebra(alg: HopfAlgebra) -> str:
    """Serialize with one sparse entry per line, so diffs stay readable."""
    doc = algebra_to_dict(alg)
    lines = ["{"]
    keys = list(doc)
    for n, k in enumerate(keys):
        v = doc[k]
        tail = "," if n < len(keys) - 1 else ""
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"  {json.dumps(k)}: [")
            for m, ent in enumerate(v):
                lines.append("    " + json.dumps(ent) + ("," if m < len(v) - 1 else ""))
            lines.append("  ]" + tail)
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v)}{tail}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _split_top(text: str) -> list:
    """Split on top-level + / - (outside parentheses), keeping signs."""
    parts, depth, cur = [], 0, ""
    for n, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("*", "/", "^")):
            parts.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return parts


def parse_element(text: str, alg: HopfAlgebra):
    """Parse a combination of basis labels such as ``"2*g - x + (1/2*q)*gx"``.

    A term is ``label``, ``coef*label`` or a bare scalar (a multiple of 1);
    ``coef`` is a scalar, optionally parenthesized.
    """
    fld = alg.field
    text = text.strip()
    if not text:
        raise AlgebraFileError("empty bead value")
    total = alg.zero
    labels = set(alg.labels)
    for raw in _split_top(text):
        term = raw.strip()
        sign = 1
        while term[:1] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:].strip()
        if term in labels:
            total = total + alg.basis(alg.index(term)) * sign
            continue
        if "*" in term:
            coef, lab = term.rsplit("*", 1)
            lab = lab.strip()
            if lab in labels:
                coef = coef.strip()
                if coef.startswith("(") and coef.endswith(")"):
                    coef = coef[1:-1]
                try:
                    c = fld.parse(coef)
                except ScalarParseError as exc:
                    raise AlgebraFileError(f"bad coefficient in {raw.strip()!r}: {exc}") from None
                total = total + alg.basis(alg.index(lab)) * (c * sign)
                continue
        body = term[1:-1] if term.startswith("(") and term.endswith(")") else term
        try:
            c = fld.parse(body)
        except ScalarParseError:
            raise AlgebraFileError(f"cannot read {raw.strip()!r} as a basis combination") from None
        total = total + alg.one * (c * sign)
    return total
