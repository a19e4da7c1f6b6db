"""JSON interchange for SymFun, CoefPoly, ChargedState, TensorElt and matrix documents."""
from __future__ import annotations

import json
from typing import Any

from gmpy2 import mpq

from .coef import CoefPoly, check_param_name, rat, rat_str
from .symfun import SymFun, is_partition
from .tau import TensorElt
from .transform import RowFiniteMatrix, explicit_matrix


class InputError(ValueError):
    """Malformed document or flag value."""


def dumps(doc: Any) -> str:
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


# -- CoefPoly ---------------------------------------------------------------------

def coefpoly_to_json(p: CoefPoly) -> list:
    return [{"params": {n: e for n, e in m}, "value": rat_str(c)} for m, c in p.sorted_items()]


def _rat_from_json(v) -> mpq:
    if isinstance(v, bool) or isinstance(v, float):
        raise InputError(f"exact rational expected, got {v!r}")
    try:
        return rat(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None


def coefpoly_from_json(doc) -> CoefPoly:
    """A list of {params, value} terms; a bare rational is also accepted."""
    if isinstance(doc, (str, int)) and not isinstance(doc, bool):
        return CoefPoly.const(_rat_from_json(doc))
    if not isinstance(doc, list):
        raise InputError("CoefPoly must be a list of {params, value} terms")
    acc: dict = {}
    for term in doc:
        if not isinstance(term, dict) or "value" not in term:
            raise InputError(f"bad CoefPoly term {term!r}")
        params = term.get("params", {})
        if not isinstance(params, dict):
            raise InputError("params must be an object")
        mono = []
        for name, e in params.items():
            try:
                check_param_name(name)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise InputError(f"exponent of {name!r} must be a non-negative integer")
            if e:
                mono.append((name, e))
        key = tuple(sorted(mono))
        acc[key] = acc.get(key, 0) + _rat_from_json(term["value"])
    return CoefPoly(acc)


# -- SymFun -----------------------------------------------------------------------

def symfun_to_json(f: SymFun) -> dict:
    return {"terms": [{"pmono": list(pm), "coef": coefpoly_to_json(c)} for pm, c in f.sorted_terms()]}


def _pmono(v) -> tuple:
    if not isinstance(v, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in v):
        raise InputError(f"pmono must be a list of integers, got {v!r}")
    if any(x <= 0 for x in v):
        raise InputError(f"pmono parts must be positive, got {v!r}")
    return tuple(sorted(v, reverse=True))


def symfun_from_json(doc) -> SymFun:
    if not isinstance(doc, dict) or not isinstance(doc.get("terms"), list):
        raise InputError('SymFun must be an object with a "terms" list')
    acc = SymFun.zero()
    for term in doc["terms"]:
        if not isinstance(term, dict) or "pmono" not in term or "coef" not in term:
            raise InputError(f"bad SymFun term {term!r}")
        pm = _pmono(term["pmono"])
        c = coefpoly_from_json(term["coef"])
        acc = acc + SymFun.const(c) * SymFun.p(*pm)
    return acc


# -- ChargedState -----------------------------------------------------------------

def state_to_json(s) -> dict:
    return {"charge": s.charge, "body": symfun_to_json(s.body)}


def state_from_json(doc):
    from .vertex import ChargedState
    if isinstance(doc, dict) and "charge" in doc:
        m = doc["charge"]
        if not isinstance(m, int) or isinstance(m, bool):
            raise InputError("charge must be an integer")
        return ChargedState(m, symfun_from_json(doc.get("body")))
    return ChargedState(0, symfun_from_json(doc))


# -- TensorElt ------------------------------------------------------------------------

def _key_json(k) -> dict:
    if isinstance(k, tuple) and len(k) == 2 and isinstance(k[0], int) and isinstance(k[1], tuple):
        return {"charge": k[0], "pmono": list(k[1])}
    return {"pmono": list(k)}


def tensor_to_json(t: TensorElt) -> dict:
    return {"terms": [{"left": _key_json(lk), "right": _key_json(rk), "coef": coefpoly_to_json(c)}
                      for (lk, rk), c in t.sorted_terms()]}


# -- matrix documents -----------------------------------------------------------------------

MATRIX_KINDS = ("explicit", "toeplitz", "cumulative", "multiparameter", "pascal",
                "grothendieck-dual", "laurent-rows")


def _int(v, what) -> int:
    if isinstance(v, bool):
        raise InputError(f"{what} must be an integer")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError:
            pass
    raise InputError(f"{what} must be an integer, got {v!r}")


def _coef_any(v) -> CoefPoly:
    if isinstance(v, str) and v and v[0].isalpha():
        try:
            return CoefPoly.var(check_param_name(v))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return coefpoly_from_json(v)


def _rows(doc) -> dict:
    rows = doc.get("rows", [])
    if not isinstance(rows, list):
        raise InputError('"rows" must be a list')
    out: dict = {}
    for r in rows:
        if not isinstance(r, dict) or "i" not in r:
            raise InputError(f"bad row {r!r}")
        i = _int(r["i"], "row index")
        entries = {}
        for e in r.get("entries", []):
            if not isinstance(e, dict) or "j" not in e or "coef" not in e:
                raise InputError(f"bad entry {e!r}")
            entries[_int(e["j"], "column index")] = coefpoly_from_json(e["coef"])
        if i in out:
            raise InputError(f"row {i} listed twice")
        out[i] = entries
    return out


def matrix_from_json(doc) -> RowFiniteMatrix:
    from . import gallery
    if not isinstance(doc, dict):
        raise InputError("matrix document must be an object")
    kind = doc.get("kind", "explicit")
    params = doc.get("params", {}) or {}
    if not isinstance(params, dict):
        raise InputError('"params" must be an object')
    if kind == "explicit":
        default = doc.get("default", "identity")
        if default not in ("identity", "zero"):
            raise InputError('"default" must be "identity" or "zero"')
        return explicit_matrix(_rows(doc), default=default)
    try:
        if kind == "toeplitz":
            a = params.get("a")
            if not isinstance(a, dict) or not a:
                raise InputError('toeplitz needs params.a = {"k": coef, ...}')
            return gallery.toeplitz_matrix({_int(k, "Toeplitz index"): _coef_any(v) for k, v in a.items()})
        if kind == "cumulative":
            return gallery.cumulative_matrix()
        if kind == "pascal":
            return gallery.pascal_matrix()
        if kind == "multiparameter":
            a = params.get("a")
            if not isinstance(a, list):
                raise InputError("multiparameter needs params.a = [a1, a2, ...]")
            return gallery.multiparameter_matrix([_coef_any(v) for v in a])
        if kind == "grothendieck-dual":
            lam = params.get("lambda")
            if not isinstance(lam, list) or not is_partition(tuple(lam)):
                raise InputError("grothendieck-dual needs params.lambda, a partition")
            return gallery.grothendieck_dual_matrix(tuple(lam))[0]
        if kind == "laurent-rows":
            rows = params.get("rows")
            if not isinstance(rows, dict):
                raise InputError('laurent-rows needs params.rows = {"i": {"j": coef}}')
            return gallery.laurent_rows_matrix(
                {_int(i, "row label"): {_int(j, "column"): _coef_any(c) for j, c in r.items()}
                 for i, r in rows.items()})
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    raise InputError(f"unknown matrix kind {kind!r}; expected one of {', '.join(MATRIX_KINDS)}")
