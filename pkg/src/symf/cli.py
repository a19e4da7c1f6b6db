"""The ``symf`` command line.

Exit codes: 0 computed or verified, 1 mathematically falsified (a witness
is printed), 2 usage or input error (a JSON error object on stderr).
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from .coef import CoefPoly, UnassignedParameterError, check_param_name, rat, rat_str
from .io import (
    InputError,
    coefpoly_to_json,
    dumps,
    matrix_from_json,
    state_from_json,
    state_to_json,
    symfun_from_json,
    symfun_to_json,
    tensor_to_json,
)

_NEG_VALUE = re.compile(r"^-\d")
_VALUE_OPTS = {"--lambda", "--window", "--x", "--t", "--beta", "--a", "--assign", "--pad"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- flag parsing -----------------------------------------------------------------------

def parse_intvec(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def parse_rats(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(rat(x) for x in text.split(","))
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"expected comma-separated rationals p/q, got {text!r}") from None


def parse_rat(text: str):
    try:
        return rat(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"expected a rational p/q, got {text!r}") from None


def parse_window(text: str) -> range:
    m = re.match(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*$", text)
    if not m:
        raise InputError(f"window must look like lo:hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise InputError("empty window")
    return range(lo, hi + 1)


def parse_assign(items: Optional[Sequence[str]]) -> dict:
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise InputError(f"assignment must be name=value, got {part!r}")
            name, value = part.split("=", 1)
            name = name.strip()
            try:
                check_param_name(name)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            out[name] = parse_rat(value.strip())
    return out


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from None


def _fix_negative_values(argv: Sequence[str]) -> list:
    # lets "--lambda -1,3" through without argparse reading it as an option
    out = []
    argv = list(argv)
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and _NEG_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# -- commands -----------------------------------------------------------------------------

def _kind_for_t(t):
    from .vertex import GammaPlus, GammaPlusAt
    return GammaPlus if t is None else GammaPlusAt(parse_rat(t))


def cmd_hl(args, out):
    from .vertex import iterate_field
    out(symfun_to_json(iterate_field(_kind_for_t(args.t), parse_intvec(args.lam))))
    return 0


def cmd_schur(args, out):
    from .vertex import schur_jt
    out(symfun_to_json(schur_jt(parse_intvec(args.lam))))
    return 0


def cmd_schurq(args, out):
    from .symfun import is_strict
    from .transform import schur_q
    lam = parse_intvec(args.lam)
    if not is_strict(lam):
        raise InputError(f"{lam} is not a strict partition")
    out(symfun_to_json(schur_q(lam)))
    return 0


def cmd_transform(args, out):
    from .transform import transformed_family, transformed_family_reversed
    A = matrix_from_json(_load_json(args.matrix))
    fn = transformed_family_reversed if args.order == "reversed" else transformed_family
    out(symfun_to_json(fn(A, parse_intvec(args.lam), _kind_for_t(args.t))))
    return 0


def cmd_jt(args, out):
    from .transform import jt_transformed
    A = matrix_from_json(_load_json(args.matrix))
    out(symfun_to_json(jt_transformed(A, parse_intvec(args.lam))))
    return 0


def cmd_pf(args, out):
    from .transform import pf_transformed
    A = matrix_from_json(_load_json(args.matrix))
    out(symfun_to_json(pf_transformed(A, parse_intvec(args.lam))))
    return 0


def cmd_verify(args, out):
    from .tau import bkp_residue, kp_residue
    doc = _load_json(args.tau_file)
    if args.hierarchy == "kp":
        tau = state_from_json(doc)
        res = kp_residue(tau, pad=args.pad)
    else:
        if isinstance(doc, dict) and "charge" in doc:
            doc = doc.get("body")
        tau = symfun_from_json(doc)
        if not tau.is_odd():
            raise InputError("BKP needs tau in B_odd (odd power sums only)")
        res = bkp_residue(tau, pad=args.pad)
    if res.is_zero():
        out({"tau": True})
        return 0
    doc = tensor_to_json(res)
    out({"tau": False, "witness": doc["terms"][0], "residue": doc})
    return 1


def cmd_relations(args, out):
    from .symfun import SymFun, partitions_upto
    from .vertex import (ChargedState, GammaMinus, GammaPlus, charged_defects,
                         gamma_cross_defect, gamma_gamma_defect, neutral_defect)
    window = parse_window(args.window)
    d = args.max_degree
    checked = 0
    failures = []
    if args.field in ("gamma", "gamma-minus"):
        kinds = [("gamma-gamma", GammaPlus), ("cross", None)] if args.field == "gamma" else [("gamma-minus", GammaMinus)]
        vectors = [mu for mu in partitions_upto(d)]
        for name, kind in kinds:
            for a in window:
                for b in window:
                    for mu in vectors:
                        f = SymFun.p(*mu)
                        defect = gamma_cross_defect(a, b, f) if kind is None else gamma_gamma_defect(a, b, f, kind)
                        checked += 1
                        if defect:
                            failures.append({"relation": name, "a": a, "b": b, "pmono": list(mu),
                                             "defect": symfun_to_json(defect)})
    elif args.field == "charged":
        states = [ChargedState(m, SymFun.p(*mu)) for m in range(-2, 3) for mu in partitions_upto(d)]
        for r in window:
            for s in window:
                for st in states:
                    for name, defect in charged_defects(r, s, st).items():
                        checked += 1
                        if not defect.is_zero():
                            failures.append({"relation": name, "r": r, "s": s, "state": state_to_json(st),
                                             "defect": state_to_json(defect)})
    else:
        vectors = [mu for mu in partitions_upto(d) if all(p % 2 for p in mu)]
        for a in window:
            for b in window:
                for mu in vectors:
                    checked += 1
                    defect = neutral_defect(a, b, SymFun.p(*mu))
                    if defect:
                        failures.append({"relation": "neutral", "a": a, "b": b, "pmono": list(mu),
                                         "defect": symfun_to_json(defect)})
    doc = {"field": args.field, "checked": checked, "ok": not failures}
    if failures:
        doc["witness"] = failures[0]
        doc["failures"] = len(failures)
    out(doc)
    return 1 if failures else 0


def cmd_oracle(args, out):
    from . import oracles
    xs = parse_rats(args.x)
    params = parse_assign(args.assign)
    if args.t is not None:
        params["t"] = parse_rat(args.t)
    if args.beta is not None:
        params["beta"] = parse_rat(args.beta)
    try:
        pt = oracles.EvalPoint(xs, params)
        lam = parse_intvec(args.lam)
        if args.name == "hl-eval":
            v = oracles.hl_symmetrized_eval(lam, pt)
        elif args.name == "schur-tableaux":
            v = oracles.schur_tableaux_eval(lam, pt)
        elif args.name == "schurq-pfaffian":
            v = oracles.schurq_pfaffian_eval(lam, pt)
        elif args.name == "grothendieck-alternant":
            v = oracles.grothendieck_alternant_eval(lam, pt)
        else:
            from .gallery import poly_seq
            if not args.matrix:
                raise InputError("transformed-eval needs --matrix")
            A = matrix_from_json(_load_json(args.matrix))
            kmax = max(lam, default=0)
            v = oracles.transformed_symmetrized_eval(poly_seq(A, kmax), lam, pt)
    except oracles.OracleError as exc:
        raise InputError(str(exc)) from None
    out({"value": rat_str(v)})
    return 0


def cmd_gallery(args, out):
    from . import gallery
    from .transform import check_inverse
    kind = args.kind
    if kind in ("grothendieck", "grothendieck-dual"):
        lam = parse_intvec(args.lam)
        if kind == "grothendieck":
            f = gallery.grothendieck_stable(lam, args.order)
        else:
            f = gallery.grothendieck_dual(lam)
        out(symfun_to_json(f))
        return 0
    if kind == "toeplitz":
        a = parse_rats(args.a)
        if not a:
            raise InputError("toeplitz needs --a a0,a1,...")
        A = gallery.toeplitz_matrix(dict(enumerate(a)))
    elif kind == "multiparameter":
        a = parse_rats(args.a)
        A = gallery.multiparameter_matrix(a)
    elif kind == "cumulative":
        A = gallery.cumulative_matrix()
    else:
        A = gallery.pascal_matrix()
    kmax = args.kmax
    try:
        ps = gallery.poly_seq(A, kmax)
        verdict = check_inverse(A, A.inverse, range(-kmax, kmax + 1)).value
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out({
        "kind": kind,
        "f": [{"k": k, "coeffs": [{"s": s, "coef": coefpoly_to_json(c)} for s, c in sorted(fk.items())]}
              for k, fk in enumerate(ps.f)],
        "shape_ok": ps.check_shape(),
        "inverse_check": verdict,
    })
    return 0


def cmd_eval(args, out):
    f = symfun_from_json(_load_json(args.file))
    xs = parse_rats(args.x)
    assign = parse_assign(args.assign)
    try:
        v = f.evaluate(xs, assign)
    except UnassignedParameterError as exc:
        raise InputError(str(exc)) from None
    out({"value": rat_str(v)})
    return 0


# -- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="symf", description="Exact vertex-operator computations with symmetric functions.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("hl", help="Hall-Littlewood F_lambda via iterated Gamma+")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--t", default=None, help="specialise t (p/q)")
    s.set_defaults(func=cmd_hl)

    s = sub.add_parser("schur", help="Jacobi-Trudi Schur function for an integer vector")
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=cmd_schur)

    s = sub.add_parser("schurq", help="Schur Q-function q_lambda via the Pfaffian")
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=cmd_schurq)

    for name, func, help_ in (("transform", cmd_transform, "transformed family"),
                              ("jt", cmd_jt, "Jacobi-Trudi analogue"),
                              ("pf", cmd_pf, "Pfaffian analogue")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--matrix", required=True)
        s.add_argument("--lambda", dest="lam", required=True)
        if name == "transform":
            s.add_argument("--t", default=None)
            s.add_argument("--order", choices=("ftil", "reversed"), default="ftil")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", help="bilinear KP/BKP identity")
    s.add_argument("hierarchy", choices=("kp", "bkp"))
    s.add_argument("--tau-file", required=True)
    s.add_argument("--pad", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("relations", help="commutation relation grids")
    s.add_argument("--field", choices=("gamma", "gamma-minus", "charged", "neutral"), default="gamma")
    s.add_argument("--window", default="-3:3")
    s.add_argument("--max-degree", type=int, default=4)
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("oracle", help="brute-force evaluation formulas")
    s.add_argument("name", choices=("hl-eval", "schur-tableaux", "transformed-eval",
                                    "schurq-pfaffian", "grothendieck-alternant"))
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--t", default=None)
    s.add_argument("--beta", default=None)
    s.add_argument("--assign", action="append")
    s.add_argument("--matrix", default=None)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gallery", help="example matrices and Grothendieck families")
    s.add_argument("kind", choices=("toeplitz", "cumulative", "multiparameter", "pascal",
                                    "grothendieck", "grothendieck-dual"))
    s.add_argument("--a", default="")
    s.add_argument("--kmax", type=int, default=4)
    s.add_argument("--lambda", dest="lam", default="")
    s.add_argument("--order", type=int, default=3)
    s.set_defaults(func=cmd_gallery)

    s = sub.add_parser("eval", help="evaluate a SymFun at rational points")
    s.add_argument("--file", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--assign", action="append")
    s.set_defaults(func=cmd_eval)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)

    def out(doc):
        stdout.write(dumps(doc) + "\n")

    def fail(kind, message):
        stderr.write(dumps({"error": {"type": kind, "message": message}}) + "\n")
        return 2

    try:
        args = build_parser().parse_args(_fix_negative_values(argv))
        return args.func(args, out)
    except UsageError as exc:
        return fail("usage", str(exc))
    except InputError as exc:
        return fail("input", str(exc))
    except ValueError as exc:
        return fail("input", str(exc))


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
