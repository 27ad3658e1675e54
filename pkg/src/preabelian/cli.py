"""Command-line entry point: ``preabelian repro CASE`` and ``preabelian check KIND FILE``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Any, Callable

from . import abelian as ab
from . import catcore as cc
from . import quiver as qv
from .linalg import DimensionMismatch, Field, FieldMismatch

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2
CASES = ("unions", "left-quiver", "right-quiver", "closure-ab", "closure-quiver")
CHECKS = ("purity", "classify", "effective-union", "semiabelian", "injective")


class InvalidInput(ValueError):
    pass


@dataclass
class ReproReport:
    case: str
    check: str
    expected: Any
    computed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {"case": self.case, "check": self.check, "expected": self.expected,
                "computed": self.computed, "verdict": "pass" if self.passed else "fail"}


def load_fixture(name: str) -> Any:
    return json.loads(resources.files("preabelian").joinpath("fixtures", name).read_text())


def _name(X: qv.QuiverRep) -> str:
    return qv.decompose(X).name


# --------------------------------------------------------------------------
# reproductions


def _repro_unions(args) -> list[ReproReport]:
    data = load_fixture("ab_union.json")
    f, g = ab.AbMorphism.from_json(data["f"]), ab.AbMorphism.from_json(data["g"])
    G = ab.FGAbGroup.from_json(load_fixture("ab_G.json"))
    u = ab.effective_union(f, g, args.ab_bound)
    div, lift = u.divisibility, u.lifting
    n = div.witness.get("n") if div.witness else None
    R = lambda check, exp, got: ReproReport("unions", check, exp, got)
    return [
        R("C is Z + Z", "Z + Z", str(G)),
        R("pullback D", "0", str(u.D)),
        R("pushout E", "Z + Z", str(u.E)),
        R("h is mono", True, u.flags.mono),
        R("h is split mono", False, u.flags.split_mono),
        R("cokernel of h", "Z/2", str(ab.cokernel(u.h).obj)),
        R("divisibility verdict", "impure", div.verdict),
        R("divisibility witness n", 2, n),
        R("lifting verdict", "impure", lift.verdict),
        R("lifting certificate verifies", True, ab.verify_certificate(u.h, lift)),
        R("checkers agree", True, div.pure == lift.pure),
    ]


def _load_morphism(name: str, field: Field) -> tuple[qv.Subcategory, qv.RepMorphism]:
    data = load_fixture(name)
    return qv.subcategory(data["subcategory"], field), qv.RepMorphism.from_json(data["morphism"], field)


def _load_pair(name: str, field: Field):
    data = load_fixture(name)
    return (qv.subcategory(data["subcategory"], field), qv.RepMorphism.from_json(data["f"], field),
            qv.RepMorphism.from_json(data["g"], field))


def _indecomposables(field: Field) -> dict[str, qv.QuiverRep]:
    return {l: qv.QuiverRep.from_json(d, field) for l, d in load_fixture("quiver_indecomposables.json").items()}


def _scan_checks(case, I, args, left, right) -> list[ReproReport]:
    scan = qv.semiabelian_scan(I, args.dim_bound, args.field, seed=args.seed)
    return [ReproReport(case, "left semi-abelian", left, scan.left),
            ReproReport(case, "right semi-abelian", right, scan.right)]


def _repro_left(args) -> list[ReproReport]:
    F, case = args.field, "left-quiver"
    E = _indecomposables(F)
    I, k = _load_morphism("quiver_k.json", F)
    _, p = _load_morphism("quiver_p.json", F)
    _, z = _load_morphism("quiver_z_left.json", F)
    ci = qv.coim_im_factor(z, I)
    mid = qv.classify_in_k(ci.mid, I)
    P_L = qv.pushout_L(k, p)
    P_K = qv.k_pushout(k, p, I)
    _, f, g = _load_pair("quiver_union_left.json", F)
    u = qv.effective_union(f, g, I)
    inj = qv.is_regular_injective(E["E2"], I, args.dim_bound)
    wit = inj.to_json().get("witness", {})
    kf, pf = qv.classify_in_k(k, I), qv.classify_in_k(p, I)
    R = lambda check, exp, got: ReproReport(case, check, exp, got)
    return [
        R("closure kind", "reflective", I.closure_kind),
        R("reflector of E12", "E1", _name(qv.reflect(E["E12"], I).obj)),
        R("coimage of z", "E3", _name(ci.coimage)),
        R("image of z", "E23", _name(ci.image)),
        R("coim -> im regular mono", True, mid.regular_mono),
        R("coim -> im epi", False, mid.epi),
        R("k regular mono", True, kf.regular_mono),
        R("p regular epi", True, pf.regular_epi),
        R("ambient pushout of k along p", "E12", _name(P_L.obj)),
        R("ambient pushout leg nonzero", True, not P_L.second.is_zero()),
        R("pushout of k along p in K", "E1", _name(P_K.obj)),
        R("pushed-out k is zero", True, P_K.second.is_zero()),
        R("union f split mono", True, u.f_flags.split_mono),
        R("union g split mono", True, u.g_flags.split_mono),
        R("union D", "0", _name(u.D)),
        R("union E", "E3^2", _name(u.E)),
        R("union h mono", True, u.h_flags.mono),
        R("union h regular mono", False, u.h_flags.regular_mono),
        R("maps out of E2 are zero or split mono", True,
          all(m.is_zero() or qv.classify_in_k(m, I).split_mono
              for J in I.labels for m in qv.hom_elements(E["E2"], E[J]))),
        R("E2 regular injective", False, inj.injective),
        R("injectivity witness mono", ["E23", "E123"], [wit.get("mono_src"), wit.get("mono_dst")]),
        *_scan_checks(case, I, args, True, False),
    ]


def _repro_right(args) -> list[ReproReport]:
    F, case = args.field, "right-quiver"
    E = _indecomposables(F)
    I, z = _load_morphism("quiver_z_right.json", F)
    ci = qv.coim_im_factor(z, I)
    mid = qv.classify_in_k(ci.mid, I)
    _, f, g = _load_pair("quiver_union_right.json", F)
    u = qv.effective_union(f, g, I)
    R = lambda check, exp, got: ReproReport(case, check, exp, got)
    return [
        R("closure kind", "coreflective", I.closure_kind),
        R("coreflector of E23", "E3", _name(qv.coreflect(E["E23"], I).obj)),
        R("coimage of z", "E12", _name(ci.coimage)),
        R("image of z", "E1", _name(ci.image)),
        R("coim -> im regular epi", True, mid.regular_epi),
        R("coim -> im mono", False, mid.mono),
        R("union C", "E1+E123", _name(f.dst)),
        R("union f split mono", True, u.f_flags.split_mono),
        R("union g split mono", True, u.g_flags.split_mono),
        R("union D", "E3", _name(u.D)),
        R("union E", "E12+E123", _name(u.E)),
        R("union h mono", False, u.h_flags.mono),
        R("union h regular epi", True, u.h_flags.regular_epi),
        R("E123 regular injective", True, qv.is_regular_injective(E["E123"], I, args.dim_bound).injective),
        *_scan_checks(case, I, args, False, True),
    ]


def _closure_checks(case: str, adapter: cc.CategoryAdapter, args) -> list[ReproReport]:
    config = cc.SampleConfig(200, args.seed)
    out = [ReproReport(case, f"{r.law} violations", 0, r.violations)
           for r in cc.closure_suite(adapter, config)]
    broken = cc.closure_suite(cc.broken_adapter(adapter, args.seed), config)
    out.append(ReproReport(case, "negative control reports violations", True,
                           any(r.violations for r in broken)))
    return out


def _repro_closure_ab(args):
    return _closure_checks("closure-ab", cc.ab_adapter(3, 3), args)


def _repro_closure_quiver(args):
    return _closure_checks("closure-quiver", cc.quiver_adapter(qv.LABELS, 2, args.field), args)


REPRO: dict[str, Callable] = {
    "unions": _repro_unions,
    "left-quiver": _repro_left,
    "right-quiver": _repro_right,
    "closure-ab": _repro_closure_ab,
    "closure-quiver": _repro_closure_quiver,
}


def cmd_repro(args, out) -> int:
    cases = CASES if args.case == "all" else (args.case,)
    reports: list[ReproReport] = []
    for case in cases:
        reports.extend(REPRO[case](args))
    if args.json:
        json.dump([r.to_json() for r in reports], out, indent=1)
        out.write("\n")
    else:
        for r in reports:
            line = f"{'PASS' if r.passed else 'FAIL'} {r.case}: {r.check} = {r.computed}"
            if not r.passed:
                line += f" (expected {r.expected})"
            out.write(line + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


# --------------------------------------------------------------------------
# checks on user input


def _get(data: Any, key: str, path: str) -> Any:
    if not isinstance(data, dict):
        raise InvalidInput(f"{path or '$'}: expected an object")
    if key not in data:
        raise InvalidInput(f"{path or '$'}: missing key {key!r}")
    return data[key]


def _parse(path: str, build: Callable, data: Any) -> Any:
    try:
        return build(data)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidInput(f"{path}: {exc.__class__.__name__}: {exc}") from exc


def _is_quiver(data: Any) -> bool:
    return isinstance(data, dict) and ("maps" in data or "dims" in data)


def _subcategory(data: dict, field: Field) -> qv.Subcategory:
    labels = data.get("subcategory", list(qv.LABELS)) if isinstance(data, dict) else list(qv.LABELS)
    if not isinstance(labels, list) or any(l not in qv.LABELS for l in labels):
        raise InvalidInput(f"$.subcategory: expected a list of labels from {list(qv.LABELS)}")
    try:
        return qv.subcategory(labels, field)
    except ValueError as exc:
        raise InvalidInput(f"$.subcategory: {exc}") from exc


def _morphism_input(data: Any, args):
    """Accepts a bare morphism or ``{"morphism": ..., "subcategory": [...]}``."""
    body, path = (data["morphism"], "$.morphism") if isinstance(data, dict) and "morphism" in data else (data, "$")
    if _is_quiver(body):
        I = _subcategory(data, args.field)
        return "quiver", I, _parse(path, lambda d: qv.RepMorphism.from_json(d, args.field), body)
    return "ab", None, _parse(path, ab.AbMorphism.from_json, body)


def _check_purity(data, args) -> dict:
    kind, I, f = _morphism_input(data, args)
    if kind == "ab":
        div = ab.purity_divisibility(f)
        lift = ab.purity_lifting(f, args.ab_bound)
        return {"category": "ab", "purity_divisibility": div.to_json(), "purity_lifting": lift.to_json(),
                "agree": div.pure == lift.pure}
    flags = qv.classify_in_k(f, I)
    lift = qv.purity_lifting_k(f, I, min(args.dim_bound, 2))
    if "square" in lift:
        lift = {**lift, "square": {k: m.to_json() for k, m in lift["square"].items()}}
    return {"category": "quiver", "subcategory": I.labels, "pure": flags.pure,
            "split_mono": flags.split_mono, "purity_lifting": lift}


def _check_classify(data, args) -> dict:
    kind, I, f = _morphism_input(data, args)
    if kind == "ab":
        return {"category": "ab", "flags": ab.classify(f).as_dict()}
    return {"category": "quiver", "subcategory": I.labels, "flags": qv.classify_in_k(f, I).as_dict()}


def _check_union(data, args) -> dict:
    f_data, g_data = _get(data, "f", "$"), _get(data, "g", "$")
    if _is_quiver(f_data):
        I = _subcategory(data, args.field)
        f = _parse("$.f", lambda d: qv.RepMorphism.from_json(d, args.field), f_data)
        g = _parse("$.g", lambda d: qv.RepMorphism.from_json(d, args.field), g_data)
        return {"category": "quiver", "subcategory": I.labels, **qv.effective_union(f, g, I).to_json()}
    f = _parse("$.f", ab.AbMorphism.from_json, f_data)
    g = _parse("$.g", ab.AbMorphism.from_json, g_data)
    return {"category": "ab", **ab.effective_union(f, g, args.ab_bound).to_json()}


def _check_semiabelian(data, args) -> dict:
    _get(data, "subcategory", "$")
    I = _subcategory(data, args.field)
    return {"subcategory": I.labels, "field": args.field.tag, "dim_bound": args.dim_bound,
            **qv.semiabelian_scan(I, args.dim_bound, args.field, seed=args.seed).to_json()}


def _check_injective(data, args) -> dict:
    I = _subcategory(data, args.field)
    Q = _parse("$.object", lambda d: qv.QuiverRep.from_json(d, args.field), _get(data, "object", "$"))
    return {"subcategory": I.labels, "object": _name(Q),
            **qv.is_regular_injective(Q, I, args.dim_bound).to_json()}


CHECK: dict[str, Callable] = {
    "purity": _check_purity,
    "classify": _check_classify,
    "effective-union": _check_union,
    "semiabelian": _check_semiabelian,
    "injective": _check_injective,
}


def cmd_check(args, out) -> int:
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"{args.file}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{args.file}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        result = CHECK[args.kind](data, args)
    except (ab.IllDefined, DimensionMismatch, FieldMismatch, qv.NonCommuting, qv.ShapeMismatch,
            qv.ObjectNotInSubcategory, ab.CornerMismatch) as exc:
        raise InvalidInput(f"{args.file}: {exc.__class__.__name__}: {exc}") from exc
    json.dump(result, out, indent=None if args.json else 1)
    out.write("\n")
    return EXIT_OK


# --------------------------------------------------------------------------


def _field_arg(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _bound_arg(text: str) -> ab.LiftBound:
    try:
        return ab.LiftBound.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _dim_arg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("dimension bound must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--field", type=_field_arg, default=Field.parse("Fp:2"), help="Q or Fp:p (default Fp:2)")
    common.add_argument("--dim-bound", type=_dim_arg, default=3, help="total dimension bound for scans")
    common.add_argument("--ab-bound", type=_bound_arg, default=ab.LiftBound(),
                        help="gens,rels,entry bound for the lifting checker (default 2,2,3)")
    parser = argparse.ArgumentParser(prog="preabelian", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    rp = sub.add_parser("repro", parents=[common], help="reproduce a worked example")
    rp.add_argument("case", help=" | ".join(CASES + ("all",)))
    ck = sub.add_parser("check", parents=[common], help="run a checker on a JSON input")
    ck.add_argument("kind", choices=CHECKS)
    ck.add_argument("file")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        if args.command == "repro":
            if args.case not in CASES + ("all",):
                err.write(f"unknown case {args.case!r}; choose from {', '.join(CASES + ('all',))}\n")
                return EXIT_INVALID
            return cmd_repro(args, out)
        return cmd_check(args, out)
    except InvalidInput as exc:
        err.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
