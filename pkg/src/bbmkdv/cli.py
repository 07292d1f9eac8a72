"""Command-line front end.

Input documents are JSON with up to four keys:

    {"system": {"params": {"a": "1", "b": "0", ...},
                "assume_nonzero": ["kappa"], "assume_zero": ["eps-sigma"]},
     "generator": {"xi_t": "...", "xi_x": "...",
                   "eta_u": "...", "eta_v": "..."},
     "substitution": {"phi": "...", "psi": "..."},
     "conserved_vector": {"ct": "...", "cx": "..."}}

"generator" may also be a name such as "X4" or a combination such as
"2*X1 + X3".  Expression strings use the library grammar.  Exit codes:
0 success, 1 a check failed or stayed inconclusive, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys
from fractions import Fraction
from typing import Optional

from .conslaw import (catalog_prop3, conserved_vector, equivalence_classify,
                      verify_divergence, ConservedVector)
from .expr import ExprError
from .jet import DEFAULT_ORDER_CAP, VectorField, vector_field
from .parse import ParseError, parse, to_text
from .reduce import DEFAULT_LADDER
from .report import build_report, render_check
from .selfadjoint import (Substitution, classify_selfadjointness,
                          solve_substitutions, substitution_defect)
from .symmetry import combination, is_symmetry, solve_symmetries
from .system import PDESystem, adjoint_system, bbm_kdv, preset


class UsageError(ValueError):
    pass


def _parse_ladder(values) -> tuple:
    out = []
    for raw in values:
        parts = raw.split(",")
        if len(parts) != 2:
            raise UsageError("--ladder expects r,deg (got %r)" % raw)
        try:
            r, deg = int(parts[0]), int(parts[1])
        except ValueError:
            raise UsageError("--ladder expects integers (got %r)" % raw)
        if r < 0 or deg < 0:
            raise UsageError("--ladder rungs must be >= 0")
        out.append((r, deg))
    return tuple(out) if out else DEFAULT_LADDER


def _load_doc(path: Optional[str]) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise UsageError("input document must be a JSON object")
    return doc


def _system_from(doc: dict, preset_name: Optional[str]) -> PDESystem:
    if preset_name is not None:
        if "system" in doc:
            raise UsageError("give either --preset or a system entry, "
                             "not both")
        return preset(preset_name)
    spec = doc.get("system", {})
    if not isinstance(spec, dict):
        raise UsageError("system entry must be a JSON object")
    bindings = {}
    for name, raw in (spec.get("params") or {}).items():
        bindings[name] = Fraction(str(raw))
    nonzero = [parse(s) for s in spec.get("assume_nonzero", ())]
    zero = [parse(s) for s in spec.get("assume_zero", ())]
    return bbm_kdv(bindings or None, nonzero=nonzero, zero=zero)


def _generator_from(doc: dict, name: Optional[str],
                    sys: PDESystem) -> VectorField:
    if name is not None:
        return combination(name, sys)
    spec = doc.get("generator")
    if spec is None:
        raise UsageError("no generator given (use --generator or a "
                         "generator entry)")
    if isinstance(spec, str):
        return combination(spec, sys)
    comps = {}
    for key in ("xi_t", "xi_x", "eta_u", "eta_v"):
        comps[key] = parse(str(spec.get(key, "0")))
    return vector_field(**comps)


def _substitution_from(doc: dict, phi: Optional[str],
                       psi: Optional[str]) -> Substitution:
    if phi is not None or psi is not None:
        return Substitution(parse(phi or "0"), parse(psi or "0"))
    spec = doc.get("substitution")
    if spec is None:
        raise UsageError("no substitution given (use --phi/--psi or a "
                         "substitution entry)")
    return Substitution(parse(str(spec.get("phi", "0"))),
                        parse(str(spec.get("psi", "0"))))


def _emit(args, payload: dict, lines) -> None:
    if not args.quiet:
        for line in lines:
            print(line)
    if args.json is not None:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _cmd_adjoint(args) -> int:
    sys = _system_from(_load_doc(args.spec), args.preset)
    adj = adjoint_system(sys)
    f1s, f2s = (to_text(e) for e in adj.equations)
    _emit(args, {"f1_star": f1s, "f2_star": f2s},
          ["F1* = %s" % f1s, "F2* = %s" % f2s])
    return 0


def _cmd_check_symmetry(args) -> int:
    doc = _load_doc(args.spec)
    sys = _system_from(doc, args.preset)
    vf = _generator_from(doc, args.generator, sys)
    res = is_symmetry(vf, sys, _parse_ladder(args.ladder))
    lines = ["status: %s" % res.status]
    for i, cert in enumerate(res.certificates, start=1):
        lines.append("equation %d: %s at rung r=%d deg=%d"
                     % (i, cert.status, cert.r, cert.deg))
    if res.witness:
        lines.append("numeric witness of a nonzero defect:")
        lines.append("  defect values: %s"
                     % (res.witness.get("_defect_values"),))
        shown = [k for k in res.witness
                 if str(k) in ("t", "x", "u", "v", "u_t", "u_x",
                               "v_t", "v_x")]
        for k in sorted(shown, key=str):
            lines.append("  %s = %s" % (k, res.witness[k]))
        lines.append("  (full evaluation point in --json output)")
    _emit(args, res.to_json_dict(), lines)
    return 0 if res.status == "pass" else 1


def _cmd_solve_symmetries(args) -> int:
    sys = _system_from(_load_doc(args.spec), args.preset)
    basis = solve_symmetries(sys, deg=args.degree)
    lines = ["dimension: %d" % len(basis)]
    out = []
    for i, vf in enumerate(basis, start=1):
        comp = {"xi_t": to_text(vf.xi_t), "xi_x": to_text(vf.xi_x),
                "eta_u": to_text(vf.eta_u), "eta_v": to_text(vf.eta_v)}
        out.append(comp)
        lines.append("generator %d: xi_t=%s  xi_x=%s  eta_u=%s  eta_v=%s"
                     % (i, comp["xi_t"], comp["xi_x"], comp["eta_u"],
                        comp["eta_v"]))
    _emit(args, {"dimension": len(basis), "basis": out}, lines)
    return 0


def _cmd_check_substitution(args) -> int:
    doc = _load_doc(args.spec)
    sys = _system_from(doc, args.preset)
    sub = _substitution_from(doc, args.phi, args.psi)
    d1, d2 = substitution_defect(sys, sub)
    exact = d1.is_zero() and d2.is_zero()
    lines = ["status: %s" % ("exact" if exact else "nonzero defect"),
             "defect 1: %s" % to_text(d1),
             "defect 2: %s" % to_text(d2)]
    _emit(args, {"exact": exact, "defect": [to_text(d1), to_text(d2)]},
          lines)
    return 0 if exact else 1


def _cmd_solve_substitutions(args) -> int:
    sys = _system_from(_load_doc(args.spec), args.preset)
    subs, _sol = solve_substitutions(sys)
    lines = ["dimension: %d" % len(subs)]
    out = []
    for i, sub in enumerate(subs, start=1):
        out.append({"phi": to_text(sub.phi), "psi": to_text(sub.psi)})
        lines.append("member %d: phi = %s ; psi = %s"
                     % (i, out[-1]["phi"], out[-1]["psi"]))
    _emit(args, {"dimension": len(subs), "members": out}, lines)
    return 0


def _cmd_classify(args) -> int:
    sys = _system_from(_load_doc(args.spec), args.preset)
    cls = classify_selfadjointness(sys)
    lines = ["classification: %s" % cls.kind]
    if cls.witness is not None:
        lines.append("witness: phi = %s ; psi = %s"
                     % (to_text(cls.witness.phi), to_text(cls.witness.psi)))
    lines.append("identity-pair defect: %s ; %s"
                 % tuple(to_text(e) for e in cls.strict_defect))
    for note in cls.notes:
        lines.append("note: %s" % note)
    _emit(args, cls.to_json_dict(), lines)
    return 0


def _cmd_build_conslaw(args) -> int:
    doc = _load_doc(args.spec)
    sys = _system_from(doc, args.preset)
    vf = _generator_from(doc, args.generator, sys)
    sub = _substitution_from(doc, args.phi, args.psi)
    vec = conserved_vector(sys, sub, vf, cap=args.order_cap)
    cert = verify_divergence(vec, sys, _parse_ladder(args.ladder),
                             cap=args.order_cap)
    eq = equivalence_classify(vec, sys)
    lines = ["Ct = %s" % to_text(vec.ct),
             "Cx = %s" % to_text(vec.cx),
             "divergence certificate: %s" % cert.status,
             "equivalence class: %s" % eq.status]
    payload = vec.to_json_dict()
    payload["equivalence"] = eq.to_json_dict()
    _emit(args, payload, lines)
    return 0 if cert.ok and eq.status != "unresolved" else 1


def _cmd_verify_conslaw(args) -> int:
    doc = _load_doc(args.spec)
    sys = _system_from(doc, args.preset)
    spec = doc.get("conserved_vector")
    if spec is not None:
        vec = ConservedVector(parse(str(spec["ct"])), parse(str(spec["cx"])),
                              provenance="input", system=sys)
    elif args.catalog is not None:
        vec = catalog_prop3(args.catalog)
        sys = vec.system
    else:
        vf = _generator_from(doc, args.generator, sys)
        sub = _substitution_from(doc, args.phi, args.psi)
        vec = conserved_vector(sys, sub, vf, cap=args.order_cap)
    cert = verify_divergence(vec, sys, _parse_ladder(args.ladder),
                             cap=args.order_cap)
    lines = ["divergence certificate: %s (rung r=%d deg=%d)"
             % (cert.status, cert.r, cert.deg),
             "re-expansion check: %s" % cert.verify()]
    _emit(args, {"certificate": cert.to_json_dict(),
                 "reverified": bool(cert.verify())}, lines)
    return 0 if cert.ok else 1


def _cmd_reproduce(args) -> int:
    progress = None
    if not args.quiet:
        progress = lambda c: print(render_check(c), flush=True)
    report = build_report(_parse_ladder(args.ladder),
                          extra_preset=args.preset, progress=progress)
    if not args.quiet:
        s = report.summary
        print()
        print("summary: %d checks, %d pass, %d fail, %d inconclusive"
              % (s["checks"], s["pass"], s["fail"], s["inconclusive"]))
        for cid in report.errata_ids:
            c = next(k for k in report.checks if k.id == cid)
            print("errata candidate %s: paper says %r, computed %r"
                  % (cid, c.detail.get("paper_claim"),
                     c.detail.get("computed")))
    if args.json is not None:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report.ok else 1


_COMMANDS = {
    "adjoint": _cmd_adjoint,
    "check-symmetry": _cmd_check_symmetry,
    "solve-symmetries": _cmd_solve_symmetries,
    "check-substitution": _cmd_check_substitution,
    "solve-substitutions": _cmd_solve_substitutions,
    "classify": _cmd_classify,
    "build-conslaw": _cmd_build_conslaw,
    "verify-conslaw": _cmd_verify_conslaw,
    "reproduce": _cmd_reproduce,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", nargs="?", default=None,
                        help="JSON input document")
    common.add_argument("--preset", default=None,
                        help="named instance: boussinesq, kaup, "
                             "bona-smith(lambda=<rational>)")
    common.add_argument("--ladder", action="append", default=[],
                        metavar="R,DEG",
                        help="certificate search rung, repeatable")
    common.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP,
                        dest="order_cap", help="max jet order")
    common.add_argument("--json", default=None, metavar="PATH",
                        help="write machine-readable result here")
    common.add_argument("--quiet", action="store_true",
                        help="suppress human-readable output")

    ap = argparse.ArgumentParser(
        prog="bbmkdv",
        description="Exact symmetry and conservation-law toolkit for "
                    "BBM-KdV systems")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("adjoint", parents=[common],
                       help="print the adjoint system")
    p = sub.add_parser("check-symmetry", parents=[common],
                       help="verify a generator against a system")
    p.add_argument("--generator", default=None,
                   help="name or combination, e.g. X4 or '2*X1 + X3'")
    p = sub.add_parser("solve-symmetries", parents=[common],
                       help="solve the determining equations (numeric "
                            "parameters)")
    p.add_argument("--degree", type=int, default=2,
                   help="coefficient ansatz degree")
    p = sub.add_parser("check-substitution", parents=[common],
                       help="check a (phi, psi) pair for zero defect")
    p.add_argument("--phi", default=None)
    p.add_argument("--psi", default=None)
    p = sub.add_parser("solve-substitutions", parents=[common],
                       help="solve for admitted substitutions")
    p = sub.add_parser("classify", parents=[common],
                       help="strict/quasi/nonlinear-only classification")
    p = sub.add_parser("build-conslaw", parents=[common],
                       help="assemble and classify a conserved vector")
    p.add_argument("--generator", default=None)
    p.add_argument("--phi", default=None)
    p.add_argument("--psi", default=None)
    p = sub.add_parser("verify-conslaw", parents=[common],
                       help="verify a conserved vector's divergence")
    p.add_argument("--generator", default=None)
    p.add_argument("--phi", default=None)
    p.add_argument("--psi", default=None)
    p.add_argument("--catalog", default=None,
                   help="catalog id: i.a, i.b-lambda0, i.b-sigma0, "
                        "ii.a, ii.b")
    p = sub.add_parser("reproduce", parents=[common],
                       help="run the full reproduction pipeline")
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ParseError, ExprError, OSError,
            json.JSONDecodeError, ValueError, KeyError) as exc:
        print("error: %s" % exc, file=_sys.stderr)
        return 2


if __name__ == "__main__":
    _sys.exit(main())
