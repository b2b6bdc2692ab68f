"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 malformed input, 3 domain error.
Every invocation writes exactly one JSON document to standard output.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import serialize as sz
from .algebra import ghat_bracket
from .coadjoint import coad, stabilizer_elem
from .cocycles import COCYCLES, eval_c, gf_noncoboundary_certificate
from .errors import GfredError, ParseError
from .reduction import (
    HillPoint,
    ds_gauge,
    gf_coefficient_report,
    hill_to_dual,
    momentum_cocycle_res,
    momentum_cocycle_stab,
)
from .suites import SUITES, SuiteConfig, replay, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


def _read_json(path: str, stdin=None):
    if path == "-":
        text = (stdin or sys.stdin).read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
    return sz.loads(text)


def _rat_arg(text: str) -> Fraction:
    try:
        return sz.parse_rat(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _lam_arg(text: str):
    try:
        return sz.parse_lam(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gfred", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="single-shot evaluations")
    evsub = ev.add_subparsers(dest="what", required=True, parser_class=_Parser)
    co = evsub.add_parser("cocycle", help="evaluate c1, c2, c3 or their combination")
    co.add_argument("--which", choices=("c1", "c2", "c3", "combo"), required=True)
    co.add_argument("--lam", type=_lam_arg, default=None, help="l1,l2,l3 (for combo)")
    co.add_argument("--a", dest="a_file", required=True, help="GElem JSON file or -")
    co.add_argument("--b", dest="b_file", required=True, help="GElem JSON file or -")
    br = evsub.add_parser("bracket", help="bracket in the central extension")
    br.add_argument("--lam", type=_lam_arg, required=True)
    br.add_argument("--a", dest="a_file", required=True)
    br.add_argument("--b", dest="b_file", required=True)

    st = sub.add_parser("stabilizer", help="stabilizer element (f d, N_f)")
    st.add_argument("--f", dest="f_file", required=True, help="TrigPoly JSON file or -")
    st.add_argument("--a", type=_rat_arg, required=True)
    st.add_argument("--lam", type=_lam_arg, required=True)

    cd = sub.add_parser("coad", help="coadjoint action of a GElem on a DualElem")
    cd.add_argument("--x", dest="x_file", required=True)
    cd.add_argument("--phi", dest="phi_file", required=True)
    cd.add_argument("--lam", type=_lam_arg, required=True)

    th = sub.add_parser("theorem", help="compare the residual and stabilizer cocycles")
    th.add_argument("--f", dest="f_file", required=True)
    th.add_argument("--g", dest="g_file", required=True)
    th.add_argument("--T", dest="T_file", required=True)
    th.add_argument("--a", type=_rat_arg, required=True)
    th.add_argument("--lam", type=_lam_arg, required=True)

    ds = sub.add_parser("ds", help="unipotent gauge fixing")
    dssub = ds.add_subparsers(dest="what", required=True, parser_class=_Parser)
    dg = dssub.add_parser("gauge", help="gauge a constrained connection to Hill form")
    dg.add_argument("--conn", dest="conn_file", required=True)

    rp = sub.add_parser("report", help="reports")
    rpsub = rp.add_subparsers(dest="what", required=True, parser_class=_Parser)
    gf = rpsub.add_parser("gf", help="k^3 + k fit of the residual cocycle on modes")
    gf.add_argument("--lam", type=_lam_arg, required=True)
    gf.add_argument("--a", type=_rat_arg, required=True)
    gf.add_argument("--kmax", type=int, default=5)

    ce = sub.add_parser("certificate", help="non-coboundary witness for c3")
    ce.add_argument("--kmax", type=int, default=3)

    su = sub.add_parser("suite", help="run a seeded verification suite")
    su.add_argument("name", help="one of: " + ", ".join(SUITES + ("all",)))
    su.add_argument("--bandwidth", type=int, default=3)
    su.add_argument("--trials", type=int, default=100)
    su.add_argument("--seed", type=int, default=0)
    su.add_argument("--lam", type=_lam_arg, action="append", help="repeatable")
    su.add_argument("--a", type=_rat_arg, action="append", help="charge; repeatable")
    su.add_argument("--no-timing", action="store_true", help="omit elapsed_s fields")

    rl = sub.add_parser("replay", help="re-evaluate a counterexample payload")
    rl.add_argument("payload", help="counterexample JSON file or -")
    return p


def _cmd_eval(args, stdin):
    A_doc, B_doc = _read_json(args.a_file, stdin), _read_json(args.b_file, stdin)
    if args.what == "cocycle":
        A, B = sz.gelem_from_json(A_doc), sz.gelem_from_json(B_doc)
        if args.which == "combo":
            if args.lam is None:
                raise ParseError("--lam is required for --which combo")
            value = eval_c(A, B, args.lam)
        else:
            value = COCYCLES[args.which](A, B)
        return sz.pi_to_json(value), EXIT_OK
    A, B = sz.ghat_from_json(A_doc), sz.ghat_from_json(B_doc)
    return sz.ghat_to_json(ghat_bracket(A, B, args.lam)), EXIT_OK


def _cmd_theorem(args, stdin):
    f = sz.tp_from_json(_read_json(args.f_file, stdin))
    g = sz.tp_from_json(_read_json(args.g_file, stdin))
    T = sz.tp_from_json(_read_json(args.T_file, stdin))
    h = HillPoint(T, args.a)
    res = momentum_cocycle_res(f, g, h, args.lam)
    stab = momentum_cocycle_stab(f, g, hill_to_dual(h), args.lam)
    ok = res == stab
    doc = {"res": sz.pi_to_json(res), "stab": sz.pi_to_json(stab), "result": "PASS" if ok else "FAIL"}
    return doc, EXIT_OK if ok else EXIT_FAIL


def _cmd_report(args, stdin):
    rep = gf_coefficient_report(args.lam, args.a, args.kmax)
    doc = {
        "lam": sz.lam_to_json(args.lam),
        "a": sz.rat_str(args.a),
        "kmax": rep.kmax,
        "k3_coeff": sz.pi_to_json(rep.k3_coeff),
        "k_coeff": sz.pi_to_json(rep.k_coeff),
        "entries": [
            {"route": e.route, "point": e.point_descriptor, "value": sz.pi_to_json(e.value)}
            for e in rep.entries
        ],
    }
    return doc, EXIT_OK


def _cmd_certificate(args, stdin):
    rep = gf_noncoboundary_certificate(args.kmax)
    doc = {
        "found": rep.found,
        "verified": rep.verify(),
        "search_bandwidth": rep.search_bandwidth,
        "family": [[sz.tp_to_json(f), sz.tp_to_json(g)] for f, g in rep.family],
        "values": [sz.pi_to_json(v) for v in rep.values],
        "witness": [sz.rat_str(w) for w in rep.witness],
    }
    return doc, EXIT_OK


def _cmd_suite(args, stdin):
    try:
        cfg = SuiteConfig(
            bandwidth=args.bandwidth,
            trials=args.trials,
            seed=args.seed,
            lambdas=tuple(args.lam) if args.lam else None,
            charges=tuple(args.a) if args.a else None,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    reports = run_suite(args.name, cfg)
    passed = all(r.passed for r in reports)
    docs = [r.to_json(timing=not args.no_timing) for r in reports]
    doc = docs[0] if len(docs) == 1 else {"suite": "all", "passed": passed, "reports": docs}
    return doc, EXIT_OK if passed else EXIT_FAIL


def _cmd_replay(args, stdin):
    payload = _read_json(args.payload, stdin)
    try:
        value, ok = replay(payload)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed counterexample payload: {exc}") from exc
    return {"evaluator": payload["evaluator"], "value": value, "ok": ok}, EXIT_OK if ok else EXIT_FAIL


def dispatch(args, stdin=None):
    if args.command == "eval":
        return _cmd_eval(args, stdin)
    if args.command == "stabilizer":
        f = sz.tp_from_json(_read_json(args.f_file, stdin))
        return sz.gelem_to_json(stabilizer_elem(f, args.a, args.lam)), EXIT_OK
    if args.command == "coad":
        X = sz.gelem_from_json(_read_json(args.x_file, stdin))
        phi = sz.dual_from_json(_read_json(args.phi_file, stdin))
        return sz.dual_to_json(coad(X, phi, args.lam)), EXIT_OK
    if args.command == "theorem":
        return _cmd_theorem(args, stdin)
    if args.command == "ds":
        h, s = ds_gauge(sz.conn_from_json(_read_json(args.conn_file, stdin)))
        return {"hill": sz.hill_to_json(h), "gauge": sz.tp_to_json(s)}, EXIT_OK
    if args.command == "report":
        return _cmd_report(args, stdin)
    if args.command == "certificate":
        return _cmd_certificate(args, stdin)
    if args.command == "suite":
        return _cmd_suite(args, stdin)
    return _cmd_replay(args, stdin)


def main(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None) -> int:
    out = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        doc, code = dispatch(args, stdin)
    except ParseError as exc:
        doc, code = {"error": "ParseError", "message": str(exc)}, EXIT_PARSE
    except GfredError as exc:
        doc, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_DOMAIN
    out.write(sz.dumps(doc) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
