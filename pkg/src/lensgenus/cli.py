"""Command-line entry point.

Exit status: 0 when everything checked is consistent, 1 on a verification
mismatch, 2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import report
from .classify import conjecture_check, match_families
from .errors import OutOfScopeError, UsageError
from .invariants import Triple, gbar, genus
from .params import derive_params
from .structure import consecutive_v_check, mobile_report, z_decompose
from .sweep import (PERIOD, SweepConfig, VerificationRecord, verify_k2,
                    verify_reduction, verify_structure, verify_theorem,
                    write_records)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(", ", ": ")))


def _maybe_write(args, records) -> None:
    if args.out:
        write_records(records, args.out, args.format)


def cmd_gbar(args) -> int:
    t = Triple(args.p, args.q, args.k)
    res = gbar(t, args.mode)
    out = {"p": t.p, "q": t.q, "k": t.k, "mode": args.mode, "gbar": res.gbar,
           "gm": res.gbar < 2 * t.p}
    if res.argmax_count is not None:
        out["argmax_count"] = res.argmax_count
    _emit(out)
    _maybe_write(args, [VerificationRecord(t.k, t.p, t.q, res.gbar, out["gm"], True)])
    return EXIT_OK


def cmd_genus(args) -> int:
    t = Triple(args.p, args.q, args.k)
    _emit({"p": t.p, "q": t.q, "k": t.k, "genus": genus(t)})
    return EXIT_OK


def cmd_params(args) -> int:
    ps = derive_params(args.k, args.q)
    _emit({"k": ps.k, "q": ps.q, "d": ps.d, "xi": ps.xi, "alpha": ps.alpha,
           "c": ps.c, "gamma": ps.gamma, "mu": ps.mu, "m": ps.m,
           "type": ps.q_type.value})
    return EXIT_OK


def cmd_structure(args) -> int:
    zd = z_decompose(args.k, args.q)
    spectrum = consecutive_v_check(args.k, args.q)
    if args.json:
        rep = mobile_report(zd)
        point = lambda m: {"kind": m.kind, "window": m.window, "l": m.l, "i": m.i,
                           "active_times": list(m.active_times),
                           "expected_active": m.expected_active}
        _emit({
            "k": zd.k, "q": zd.q, "d": zd.d, "eps_d": zd.eps_d,
            "n_lengths": list(zd.n_lengths), "z": [list(r) for r in zd.z],
            "psi": zd.psi, "psibar": zd.psibar,
            "mobile": [point(m) for m in rep.mobile],
            "pseudomobile": [point(m) for m in rep.pseudomobile],
            "antipseudomobile": [point(m) for m in rep.antipseudomobile],
            "neutralized_pairs": [
                {"window": p.window, "i": p.i, "l_right": p.l_right, "l_left": p.l_left}
                for p in rep.neutralized_pairs],
            "r_star": spectrum.r_star, "spectrum_ok": spectrum.spectrum_ok,
        })
    else:
        print(f"k={zd.k} q={zd.q} d={zd.d} eps_d={zd.eps_d} psi={zd.psi} psibar={zd.psibar}")
        for j, run in enumerate(zd.z):
            print(f"  z^{j}: n={zd.n_lengths[j]} {list(run)}")
        print(f"  spectrum_ok={spectrum.spectrum_ok} r_star={spectrum.r_star}")
    if args.figures:
        report.spectrum_figure(zd.k, zd.q, spectrum.values, args.figures)
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.p <= args.k * args.k:
        raise OutOfScopeError("out of scope (p < k^2)")
    fam = match_families(args.p, args.k)
    _emit({"p": args.p, "k": args.k, "coprime": fam.coprime,
           "families": [m.as_dict() for m in fam]})
    return EXIT_OK


def cmd_check(args) -> int:
    c = conjecture_check(args.p, args.q, args.k)
    _emit({"p": c.p, "q": c.q, "k": c.k, "congruence_ok": c.congruence_ok,
           "families": [m.as_dict() for m in c.families], "gm": c.gm,
           "gbar": c.gbar, "eligible": c.eligible, "consistent": c.consistent})
    _maybe_write(args, [VerificationRecord(c.k, c.p, c.q, c.gbar, c.gm, c.consistent,
                                           c.families.matches)])
    return EXIT_OK if c.consistent else EXIT_MISMATCH


def _pwindow(text: str):
    if text == PERIOD:
        return PERIOD
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'period' or comma-separated ints: {text!r}")


def _sweep(fn):
    def run(args) -> int:
        cfg = SweepConfig(args.kmin, args.kmax, getattr(args, "pwindow", PERIOD),
                          args.workers, args.out, args.format)
        summary = fn(cfg)
        print(summary.line())
        for r in summary.mismatches[:20]:
            print("  mismatch:", json.dumps(r.as_dict()))
        if args.figures:
            for path in report.summary_figures(summary, args.figures):
                print(f"  figure: {path}")
        return EXIT_OK if summary.ok else EXIT_MISMATCH
    return run


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="write records to this file")
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--figures", type=Path, metavar="DIR",
                        help="render PNG figures into DIR")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="lensgenus",
        description="Genus-minimising simple knots in lens spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def triple_cmd(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        for a in ("p", "q", "k"):
            sp.add_argument(a, type=int)
        sp.set_defaults(func=fn)
        return sp

    sp = triple_cmd("gbar", cmd_gbar, "Gbar(p, q, k)")
    sp.add_argument("--mode", choices=("fast", "oracle", "full"), default="fast")
    triple_cmd("genus", cmd_genus, "genus of the simple knot for the G-triple")
    triple_cmd("check", cmd_check, "Berge families vs genus minimality, p > k^2")

    sp = sub.add_parser("params", parents=[common], help="parameter set of q mod k^2")
    sp.add_argument("k", type=int)
    sp.add_argument("q", type=int)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("structure", parents=[common], help="z-tuples and mobile points")
    sp.add_argument("k", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_structure)

    sp = sub.add_parser("classify", parents=[common], help="Berge families of (p, k)")
    sp.add_argument("p", type=int)
    sp.add_argument("k", type=int)
    sp.set_defaults(func=cmd_classify)

    sweeps = [
        ("verify-k2", verify_k2, False, "brute force vs closed forms at p = k^2"),
        ("verify-theorem", verify_theorem, True, "Berge families vs gm for p > k^2"),
        ("verify-reduction", verify_reduction, True, "p > k^2 reduction to modulus k^2"),
        ("verify-structure", verify_structure, False, "structural checks at p = k^2"),
    ]
    for name, fn, windowed, help in sweeps:
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("--kmin", type=int, required=True)
        sp.add_argument("--kmax", type=int, required=True)
        if windowed:
            sp.add_argument("--pwindow", type=_pwindow, default=PERIOD,
                            help="'period' (k^2 < p <= 2k^2) or a comma-separated list")
        sp.set_defaults(func=_sweep(fn))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
