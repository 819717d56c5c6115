"""Command-line front end.

Exit codes: 0 success, 2 invalid input (parse or validation failure),
3 computation error.  Output is deterministic for fixed inputs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .arrangements import (Arrangement, InvalidParameters, WeightBoundTooSmall, build_generic_pair,
                           dependent_sets, mirror_hochschild, orlik_solomon, os_poincare_bruteforce,
                           projective_complement, sh_presentation, sr_jacobian_isomorphism)
from .criteria import DegenerateInput, full_report, resolve_p2_arrangement
from .exactalg import NotAPrime, field_from_string
from .fixtures import UnknownFixture, catalog, fixture_text, kind_of
from .logring import (RestrictionNotSurjective, ValidationRequired, build_log_ring, check_finite_generation,
                      hilbert_table, presentation_topological, stanley_reisner)
from .pairdata import ParseError, dumps_pair, load_pair, validate
from .specseq import InvalidComplex, ProductNotFiltered, detect_degeneration, load_complex, page

EXIT_OK, EXIT_INVALID, EXIT_COMPUTE = 0, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def _field(args):
    spec = args.field or os.environ.get("LOGCOH_FIELD") or "q"
    try:
        return field_from_string(spec)
    except (ValueError, NotAPrime) as exc:
        raise CliError(f"bad field {spec!r}: {exc}", EXIT_INVALID) from None


def _pair(args, check=True):
    try:
        p = load_pair(Path(args.pair), _field(args))
    except ParseError as exc:
        raise CliError(f"{args.pair}: {exc}", EXIT_INVALID) from None
    except OSError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    if check:
        rep = validate(p, check_associativity=False)
        if not rep.ok:
            raise CliError("pair failed validation:\n  " + "\n  ".join(rep.failures), EXIT_INVALID)
    return p


def _arrangement(path) -> Arrangement:
    try:
        return Arrangement.from_json(json.loads(Path(path).read_text(encoding="utf-8")))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_INVALID) from None


# ---------------------------------------------------------------------------


def cmd_validate(args) -> str:
    p = _pair(args, check=False)
    rep = validate(p, check_associativity=not args.quick)
    if args.format == "json":
        out = _dump({"ok": rep.ok, "failures": rep.failures})
    else:
        out = "ok\n" if rep.ok else "".join(f"FAIL {f}\n" for f in rep.failures)
    if not rep.ok:
        sys.stdout.write(out)
        raise CliError("validation failed", EXIT_INVALID)
    return out


def cmd_logcoh(args) -> str:
    p = _pair(args)
    L = build_log_ring(p, args.max_weight)
    tab = hilbert_table(L)
    if args.format == "json":
        obj = tab.to_json()
        if args.check_generation:
            obj["finitely_generated"] = check_finite_generation(L).ok
        return _dump(obj)
    if args.format == "tsv":
        return tab.to_tsv()
    return tab.to_text()


def cmd_sr(args) -> str:
    p = _pair(args)
    sr = stanley_reisner(p)
    if args.format == "json":
        dims = sr.weight_dims(args.max_weight)
        return _dump({"text": sr.text(), "generators": sr.generators, "connected": sr.connected,
                      "relations": [list(r) for r in sr.relations],
                      "weight_dims": {str(w): dims.get(w, 0) for w in range(args.max_weight + 1)}})
    return sr.text() + "\n"


def cmd_present(args) -> str:
    p = _pair(args)
    pres = presentation_topological(p)
    if args.format == "json":
        return _dump(pres.to_json())
    return pres.text()


def cmd_sspages(args) -> str:
    try:
        C = load_complex(Path(args.complex), _field(args))
    except (InvalidComplex, ProductNotFiltered) as exc:
        raise CliError(f"{args.complex}: {exc}", EXIT_INVALID) from None
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{args.complex}: {exc}", EXIT_INVALID) from None
    top = args.max_page if args.max_page is not None else C.spread() + 1
    pages = [page(C, r) for r in range(0, top + 1)]
    deg = detect_degeneration(C, max(1, top))
    if args.format == "json":
        return _dump({"pages": [{"r": P.r, "dims": [[p, q, n] for (p, q), n in sorted(P.dims().items())],
                                 "d_r_zero": P.differential_is_zero()} for P in pages],
                      "degenerates_at_E1": deg.degenerates_at_E1,
                      "first_nonzero_page": deg.first_nonzero_page})
    if args.format == "tsv":
        lines = ["r\tp\tq\tdim"]
        for P in pages:
            lines += [f"{P.r}\t{p}\t{q}\t{n}" for (p, q), n in sorted(P.dims().items())]
        return "\n".join(lines) + "\n"
    out = [P.grid_text() for P in pages]
    first = deg.first_nonzero_page
    out.append(f"degenerates at E1: {'yes' if deg.degenerates_at_E1 else 'no'}"
               + ("" if first is None else f" (first nonzero differential on page {first})") + "\n")
    return "\n".join(out)


def cmd_classify(args) -> str:
    p = _pair(args)
    gw = None
    if args.gw_flags:
        try:
            gw = json.loads(Path(args.gw_flags).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise CliError(f"{args.gw_flags}: {exc}", EXIT_INVALID) from None
    rep = full_report(p, gw)
    if args.lines:
        try:
            lines = json.loads(Path(args.lines).read_text(encoding="utf-8"))
            forms = lines["forms"] if isinstance(lines, dict) else lines
            rep["p2_arrangement"] = resolve_p2_arrangement(forms).to_json()
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CliError(f"{args.lines}: {exc}", EXIT_INVALID) from None
    if args.format == "json":
        return _dump({"pair": p.name, "verdicts": rep})
    out = []
    for key in sorted(rep):
        v = rep[key].get("verdict", rep[key]) if isinstance(rep[key], dict) else rep[key]
        status = v.get("status", "") if isinstance(v, dict) else ""
        out.append(f"{key}\t{status}")
    return "\n".join(out) + "\n"


def _generic_args(args):
    if args.file:
        a = _arrangement(args.file)
        n, k = a.nvars - 1, a.k
        # genericity: every n+1 of the forms independent, i.e. only large subsets are dependent
        if any(len(S) <= n + 1 for S in dependent_sets(a)):
            raise CliError("arrangement is not generic; supply a pair file instead", EXIT_COMPUTE)
        return n, k
    if args.n is None or args.k is None:
        raise CliError("give --file or both --n and --k", EXIT_INVALID)
    return args.n, args.k


def cmd_arrangement(args) -> str:
    F = _field(args)
    what = args.what
    if what == "os":
        a = _arrangement(args.file)
        osa = orlik_solomon(a, F)
        obj = {"poincare": osa.poincare(), "oracle": os_poincare_bruteforce(a, F),
               "basis": [b.name for b in osa.algebra.basis]}
        return _dump(obj) if args.format == "json" else \
            f"poincare {' '.join(map(str, obj['poincare']))}\noracle {' '.join(map(str, obj['oracle']))}\n"
    if what == "complement":
        a = _arrangement(args.file)
        A = projective_complement(a, F)
        betti = A.betti_list()
        if args.format == "json":
            return _dump({"betti": betti, "basis": [[b.name, b.deg] for b in A.basis]})
        return "betti " + " ".join(map(str, betti)) + "\n"
    if what == "pair":
        n, k = _generic_args(args)
        return dumps_pair(build_generic_pair(n, k, F))
    if what == "sh":
        n, k = _generic_args(args)
        pres, tab = sh_presentation(n, k, args.max_weight, F)
        if args.format == "json":
            return _dump({"presentation": pres.to_json(), "hilbert": tab.to_json()})
        if args.format == "tsv":
            return tab.to_tsv()
        return pres.text() + "\n" + tab.to_text()
    if what == "mirror":
        if args.m is not None:
            m = args.m
        elif args.file:
            m = _arrangement(args.file).k
        else:
            raise CliError("give --m or --file", EXIT_INVALID)
        rep = mirror_hochschild(m, args.max_weight, F)
        ws = range(args.max_weight + 1)
        obj = {"m": m, "bound": args.max_weight,
               "h0": [rep.h0[w] for w in ws], "h1": [rep.h1[w] for w in ws],
               "sr": [rep.sr[w] for w in ws], "h0_log": [rep.h0_log[w] for w in ws],
               "h1_log": [rep.h1_log[w] for w in ws], "b1": rep.b1,
               "h0_matches_sr": rep.h0_matches_sr, "h1_weight0_matches_b1": rep.h1_weight0_matches_b1}
        if args.format == "json":
            return _dump(obj)
        lines = ["weight\tH0\tSR\tH1\tH1_log"]
        lines += [f"{w}\t{rep.h0[w]}\t{rep.sr[w]}\t{rep.h1[w]}\t{rep.h1_log[w]}" for w in ws]
        lines.append(f"b1 = {rep.b1}; H0 matches SR: {rep.h0_matches_sr}; "
                     f"H1 weight 0 matches b1: {rep.h1_weight0_matches_b1}")
        return "\n".join(lines) + "\n"
    raise CliError(f"unknown arrangement command {what}", EXIT_INVALID)


def cmd_mirror_check(args) -> str:
    rows = []
    for n in args.n:
        ok, wit = sr_jacobian_isomorphism(n, args.order)
        rows.append({"n": n, "isomorphic": ok, **wit})
    if args.format == "json":
        return _dump(rows)
    return "".join(f"n={r['n']}\t{'yes' if r['isomorphic'] else 'no'}\t{' '.join(map(str, r['sr_hilbert']))}\n"
                   for r in rows)


def cmd_fixtures(args) -> str:
    if args.list or not args.name:
        return "".join(f"{n}\t{kind_of(n)}\n" for n in catalog())
    try:
        text = fixture_text(args.name)
    except UnknownFixture:
        raise CliError(f"unknown fixture {args.name!r}; available: {', '.join(catalog())}", EXIT_INVALID) from None
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        return ""
    return text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logcoh", description="Log cohomology of normal crossings pairs.")
    ap.add_argument("--version", action="version", version=f"logcoh {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(fmt="text"):
        # a fresh parent per command so defaults stay independent
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--format", choices=["json", "tsv", "text"], default=fmt)
        c.add_argument("--field", help="q or fp:<prime> (default: $LOGCOH_FIELD or q)")
        return [c]

    s = sub.add_parser("validate", parents=common(), help="check a pair file")
    s.add_argument("--pair", required=True)
    s.add_argument("--quick", action="store_true", help="skip the associativity check")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("logcoh", parents=common(), help="bigraded Hilbert table of the log ring")
    s.add_argument("--pair", required=True)
    s.add_argument("--max-weight", type=int, required=True)
    s.add_argument("--check-generation", action="store_true")
    s.set_defaults(func=cmd_logcoh)

    s = sub.add_parser("sr", parents=common(), help="Stanley-Reisner presentation")
    s.add_argument("--pair", required=True)
    s.add_argument("--max-weight", type=int, default=3)
    s.set_defaults(func=cmd_sr)

    s = sub.add_parser("present", parents=common(), help="presentation for surjective restrictions")
    s.add_argument("--pair", required=True)
    s.set_defaults(func=cmd_present)

    s = sub.add_parser("sspages", parents=common(), help="pages of a filtered complex")
    s.add_argument("--complex", required=True)
    s.add_argument("--max-page", type=int)
    s.set_defaults(func=cmd_sspages)

    s = sub.add_parser("classify", parents=common("json"), help="criteria verdicts for a pair")
    s.add_argument("--pair", required=True)
    s.add_argument("--gw-flags")
    s.add_argument("--lines", help="JSON list of P^2 line forms to resolve")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("arrangement", parents=common(), help="hyperplane arrangement computations")
    s.add_argument("what", choices=["os", "complement", "pair", "sh", "mirror"])
    s.add_argument("--file")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--max-weight", type=int, default=4)
    s.set_defaults(func=cmd_arrangement)

    s = sub.add_parser("mirror-check", parents=common(), help="SR ring versus Jacobian ring")
    s.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    s.add_argument("--order", type=int, default=6)
    s.set_defaults(func=cmd_mirror_check)

    s = sub.add_parser("fixtures", parents=common(), help="emit a built-in fixture")
    s.add_argument("name", nargs="?")
    s.add_argument("--out")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_fixtures)
    return ap


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command in ("arrangement",) and args.what in ("os", "complement") and not args.file:
        sys.stderr.write("logcoh: --file is required\n")
        return EXIT_INVALID
    try:
        out = args.func(args)
    except CliError as exc:
        sys.stderr.write(f"logcoh: {exc}\n")
        return exc.code
    except (ValidationRequired, ParseError) as exc:
        sys.stderr.write(f"logcoh: {exc}\n")
        return EXIT_INVALID
    except (RestrictionNotSurjective, InvalidParameters, WeightBoundTooSmall, DegenerateInput,
            ArithmeticError, ValueError, KeyError) as exc:
        sys.stderr.write(f"logcoh: computation failed: {exc}\n")
        return EXIT_COMPUTE
    stdout.write(out)
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
