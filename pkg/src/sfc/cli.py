"""Command-line front end.

One operation per invocation; reports go to stdout (json, csv or text),
diagnostics and progress to stderr.  Exit codes: 0 success/pass, 1
verification mismatch or failed check, 2 usage error, 3 budget or
applicability error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import charsums, errors
from .construct import build_G, mds_conditions, oval_check, parse_poly
from .galois import cached_field, load_tables, make_field
from .lincode import DEFAULT_BUDGET, LinearCode, dual_min_distance_upto, weight_distribution
from .subfield import expand_subfield, subfield_code, trace_code
from .verify import TheoremId, probe_conjecture, run_verification

_THEOREMS = [t.value for t in TheoremId if not t.is_conjecture]
_CONJECTURES = [t.value for t in TheoremId if t.is_conjecture]


def _emit(obj: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        out.write("key,value\n")
        for key, value in _flatten(obj):
            out.write(f"{key},{value}\n")
    else:
        for key, value in _flatten(obj):
            out.write(f"{key} = {value}\n")


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, (list, tuple)):
        yield prefix.rstrip("."), ";".join(str(v) for v in obj)
    else:
        yield prefix.rstrip("."), obj


def _progress(quiet: bool):
    if quiet:
        return None
    start = time.monotonic()

    def report(done, total):
        sys.stderr.write(f"... {done}/{total} codewords "
                         f"({time.monotonic() - start:.0f}s)\n")
        sys.stderr.flush()

    return report


def _field(args):
    cache_dir = getattr(args, "cache_dir", None) or os.environ.get("SFC_CACHE_DIR")
    return cached_field(args.p, args.m, cache_dir=cache_dir)


def _add_common(sub, with_f=True, p_default=None):
    sub.add_argument("--p", type=int, default=p_default,
                     required=p_default is None, help="characteristic")
    sub.add_argument("--m", type=int, required=True, help="extension degree")
    if with_f:
        sub.add_argument("--f", required=True, help="polynomial spec, e.g. "
                         "const1, mono:3, translation:1, segre, payne")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sfc", description=__doc__)
    ap.add_argument("--format", choices=("text", "json", "csv"), default="json")
    ap.add_argument("--quiet", action="store_true",
                    help="suppress progress lines on stderr")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="enumeration budget in codewords")
    ap.add_argument("--jobs", type=int, default=1,
                    help="worker hint for enumeration partitioning; results "
                         "are identical for every value")
    ap.add_argument("--cache-dir", default=None,
                    help="field-table cache directory (or SFC_CACHE_DIR)")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("field", help="build a field, print its description")
    _add_common(s, with_f=False)
    s.add_argument("--save", help="write the table cache file here")
    s.add_argument("--load", help="read the field from this cache file")

    s = sub.add_parser("code", help="parameters/weights of the subfield code "
                                    "(or the base MDS code with --q-ary)")
    _add_common(s)
    s.add_argument("--q-ary", action="store_true",
                   help="operate on the length-(q+1) code over GF(q) itself")
    s.add_argument("--weights", action="store_true")
    s.add_argument("--dual-upto", type=int, default=0, metavar="T",
                   help="also search dual codewords of weight <= T (<= 4)")

    s = sub.add_parser("mds-check", help="check the two generator conditions")
    _add_common(s)

    s = sub.add_parser("oval-check", help="permutation + slope test (p = 2)")
    s.add_argument("--m", type=int, required=True)
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--f", help="polynomial spec")
    group.add_argument("--family", help="catalog family name")
    s.add_argument("--param", help="family parameter (h, a-log or beta-log)")

    s = sub.add_parser("subfield", help="expansion/trace construction checks")
    _add_common(s)
    s.add_argument("--route", choices=("expand", "trace", "compare"),
                   default="compare")
    s.add_argument("--a-domain", type=int, default=None,
                   help="restrict a to the embedded GF(p^l) in the trace route")

    s = sub.add_parser("charsum", help="character sums against closed forms")
    cs = s.add_subparsers(dest="kind", required=True)
    g = cs.add_parser("gauss")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--j", type=int, default=None,
                   help="character index (default: the quadratic one)")
    w = cs.add_parser("weil")
    w.add_argument("--p", type=int, required=True)
    w.add_argument("--m", type=int, required=True)
    w.add_argument("--a2", type=int, required=True)
    w.add_argument("--a1", type=int, required=True)
    w.add_argument("--a0", type=int, required=True)
    w.add_argument("--b", type=int, default=1)
    c = cs.add_parser("carlitz")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--b", type=int, required=True)
    n = cs.add_parser("counts")
    n.add_argument("--lemma", required=True, choices=("6.2", "6.3", "6.5", "6.6"))
    n.add_argument("--p", type=int, required=True)
    n.add_argument("--param", type=int, required=True,
                   help="l for 6.2/6.3, m for 6.5/6.6")

    s = sub.add_parser("verify", help="run a registry claim end to end")
    s.add_argument("--theorem", required=True, choices=_THEOREMS)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--m", type=int, required=True,
                   help="extension degree (l for thm6_4)")

    s = sub.add_parser("probe", help="measure a conjectured family")
    s.add_argument("--conjecture", required=True, choices=_CONJECTURES)
    s.add_argument("--m", type=int, required=True)
    return ap


def _cmd_field(args) -> int:
    if args.load:
        f = load_tables(args.load, p=args.p, m=args.m)
    else:
        f = _field(args)
    if args.save:
        f.save_tables(args.save)
    _emit({"p": f.p, "m": f.m, "q": f.q, "modulus": list(f.modulus),
           "alpha": f.alpha}, args.format)
    return 0


def _cmd_code(args) -> int:
    field = _field(args)
    f = parse_poly(field, args.f, validate=False)
    code = LinearCode(build_G(f)) if args.q_ary else subfield_code(f)
    out: dict = {"f": f.name, "p": field.p, "q": code.field.q,
                 "n": code.n, "k": code.rank}
    if args.weights:
        wd = weight_distribution(code, budget=args.budget,
                                 progress=_progress(args.quiet))
        out = wd.to_json_dict()
    if args.dual_upto:
        d, witness = dual_min_distance_upto(code, min(args.dual_upto, 4))
        out["dual_d"] = d if d is not None else f"> {min(args.dual_upto, 4)}"
        out["dual_witness"] = list(witness) if witness else None
    _emit(out, args.format)
    return 0


def _cmd_mds_check(args) -> int:
    field = _field(args)
    f = parse_poly(field, args.f, validate=False)
    w = mds_conditions(f)
    _emit({"f": f.name, "q": field.q, "passed": w.passed,
           "violation": None if w.passed else
           {"kind": w.kind, "x": w.x, "y": w.y}}, args.format)
    return 0 if w.passed else 1


def _cmd_oval_check(args) -> int:
    field = make_field(2, args.m)
    spec = args.f
    if spec is None:
        spec = args.family + (f":{args.param}" if args.param else "")
    # parameterised families search for a valid parameter themselves
    validate = spec.startswith(("subiaco", "adelaide"))
    f = parse_poly(field, spec, validate=validate)
    res = oval_check(f)
    _emit({"f": f.name, "q": field.q, "is_oval": res.is_oval,
           "normalized": res.normalized,
           "experimental": f.experimental,
           "notes": list(f.notes),
           "witness": list(res.witness) if res.witness else None}, args.format)
    return 0 if res.is_oval else 1


def _cmd_subfield(args) -> int:
    field = _field(args)
    f = parse_poly(field, args.f, validate=False)
    if args.route == "expand":
        code = subfield_code(f)
        _emit({"f": f.name, "route": "expand", "n": code.n, "k": code.rank},
              args.format)
        return 0
    if args.route == "trace":
        code = trace_code(f, a_domain=args.a_domain)
        _emit({"f": f.name, "route": "trace", "n": code.n, "k": code.rank},
              args.format)
        return 0
    ex = expand_subfield(build_G(f))
    tr = trace_code(f, a_domain=args.a_domain)
    same = ex.rank == tr.rank and _same_code_set(ex, tr, args.budget)
    _emit({"f": f.name, "route": "compare", "n": ex.n,
           "k_expand": ex.rank, "k_trace": tr.rank, "equal": same}, args.format)
    return 0 if same else 1


def _same_code_set(a, b, budget) -> bool:
    size = a.field.q ** a.rank
    if size > budget:
        raise errors.BudgetExceeded(size, budget)
    from itertools import product

    import numpy as np

    def materialise(code):
        f = code.field
        rows = code.basis
        out = set()
        for info in product(range(f.q), repeat=code.rank):
            w = np.zeros(code.n, dtype=np.int64)
            for c, row in zip(info, rows):
                if c:
                    w = f.vadd(w, f.vmul_scalar(row, c))
            out.add(tuple(int(v) for v in w))
        return out

    return materialise(a) == materialise(b)


def _cmd_charsum(args) -> int:
    if args.kind == "gauss":
        field = make_field(args.p, args.m)
        j = args.j if args.j is not None else (field.q - 1) // 2
        numeric = charsums.gauss_sum(field, j)
        out = {"p": args.p, "m": args.m, "j": j,
               "numeric": [numeric.real, numeric.imag]}
        if args.p != 2 and j == (field.q - 1) // 2:
            closed = charsums.quad_gauss_closed(args.p, args.m)
            out["closed"] = [closed.real, closed.imag]
            out["abs_error"] = abs(numeric - closed)
            out["match"] = abs(numeric - closed) <= charsums.TOL
        _emit(out, args.format)
        return 0 if out.get("match", True) else 1
    if args.kind == "weil":
        field = make_field(args.p, args.m)
        res = charsums.weil_quadratic(field, args.a2, args.a1, args.a0, b=args.b)
        _emit({"numeric": [res.numeric.real, res.numeric.imag],
               "closed": [res.closed.real, res.closed.imag],
               "abs_error": res.error, "match": res.matches()}, args.format)
        return 0 if res.matches() else 1
    if args.kind == "carlitz":
        field = make_field(2, args.m)
        s = charsums.carlitz_S(field, args.a, args.b)
        out = {"m": args.m, "a": args.a, "b": args.b, "S": s}
        if args.a and args.b:
            out["predicted_zero"] = charsums.carlitz_zero_iff(field, args.a, args.b)
        _emit(out, args.format)
        return 0
    res = charsums.count_oracle(args.lemma, args.p, args.param,
                                budget=args.budget)
    _emit(res.to_json_dict(), args.format)
    return 0 if res.match else 1


def _cmd_verify(args) -> int:
    report = run_verification(TheoremId(args.theorem), args.p, args.m,
                              budget=args.budget,
                              progress=_progress(args.quiet))
    _emit(report.to_json_dict(), args.format)
    return 0 if report.passed else 1


def _cmd_probe(args) -> int:
    report = probe_conjecture(TheoremId(args.conjecture), args.m,
                              budget=args.budget,
                              progress=_progress(args.quiet))
    _emit(report.to_json_dict(), args.format)
    return 0


_DISPATCH = {
    "field": _cmd_field,
    "code": _cmd_code,
    "mds-check": _cmd_mds_check,
    "oval-check": _cmd_oval_check,
    "subfield": _cmd_subfield,
    "charsum": _cmd_charsum,
    "verify": _cmd_verify,
    "probe": _cmd_probe,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (errors.NotApplicable, errors.BudgetExceeded, errors.FieldTooLarge,
            errors.NotADivisor) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (errors.Error, ValueError, ZeroDivisionError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
