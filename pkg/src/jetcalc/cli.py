"""jetcalc: Euler-Lagrange systems, projectability and hyperaffine Lagrangians.

Exit codes: 0 success, 1 a checked property is false, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .corpus import UNKNOWN, builtin_wedge, corpus
from .diffpoly import DiffPoly
from .errors import JetcalcError, NotDecomposableError, ParseError, PreconditionError
from .hyperaffine import hyperaffine_lagrangian, parse_hyperform_spec
from .quaddecomp import decompose_quadratic
from .textio import ProblemHeader, parse_problem
from .varcalc import euler_lagrange, symbol_violations

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_problem(args) -> tuple[ProblemHeader, DiffPoly]:
    overrides = {"m": args.m, "n": args.n, "vars": args.vars, "base": args.base}
    return parse_problem(_read(args.file), overrides)


def _order_text(o) -> str:
    return "none" if o is None else str(o)


def _emit(args, lines: list[str], payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_el(args) -> int:
    header, L = _load_problem(args)
    el = euler_lagrange(L)
    comps = {name: c.format(header.names) for name, c in zip(header.dependent, el.components)}
    lines = [f"epsilon[{name}] = {text}" for name, text in comps.items()]
    lines.append(f"order = {_order_text(el.system_order)}")
    _emit(args, lines, {
        "command": "el",
        "components": comps,
        "source_order": el.source_order,
        "system_order": el.system_order,
    })
    return EXIT_OK


def cmd_order(args) -> int:
    header, L = _load_problem(args)
    k = L.order()
    top = L.top_degree(k) if k is not None else 0
    _emit(args, [f"order = {_order_text(k)}", f"top_degree = {top}"],
          {"command": "order", "order": k, "top_degree": top})
    return EXIT_OK


def cmd_check_projectable(args) -> int:
    header, L = _load_problem(args)
    k = L.order()
    if k is None or k < 1:
        raise PreconditionError("check-projectable needs a Lagrangian of order k >= 1")
    el = euler_lagrange(L)
    verdict = el.is_projectable
    if el.is_zero:
        reason = "EL vanishes identically"
    elif verdict:
        reason = f"EL order {_order_text(el.system_order)} < {2 * k}"
    else:
        reason = f"EL order {el.system_order}, not < {2 * k}"
    lines = [f"projectable: {str(verdict).lower()} ({reason})"]
    payload = {
        "command": "check-projectable",
        "order": k,
        "system_order": el.system_order,
        "projectable": verdict,
    }
    ok = verdict
    if args.via_symbol:
        first = next(symbol_violations(L), None)
        symbol = first is None
        if symbol:
            lines.append("symbol condition: true")
        else:
            H, a, b, entry = first
            lines.append(
                f"symbol condition: false (H = {H}, entry ({header.dependent[a - 1]},"
                f"{header.dependent[b - 1]}) = {entry.format(header.names)})"
            )
        agree = symbol == verdict
        lines.append(f"agreement: {str(agree).lower()}")
        payload["symbol_condition"] = symbol
        payload["agreement"] = agree
        ok = ok and agree
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_gen(args) -> int:
    spec = parse_hyperform_spec(_read(args.file))
    L = hyperaffine_lagrangian(spec.terms)
    text = L.format(spec.header.names)
    _emit(args, [spec.header.format(), text], {
        "command": "gen",
        "header": spec.header.format(),
        "lagrangian": text,
        "order": L.order(),
    })
    return EXIT_OK


def cmd_decompose(args) -> int:
    header, L = _load_problem(args)
    names = header.names
    try:
        ds = decompose_quadratic(L)
    except NotDecomposableError as exc:
        a1, a2 = exc.alphas
        msg = (f"not decomposable: symbol condition fails at H = {exc.H} "
               f"for ({header.dependent[a1 - 1]},{header.dependent[a2 - 1]})")
        _emit(args, [msg], {"command": "decompose-quadratic", "decomposable": False,
                            "H": list(exc.H), "alphas": [header.dependent[a1 - 1], header.dependent[a2 - 1]]})
        return EXIT_FALSE
    lines = [f"quadratic part = {ds.quadratic_part.format(names)}", f"determinants = {len(ds)}"]
    entries = []
    for number, t in enumerate(ds, start=1):
        alphas = ",".join(header.dependent[a - 1] for a in t.alphas)
        coeff = t.coefficient.format(names)
        det = t.determinant(header.n).format(names)
        lines.append(f"det {number}: coefficient = {coeff}")
        lines.append(f"  alphas = {alphas}  q = {t.q}  I1 = {t.I1}  I2 = {t.I2}  J1 = {t.J1}  J2 = {t.J2}")
        lines.append(f"  determinant = {det}")
        entries.append({"coefficient": coeff, "alphas": alphas.split(","), "q": t.q,
                        "I1": list(t.I1), "I2": list(t.I2), "J1": list(t.J1), "J2": list(t.J2),
                        "determinant": det})
    expanded_ok = ds.expand() == ds.quadratic_part
    lines.append(f"round trip: {str(expanded_ok).lower()}")
    _emit(args, lines, {"command": "decompose-quadratic", "decomposable": True,
                        "quadratic_part": ds.quadratic_part.format(names),
                        "determinants": entries, "round_trip": expanded_ok})
    return EXIT_OK if expanded_ok else EXIT_FALSE


def cmd_verify_builtin(args) -> int:
    lines, results, all_ok = [], [], True
    for b in corpus():
        el = euler_lagrange(b.poly)
        order = b.poly.order()
        top = b.poly.top_degree(b.k)
        wedge_ok = hyperaffine_lagrangian(builtin_wedge(b.name)) == b.poly
        checks = {
            "order": order == b.k,
            "el_order": b.el_order == UNKNOWN or el.system_order == b.el_order,
            "projectable": el.is_projectable == b.projectable,
            "top_degree": top == b.top_degree,
            "wedge": wedge_ok,
        }
        ok = all(checks.values())
        all_ok = all_ok and ok
        failed = [name for name, good in checks.items() if not good]
        lines.append(
            f"{b.name}: m={b.m} n={b.n} k={b.k} EL order {_order_text(el.system_order)}"
            f" top_degree {top} projectable {str(el.is_projectable).lower()}"
            f" wedge {'ok' if wedge_ok else 'mismatch'}"
            f" ... {'ok' if ok else 'FAIL ' + ','.join(failed)}"
        )
        results.append({"name": b.name, "m": b.m, "n": b.n, "k": b.k,
                        "system_order": el.system_order, "top_degree": top,
                        "projectable": el.is_projectable, "ok": ok, "failed": failed})
    lines.append(f"{sum(r['ok'] for r in results)}/{len(results)} builtins verified")
    _emit(args, lines, {"command": "verify-builtin", "results": results, "ok": all_ok})
    return EXIT_OK if all_ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jetcalc", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def problem_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="problem file ('-' for stdin)")
        p.add_argument("--m", help="override the header's m")
        p.add_argument("--n", help="override the header's n")
        p.add_argument("--vars", help="override dependent names, comma separated")
        p.add_argument("--base", help="override base names, comma separated")
        p.set_defaults(func=func)
        return p

    problem_cmd("el", cmd_el, "print the Euler-Lagrange system and its order")
    problem_cmd("order", cmd_order, "print the order and the top-order degree")
    p = problem_cmd("check-projectable", cmd_check_projectable, "decide projectability")
    p.add_argument("--via-symbol", action="store_true", help="also check the symbol condition and cross-check")
    p = sub.add_parser("gen", help="expand a hyperform specification into a Lagrangian")
    p.add_argument("file")
    p.set_defaults(func=cmd_gen)
    problem_cmd("decompose-quadratic", cmd_decompose, "write the quadratic part as 2x2 determinants")
    p = sub.add_parser("verify-builtin", help="check the builtin examples")
    p.set_defaults(func=cmd_verify_builtin)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (JetcalcError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
