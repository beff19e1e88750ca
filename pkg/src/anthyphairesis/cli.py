"""Command line front end.

Reports go to stdout, diagnostics to stderr, and nothing is written to
disk.  Exit codes: 0 success, 1 bad input or an unusable request, 2
verification failure (a suite found counterexamples or an internal
invariant broke), 3 indeterminate (a step budget ran out before an
answer was reached).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .engine import (
    DEFECT,
    EXCESS,
    ContinuedFraction,
    QuadraticForm,
    convergents,
    euclid_cf,
    minimal_form,
    remainder,
    run_anthyphairesis,
    state_space_size,
    surd_cf,
)
from .errors import DomainError, IndeterminateError, InternalInvariantError
from .exactarith import QuadSurd, as_surd, is_perfect_square
from .properties import run_suite
from .ratios import (
    Magnitude,
    anth_of_ratio,
    commensurable_pure,
    cross_product_eq,
    line,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_UNDECIDED = 3


# -- serialization helpers ----------------------------------------------------
# All integers are rendered as decimal strings so JSON output is exact
# and byte-stable regardless of magnitude.


def _s(n: int) -> str:
    return str(n)


def _cf_json(cf: ContinuedFraction) -> dict[str, Any]:
    return {
        "preperiod": [_s(k) for k in cf.preperiod],
        "period": None if cf.period is None else [_s(k) for k in cf.period],
        "truncated": cf.truncated,
    }


def _form_json(form: QuadraticForm) -> dict[str, Any]:
    kind = form.kind
    if form.smaller_root:
        kind = "defect-"
    return {
        "kind": kind,
        "A": _s(form.A),
        "B": _s(form.B),
        "C": _s(form.C),
        "disc": _s(form.disc),
    }


def _surd_json(x: QuadSurd) -> dict[str, str]:
    return {"u": _s(x.u), "v": _s(x.v), "w": _s(x.w), "D": _s(x.d)}


def _emit(args: argparse.Namespace, command: str, input_obj: Any, result: Any,
          lines: list[str]) -> None:
    if getattr(args, "json", False):
        envelope = {
            "command": command,
            "input": input_obj,
            "result": result,
            "version": __version__,
        }
        print(json.dumps(envelope, indent=2, sort_keys=True))
    else:
        for ln in lines:
            print(ln)


def _kv(key: str, value: Any) -> str:
    return "%-10s : %s" % (key, value)


def _bracketed(seq) -> str:
    return "[%s]" % ", ".join(str(k) for k in seq)


def _rem_expr(n: int, p: int, q: int) -> str:
    """Symbolic remainder (-1)^n * (q*b - p*a) for row n."""

    def term(coef: int, sym: str) -> str:
        return sym if coef == 1 else "%d*%s" % (coef, sym)

    if n % 2 == 0:
        if p == 0:
            return term(q, "b")
        return "%s - %s" % (term(q, "b"), term(p, "a"))
    return "%s - %s" % (term(p, "a"), term(q, "b"))


def _surd_display(x: QuadSurd) -> str:
    if x.is_rational:
        return str(x)
    return "%s ~ %s" % (x, x.decimal())


# -- anth ---------------------------------------------------------------------


def _run_form(args: argparse.Namespace, command: str, input_obj: Any,
              form: QuadraticForm) -> int:
    cf, trace = run_anthyphairesis(form, args.max_steps)
    result = {
        "kind": _form_json(form)["kind"],
        "A": _s(form.A),
        "B": _s(form.B),
        "C": _s(form.C),
        "disc": _s(form.disc),
        "quotients": [_s(k) for k in trace.quotients],
        "states": [_form_json(st) for st in trace.states],
        **_cf_json(cf),
    }
    if is_perfect_square(form.disc):
        root_text = str(form.root_fraction())
    else:
        root_text = _surd_display(form.root())
    lines = [
        _kv("form", form),
        _kv("disc", form.disc),
        _kv("root", root_text),
        _kv("expansion", cf),
        _kv("preperiod", _bracketed(cf.preperiod)),
        _kv("period", "-" if cf.period is None else _bracketed(cf.period)),
        _kv("truncated", "yes" if cf.truncated else "no"),
        _kv("steps", len(trace.quotients)),
    ]
    if args.trace:
        lines.append("trace      :")
        for t, st in enumerate(trace.states):
            note = ""
            if t < len(trace.quotients):
                note = "  k=%d" % trace.quotients[t]
            if trace.repeat_at is not None and t == trace.repeat_at[1]:
                note += "  (repeat of t=%d)" % trace.repeat_at[0]
            lines.append("  t=%-4d %s%s" % (t, st, note))
        if cf.truncated:
            lines.append("  step budget exhausted")
    _emit(args, command, input_obj, result, lines)
    return EXIT_UNDECIDED if cf.truncated else EXIT_OK


def _run_plain_cf(args: argparse.Namespace, command: str, input_obj: Any,
                  kind: str, head_line: str, cf: ContinuedFraction) -> int:
    result = {"kind": kind, **_cf_json(cf)}
    lines = [
        head_line,
        _kv("expansion", cf),
        _kv("truncated", "yes" if cf.truncated else "no"),
    ]
    _emit(args, command, input_obj, result, lines)
    return EXIT_UNDECIDED if cf.truncated else EXIT_OK


def _cmd_anth(args: argparse.Namespace) -> int:
    if args.mode == "form":
        kind = EXCESS if args.kind == "excess" else DEFECT
        form = QuadraticForm(kind, args.A, args.B, args.C)
        input_obj = {"kind": args.kind, "A": _s(args.A), "B": _s(args.B), "C": _s(args.C)}
        return _run_form(args, "anth form", input_obj, form)

    if args.mode == "sqrt":
        form = QuadraticForm(EXCESS, 1, 0, args.N)
        return _run_form(args, "anth sqrt", {"radicand": _s(args.N)}, form)

    if args.mode == "rational":
        cf = euclid_cf(args.M, args.N)
        input_obj = {"M": _s(args.M), "N": _s(args.N)}
        head = _kv("ratio", "%d : %d" % (args.M, args.N))
        return _run_plain_cf(args, "anth rational", input_obj, "rational", head, cf)

    x = QuadSurd(args.U, args.V, args.W, args.D)
    if not x > 0:
        raise DomainError("anth surd: the value must be positive, got %s" % x)
    input_obj = _surd_json(x)
    if x.is_rational:
        fr = x.as_fraction()
        cf = euclid_cf(fr.numerator, fr.denominator)
        head = _kv("value", str(x))
        return _run_plain_cf(args, "anth surd", input_obj, "rational", head, cf)
    if x > 1:
        return _run_form(args, "anth surd", input_obj, minimal_form(x))
    cf = surd_cf(x, args.max_steps)
    head = _kv("value", _surd_display(x))
    return _run_plain_cf(args, "anth surd", input_obj, "surd", head, cf)


# -- convergents --------------------------------------------------------------


def _cmd_convergents(args: argparse.Namespace) -> int:
    a: Optional[QuadSurd] = None
    b: Optional[QuadSurd] = None
    expansion: Optional[ContinuedFraction] = None

    if args.quotients is not None:
        if args.source:
            raise DomainError("convergents: give either 'sqrt N' or --quotients, not both")
        try:
            qs_all = tuple(int(t) for t in args.quotients.split(","))
        except ValueError:
            raise DomainError("convergents: --quotients must be comma separated integers")
        expansion = ContinuedFraction(qs_all)  # validates the quotients
        count = args.count if args.count is not None else len(qs_all)
        if count > len(qs_all):
            raise DomainError(
                "convergents: %d quotients cannot support count %d without a period"
                % (len(qs_all), count)
            )
        qs = qs_all[:count]
        command = "convergents"
        input_obj = {"quotients": [_s(k) for k in qs_all], "count": _s(count)}
    else:
        if len(args.source) != 2 or args.source[0] != "sqrt":
            raise DomainError("convergents: expected 'sqrt N' or --quotients k0,k1,...")
        try:
            n = int(args.source[1])
        except ValueError:
            raise DomainError("convergents: N must be an integer")
        form = QuadraticForm(EXCESS, 1, 0, n)
        expansion, _ = run_anthyphairesis(form, args.max_steps)
        count = args.count if args.count is not None else 5
        qs = expansion.head(count)  # raises when a finite expansion is too short
        a, b = QuadSurd(0, 1, 1, n), as_surd(1)
        command = "convergents"
        input_obj = {"radicand": _s(n), "count": _s(count)}

    if count < 1:
        raise DomainError("convergents: count must be >= 1")
    sd = convergents(qs, count)

    rows = []
    table = []
    for i in range(count + 1):
        value: Optional[QuadSurd] = None
        if a is not None:
            try:
                value = remainder(i, a, b, sd)
            except DomainError:
                value = None  # the expansion terminated exactly at this row
        expr = _rem_expr(i, sd.p[i], sd.q[i])
        rows.append(
            {
                "n": _s(i),
                "k": None if i == 0 else _s(qs[i - 1]),
                "p": _s(sd.p[i]),
                "q": _s(sd.q[i]),
                "remainder": expr,
                "value": None if value is None else _surd_json(value),
            }
        )
        table.append(
            (
                _s(i),
                "-" if i == 0 else _s(qs[i - 1]),
                _s(sd.p[i]),
                _s(sd.q[i]),
                expr,
                "-" if value is None else str(value),
            )
        )

    lines = [_kv("expansion", expansion)]
    headers = ("n", "k", "p", "q", "remainder", "value")
    widths = [max(len(headers[c]), max(len(r[c]) for r in table)) for c in range(6)]
    fmt = "  ".join("%%-%ds" % w for w in widths)
    lines.append((fmt % headers).rstrip())
    for r in table:
        lines.append((fmt % r).rstrip())

    _emit(args, command, input_obj, {"rows": rows}, lines)
    return EXIT_OK


# -- theodorus ----------------------------------------------------------------


def _cmd_theodorus(args: argparse.Namespace) -> int:
    if args.max < 2:
        raise DomainError("theodorus: --max must be >= 2")
    rows = []
    for n in range(2, args.max + 1):
        form = QuadraticForm(EXCESS, 1, 0, n)
        cf, _ = run_anthyphairesis(form, args.max_steps)
        square = is_perfect_square(n)
        rows.append(
            {
                "n": _s(n),
                "commensurable": commensurable_pure(1, n),
                "disc": _s(form.disc),
                "state_space": None if square else _s(state_space_size(form.disc)),
                **_cf_json(cf),
            }
        )

    headers = ("N", "expansion", "period", "disc", "states", "commensurable")
    table = []
    for row in rows:
        pre = [int(k) for k in row["preperiod"]]
        per = None if row["period"] is None else [int(k) for k in row["period"]]
        cf = ContinuedFraction(tuple(pre), None if per is None else tuple(per),
                               row["truncated"])
        table.append(
            (
                row["n"],
                str(cf),
                "-" if per is None else _bracketed(per),
                row["disc"],
                "-" if row["state_space"] is None else row["state_space"],
                "yes" if row["commensurable"] else "no",
            )
        )
    widths = [max(len(headers[c]), max(len(r[c]) for r in table)) for c in range(6)]
    fmt = "  ".join("%%-%ds" % w for w in widths)
    lines = [(fmt % headers).rstrip()]
    for r in table:
        lines.append((fmt % r).rstrip())

    _emit(args, "theodorus", {"max": _s(args.max)}, {"rows": rows}, lines)
    return EXIT_OK


# -- ratio --------------------------------------------------------------------


def _parse_magnitude(text: str) -> Magnitude:
    """A magnitude literal: 'u,v,w,D' surd, 'p/q' fraction or integer."""
    try:
        if "," in text:
            parts = [int(t) for t in text.split(",")]
            if len(parts) != 4:
                raise ValueError
            return line(QuadSurd(*parts))
        if "/" in text:
            num, den = text.split("/")
            return line(Fraction(int(num), int(den)))
        return line(int(text))
    except (ValueError, ZeroDivisionError):
        raise DomainError(
            "ratio: magnitude literal %r must be 'u,v,w,D', 'p/q' or an integer" % text
        )


def _decided_cf(cf: ContinuedFraction) -> ContinuedFraction:
    if cf.truncated:
        raise IndeterminateError(
            "expansion truncated before any period appeared; raise --max-steps"
        )
    return cf


def _cmd_ratio(args: argparse.Namespace) -> int:
    if args.mode == "eq":
        a, b, c, d = (_parse_magnitude(t) for t in args.magnitudes)
        lhs = _decided_cf(anth_of_ratio(a, b, args.max_steps))
        rhs = _decided_cf(anth_of_ratio(c, d, args.max_steps))
        verdict = lhs == rhs
        input_obj = {"magnitudes": [_surd_json(m.value) for m in (a, b, c, d)]}
        result = {
            "verdict": "equal" if verdict else "unequal",
            "lhs": _cf_json(lhs),
            "rhs": _cf_json(rhs),
        }
        lines = [
            _kv("lhs", lhs),
            _kv("rhs", rhs),
            _kv("verdict", result["verdict"]),
        ]
        _emit(args, "ratio eq", input_obj, result, lines)
        return EXIT_OK

    if args.mode == "cross":
        a, b, c, d = (_parse_magnitude(t) for t in args.magnitudes)
        verdict = cross_product_eq(a, b, c, d)  # distinct fields raise here
        lhs = a.value * d.value
        rhs = b.value * c.value
        input_obj = {"magnitudes": [_surd_json(m.value) for m in (a, b, c, d)]}
        result = {
            "verdict": "equal" if verdict else "unequal",
            "lhs": _surd_json(lhs),
            "rhs": _surd_json(rhs),
        }
        lines = [
            _kv("a*d", str(lhs)),
            _kv("b*c", str(rhs)),
            _kv("verdict", result["verdict"]),
        ]
        _emit(args, "ratio cross", input_obj, result, lines)
        return EXIT_OK

    a, b = _parse_magnitude(args.A), _parse_magnitude(args.B)
    lhs = _decided_cf(anth_of_ratio(a, b, args.max_steps))
    rhs = euclid_cf(args.M, args.N)
    verdict = lhs == rhs
    input_obj = {
        "A": _surd_json(a.value),
        "B": _surd_json(b.value),
        "M": _s(args.M),
        "N": _s(args.N),
    }
    result = {
        "verdict": "equal" if verdict else "unequal",
        "lhs": _cf_json(lhs),
        "rhs": _cf_json(rhs),
    }
    lines = [
        _kv("lhs", lhs),
        _kv("rhs", rhs),
        _kv("verdict", result["verdict"]),
    ]
    _emit(args, "ratio mixed", input_obj, result, lines)
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise DomainError("verify: --trials must be >= 1")
    suites = ("engine", "ratio", "areas") if args.suite == "all" else (args.suite,)
    results = []
    for s in suites:
        results.extend(run_suite(s, args.trials, args.seed))

    failed = sum(r.failed for r in results)
    rows = [
        {
            "suite": r.suite,
            "name": r.name,
            "trials": _s(r.trials),
            "passed": _s(r.passed),
            "vacuous": _s(r.vacuous),
            "failed": _s(r.failed),
            "first_failure": r.first_failure,
        }
        for r in results
    ]
    verdict = "ok" if failed == 0 else "fail"

    lines = []
    name_w = max(len("%s/%s" % (r.suite, r.name)) for r in results)
    for r in results:
        lines.append(
            "%-*s  passed %-4d vacuous %-4d failed %d"
            % (name_w, "%s/%s" % (r.suite, r.name), r.passed, r.vacuous, r.failed)
        )
        if r.first_failure is not None:
            lines.append("%-*s    first failure: %s" % (name_w, "", r.first_failure))
    lines.append(
        "result: %s (%d properties, %d trials each, seed %d, %d failures)"
        % (verdict, len(results), args.trials, args.seed, failed)
    )

    input_obj = {"suite": args.suite, "trials": _s(args.trials), "seed": _s(args.seed)}
    result = {"verdict": verdict, "rows": rows}
    _emit(args, "verify", input_obj, result, lines)
    return EXIT_OK if failed == 0 else EXIT_FAILED


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anthyph",
        description="Exact reciprocal-subtraction expansions, proportion "
        "verdicts and seeded self checks for quadratic values.",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def common(sp: argparse.ArgumentParser, trace: bool = False) -> None:
        sp.add_argument(
            "--max-steps", type=int, default=10_000, dest="max_steps",
            help="step budget before an expansion is reported truncated",
        )
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        if trace:
            sp.add_argument(
                "--trace", action="store_true",
                help="list the visited forms step by step",
            )

    p_anth = sub.add_parser("anth", help="expand a ratio by reciprocal subtraction")
    anth_sub = p_anth.add_subparsers(dest="mode", required=True, metavar="mode")

    p_form = anth_sub.add_parser("form", help="expand the root of a quadratic form")
    p_form.add_argument("A", type=int)
    p_form.add_argument("B", type=int)
    p_form.add_argument("C", type=int)
    p_form.add_argument("--kind", choices=("excess", "defect"), required=True)
    common(p_form, trace=True)
    p_form.set_defaults(func=_cmd_anth)

    p_sqrt = anth_sub.add_parser("sqrt", help="expand sqrt(N) : 1")
    p_sqrt.add_argument("N", type=int)
    common(p_sqrt, trace=True)
    p_sqrt.set_defaults(func=_cmd_anth)

    p_rat = anth_sub.add_parser("rational", help="expand M : N by Euclidean division")
    p_rat.add_argument("M", type=int)
    p_rat.add_argument("N", type=int)
    common(p_rat)
    p_rat.set_defaults(func=_cmd_anth)

    p_surd = anth_sub.add_parser("surd", help="expand (U + V*sqrt(D))/W : 1")
    for name in ("U", "V", "W", "D"):
        p_surd.add_argument(name, type=int)
    common(p_surd, trace=True)
    p_surd.set_defaults(func=_cmd_anth)

    p_conv = sub.add_parser(
        "convergents", help="side and diameter numbers with remainders"
    )
    p_conv.add_argument(
        "source", nargs="*", metavar="sqrt N",
        help="expand sqrt(N) : 1 for the quotients and exact remainders",
    )
    p_conv.add_argument(
        "--quotients", help="comma separated quotients to use instead of a field"
    )
    p_conv.add_argument(
        "--count", type=int,
        help="rows to produce (default 5, or all given quotients)",
    )
    common(p_conv)
    p_conv.set_defaults(func=_cmd_convergents)

    p_theo = sub.add_parser("theodorus", help="survey sqrt(N) : 1 for N = 2..max")
    p_theo.add_argument("--max", type=int, default=17)
    common(p_theo)
    p_theo.set_defaults(func=_cmd_theodorus)

    p_ratio = sub.add_parser("ratio", help="proportion verdicts for magnitudes")
    ratio_sub = p_ratio.add_subparsers(dest="mode", required=True, metavar="mode")

    p_eq = ratio_sub.add_parser("eq", help="compare two ratios by expansion")
    p_eq.add_argument(
        "magnitudes", nargs=4, metavar="MAG",
        help="magnitude literal: 'u,v,w,D', 'p/q' or an integer",
    )
    common(p_eq)
    p_eq.set_defaults(func=_cmd_ratio)

    p_cross = ratio_sub.add_parser("cross", help="compare by exact cross products")
    p_cross.add_argument("magnitudes", nargs=4, metavar="MAG")
    common(p_cross)
    p_cross.set_defaults(func=_cmd_ratio)

    p_mixed = ratio_sub.add_parser(
        "mixed", help="compare a magnitude ratio with a number ratio"
    )
    p_mixed.add_argument("A")
    p_mixed.add_argument("B")
    p_mixed.add_argument("M", type=int)
    p_mixed.add_argument("N", type=int)
    common(p_mixed)
    p_mixed.set_defaults(func=_cmd_ratio)

    p_verify = sub.add_parser("verify", help="run the seeded self verification suites")
    p_verify.add_argument(
        "--suite", choices=("engine", "ratio", "areas", "all"), default="all"
    )
    p_verify.add_argument("--trials", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--json", action="store_true", help="emit a JSON report")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if exc.code is not None else 0
        return EXIT_OK if code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except IndeterminateError as exc:
        print("undecided: %s" % exc, file=sys.stderr)
        return EXIT_UNDECIDED
    except InternalInvariantError as exc:
        print("internal invariant violated: %s" % exc, file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
