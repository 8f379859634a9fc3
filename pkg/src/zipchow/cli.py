"""Command-line front end: stratum tables, single-class reports, and
the verification suites.

Exit codes: 0 success; 1 invalid arguments (including an element
outside the transversal, with the corrected representative printed);
2 a requested row has no supported closed form for its multiplicity
(the row is annotated and the rest is emitted); 3 a verification
check failed (details on stderr).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from zipchow.chowpipeline import (
    CycleReport,
    build_coinvariant_model,
    cycle_classes,
    stratum_class,
)
from zipchow.coeffpoly import MultiPoly, NotDivisible, ParamPoly
from zipchow.presets import PRESET_SIGNATURES, PresetSpec, build_preset
from zipchow.rationals import rational_to_string
from zipchow.rootweyl import WeylElt, element_from_string
from zipchow.verify import SUITES, run_suites
from zipchow.zipdatum import NotInIW, ZipDatum

__all__ = ["main", "PresetSpec"]


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the documented code is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _numeric_list(text: str) -> tuple[int, ...]:
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            value = int(token)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {token!r}")
        if value < 2:
            raise argparse.ArgumentTypeError(f"numeric p must be at least 2, got {value}")
        values.append(value)
    if not values:
        raise argparse.ArgumentTypeError("empty numeric-p list")
    return tuple(values)


def build_parser() -> _Parser:
    parser = _Parser(prog="zipchow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: _Parser, formats: Sequence[str], default_format: str) -> None:
        p.add_argument(
            "--numeric-p",
            type=_numeric_list,
            default=(),
            metavar="P1,P2,...",
            help="comma-separated primes for numeric expansions",
        )
        p.add_argument("--format", choices=formats, default=default_format)
        p.add_argument("--out", metavar="FILE", help="write output to FILE")
        p.add_argument("--seed", type=int, default=0)

    table = sub.add_parser("table", help="all stratum classes of a preset")
    table.add_argument("preset", choices=sorted(PRESET_SIGNATURES))
    table.add_argument("params", type=int, nargs="*")
    common(table, ("text", "json", "latex"), "text")
    table.set_defaults(func=cmd_table)

    cls = sub.add_parser("class", help="one stratum class")
    cls.add_argument("preset", choices=sorted(PRESET_SIGNATURES))
    cls.add_argument("params", type=int, nargs="*")
    cls.add_argument(
        "--element",
        required=True,
        help="word like s2,s1,s2 (or e), a length,index pair, or [signed images]",
    )
    common(cls, ("text", "json", "latex"), "text")
    cls.set_defaults(func=cmd_class)

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument(
        "--suite",
        choices=("all",) + tuple(sorted(SUITES)),
        default="all",
    )
    common(ver, ("json", "text"), "json")
    ver.set_defaults(func=cmd_verify)
    return parser


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def factored_scalar(pp: ParamPoly) -> str:
    """Render a p-polynomial, pulling out (p-1) and (p+1) powers when
    the remainder is a single monomial in p (matches the closed forms
    the multiplicities take)."""
    if pp.is_zero():
        return "0"
    factors: list[tuple[str, int]] = []
    rest = pp
    for label, base in (("p-1", ParamPoly.p() - 1), ("p+1", ParamPoly.p() + 1)):
        count = 0
        while rest.degree() >= 1:
            try:
                rest = rest.divide_exact(base)
            except NotDivisible:
                break
            count += 1
        if count:
            factors.append((label, count))
    if not factors:
        return pp.render()
    if len(rest.coeffs) != 1:
        return pp.render()
    ((k, c),) = rest.coeffs.items()
    pieces = []
    if k:
        pieces.append("p" if k == 1 else f"p^{k}")
    for label, count in factors:
        pieces.append(f"({label})" + (f"^{count}" if count > 1 else ""))
    if c == 1 and not k and len(factors) == 1 and factors[0][1] == 1:
        return factors[0][0]
    body = "*".join(pieces)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return rational_to_string(c) + "*" + body


def poly_display(f: MultiPoly) -> str:
    """Canonical rendering, with constant-in-x classes factored."""
    if f.is_zero():
        return "0"
    if f.homogeneous_degree() == 0:
        ((_, pp),) = f.coeff_map().items()
        return factored_scalar(pp)
    return f.render()


_LATEX_STEPS = (
    (re.compile(r"\^(\d+)"), r"^{\1}"),
    (re.compile(r"x(\d+)_(\d+)\^(\{\d+\})"), r"\\bigl(x_{\1}^{(\2)}\\bigr)^\3"),
    (re.compile(r"x(\d+)_(\d+)"), r"x_{\1}^{(\2)}"),
    (re.compile(r"x(\d+)"), r"x_{\1}"),
    (re.compile(r"y(\d+)_(\d+)"), r"y_{\1}^{(\2)}"),
    (re.compile(r"y(\d+)"), r"y_{\1}"),
    (re.compile(r"\*"), r" "),
)


def latex_poly(text: str) -> str:
    for pattern, repl in _LATEX_STEPS:
        text = pattern.sub(repl, text)
    return text


def _latex_word(w: WeylElt) -> str:
    word = w.word_string()
    if word == "e":
        return "e"
    return " ".join("s_{" + tok[1:] + "}" for tok in word.split(","))


def _expansion_map(model, report: CycleReport) -> dict[str, str]:
    coeffs = model.basis_expand(model.numeric_class(report.w))
    return {
        v.word_string(): rational_to_string(c)
        for v, c in sorted(coeffs.items(), key=lambda kv: kv[0].reduced_word())
    }


def _report_expansions(
    Z: ZipDatum, reports: Sequence[CycleReport], primes: Sequence[int]
) -> dict[int, dict[str, dict[str, str]]]:
    """For each prime: word -> stratum expansion of that row's class."""
    out: dict[int, dict[str, dict[str, str]]] = {}
    for p0 in primes:
        model = build_coinvariant_model(Z, p0)
        per: dict[str, dict[str, str]] = {}
        for report in reports:
            if report.zip_class is None:
                continue
            per[report.w.word_string()] = _expansion_map(model, report)
        out[p0] = per
    return out


def _preset_header(name: str, params: Sequence[int], Z: ZipDatum) -> list[str]:
    key = name + ":" + ",".join(str(v) for v in params)
    subset = "{" + ",".join(f"s{s}" for s in sorted(Z.I)) + "}"
    circ = "{" + ",".join(f"s{s}" for s in sorted(Z.I_circ)) + "}"
    return [
        f"preset {key}  mu={Z.mu}",
        f"d={Z.d}  I={subset}  I_circ={circ}  z={Z.z.images_string()}",
    ]


def _table_text(
    name: str,
    params: Sequence[int],
    Z: ZipDatum,
    reports: Sequence[CycleReport],
    expansions: dict[int, dict[str, dict[str, str]]],
) -> str:
    headers = ["w", "length", "gamma", "flag_class", "zip_class"]
    rows = []
    for rep in reports:
        if rep.error is not None:
            gamma = "unsupported"
            zclass = rep.error
        else:
            gamma = factored_scalar(rep.gamma)
            zclass = poly_display(rep.zip_class)
        rows.append(
            [
                rep.w.word_string(),
                str(rep.length),
                gamma,
                rep.flag_class.render(),
                zclass,
            ]
        )
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    lines = ["# " + line for line in _preset_header(name, params, Z)]
    lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip())
    for r in rows:
        lines.append("  ".join(r[i].ljust(widths[i]) for i in range(len(r))).rstrip())
    for p0, per in expansions.items():
        lines.append("")
        lines.append(f"# expansions at p={p0}")
        for word, coeffs in per.items():
            body = ", ".join(f"{v}: {c}" for v, c in coeffs.items())
            lines.append(f"{word}  ->  {body}")
    return "\n".join(lines)


def _table_latex(
    name: str,
    params: Sequence[int],
    Z: ZipDatum,
    reports: Sequence[CycleReport],
    expansions: dict[int, dict[str, dict[str, str]]],
) -> str:
    lines = ["% " + line for line in _preset_header(name, params, Z)]
    lines.append(r"\begin{tabular}{clccc}")
    lines.append(
        r"w & \ell(w) & \gamma(w) & [\bar{Z}^{\varnothing}_w] & [\bar{Z}_w] \\"
    )
    lines.append(r"\hline")
    for rep in reports:
        word = _latex_word(rep.w)
        if rep.error is not None:
            gamma = r"\text{unsupported}"
            zclass = r"\text{" + rep.error + "}"
        else:
            gamma = "$" + latex_poly(factored_scalar(rep.gamma)) + "$"
            zclass = "$" + latex_poly(poly_display(rep.zip_class)) + "$"
        flag = "$" + latex_poly(rep.flag_class.render()) + "$"
        lines.append(
            f"${word}$ & {rep.length} & {gamma} & {flag} & {zclass} " + r"\\"
        )
    lines.append(r"\end{tabular}")
    for p0, per in expansions.items():
        lines.append(f"% expansions at p={p0}")
        for word, coeffs in per.items():
            body = ", ".join(f"{v}: {c}" for v, c in coeffs.items())
            lines.append(f"% {word} -> {body}")
    return "\n".join(lines)


def _table_json(
    name: str,
    params: Sequence[int],
    Z: ZipDatum,
    reports: Sequence[CycleReport],
    expansions: dict[int, dict[str, dict[str, str]]],
) -> str:
    rows = []
    for rep in reports:
        word = rep.w.word_string()
        per = {
            p0: exp[word] for p0, exp in expansions.items() if word in exp
        }
        rows.append(rep.to_json(per if per else None))
    data = {
        "preset": name,
        "params": list(params),
        "mu": list(Z.mu),
        "d": Z.d,
        "I": [f"s{s}" for s in sorted(Z.I)],
        "I_circ": [f"s{s}" for s in sorted(Z.I_circ)],
        "z": Z.z.images_string(),
        "rows": rows,
    }
    return json.dumps(data, indent=2)


def cmd_table(args) -> int:
    try:
        Z = build_preset(args.preset, tuple(args.params))
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    reports = cycle_classes(Z)
    expansions = (
        _report_expansions(Z, reports, args.numeric_p) if args.numeric_p else {}
    )
    if args.format == "json":
        text = _table_json(args.preset, args.params, Z, reports, expansions)
    elif args.format == "latex":
        text = _table_latex(args.preset, args.params, Z, reports, expansions)
    else:
        text = _table_text(args.preset, args.params, Z, reports, expansions)
    _emit(text, args.out)
    return 2 if any(rep.error is not None for rep in reports) else 0


def _resolve_element(Z: ZipDatum, text: str) -> WeylElt:
    pair = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", text)
    if pair:
        return Z.element_by_length_index(int(pair.group(1)), int(pair.group(2)))
    return element_from_string(Z.datum, text)


def cmd_class(args) -> int:
    try:
        Z = build_preset(args.preset, tuple(args.params))
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    try:
        w = _resolve_element(Z, args.element)
        Z.require_min_rep(w)
    except NotInIW as exc:
        sys.stderr.write(
            f"error: {exc}\n"
        )
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    report = stratum_class(Z, w)
    expansions = (
        _report_expansions(Z, [report], args.numeric_p) if args.numeric_p else {}
    )
    per = {
        p0: exp[report.w.word_string()]
        for p0, exp in expansions.items()
        if report.w.word_string() in exp
    }
    if args.format == "json":
        data = report.to_json(per if per else None)
        data["preset"] = args.preset
        data["params"] = list(args.params)
        text = json.dumps(data, indent=2)
    elif args.format == "latex":
        text = _table_latex(args.preset, args.params, Z, [report], expansions)
    else:
        lines = ["# " + line for line in _preset_header(args.preset, args.params, Z)]
        lines.append(f"w: {report.w.word_string()}")
        lines.append(f"length: {report.length}")
        lines.append(f"degree: {report.degree}")
        if report.error is not None:
            lines.append(f"error: {report.error}")
        else:
            lines.append(f"gamma: {factored_scalar(report.gamma)}")
            lines.append(f"zip_class: {poly_display(report.zip_class)}")
        lines.append(f"flag_class: {report.flag_class.render()}")
        for p0, exp in per.items():
            body = ", ".join(f"{v}: {c}" for v, c in exp.items())
            lines.append(f"expansion at p={p0}: {body}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 2 if report.error is not None else 0


def cmd_verify(args) -> int:
    primes = tuple(args.numeric_p) if args.numeric_p else None
    results = run_suites(args.suite, seed=args.seed, primes=primes)
    failed = [r for r in results if not r.ok]
    if args.format == "text":
        lines = [
            (f"PASS {r.name}" if r.ok else f"FAIL {r.name}: {r.detail}")
            + (f"  [{r.detail}]" if r.ok and r.detail else "")
            for r in results
        ]
        lines.append(f"{len(results) - len(failed)} passed, {len(failed)} failed")
        text = "\n".join(lines)
    else:
        data = {
            "suite": args.suite,
            "seed": args.seed,
            "numeric_p": list(primes) if primes else None,
            "passed": len(results) - len(failed),
            "failed": len(failed),
            "checks": [
                {"name": r.name, "ok": r.ok, "detail": r.detail} for r in results
            ],
        }
        text = json.dumps(data, indent=2)
    _emit(text, args.out)
    if failed:
        for r in failed:
            sys.stderr.write(f"FAIL {r.name}: {r.detail}\n")
        return 3
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
