"""Command-line entry point: ``linklct <subcommand> [flags]``.

Exit codes: 0 ok, 1 a verifier found a failing case, 2 usage error,
3 resource limit (step limit or variable budget).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import detlink, lct
from .detlink import FULL, SPECIALIZED, MatrixSpec
from .groebner import (
    DEFAULT_MAX_STEPS,
    Ideal,
    ResourceLimitError,
    ideal_quotient,
    reduced_gb,
)
from .polyring import (
    GREVLEX,
    LEX,
    XBLOCK,
    PolynomialParseError,
    RingDescriptor,
    format_polynomial,
    parse_polynomial,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

# Published thresholds for monomial ideals, keyed by sorted exponent vectors.
_PUBLISHED_MONOMIAL = {
    ((0, 0, 3), (2, 1, 0)): Fraction(5, 6),
    ((0, 2), (1, 1), (2, 0)): Fraction(1),
    ((0, 1, 1), (1, 0, 1), (1, 1, 0)): lct.PUBLISHED_TRIANGLE_LCT,
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# ideal input


def parse_ideal_text(text: str, variables=None, source: str = "<inline>") -> Ideal:
    """Ideal from a file body or an inline comma-separated list.

    File bodies start with ``vars: <names>`` and hold one generator per
    line; ``#`` starts a comment.  Inline text without a header needs
    ``variables``, or takes the identifiers in order of first appearance.
    """
    lines = text.splitlines()
    header_vars = None
    body = []  # (line number, text)
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"\s*vars\s*:(.*)$", line)
        if m and header_vars is None and not body:
            header_vars = m.group(1).replace(",", " ").split()
            continue
        body.append((lineno, line))
    names = header_vars or (list(variables) if variables else None)
    if names is None:
        seen = []
        for _, line in body:
            for tok in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", line):
                if tok not in seen:
                    seen.append(tok)
        names = seen
    if len(set(names)) != len(names):
        dup = sorted({v for v in names if names.count(v) > 1})
        raise UsageError(f"duplicate variable names {dup} in {source}")
    if not names:
        raise UsageError(f"no variables declared in {source}")
    ring = RingDescriptor.simple(names)
    gens = []
    multi_line = header_vars is not None or len(body) > 1
    for lineno, line in body:
        pieces = [line] if multi_line else _split_top_level(line)
        for piece in pieces:
            gens.append(parse_polynomial(piece.strip(), ring, line=lineno if multi_line else None))
    return Ideal(ring, gens)


def _split_top_level(text):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def parse_ideal_file(path_or_text, variables=None) -> Ideal:
    """Read an ideal from a path if it exists, otherwise treat the argument as text."""
    p = Path(str(path_or_text))
    if "\n" not in str(path_or_text) and p.is_file():
        return parse_ideal_text(p.read_text(encoding="utf-8"), variables, source=str(p))
    return parse_ideal_text(str(path_or_text), variables)


# ---------------------------------------------------------------------------
# report plumbing


def jsonable(obj):
    """Exact, deterministic JSON form: rationals become "p/q" strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        raise TypeError("floating-point values are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    return str(obj)


def make_report(command, inputs, result, certificates, status, timing_ms):
    inputs = jsonable(inputs)
    digest = hashlib.sha256(json.dumps(inputs, sort_keys=True).encode()).hexdigest()
    return {
        "command": command,
        "inputs": dict(inputs, digest=digest),
        "result": jsonable(result),
        "certificates": jsonable(certificates),
        "status": status,
        "timing_ms": timing_ms,
    }


def _text_lines(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_flat(v)}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _is_flat_list(v):
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {_flat(v)}"
    else:
        yield f"{pad}{_flat(obj)}"


def _is_flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _flat(v):
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict) and not v:
        return "{}"
    return str(v)


def render_text(report) -> str:
    head = f"{report['command']}  status={report['status']}"
    body = list(_text_lines({"result": report["result"], "certificates": report["certificates"]}))
    return "\n".join([head] + body)


# ---------------------------------------------------------------------------
# subcommands


def _spec(args):
    if not args.spec:
        raise UsageError("--spec m n r is required")
    try:
        return MatrixSpec(*args.spec)
    except ValueError as exc:
        raise UsageError(f"invalid --spec {' '.join(map(str, args.spec))}: {exc}") from None


def _ideal_arg(args, flag="ideal"):
    text = getattr(args, flag, None)
    if text is None and flag == "ideal" and args.file:
        return parse_ideal_file(args.file, args.vars)
    if text is None:
        raise UsageError(f"--{flag} (or --file) is required")
    return parse_ideal_text(text, args.vars)


def _polys(gens):
    return [format_polynomial(g) for g in gens]


def _stage_rows(spec):
    return [dict(s.as_dict(), predicted=s.predicted_link_order, computed=None) for s in detlink.resolution_data(spec)]


def cmd_lct_det(args):
    spec = _spec(args)
    res = lct.lct_determinantal(spec)
    result = {
        "spec": [spec.m, spec.n, spec.r],
        "value": res.value,
        "minimizing_t": res.certificate,
        "method": res.method,
        "codimension": spec.c,
        "equals_codimension": res.value == spec.c,
        "stages": _stage_rows(spec),
    }
    return result, {}, "ok"


def cmd_lct_monomial(args):
    I = _ideal_arg(args)
    try:
        res = lct.howald_lct(I)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    vecs = _used_columns(lct.monomial_exponents(I))
    result = {
        "ideal": _polys(I.generators),
        "variables": list(I.ring.variables),
        "value": res.value,
        "method": res.method,
        "weights": list(res.weights),
    }
    published = _PUBLISHED_MONOMIAL.get(vecs)
    if published is not None:
        result["published_value"] = published
        result["discrepancy"] = published != res.value
    cert = res.certificate
    certs = {
        "status": cert.status,
        "primal": list(cert.primal),
        "dual": list(cert.dual),
        "objective": cert.objective_value,
        "pivots": cert.pivots,
        "validated": True,
    }
    return result, certs, "ok"


def _used_columns(vectors):
    # drop variables that no generator mentions, so the lookup ignores padding
    used = [j for j in range(len(vectors[0])) if any(v[j] for v in vectors)] if vectors else []
    return tuple(sorted(tuple(v[j] for j in used) for v in vectors))


def _link_from_args(args):
    if args.spec:
        spec = _spec(args)
        detlink.check_budget(spec, args.mode, args.budget_vars, args.override_budget)
        I = detlink.determinantal_ideal(spec)
        c = spec.c
    else:
        I = _ideal_arg(args)
        spec, c = None, args.codim
    seed = args.seed[0] if args.seed else 0
    link = detlink.generic_link(I, args.mode, c=c, seed=seed, bound=args.bound, max_steps=args.max_steps)
    return spec, I, link


def cmd_link(args):
    spec, I, link = _link_from_args(args)
    xs = [v for v in link.ambient.block(XBLOCK)]
    ord_x = detlink.ord_variable_block(I, I.ring.block(XBLOCK))
    ord_y = detlink.ord_variable_block(link.I_Y, xs)
    result = {
        "mode": link.mode,
        "codimension": link.c,
        "mu": link.mu,
        "ambient_variables": list(link.ambient.variables),
        "I_V": _polys(link.fs),
        "I_Y": _polys(link.I_Y.groebner()),
        "ord_X": ord_x,
        "ord_Y": ord_y,
    }
    if link.mode == SPECIALIZED:
        result["seed"] = link.seed
        result["tmatrix"] = [list(row) for row in link.tmatrix]
    if spec is not None:
        result["spec"] = [spec.m, spec.n, spec.r]
        result["predicted_ord_Y"] = detlink.predicted_link_order(spec, 1)
    status = "ok"
    if args.double:
        result["double_link"] = detlink.double_link_check(I, link, args.max_steps)
        if not result["double_link"]:
            status = "error"
    certs = {"gb": link.I_Y.stats.get(link.ambient.default_order).as_dict()}
    return result, certs, status


def cmd_ord(args):
    if args.spec:
        spec = _spec(args)
        stages = [args.stage] if args.stage else list(range(1, spec.r + 1))
        rows = []
        status = "ok"
        for st in detlink.resolution_data(spec):
            row = dict(st.as_dict(), predicted=st.predicted_link_order, computed=None)
            if st.i in stages:
                rep = detlink.computed_link_order(
                    spec,
                    st.i,
                    args.mode,
                    seeds=tuple(args.seed) if args.seed else detlink.DEFAULT_SEEDS,
                    bound=args.bound,
                    budget_vars=args.budget_vars,
                    override=args.override_budget,
                    max_steps=args.max_steps,
                )
                row["computed"] = rep.computed
                row["agree"] = rep.agree
                if rep.per_seed:
                    row["per_seed"] = rep.per_seed
                if rep.status != "ok":
                    status = "inconclusive"
                elif not rep.agree:
                    status = "error"
            rows.append(row)
        return {"spec": [spec.m, spec.n, spec.r], "mode": args.mode, "stages": rows}, {}, status
    I = _ideal_arg(args)
    block = args.block or list(I.ring.variables)
    try:
        value = detlink.ord_variable_block(I, block)
    except Exception as exc:
        raise UsageError(str(exc)) from None
    return {"ideal": _polys(I.generators), "block": block, "order": value}, {}, "ok"


def _order_arg(args):
    return {"grevlex": GREVLEX, "lex": LEX}[args.order]


def cmd_gb(args):
    I = _ideal_arg(args)
    order = _order_arg(args)
    gb = reduced_gb(I, order, args.max_steps)
    return (
        {"variables": list(I.ring.variables), "order": str(order), "basis": _polys(gb)},
        {"gb": I.stats[order].as_dict()},
        "ok",
    )


def cmd_quotient(args):
    I = _ideal_arg(args)
    if args.by is None:
        raise UsageError("--by is required")
    J = parse_ideal_text(args.by, list(I.ring.variables))
    Q = ideal_quotient(I, J, args.max_steps)
    return {"variables": list(I.ring.variables), "quotient": _polys(Q.groebner())}, {}, "ok"


def _report_payload(rep: lct.VerifierReport, keep_cases: bool = True):
    out = {
        "scope": rep.scope,
        "case_count": len(rep.cases),
        "all_pass": rep.all_pass,
        "failures": [dict(params=list(c.params), expected=c.expected, observed=c.observed) for c in rep.failures()],
        "notes": rep.notes,
    }
    if keep_cases:
        out["cases"] = [
            {"params": list(c.params), "expected": c.expected, "observed": c.observed, "pass": c.passed, "note": c.note}
            for c in rep.cases
        ]
    return out


def cmd_verify(args):
    which = args.which
    if which == "stage-bound":
        rep = lct.verify_stage_bound(args.max, args.jobs)
    elif which == "equal-thresholds":
        rep = lct.verify_equal_thresholds(args.max, args.jobs)
    elif which == "degree-identity":
        rep = lct.verify_generating_degree_identity(args.max, args.jobs)
    elif which == "resolution":
        rep = lct.verify_resolution_minimum(args.max, args.jobs)
    elif which == "vanishing":
        spec = _spec(args)
        rep = lct.verify_link_order_vanishing(
            spec,
            args.mode,
            budget_vars=args.budget_vars,
            override=args.override_budget,
            seeds=tuple(args.seed) if args.seed else detlink.DEFAULT_SEEDS,
            bound=args.bound,
            max_steps=args.max_steps,
        )
    elif which == "monomial":
        rows = lct.monomial_regression()
        rep = lct.VerifierReport("published monomial thresholds")
        for row in rows:
            # a published value that the exact LP contradicts is documented, not failed
            note = "" if row["agrees"] else "documented discrepancy with published value"
            rep.add((row["ideal"],), row["stated"], row["lct"], True, note)
            if not row["agrees"]:
                rep.notes.append(f"{row['ideal']}: LP value {row['lct']} differs from published {row['stated']}")
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown verifier {which!r}")
    payload = _report_payload(rep, keep_cases=not args.summary)
    return payload, {}, "ok" if rep.all_pass else "failed"


COMMANDS = {
    "lct-det": cmd_lct_det,
    "lct-monomial": cmd_lct_monomial,
    "link": cmd_link,
    "ord": cmd_ord,
    "gb": cmd_gb,
    "quotient": cmd_quotient,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    common.add_argument("--vars", nargs="+", help="variable names for --ideal")
    common.add_argument("--file", help="ideal file (vars: header, one generator per line)")

    linkopts = argparse.ArgumentParser(add_help=False)
    linkopts.add_argument("--spec", nargs=3, type=int, metavar=("M", "N", "R"))
    linkopts.add_argument("--mode", choices=[FULL, SPECIALIZED], default=FULL)
    linkopts.add_argument("--seed", type=int, nargs="+")
    linkopts.add_argument("--bound", type=int, default=detlink.DEFAULT_BOUND)
    linkopts.add_argument("--budget-vars", type=int, default=detlink.DEFAULT_BUDGET_VARS)
    linkopts.add_argument("--override-budget", action="store_true")

    parser = _Parser(prog="linklct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lct-det", parents=[common], help="threshold of a generic determinantal ideal")
    p.add_argument("--spec", nargs=3, type=int, metavar=("M", "N", "R"), required=True)

    p = sub.add_parser("lct-monomial", parents=[common], help="Howald LP threshold of a monomial ideal")
    p.add_argument("--ideal")

    p = sub.add_parser("link", parents=[common, linkopts], help="generic link I_V : I")
    p.add_argument("--ideal")
    p.add_argument("--codim", type=int, help="codimension of --ideal (computed if omitted)")
    p.add_argument("--double", action="store_true", help="also check I_V : I_Y == I")

    p = sub.add_parser("ord", parents=[common, linkopts], help="orders along exceptional divisors")
    p.add_argument("--stage", type=int)
    p.add_argument("--ideal")
    p.add_argument("--block", nargs="+")

    p = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    p.add_argument("--ideal")
    p.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")

    p = sub.add_parser("quotient", parents=[common], help="colon ideal I : J")
    p.add_argument("--ideal")
    p.add_argument("--by", help="generators of J")

    p = sub.add_parser("verify", parents=[common, linkopts], help="run a verifier sweep")
    p.add_argument("which", choices=["stage-bound", "equal-thresholds", "degree-identity", "resolution", "vanishing", "monomial"])
    p.add_argument("--max", type=int, default=12)
    p.add_argument("--summary", action="store_true", help="omit the per-case list")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for the arithmetic sweeps")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("format",)}
    t0 = time.perf_counter()
    try:
        result, certs, status = COMMANDS[args.command](args)
    except (UsageError, PolynomialParseError) as exc:
        print(f"linklct {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        report = make_report(args.command, inputs, {"message": str(exc)}, {"stats": exc.stats}, "resource-limit",
                             round((time.perf_counter() - t0) * 1000))
        _emit(report, args.format, stdout)
        return EXIT_RESOURCE
    timing = round((time.perf_counter() - t0) * 1000)
    report = make_report(args.command, inputs, result, certs, status, timing)
    _emit(report, args.format, stdout)
    return EXIT_OK if status == "ok" else EXIT_FAIL


def _emit(report, fmt, stdout):
    if fmt == "json":
        stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write(render_text(report) + "\n")


def main():  # pragma: no cover
    sys.exit(run())
