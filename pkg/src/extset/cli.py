"""Command-line interface: construct, check-family, verify, thresholds, search.

Every run emits exactly one manifest record (subcommand, parameters, tool
version, wall time, sha256 of the result payload) alongside its results.
JSON documents wrap the payload as {"manifest": ..., "result": ...}; textual
outputs (family files, CSV) go to stdout or the output file with the
manifest on stderr. Numeric values that may exceed 2**53 are emitted as
decimal strings; exact rationals as "p/q" strings.

Exit codes: 0 ok, 2 bad parameters, 3 parse error, 4 budget exceeded,
5 identity-claim failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, constructions, exact, invariants
from .core import (
    BudgetExceededError,
    Family,
    FamilyParseError,
    ParameterError,
    format_family_text,
    parse_family_json,
    parse_family_text,
)
from .search import (
    PRESETS,
    ConstraintSet,
    SearchProblem,
    SearchResult,
    canonical_form,
    probe_problem1,
    solve,
)

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4
EXIT_CLAIM_FAILURE = 5


def _num(value) -> str | None:
    """Render ints and rationals losslessly as decimal strings."""
    if value is None:
        return None
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _manifest(subcommand: str, params: dict, started: float, payload) -> dict:
    blob = json.dumps(payload, sort_keys=True, default=str).encode()
    return {
        "subcommand": subcommand,
        "params": {k: v for k, v in sorted(params.items()) if v is not None},
        "version": __version__,
        "wall_time_s": round(time.monotonic() - started, 6),
        "output_checksum": hashlib.sha256(blob).hexdigest(),
    }


def _emit_json(args, subcommand: str, params: dict, started: float, result) -> None:
    document = {"manifest": _manifest(subcommand, params, started, result), "result": result}
    text = json.dumps(document, indent=2, default=str)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {args.output}")
    else:
        print(text)


def _emit_text(args, subcommand: str, params: dict, started: float, text: str) -> None:
    manifest = _manifest(subcommand, params, started, text)
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(json.dumps({"manifest": manifest}), file=sys.stderr)


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    started = time.monotonic()
    name = args.construction
    if name == "star":
        if args.center is None:
            raise ParameterError("star needs --center")
        fam = constructions.star(args.n, args.k, args.center)
    elif name == "hm":
        if args.u is None:
            raise ParameterError("hm needs --u")
        fam = constructions.hilton_milner(args.n, args.k, args.u)
    elif name == "a0":
        if args.s is None:
            raise ParameterError("a0 needs --s")
        fam = constructions.a0(args.n, args.k, args.s)
    elif name == "ak":
        if args.s is None:
            raise ParameterError("ak needs --s")
        fam = constructions.ak(args.k, args.s, args.n)
    else:
        fam = constructions.full_layer(args.n, args.k)

    params = {"construction": name, "n": args.n, "k": args.k,
              "s": args.s, "u": args.u, "center": args.center}
    if args.format == "json":
        from .core import family_to_json_obj

        result = {"family": family_to_json_obj(fam), "size": len(fam)}
        _emit_json(args, "construct", params, started, result)
    else:
        text = format_family_text(fam) + f"# size: {len(fam)}\n"
        _emit_text(args, "construct", params, started, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# check-family
# ---------------------------------------------------------------------------


def _load_family(path: str) -> tuple[Family, list[str]]:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return parse_family_json(text)
    return parse_family_text(text)


def cmd_check_family(args) -> int:
    started = time.monotonic()
    fam, warnings = _load_family(args.path)
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    t = args.t if args.t is not None else min(1, fam.k)
    profile = invariants.degree_profile(fam)
    report = {
        "n": fam.n,
        "k": fam.k,
        "size": len(fam),
        "intersecting": invariants.is_intersecting(fam),
        "trivial": invariants.is_trivial(fam) if len(fam) else None,
        "gamma": invariants.diversity(fam),
        "Delta": profile.max_degree,
        "delta": profile.min_degree,
        "delta_t": invariants.min_t_degree(fam, t).min_degree if 1 <= t <= fam.k else None,
        "t": t,
        "nu": invariants.matching_number(fam),
        "tau": invariants.covering_number(fam) if len(fam) else None,
        "warnings": warnings,
    }
    _emit_json(args, "check-family", {"path": args.path, "t": t}, started, report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _parse_range(text: str, k: int | None = None) -> range:
    """Ranges like '3..8', '2k+1..30', 'k-1', or '4'; endpoints may be affine
    in k when a concrete k is supplied."""

    def value(expr: str) -> int:
        rule = exact.parse_affine_rule(expr)
        if rule.a and k is None:
            raise ParameterError(f"endpoint {expr!r} needs k")
        return rule.n_at(k or 0)

    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(value(lo), value(hi) + 1)
    v = value(text)
    return range(v, v + 1)


def _grid_points(args, claim_spec) -> list[exact.ParamPoint]:
    if args.k is None:
        raise ParameterError("verify needs --k")
    points = []
    for k in _parse_range(args.k):
        ranges = {"k": [k]}
        if "n" in claim_spec.params:
            if args.n_rule:
                rule = exact.parse_affine_rule(args.n_rule)
                ranges["n"] = [rule.n_at(k)]
            elif args.n:
                ranges["n"] = list(_parse_range(args.n, k))
            else:
                raise ParameterError(f"{claim_spec.claim.value} needs --n or --n-rule")
        for field in ("s", "t", "u"):
            if field in claim_spec.params:
                raw = getattr(args, field)
                if raw is None:
                    raise ParameterError(f"{claim_spec.claim.value} needs --{field}")
                ranges[field] = list(_parse_range(raw, k))
        combos = [{}]
        for field in ("n", "s", "t", "u"):
            if field in ranges:
                combos = [dict(c, **{field: v}) for c in combos for v in ranges[field]]
        for combo in combos:
            points.append(exact.ParamPoint(k=k, **combo))
    return points


def cmd_verify(args) -> int:
    started = time.monotonic()
    claim_names = [c.strip() for c in args.claim.split(",") if c.strip()]
    records = []
    identity_failure = False
    for name in claim_names:
        try:
            claim = exact.ClaimId(_expand_claim_alias(name))
        except ValueError:
            raise ParameterError(f"unknown claim id {name!r}")
        spec = exact.CLAIMS[claim]
        for point in _grid_points(args, spec):
            try:
                res = exact.evaluate_claim(claim, point)
            except ParameterError as exc:
                records.append({
                    "claim": claim.value, "params": point.as_dict(),
                    "holds": None, "lhs": None, "rhs": None,
                    "note": f"outside regime: {exc}",
                })
                continue
            records.append({
                "claim": claim.value,
                "params": res.params,
                "holds": res.holds,
                "lhs": _num(res.lhs),
                "rhs": _num(res.rhs),
                "note": res.note,
            })
            if spec.kind == "identity" and res.holds is False:
                identity_failure = True

    params = {"claim": args.claim, "n": args.n, "n_rule": args.n_rule,
              "k": args.k, "s": args.s, "t": args.t, "u": args.u}
    if args.format == "csv":
        import csv as _csv
        import io

        buffer = io.StringIO()
        writer = _csv.writer(buffer)
        writer.writerow(["claim", "n", "k", "s", "t", "u", "holds", "lhs", "rhs", "note"])
        for rec in records:
            p = rec["params"]
            writer.writerow([
                rec["claim"], p.get("n"), p.get("k"), p.get("s"), p.get("t"),
                p.get("u"), rec["holds"], rec["lhs"], rec["rhs"], rec["note"],
            ])
        _emit_text(args, "verify", params, started, buffer.getvalue())
    else:
        _emit_json(args, "verify", params, started, {"records": records})
    return EXIT_CLAIM_FAILURE if identity_failure else EXIT_OK


_CLAIM_ALIASES = {
    "EQ25": "EQ25_IDENTITY",
    "EQ04": "EQ04_BOUND",
    "EQ07": "EQ07_IDENTITY",
    "EQ01": "EQ01_BOUND",
    "EQ02": "EQ02_PRED",
    "EQ151": "EQ151_PRED",
    "EQ05": "EQ05_PRED",
    "EQ19": "EQ19_PRED",
    "EQ16": "EQ16_PRED",
    "EQ13": "EQ13_PRED",
    "EQ10": "EQ10_PRED",
    "EQ11": "EQ11_PRED",
    "EQ09": "EQ09_PRED",
    "EQ33_35": "EQ33_35_PRED",
    "EQHIL": "EQHIL_BOUND",
}


def _expand_claim_alias(name: str) -> str:
    upper = name.upper()
    return _CLAIM_ALIASES.get(upper, upper)


# ---------------------------------------------------------------------------
# thresholds
# ---------------------------------------------------------------------------


def cmd_thresholds(args) -> int:
    started = time.monotonic()
    claim = exact.ClaimId(_expand_claim_alias(args.claim))
    try:
        scan = exact.scan_threshold(claim, args.n_rule, t=args.t, s=args.s, u=args.u)
    except exact.NoThresholdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    result = {
        "claim": scan.claim.value,
        "rule": str(scan.rule),
        "fixed": scan.fixed,
        "threshold": scan.threshold,
        "first_hold": scan.first_hold,
        "non_monotone_at": list(scan.non_monotone_at),
        "window": list(scan.window),
    }
    params = {"claim": args.claim, "n_rule": args.n_rule, "t": args.t,
              "s": args.s, "u": args.u}
    _emit_json(args, "thresholds", params, started, result)
    return EXIT_OK


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def _problem_from_args(args) -> SearchProblem:
    if args.problem:
        spec = json.loads(Path(args.problem).read_text(encoding="utf-8"))
        flags = spec.get("constraints", {})
        cs = ConstraintSet(
            n=int(spec["n"]),
            k=int(spec["k"]),
            t=int(spec.get("t", 1)),
            intersecting=bool(flags.get("intersecting", False)),
            non_trivial=bool(flags.get("non_trivial", False)),
            matching_at_most=flags.get("matching_at_most"),
            pair_mode=bool(flags.get("pair_mode", False)),
        )
        objective = spec.get(
            "objective",
            "max_min_pair_size" if cs.pair_mode else "max_min_t_degree",
        )
        return SearchProblem(cs, objective)
    if not args.preset:
        raise ParameterError("search needs --preset or --problem")
    builder = PRESETS.get(args.preset)
    if builder is None:
        raise ParameterError(f"unknown preset {args.preset!r}; "
                             f"choose from {sorted(PRESETS) + ['problem1']}")
    if args.n is None or args.k is None:
        raise ParameterError(f"preset {args.preset!r} needs --n and --k")
    kwargs = {}
    if args.preset == "emc-degree":
        if args.s is None:
            raise ParameterError("emc-degree needs --s")
        kwargs["s"] = args.s
    if args.preset != "problem2" and args.t is not None:
        kwargs["t"] = args.t
    return builder(args.n, args.k, **kwargs)


def _family_payload(fam: Family | None) -> dict | None:
    if fam is None:
        return None
    return {
        "text": format_family_text(fam),
        "size": len(fam),
        "canonical": canonical_form(fam).blob.hex(),
    }


def _result_payload(problem: SearchProblem | None, result: SearchResult) -> dict:
    payload = {
        "optimum": result.optimum,
        "status": result.status,
        "nodes_expanded": result.nodes_expanded,
        "isomorph_rejections": result.isomorph_rejections,
        "reference_bound": _num(result.reference_bound),
        "within_regime": result.within_regime,
        "counterexample": result.counterexample,
        "witness": _family_payload(result.witness),
        "witness_pair": None,
    }
    if result.witness_pair is not None:
        fam_a, fam_b = result.witness_pair
        payload["witness_pair"] = [_family_payload(fam_a), _family_payload(fam_b)]
    if problem is not None:
        cs = problem.constraints
        payload["problem"] = {
            "n": cs.n, "k": cs.k, "t": cs.t,
            "constraints": {
                "intersecting": cs.intersecting,
                "non_trivial": cs.non_trivial,
                "matching_at_most": cs.matching_at_most,
                "pair_mode": cs.pair_mode,
            },
            "objective": problem.objective,
        }
    return payload


def cmd_search(args) -> int:
    started = time.monotonic()
    if args.preset == "problem1":
        if args.k is None:
            raise ParameterError("problem1 needs --k")
        result = probe_problem1(args.k, threads=args.threads, budget=args.budget)
        problem = None
    else:
        problem = _problem_from_args(args)
        result = solve(problem, threads=args.threads, budget=args.budget)
    payload = _result_payload(problem, result)
    params = {"preset": args.preset, "problem": args.problem, "n": args.n,
              "k": args.k, "s": args.s, "t": args.t, "threads": args.threads,
              "budget": args.budget}
    if result.counterexample:
        dump = Path(f"counterexample_n{args.n}_k{args.k}.json")
        dump.write_text(json.dumps(payload, indent=2, default=str), encoding="utf-8")
        print(f"warning: optimum exceeds the reference bound inside its regime; "
              f"certificate dumped to {dump}", file=sys.stderr)
    _emit_json(args, "search", params, started, payload)
    return EXIT_BUDGET if result.status == "timeout" else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extset",
        description="Exact workbench for degree statistics of k-set families.",
    )
    parser.add_argument("--version", action="version", version=f"extset {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a named family in the family file format")
    p.add_argument("construction", choices=["star", "hm", "a0", "ak", "full"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--center", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("check-family", help="compute all invariants of a family file")
    p.add_argument("path")
    p.add_argument("--t", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_check_family)

    p = sub.add_parser("verify", help="evaluate claims on a parameter grid")
    p.add_argument("--claim", required=True,
                   help="claim id(s), comma separated; EQ25, EQ07, ... aliases allowed")
    p.add_argument("--k", help="range like 3..8")
    p.add_argument("--n", help="range; endpoints may be affine in k, e.g. 2k+1..30")
    p.add_argument("--n-rule", dest="n_rule", help="affine rule n = a*k+b, e.g. 2k+5")
    p.add_argument("--s", help="range")
    p.add_argument("--t", help="range; endpoints may be affine in k, e.g. 1..k-1")
    p.add_argument("--u", help="range")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("thresholds", help="scan k for the onset of a claim along n = a*k+b")
    p.add_argument("--claim", required=True)
    p.add_argument("--n-rule", dest="n_rule", required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--u", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_thresholds)

    p = sub.add_parser("search", help="run an exhaustive isomorph-reduced search")
    p.add_argument("--preset", choices=sorted(PRESETS) + ["problem1"])
    p.add_argument("--problem", help="JSON problem description file")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, help="node cap override")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FamilyParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main(argv=None))
