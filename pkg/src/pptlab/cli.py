"""Command-line surface.

Commands: sequence, ppt, classify, qfs-height, fpt, criteria, corpus.
Exit codes: 0 success, 2 invalid input, 3 resource limit, 4 internal
assertion failure (including corpus mismatches).  With ``--json`` the
result record (or a machine-readable error object) goes to stdout;
records are schema-stable and byte-identical across runs apart from the
timings block.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .cache import ResultCache, content_hash
from .corpus import run_corpus
from .delta import validate
from .errors import (
    CorpusMismatchError,
    InputError,
    InternalCheckError,
    PptlabError,
    ResourceLimitError,
)
from .parser import expand_var_spec, parse_poly
from .pipeline import Analysis, analyze
from .ring import Context, render
from .verdict import nu_table, regularity_test

SCHEMA_ID = "pptlab/result/1"

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_RESOURCE_LIMIT = 3
EXIT_INTERNAL = 4

ANALYSIS_COMMANDS = ("sequence", "ppt", "classify", "qfs-height")


def _rational(value: Fraction | None) -> dict | None:
    if value is None:
        return None
    return {
        "num": str(value.numerator),
        "den": str(value.denominator),
        "approx": float(value),
    }


def _sequence_block(analysis: Analysis) -> dict:
    seq = analysis.seq
    return {
        "values": list(seq.values),
        "depth": seq.depth,
        "terminated_at_p": seq.terminated_at_p,
    }


def _verdict_block(analysis: Analysis) -> dict:
    v = analysis.verdict
    return {
        "kind": v.kind,
        "basis": v.basis,
        "certified": v.certified,
        "up_to_depth": v.up_to_depth,
        "r": v.r,
        "flagged_r1": v.flagged_r1,
        "reason": v.reason,
    }


def _ppt_block(analysis: Analysis) -> dict:
    return {
        "partial": _rational(analysis.partial),
        "exact": _rational(analysis.exact),
        "preperiod": analysis.preperiod,
        "period": analysis.period,
        "conjectural": analysis.conjectural,
    }


def _qfs_block(analysis: Analysis) -> dict:
    q = analysis.qfs
    return {"kind": q.kind, "height": q.height, "depth": q.depth}


def _criteria_block(criteria) -> dict:
    return {
        "hypothesis_met": criteria.hypothesis_met,
        "fired": sorted(criteria.fired),
        "note": criteria.note,
    }


def build_record(args: argparse.Namespace) -> dict:
    """Compute one analysis request into a schema-stable record."""
    ctx = Context(
        args.p,
        expand_var_spec(args.vars),
        max_workspace_monomials=args.max_monomials,
        max_generators=args.max_generators,
    )
    f = parse_poly(args.f, ctx)
    h = validate(ctx, f)

    record = {
        "schema": SCHEMA_ID,
        "tool_version": __version__,
        "command": args.command,
        "input": {
            "p": ctx.p,
            "vars": list(ctx.var_names),
            "f": render(f),
            "depth": args.depth,
            "flags": _flags_dict(args),
        },
        "input_hash": _input_hash(args, ctx, f),
        "sequence": None,
        "verdict": None,
        "ppt": None,
        "qfs_height": None,
        "nu_table": None,
        "fpt": None,
        "criteria": None,
        "annotations": [],
        "timings": {"per_depth_ms": [], "total_ms": 0.0},
    }

    t0 = time.perf_counter()
    if args.command in ANALYSIS_COMMANDS:
        analysis = analyze(h, args.depth, strict_r1=args.strict_r1, trace=args.trace)
        record["sequence"] = _sequence_block(analysis)
        record["verdict"] = _verdict_block(analysis)
        record["ppt"] = _ppt_block(analysis)
        record["qfs_height"] = _qfs_block(analysis)
        record["criteria"] = _criteria_block(analysis.criteria)
        record["timings"]["per_depth_ms"] = [
            round(ms, 3) for ms in analysis.seq.per_depth_ms or ()
        ]
        if args.trace and analysis.seq.per_step_ideals is not None:
            record["trace"] = [
                [str(g) for g in ideal.gens] for ideal in analysis.seq.per_step_ideals
            ]
    elif args.command == "fpt":
        table = nu_table(h.f_res, args.emax)
        record["nu_table"] = {str(e): v for e, v in table.items()}
        record["fpt"] = {
            "e_max": args.emax,
            "approx": _rational(Fraction(table[args.emax], ctx.p**args.emax)),
            "regular": regularity_test(h),
        }
    elif args.command == "criteria":
        from .verdict import check_quick_criteria

        record["criteria"] = _criteria_block(check_quick_criteria(h))
    record["timings"]["total_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    return record


def _flags_dict(args: argparse.Namespace) -> dict:
    return {
        "strict_r1": args.strict_r1,
        "trace": args.trace,
        "emax": args.emax if args.command == "fpt" else None,
        "max_workspace_monomials": args.max_monomials,
        "max_generators": args.max_generators,
    }


def _input_hash(args: argparse.Namespace, ctx: Context, f) -> str:
    return content_hash(
        {
            "p": ctx.p,
            "vars": list(ctx.var_names),
            "f": render(f),
            "depth": args.depth,
            "command": args.command,
            "flags": _flags_dict(args),
        }
    )


def _cache_key(record_input_hash: str) -> str:
    return content_hash({"version": __version__, "input_hash": record_input_hash})


def _print_human(record: dict) -> None:
    inp = record["input"]
    print(f"p = {inp['p']}, vars = {','.join(inp['vars'])}")
    print(f"f = {inp['f']}")
    if record["sequence"]:
        values = record["sequence"]["values"]
        print(f"sequence (depth {record['sequence']['depth']}): {tuple(values)}")
    if record["verdict"]:
        v = record["verdict"]
        line = f"verdict: {v['kind']}"
        if v["basis"]:
            line += f" [basis: {v['basis']}]"
        if v["up_to_depth"] is not None:
            line += f" (up to depth {v['up_to_depth']})"
        if v["flagged_r1"]:
            line += " (flagged: run of p-1 has length 1)"
        if v["reason"]:
            line += f" (reason: {v['reason']})"
        print(line)
    if record["ppt"]:
        ppt = record["ppt"]
        if ppt["partial"]:
            print(f"ppt partial: {ppt['partial']['num']}/{ppt['partial']['den']}")
        if ppt["exact"]:
            label = "conjectural" if ppt["conjectural"] else "certified"
            print(
                f"ppt exact: {ppt['exact']['num']}/{ppt['exact']['den']} "
                f"(preperiod {ppt['preperiod']}, period {ppt['period']}, {label})"
            )
    if record["qfs_height"]:
        q = record["qfs_height"]
        if q["kind"] == "height":
            print(f"quasi-F-split height: {q['height']}")
        elif q["kind"] == "not_quasi_f_split":
            print("quasi-F-split height: not quasi-F-split")
        else:
            print(f"quasi-F-split height: > {q['depth']}")
    if record["criteria"]:
        c = record["criteria"]
        fired = ", ".join(c["fired"]) or "none"
        print(f"quick criteria: {fired}" + (f" ({c['note']})" if c["note"] else ""))
    if record["nu_table"]:
        pairs = ", ".join(f"nu(p^{e})={v}" for e, v in sorted(record["nu_table"].items(), key=lambda kv: int(kv[0])))
        print(f"nu: {pairs}")
    if record["fpt"]:
        fr = record["fpt"]["approx"]
        reg = "regular" if record["fpt"]["regular"] else "not regular"
        print(f"fpt approximant (e={record['fpt']['e_max']}): {fr['num']}/{fr['den']} ({reg})")
    if record.get("trace"):
        for step, gens in enumerate(record["trace"], start=1):
            inside = ", ".join(gens) or "0"
            print(f"ladder ideal at step {step}: ({inside})")
    for note in record["annotations"]:
        print(f"note: {note}")


def _run_corpus(args: argparse.Namespace) -> int:
    outcomes = run_corpus(args.filter)
    mismatches: list[str] = []
    rows = []
    for outcome in outcomes:
        status = "PASS" if outcome.passed else "FAIL"
        mismatches.extend(outcome.mismatches)
        row = outcome.row
        values = outcome.analysis.seq.values
        rows.append(
            {
                "name": row.name,
                "p": row.p,
                "depth": row.depth,
                "values": list(values),
                "verdict": outcome.analysis.verdict.kind,
                "status": status,
                "annotation": row.annotation,
            }
        )
    if args.json:
        print(json.dumps({"schema": "pptlab/corpus/1", "rows": rows}, indent=2, sort_keys=True))
    else:
        if not rows:
            print("no corpus rows match the filter")
        for row in rows:
            line = (
                f"{row['status']}  {row['name']:32s} p={row['p']} "
                f"depth={row['depth']} values={tuple(row['values'])} {row['verdict']}"
            )
            print(line)
            if row["annotation"]:
                print(f"      note: {row['annotation']}")
        for m in mismatches:
            print(f"MISMATCH  {m}")
    if mismatches:
        raise CorpusMismatchError(mismatches)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pptlab",
        description=(
            "Splitting-order sequences and perfectoid pure thresholds of "
            "hypersurfaces presented mod p^2"
        ),
    )
    parser.add_argument("--version", action="version", version=f"pptlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(cmd, needs_input=True):
        if needs_input:
            cmd.add_argument("--p", type=int, required=True, help="the prime")
            cmd.add_argument(
                "--vars",
                required=True,
                help="comma-separated variable names; ranges like x1..x5 expand",
            )
            cmd.add_argument("--f", required=True, help="polynomial expression")
        cmd.add_argument("--depth", type=int, default=8, help="sequence depth (default 8, max 24)")
        cmd.add_argument("--json", action="store_true", help="emit the JSON record")
        cmd.add_argument("--trace", action="store_true", help="include per-step ideals")
        cmd.add_argument(
            "--strict-r1",
            dest="strict_r1",
            action="store_true",
            help="report the run-length-1 pattern as inconclusive instead of not pure",
        )
        cmd.add_argument("--emax", type=int, default=5, help="nu-function depth (fpt)")
        cmd.add_argument(
            "--max-monomials",
            type=int,
            default=500_000,
            help="workspace cap on distinct monomials",
        )
        cmd.add_argument(
            "--max-generators", type=int, default=10_000, help="generator cap per step"
        )
        cmd.add_argument("--cache-dir", default=None, help="result cache directory (or $PPTLAB_CACHE)")

    for name, blurb in [
        ("sequence", "compute the splitting-order sequence"),
        ("ppt", "compute the perfectoid pure threshold"),
        ("classify", "classify perfectoid purity"),
        ("qfs-height", "compute the quasi-F-split height"),
        ("fpt", "compute nu-functions and the F-pure threshold approximant"),
        ("criteria", "evaluate the quick congruence criteria"),
    ]:
        add_common(sub.add_parser(name, help=blurb))

    corpus_cmd = sub.add_parser("corpus", help="run the built-in example corpus")
    corpus_cmd.add_argument("--filter", default=None, help="substring filter on row names/tags")
    corpus_cmd.add_argument("--json", action="store_true")
    return parser


def run(args: argparse.Namespace) -> tuple[dict | None, int]:
    """Dispatch one request; returns (record, exit_code)."""
    if args.command == "corpus":
        return None, _run_corpus(args)
    if args.depth < 1 or args.depth > 24:
        raise InputError(f"depth must be in 1..24, got {args.depth}")
    if args.command == "fpt" and args.emax < 1:
        raise InputError(f"emax must be >= 1, got {args.emax}")

    cache = ResultCache.from_environment(args.cache_dir)
    key = None
    if cache is not None:
        ctx = Context(args.p, expand_var_spec(args.vars))
        key = _cache_key(_input_hash(args, ctx, parse_poly(args.f, ctx)))
        cached = cache.get(key, __version__)
        if cached is not None:
            return cached, EXIT_OK
    record = build_record(args)
    if cache is not None and key is not None:
        cache.put(key, __version__, record)
    return record, EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        record, code = run(args)
    except PptlabError as exc:
        code = _exit_code_for(exc)
        if getattr(args, "json", False) and not isinstance(exc, CorpusMismatchError):
            print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}, sort_keys=True))
        else:
            print(f"pptlab: error: {exc}", file=sys.stderr)
        return code
    if record is not None:
        if args.json:
            print(json.dumps(record, indent=2, sort_keys=True))
        else:
            _print_human(record)
    return code


def _exit_code_for(exc: PptlabError) -> int:
    if isinstance(exc, ResourceLimitError):
        return EXIT_RESOURCE_LIMIT
    if isinstance(exc, InternalCheckError):
        return EXIT_INTERNAL
    return EXIT_INVALID_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
