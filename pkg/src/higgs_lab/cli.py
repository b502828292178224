"""Batch front end: analyze, jh, hn, verify, and fuzz over model files.

Reports are deterministic for a given file, flags, and seed.  Exit codes:
0 when every check passes, 1 when a check fails (the counterexample is in
the report), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .chern import normalized_p, slope
from .filtration import (
    AmbiguousMaximizerError,
    BrokenInvariantError,
    Filtration,
    NotSemistableError,
    TooLargeError,
    UnknownIdError,
    harder_narasimhan,
    jordan_holder,
)
from .hilbert import format_rational
from .modelfile import LoadedObject, ModelFile, ParseError, load, sheaf_to_json
from .stability import (
    IncompleteTorsionClosureError,
    StabilityVerdict,
    gieseker_classify,
    gieseker_classify_by_quotients,
    gieseker_classify_tf_quotients,
    slope_classify,
)
from .suite import CheckResult, run_suite
from .fuzz import fuzz_objects

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _verdict_json(verdict: StabilityVerdict, obj: LoadedObject) -> dict:
    out = {
        "notion": verdict.notion.value,
        "class": verdict.classification.value,
        "witness": verdict.witness,
    }
    if verdict.witness is not None:
        entry = obj.model.entry(verdict.witness)
        if verdict.notion.value == "gieseker":
            out["witness_p"] = normalized_p(entry.data).to_strings()
            out["object_p"] = normalized_p(obj.model.data).to_strings()
        else:
            out["witness_mu"] = format_rational(slope(entry.data))
            out["object_mu"] = format_rational(slope(obj.model.data))
    return out


def _analyze_object(obj: LoadedObject) -> dict:
    block = {
        "id": obj.model.id,
        "family_complete": obj.model.family_complete,
        "gieseker": _verdict_json(gieseker_classify(obj.model), obj),
        "gieseker_by_quotients": _verdict_json(
            gieseker_classify_by_quotients(obj.model), obj
        ),
        "slope": _verdict_json(slope_classify(obj.model), obj),
    }
    try:
        block["gieseker_torsion_free"] = _verdict_json(
            gieseker_classify_tf_quotients(obj.model), obj
        )
    except IncompleteTorsionClosureError as exc:
        block["gieseker_torsion_free"] = {"skipped": str(exc)}
    return block


def _filtration_json(filt: Filtration) -> dict:
    return {
        "kind": filt.kind.value,
        "steps": list(filt.steps),
        "quotients": [sheaf_to_json(q) for q in filt.quotients],
    }


def _scope_note(objects: Sequence[LoadedObject]) -> dict:
    return {
        obj.model.id: (
            "declared family claimed exhaustive"
            if obj.model.family_complete
            else "verdicts relative to the declared family only"
        )
        for obj in objects
    }


def _print_report(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    _print_table(report)


def _print_table(report: dict) -> None:
    if "objects" in report:
        for block in report["objects"]:
            print(f"object {block['id']}")
            for key in (
                "gieseker",
                "gieseker_by_quotients",
                "gieseker_torsion_free",
                "slope",
            ):
                v = block[key]
                if "skipped" in v:
                    line = f"skipped: {v['skipped']}"
                else:
                    line = v["class"]
                    if v.get("witness"):
                        line += f" (witness {v['witness']})"
                print(f"  {key:24s} {line}")
    if "filtration" in report:
        f = report["filtration"]
        print(f"{f['kind']} filtration of {report['object']}")
        for step, q in zip(f["steps"], f["quotients"]):
            chi = ",".join(q["chi"])
            print(
                f"  step {step:16s} quotient rank {q['rank']} degH {q['degH']} chi [{chi}]"
            )
    if "checks" in report:
        for c in report["checks"]:
            line = f"{c['status']:4s} {c['check']:26s} {c['subject']}"
            if c["detail"]:
                line += f"  {c['detail']}"
            print(line)
        print(
            "checks: {passed} passed, {failed} failed, {skipped} skipped".format(
                **report["summary"]
            )
        )
    if "scope" in report:
        for oid, note in sorted(report["scope"].items()):
            print(f"scope {oid}: {note}")


def _checks_report(results: Sequence[CheckResult]) -> dict:
    return {
        "checks": [
            {
                "check": r.check,
                "subject": r.subject,
                "status": r.status,
                "detail": r.detail,
            }
            for r in results
        ],
        "summary": {
            "passed": sum(r.status == "pass" for r in results),
            "failed": sum(r.status == "fail" for r in results),
            "skipped": sum(r.status == "skip" for r in results),
        },
    }


def _load_file(path: str) -> ModelFile:
    return load(path)


def _cmd_analyze(args) -> int:
    mf = _load_file(args.file)
    report = {
        "objects": [_analyze_object(obj) for obj in mf.objects],
        "scope": _scope_note(mf.objects),
    }
    _print_report(report, args.format)
    return EXIT_OK


def _find_object(mf: ModelFile, object_id: str) -> LoadedObject:
    for obj in mf.objects:
        if obj.model.id == object_id:
            return obj
    raise ParseError(f"no object with id {object_id!r} in the file")


def _cmd_filtration(args, kind: str) -> int:
    mf = _load_file(args.file)
    obj = _find_object(mf, args.object)
    build = jordan_holder if kind == "jh" else harder_narasimhan
    try:
        filt = build(obj.model)
    except (NotSemistableError, AmbiguousMaximizerError, TooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except BrokenInvariantError as exc:
        print(f"error: under-declared family: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    report = {
        "object": obj.model.id,
        "filtration": _filtration_json(filt),
        "scope": _scope_note([obj]),
    }
    _print_report(report, args.format)
    return EXIT_OK


def _cmd_verify(args) -> int:
    mf = _load_file(args.file)
    results = run_suite(mf.objects, all_pairs=True)
    report = _checks_report(results)
    report["scope"] = _scope_note(mf.objects)
    _print_report(report, args.format)
    return EXIT_CHECK_FAILED if any(r.failed for r in results) else EXIT_OK


def _cmd_fuzz(args) -> int:
    objects = list(
        fuzz_objects(args.seed, args.count, args.max_rank, args.genus)
    )
    results = run_suite(objects, all_pairs=False)
    report = _checks_report(results)
    report["seed"] = args.seed
    report["count"] = args.count
    _print_report(report, args.format)
    return EXIT_CHECK_FAILED if any(r.failed for r in results) else EXIT_OK


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higgs-lab",
        description="Exact stability calculus for finitely presented Higgs-sheaf models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("table", "json"), default="table", help="report format"
        )

    p = sub.add_parser("analyze", help="classify every object in a file")
    p.add_argument("file")
    add_format(p)

    p = sub.add_parser("jh", help="Jordan-Holder filtration of one object")
    p.add_argument("file")
    p.add_argument("--object", required=True)
    add_format(p)

    p = sub.add_parser("hn", help="Harder-Narasimhan filtration of one object")
    p.add_argument("file")
    p.add_argument("--object", required=True)
    add_format(p)

    p = sub.add_parser("verify", help="run the theorem suite over a file")
    p.add_argument("file")
    add_format(p)

    p = sub.add_parser("fuzz", help="run the theorem suite over random chains")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--genus", type=int, default=2)
    add_format(p)

    return parser


def run(argv: Sequence[str]) -> int:
    """Parse arguments, run one command, print the report, return the exit code."""
    try:
        args = _parser().parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "jh":
            return _cmd_filtration(args, "jh")
        if args.command == "hn":
            return _cmd_filtration(args, "hn")
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "fuzz":
            return _cmd_fuzz(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except UnknownIdError as exc:
        print(f"error: unknown id {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return EXIT_INPUT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))
