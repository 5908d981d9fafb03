"""Command-line interface.

Exit codes: 0 when everything checked passes, 1 when a verification fails
(a counterexample file is written), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from .census import (
    DEFAULT_MAX_N,
    Census,
    EnumerationTask,
    full_census,
    run_task_cached,
    write_ndjson,
)
from .complex import SimplicialComplex, format_facets, induced_subcomplex, is_isomorphic, link, read_facets
from .dsl import DSLError, build
from .errors import CapExceeded, FacetFileError, FlagSphereError
from .homology import Field, SphereCertifier, betti_numbers, homology_ball
from .structure import antipode_profile, find_equators, recognize_family
from .suites import SUITE_IDS, Subject, constructed_corpus, verify_on_census
from .vectors import gamma_report


class UsageError(Exception):
    pass


def _emit(obj: dict, fmt: str, out: Path | None, text: str | None = None) -> None:
    if fmt == "json":
        payload = json.dumps(obj, indent=2) + "\n"
    else:
        payload = text if text is not None else _as_text(obj)
    if out is not None:
        out.write_text(payload)
    else:
        sys.stdout.write(payload)


def _as_text(obj, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_as_text(v, indent + 1).rstrip("\n"))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v)}")
    return "\n".join(lines) + "\n"


def _load(args) -> SimplicialComplex:
    base = None
    if args.file:
        try:
            base = read_facets(args.file)[0]
        except (OSError, FacetFileError) as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from exc
    text = args.expr or getattr(args, "source", None)
    if text:
        return build(text, input=base)
    if base is None:
        raise UsageError("give an expression or --file")
    return base


def cmd_gamma(args) -> int:
    c = _load(args)
    _emit(gamma_report(c).to_json(), args.format, args.out)
    return 0


def cmd_check(args) -> int:
    c = _load(args)
    field = Field.parse(args.field)
    cert = SphereCertifier(field)
    sphere = cert(c)
    rep = gamma_report(c)
    out = {
        "n": c.n,
        "dim": c.dim,
        "flag": c.is_flag,
        "homology_sphere": sphere,
        "homology_ball": (not sphere) and homology_ball(c, field, cert).is_ball,
        "reduced_betti": list(betti_numbers(c, field).reduced_betti),
        "gamma": rep.gamma.to_list() if rep.gamma is not None else None,
    }
    if sphere and c.is_flag:
        out["polar_size"] = antipode_profile(c).polar_size
        out["family"] = recognize_family(c).to_json()
    _emit(out, args.format, args.out)
    return 0


def cmd_equators(args) -> int:
    c = _load(args)
    field = Field.parse(args.field)
    links = {tuple(link(c, (v,)).labels): v for v in range(c.n)}
    eqs = []
    for eq in find_equators(c, field):
        sub = induced_subcomplex(c, eq)
        eqs.append({
            "vertices": list(eq),
            "vertex_link_of": links.get(eq),
            "gamma": gamma_report(sub).gamma.to_list(),
        })
    _emit({"n": c.n, "count": len(eqs), "equators": eqs}, args.format, args.out)
    return 0


def _shard(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)/(\d+)", text)
    if not m or int(m.group(2)) < 1 or int(m.group(1)) >= int(m.group(2)):
        raise argparse.ArgumentTypeError(f"shard must look like i/k with 0 <= i < k, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def cmd_enumerate(args) -> int:
    task = EnumerationTask(args.n, args.dim, Field.parse(args.field), args.shards)
    census = Census(task.field, args.max_n)
    entries = run_task_cached(task, census=census, max_n=args.max_n)
    if args.format == "json":
        if args.out:
            write_ndjson(entries, args.out)
        else:
            for e in entries:
                sys.stdout.write(json.dumps(e.to_json(), separators=(",", ":")) + "\n")
    else:
        lines = [f"n={e.n} d={e.d} gamma={e.gamma.to_list()} pi={e.polar_size} family={e.family.kind.value}"
                 for e in entries]
        payload = "\n".join(lines) + ("\n" if lines else "")
        if args.out:
            args.out.write_text(payload)
        else:
            sys.stdout.write(payload)
    return 0


_CENSUS_SRC = re.compile(r"census:n<=(\d+)(?:,d=(\d+))?")
_CORPUS_SRC = re.compile(r"corpus(?::n<=(\d+))?")


def _subjects(source: str, field: Field, max_n: int, file: Path | None) -> list[Subject]:
    cert = SphereCertifier(field)
    m = _CENSUS_SRC.fullmatch(source)
    if m:
        n = int(m.group(1))
        if n > max_n:
            raise CapExceeded(f"census bound {n} exceeds --max-n {max_n}")
        entries = full_census(n, field, Census(field, max_n))
        if m.group(2):
            entries = [e for e in entries if e.d == int(m.group(2))]
        return [Subject(e.complex(), f"census:{e.key}", field, cert) for e in entries]
    m = _CORPUS_SRC.fullmatch(source)
    if m:
        bound = int(m.group(1) or 14)
        return [Subject(c, name, field, cert) for name, c in constructed_corpus(bound)]
    if source.startswith("expr:"):
        c = build(source[5:])
        name = source
    elif source.startswith("file:"):
        c = read_facets(source[5:])[0]
        name = source
    else:
        raise UsageError(f"unknown source {source!r}")
    if not (c.is_flag and cert(c)):
        raise UsageError(f"{name} is not a flag homology sphere")
    return [Subject(c, name, field, cert)]


def cmd_verify(args) -> int:
    field = Field.parse(args.field)
    suites = list(SUITE_IDS) if args.suite == "all" else [args.suite]
    for s in suites:
        if s not in SUITE_IDS:
            raise UsageError(f"unknown suite {s!r}; known: {', '.join(SUITE_IDS)}")
    subjects = _subjects(args.source, field, args.max_n, None)
    reports = [verify_on_census(subjects, s) for s in suites]
    ok = all(r.ok for r in reports)
    result = {"source": args.source, "field": field.value, "ok": ok, "suites": [r.to_json() for r in reports]}
    if not ok:
        path = args.counterexamples or Path(f"counterexamples-{args.suite}.json")
        path.write_text(json.dumps(result, indent=2) + "\n")
        result["counterexample_file"] = str(path)
    summary = {"source": args.source, "field": field.value, "ok": ok,
               "suites": [{k: v for k, v in r.to_json().items() if k != "counterexamples"} for r in reports]}
    if "counterexample_file" in result:
        summary["counterexample_file"] = result["counterexample_file"]
    text = "".join(
        f"{r.suite}: {'PASS' if r.ok else 'FAIL'} (passed {r.passed}, failed {r.failed}, skipped {r.skipped})"
        f"{' [report only]' if r.report_only else ''}\n"
        for r in reports
    )
    _emit(summary, args.format, args.out, text)
    return 0 if ok else 1


def cmd_transform(args) -> int:
    c = _load(args)
    if args.format == "json":
        _emit({"n": c.n, "facets": [list(f) for f in c.facets]}, "json", args.out)
    else:
        _emit({}, "text", args.out, format_facets(c))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagsphere", description="Flag homology sphere toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=["gf2", "q"], default="gf2")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out", type=Path)
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("source", nargs="?", help="construction expression")
    src.add_argument("--expr")
    src.add_argument("--file", type=Path, help="facet file; available as 'input' in expressions")

    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("gamma", parents=[common, src], help="f, h and gamma vectors").set_defaults(fn=cmd_gamma)
    sub.add_parser("check", parents=[common, src], help="flagness and certification").set_defaults(fn=cmd_check)
    sub.add_parser("equators", parents=[common, src], help="all equators").set_defaults(fn=cmd_equators)
    sub.add_parser("transform", parents=[common, src], help="evaluate and print facets").set_defaults(
        fn=cmd_transform)
    e = sub.add_parser("enumerate", parents=[common], help="census of flag spheres on n vertices")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--dim", type=int, help="geometric dimension d-1")
    e.add_argument("--shards", type=_shard, default=(0, 1), help="i/k")
    e.set_defaults(fn=cmd_enumerate)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, help=f"one of {', '.join(SUITE_IDS)} or 'all'")
    v.add_argument("--source", default="census:n<=9", help="census:n<=N[,d=D] | corpus[:n<=N] | expr:E | file:P")
    v.add_argument("--counterexamples", type=Path, help="where to write failures")
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, DSLError, FlagSphereError, ValueError, KeyError) as exc:
        sys.stderr.write(f"flagsphere: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
