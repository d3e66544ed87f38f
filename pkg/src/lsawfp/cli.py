"""Command-line entry point: ``lsawfp <command> ...``.

Exit status is 0 on success, 1 when the input is invalid or a run fails, and
2 on usage errors (bad options, unreadable files).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from lsawfp.builder import enumerate_representatives
from lsawfp.derivation import derive_gmwf
from lsawfp.dot import export_artifact_graph
from lsawfp.errors import LsawfpError, SimulationError, SpecError
from lsawfp.scenarios import count_linearizations, count_scenarios, linearizations, unfold
from lsawfp.serialize import (
    artifact_to_dict,
    dumps,
    events_to_jsonl,
    load_artifact,
    load_policy,
    save_artifact,
)
from lsawfp.simulator import SimConfig, run
from lsawfp.specfile import from_model, parse_spec, print_spec, to_gmawfp, to_gmwf, to_policy
from lsawfp.validation import validate_gmawfp, validate_gmwf
from lsawfp.views import project_artifact, project_gmwf, view_of

OK, INVALID, USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Reported(LsawfpError):
    """An error whose message already names the file and position."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_doc(path: str):
    text = _read(path)
    try:
        return parse_spec(text)
    except SpecError as exc:
        where = f"{path}:{exc.line}:{exc.col or 1}" if exc.line else path
        raise _Reported(f"{where}: {type(exc).__name__}: {exc.message}") from exc


def _load_artifact(path: str):
    _read(path)
    try:
        return load_artifact(path)
    except (ValueError, KeyError, TypeError) as exc:
        raise _Reported(f"{path}: not a valid artifact file ({exc})") from exc


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_validate(args) -> int:
    doc = _load_doc(args.spec)
    if doc.actors or doc.accreditations:
        report = validate_gmawfp(to_gmawfp(doc, checked=False), strict=args.strict)
    else:
        report = validate_gmwf(to_gmwf(doc, checked=False), strict=args.strict)
    _out(dumps(report.to_dict()) if args.json else report.render())
    return OK if report.ok else INVALID


def cmd_derive(args) -> int:
    arts = [_load_artifact(p) for p in args.artifacts]
    restructuring = [s for s in (args.restructuring or "").split(",") if s]
    g = derive_gmwf(arts, restructuring)
    text = print_spec(from_model(args.name, g))
    if args.output == "-":
        _out(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        _out(f"{len(g.productions)} production(s), axioms {', '.join(g.axioms)} -> {args.output}")
    return OK


def cmd_representatives(args) -> int:
    g = to_gmwf(_load_doc(args.spec))
    arts = enumerate_representatives(g)
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, a in enumerate(arts, 1):
            save_artifact(out / f"art{i}.json", a)
    for i, a in enumerate(arts, 1):
        _out(f"art{i}: {a}")
    return OK


def cmd_unfold(args) -> int:
    g = to_gmwf(_load_doc(args.spec))
    if args.count:
        _out(str(count_scenarios(g, args.bound)))
        return OK
    arts = unfold(g, args.bound)
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, a in enumerate(arts, 1):
            save_artifact(out / f"scenario{i}.json", a)
    for a in arts:
        _out(str(a))
    return OK


def cmd_linearize(args) -> int:
    art = _load_artifact(args.artifact)
    if args.count:
        _out(str(count_linearizations(art)))
        return OK
    for seq in linearizations(art, args.limit):
        _out(" ".join(seq))
    return OK


def cmd_project(args) -> int:
    doc = _load_doc(args.spec)
    model = to_gmawfp(doc)
    view = view_of(model, args.actor)
    _out(f"view {args.actor}: {{{','.join(view)}}}")
    if args.artifact:
        _out(dumps(artifact_to_dict(project_artifact(_load_artifact(args.artifact), view))))
    else:
        projected = project_gmwf(model.gmwf, view)
        if projected.is_empty:
            _out("(nothing visible)")
        else:
            _out(print_spec(from_model(f"{doc.name}_{args.actor}", projected)))
    return OK


def cmd_simulate(args) -> int:
    doc = _load_doc(args.spec)
    model = to_gmawfp(doc)
    if Path(args.policy).is_file():
        try:
            policy = load_policy(args.policy)
        except (ValueError, KeyError) as exc:
            raise _Reported(f"{args.policy}: not a valid policy file ({exc})") from exc
    else:
        try:
            policy = to_policy(doc.policy(args.policy))
        except KeyError:
            raise _UsageError(f"no policy file or policy block named {args.policy}") from None
    cfg = SimConfig.uniform(model, policy, max_steps=args.max_steps)
    try:
        art, events = run(cfg)
    except SimulationError as exc:
        if args.trace:
            Path(args.trace).write_text(events_to_jsonl(exc.events), encoding="utf-8")
        for e in exc.events:
            _out(e.render())
        raise
    if args.trace:
        Path(args.trace).write_text(events_to_jsonl(events), encoding="utf-8")
    for e in events:
        _out(e.render())
    executed = [e.label for e in events if e.kind.value == "Execute"]
    _out(f"executed: {' '.join(executed)}")
    _out(f"final: {art}  [{art.root.state.value}]")
    return OK


def cmd_export_dot(args) -> int:
    _out(export_artifact_graph(_load_artifact(args.artifact)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lsawfp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a specification file")
    p.add_argument("spec")
    p.add_argument("--strict", action="store_true", help="one writer per task, no restructuring axiom")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("derive", help="derive a grammar from artifact files")
    p.add_argument("artifacts", nargs="+")
    p.add_argument("-o", "--output", required=True, help="spec file to write, '-' for stdout")
    p.add_argument("--name", default="Derived", help="process name")
    p.add_argument("--restructuring", help="comma-separated restructuring sorts")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("representatives", help="enumerate representative artifacts")
    p.add_argument("spec")
    p.add_argument("-o", "--output", help="directory for art<N>.json files")
    p.set_defaults(func=cmd_representatives)

    p = sub.add_parser("unfold", help="list complete scenarios up to an iteration bound")
    p.add_argument("spec")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("-o", "--output", help="directory for scenario<N>.json files")
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("linearize", help="legal execution orders of a complete artifact")
    p.add_argument("artifact")
    p.add_argument("--limit", type=int, default=100)
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("project", help="an actor's view and perceived grammar")
    p.add_argument("spec")
    p.add_argument("--actor", required=True)
    p.add_argument("--artifact", help="project this artifact file instead of the grammar")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("simulate", help="run the mobile-artifact simulation")
    p.add_argument("spec")
    p.add_argument("--policy", required=True, help="policy JSON file or policy block name")
    p.add_argument("--trace", help="write the event trace as JSON lines")
    p.add_argument("--max-steps", type=int, default=1000)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export-dot", help="render an artifact file as a DOT graph")
    p.add_argument("artifact")
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "bound", 0) is not None and getattr(args, "bound", 0) < 0:
        print("lsawfp: error: --bound must be non-negative", file=sys.stderr)
        return USAGE
    if getattr(args, "limit", 1) < 1:
        print("lsawfp: error: --limit must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"lsawfp: error: {exc}", file=sys.stderr)
        return USAGE
    except _Reported as exc:
        print(f"lsawfp: {exc}", file=sys.stderr)
        return INVALID
    except (LsawfpError, ValueError) as exc:
        print(f"lsawfp: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INVALID


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
