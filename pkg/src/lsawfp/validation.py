"""Whole-model well-formedness checks producing reports instead of raising."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from lsawfp.model import GMAWfP, GMWf, SortKind, productive_sorts, reachable_sorts


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    location: str = ""

    def render(self) -> str:
        where = f" [{self.location}]" if self.location else ""
        return f"{self.code}{where}: {self.message}"


@dataclass
class ValidationReport:
    errors: list[Issue] = field(default_factory=list)
    warnings: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, code: str, message: str, location: str = "") -> None:
        self.errors.append(Issue(code, message, location))

    def warn(self, code: str, message: str, location: str = "") -> None:
        self.warnings.append(Issue(code, message, location))

    def extend(self, other: "ValidationReport") -> None:
        self.errors.extend(other.errors)
        self.warnings.extend(other.warnings)

    @property
    def error_codes(self) -> list[str]:
        return [i.code for i in self.errors]

    @property
    def warning_codes(self) -> list[str]:
        return [i.code for i in self.warnings]

    def render(self) -> str:
        lines = [f"error   {i.render()}" for i in self.errors]
        lines += [f"warning {i.render()}" for i in self.warnings]
        lines.append(f"{len(self.errors)} error(s), {len(self.warnings)} warning(s)")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        def dump(items):
            return [{"code": i.code, "message": i.message, "location": i.location} for i in items]

        return {"ok": self.ok, "errors": dump(self.errors), "warnings": dump(self.warnings)}


def validate_gmwf(g: GMWf, strict: bool = False) -> ValidationReport:
    report = ValidationReport()
    counts = Counter(s.name for s in g.sorts)
    for name, n in counts.items():
        if n > 1:
            report.error("DUPLICATE_SORT", f"sort {name} declared {n} times", f"sort {name}")
    names = set(counts)
    kinds = {s.name: s.kind for s in g.sorts}

    if names and not g.axioms:
        report.error("EMPTY_AXIOMS", "the grammar has no axiom")
    for a in g.axioms:
        if a not in names:
            report.error("UNKNOWN_SORT", f"axiom {a} is not a declared sort", f"axiom {a}")

    ids = Counter(p.id for p in g.productions)
    for pid, n in ids.items():
        if n > 1:
            report.error("DUPLICATE_PRODUCTION_ID", f"id {pid} used {n} times", f"production {pid}")
    seen_keys: dict[tuple, str] = {}
    for p in g.productions:
        for s in (p.lhs, *p.rhs):
            if s not in names:
                report.error(
                    "UNKNOWN_SORT", f"{p.render()} references unknown sort {s}", f"production {p.id}"
                )
        if p.key in seen_keys:
            report.error(
                "DUPLICATE_PRODUCTION",
                f"{p.render()} duplicates {seen_keys[p.key]}",
                f"production {p.id}",
            )
        else:
            seen_keys[p.key] = p.id

    reachable = reachable_sorts(g)
    with_prods = {p.lhs for p in g.productions}
    in_rhs = {s for p in g.productions for s in p.rhs}
    productive = productive_sorts(g)
    for name in counts:
        loc = f"sort {name}"
        if name not in reachable:
            report.error("UNREACHABLE", f"sort {name} is unreachable from every axiom", loc)
        if name not in with_prods:
            report.error("NO_PRODUCTION", f"sort {name} has no production", loc)
        elif name not in productive:
            report.warn("NO_TERMINATING_UNFOLDING", f"sort {name} has no terminating unfolding", loc)
        if kinds[name] is SortKind.RESTRUCTURING:
            prods = [p for p in g.productions if p.lhs == name]
            if prods and all(p.is_epsilon for p in prods) and name not in in_rhs:
                report.error(
                    "USELESS_RESTRUCTURING",
                    f"restructuring sort {name} only derives epsilon and is never used",
                    loc,
                )
    for a in g.axioms:
        if kinds.get(a) is SortKind.RESTRUCTURING:
            msg = f"axiom {a} is a restructuring sort"
            if strict:
                report.error("RESTRUCTURING_AXIOM", msg, f"axiom {a}")
            else:
                report.warn("RESTRUCTURING_AXIOM", msg, f"axiom {a}")
    return report


def validate_gmawfp(w: GMAWfP, strict: bool = False) -> ValidationReport:
    """Grammar checks plus accreditation coherence.

    ``strict`` turns multi-writer tasks and restructuring axioms into errors;
    everything that fails non-strict also fails strict.
    """
    g = w.gmwf
    report = validate_gmwf(g, strict=strict)
    names = {s.name for s in g.sorts}

    actor_counts = Counter(w.actors)
    for actor, n in actor_counts.items():
        if n > 1:
            report.error("ACTOR_MISMATCH", f"actor {actor} declared {n} times", f"actor {actor}")
    acc_counts = Counter(a.actor for a in w.accreditations)
    for actor in actor_counts:
        if acc_counts[actor] != 1:
            report.error(
                "ACTOR_MISMATCH",
                f"actor {actor} has {acc_counts[actor]} accreditations",
                f"actor {actor}",
            )
    for actor in acc_counts:
        if actor not in actor_counts:
            report.error(
                "ACTOR_MISMATCH", f"accreditation for undeclared actor {actor}", f"actor {actor}"
            )

    writers: dict[str, list[str]] = {s: [] for s in names}
    for acc in w.accreditations:
        loc = f"actor {acc.actor}"
        for right in ("r", "w", "x"):
            for s in getattr(acc, right):
                if s not in names:
                    report.error(
                        "UNKNOWN_SORT", f"{right}-set of {acc.actor} references unknown sort {s}", loc
                    )
        outside = [s for s in acc.w if s not in acc.r]
        if outside:
            report.error(
                "WRITE_OUTSIDE_READ",
                f"{acc.actor} writes {', '.join(outside)} without reading it",
                loc,
            )
        if acc.is_empty:
            report.warn("EMPTY_ACCREDITATION", f"actor {acc.actor} has no rights at all", loc)
        own = [s for s in acc.x if s in acc.w]
        if own:
            report.warn(
                "X_SELF_TARGET", f"{acc.actor} may request its own tasks {', '.join(own)}", loc
            )
        for s in acc.w:
            if s in writers:
                writers[s].append(acc.actor)

    for s in g.sorts:
        if s.kind is not SortKind.TASK:
            continue
        who = writers.get(s.name, [])
        loc = f"sort {s.name}"
        if not who:
            report.error("NO_WRITER", f"task {s.name} has no writer", loc)
        elif len(who) > 1:
            msg = f"task {s.name} has several writers: {', '.join(who)}"
            if strict:
                report.error("MULTIPLE_WRITERS", msg, loc)
            else:
                report.warn("MULTIPLE_WRITERS", msg, loc)

    default_writers = _default_restructuring_writers(g, writers)
    for acc in w.accreditations:
        for s in acc.x:
            if s in names and not writers[s] and not default_writers.get(s):
                report.error(
                    "X_TARGET_NO_WRITER",
                    f"{acc.actor} may request {s} but nobody writes it",
                    f"actor {acc.actor}",
                )

    for s in g.sorts:
        if s.kind is SortKind.RESTRUCTURING:
            blind = [acc.actor for acc in w.accreditations if s.name not in acc.r]
            if blind:
                report.warn(
                    "RESTRUCTURING_NOT_READABLE",
                    f"restructuring sort {s.name} is hidden from {', '.join(blind)}",
                    f"sort {s.name}",
                )
    return report


def _default_restructuring_writers(g: GMWf, writers: dict[str, list[str]]) -> dict[str, set[str]]:
    out: dict[str, set[str]] = {}
    for s in g.sorts:
        if s.kind is SortKind.RESTRUCTURING and not writers.get(s.name):
            out[s.name] = {
                a for p in g.productions if s.name in p.rhs for a in writers.get(p.lhs, [])
            }
    return out
