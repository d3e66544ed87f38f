"""Building artifacts by hand and enumerating representative artifacts."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, replace
from typing import Optional, Union

from lsawfp.errors import (
    EmptySchedule,
    ModelError,
    NotALeaf,
    NotASecondOccurrence,
    PrunedNode,
    UnproductiveSort,
)
from lsawfp.model import (
    GMWf,
    Artifact,
    ArtifactNode,
    Mode,
    Path,
    Production,
    Sort,
    SortKind,
    SortLike,
)


@dataclass(frozen=True)
class Combination:
    """Tasks that may immediately follow a node, in sequence or in parallel."""

    tasks: tuple[Sort, ...]
    mode: Mode = Mode.SEQ

    def __post_init__(self):
        tasks = tuple(t if isinstance(t, Sort) else Sort(t) for t in self.tasks)
        if not tasks:
            raise ModelError("a combination needs at least one task")
        names = [t.name for t in tasks]
        if len(set(names)) != len(names):
            raise ModelError(f"repeated task in combination {names}")
        object.__setattr__(self, "tasks", tasks)
        object.__setattr__(self, "mode", Mode(self.mode))


def new_artifact(root: SortLike) -> Artifact:
    sort = root if isinstance(root, Sort) else Sort(root)
    return Artifact(ArtifactNode(sort.name, kind=sort.kind))


def expand_node(a: Artifact, path: Path, c: Optional[Combination]) -> Artifact:
    """Attach ``c.tasks`` as the children of the leaf at ``path``.

    ``a`` is left untouched. Expanding with ``None`` returns ``a`` itself.
    """
    target = a.node(tuple(path))
    if c is None:
        return a
    if target.pruned:
        raise PrunedNode(f"node {target.label} is pruned and cannot be expanded")
    if not target.is_leaf:
        raise NotALeaf(f"node {target.label} is already expanded")
    kids = tuple(ArtifactNode(t.name, kind=t.kind) for t in c.tasks)
    return a.update(tuple(path), lambda n: replace(n, children=kids, child_mode=c.mode))


def is_second_occurrence(a: Artifact, path: Path) -> bool:
    target = a.node(tuple(path))
    return any(n.label == target.label for n in a.ancestors(tuple(path)))


def prune(a: Artifact, path: Path) -> Artifact:
    path = tuple(path)
    target = a.node(path)
    if target.pruned:
        return a
    if not target.is_leaf:
        raise NotALeaf(f"only leaves can be pruned, {target.label} has children")
    if not is_second_occurrence(a, path):
        raise NotASecondOccurrence(
            f"{target.label} does not already occur above {list(path)}"
        )
    return a.update(path, lambda n: replace(n, pruned=True))


# -- representative artifacts --------------------------------------------------


def _representative_subtrees(
    g: GMWf, label: str, above: frozenset[str]
) -> Iterator[ArtifactNode]:
    kind = g.kind(label)
    if label in above:
        yield ArtifactNode(label, pruned=True, kind=kind)
        return
    prods = g.productions_for(label)
    if not prods:
        raise UnproductiveSort(f"sort {label} has no production and cannot be unfolded")
    below = above | {label}
    for p in prods:
        options = [list(_representative_subtrees(g, s, below)) for s in p.rhs]
        for kids in itertools.product(*options):
            yield ArtifactNode(label, kids, p.mode, kind=kind)


def enumerate_representatives(g: GMWf) -> list[Artifact]:
    """Every maximal unfolding of ``g``, pruned at second occurrences.

    Production choices are explored in declaration order, so artifacts come
    out in lexicographic choice order, axiom by axiom.
    """
    seen: set[tuple] = set()
    out: list[Artifact] = []
    for axiom in g.axioms:
        for root in _representative_subtrees(g, axiom, frozenset()):
            art = Artifact(root)
            key = art.shape()
            if key not in seen:
                seen.add(key)
                out.append(art)
    return out


def count_representatives(g: GMWf) -> int:
    """Number of representatives without building them.

    Distinct production choices always give distinct trees, so the product
    count is exact as long as ``g`` holds no duplicate productions.
    """

    def count(label: str, above: frozenset[str]) -> int:
        if label in above:
            return 1
        prods = g.productions_for(label)
        if not prods:
            raise UnproductiveSort(f"sort {label} has no production and cannot be unfolded")
        below = above | {label}
        total = 0
        for p in prods:
            k = 1
            for s in p.rhs:
                k *= count(s, below)
                if k == 0:
                    break
            total += k
        return total

    return sum(count(a, frozenset()) for a in dict.fromkeys(g.axioms))


# -- mixed schedules -------------------------------------------------------------


@dataclass(frozen=True)
class Seq:
    items: tuple["Schedule", ...]

    def __init__(self, *items: "Schedule"):
        object.__setattr__(self, "items", tuple(items))

    mode = Mode.SEQ


@dataclass(frozen=True)
class Par:
    items: tuple["Schedule", ...]

    def __init__(self, *items: "Schedule"):
        object.__setattr__(self, "items", tuple(items))

    mode = Mode.PAR


Schedule = Union[str, Seq, Par]


def _schedule_leaves(expr: Schedule) -> Iterator[str]:
    if isinstance(expr, str):
        yield expr
    else:
        for item in expr.items:
            yield from _schedule_leaves(item)


def normalize_decomposition(
    parent: SortLike,
    schedule: Schedule,
    fresh_prefix: str = "S",
    existing: Iterable[str] = (),
) -> list[Production]:
    """Encode a nested sequential/parallel schedule with two-form productions.

    Each nested group below the top level gets a fresh restructuring symbol
    ``fresh_prefix + n``; candidate names already present in ``existing`` or
    among the schedule's leaves are skipped.
    """
    parent = parent.name if isinstance(parent, Sort) else parent
    taken = set(existing) | set(_schedule_leaves(schedule)) | {parent}
    counter = itertools.count(1)

    def fresh() -> str:
        while True:
            name = f"{fresh_prefix}{next(counter)}"
            if name not in taken:
                taken.add(name)
                return name

    out: list[Production] = []

    def emit(lhs: str, expr: Schedule) -> None:
        if isinstance(expr, str):
            out.append(Production(f"n{len(out) + 1}", lhs, (expr,)))
            return
        if not expr.items:
            raise EmptySchedule(f"empty group under {lhs}")
        rhs, pending = [], []
        for item in expr.items:
            if isinstance(item, str):
                rhs.append(item)
            else:
                name = fresh()
                rhs.append(name)
                pending.append((name, item))
        out.append(Production(f"n{len(out) + 1}", lhs, tuple(rhs), expr.mode))
        for name, item in pending:
            emit(name, item)

    if not isinstance(schedule, str) and not schedule.items:
        raise EmptySchedule(f"empty schedule for {parent}")
    emit(parent, schedule)
    return out


def fresh_sorts(parent: SortLike, productions: Sequence[Production]) -> list[Sort]:
    """Restructuring sorts introduced by :func:`normalize_decomposition`."""
    parent = parent.name if isinstance(parent, Sort) else parent
    return [Sort(p.lhs, SortKind.RESTRUCTURING) for p in productions if p.lhs != parent]


def flatten_schedule(parent: SortLike, productions: Sequence[Production]) -> Schedule:
    """Inverse of :func:`normalize_decomposition`: inline the fresh symbols."""
    parent = parent.name if isinstance(parent, Sort) else parent
    by_lhs = {p.lhs: p for p in productions}

    def build(lhs: str, top: bool) -> Schedule:
        p = by_lhs[lhs]
        items = tuple(build(s, False) if s in by_lhs else s for s in p.rhs)
        if top and len(items) == 1 and isinstance(items[0], str):
            return items[0]
        return Seq(*items) if p.mode is Mode.SEQ else Par(*items)

    if parent not in by_lhs:
        raise ModelError(f"no production for {parent}")
    return build(parent, True)
