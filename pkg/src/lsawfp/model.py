"""Domain types: sorts, productions, grammars, accreditations and artifacts.

Every type is a frozen dataclass. Constructors enforce the structural
invariants; ``unchecked`` alternate constructors exist for deserialization so
that malformed models can still be loaded and reported by
:mod:`lsawfp.validation`.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, fields, replace
from enum import Enum
from functools import cached_property
from typing import Callable, Optional, Union

from lsawfp.errors import (
    ActorMismatch,
    DuplicateProductionId,
    DuplicateSortName,
    EmptyAxioms,
    IllegalTransition,
    InvalidPath,
    ModelError,
    NoWriter,
    UnknownActor,
    UnknownSort,
    WriteOutsideRead,
)

Path = tuple[int, ...]
Status = Optional[str]

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


class SortKind(str, Enum):
    TASK = "task"
    RESTRUCTURING = "restructuring"


class Mode(str, Enum):
    SEQ = "seq"
    PAR = "par"

    @property
    def symbol(self) -> str:
        return ";" if self is Mode.SEQ else "||"


class ExecState(str, Enum):
    OPEN = "open"
    EXECUTED = "executed"
    CLOSED = "closed"

    @property
    def rank(self) -> int:
        return _STATE_RANK[self]


_STATE_RANK = {ExecState.OPEN: 0, ExecState.EXECUTED: 1, ExecState.CLOSED: 2}
_LEGAL_TRANSITIONS = {
    (ExecState.OPEN, ExecState.EXECUTED),
    (ExecState.EXECUTED, ExecState.CLOSED),
}


def _unchecked(cls, **values):
    obj = object.__new__(cls)
    for f in fields(cls):
        object.__setattr__(obj, f.name, values[f.name])
    return obj


def _ordered_unique(items: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(items))


# -- grammar ------------------------------------------------------------------


@dataclass(frozen=True)
class Sort:
    name: str
    kind: SortKind = SortKind.TASK

    def __post_init__(self):
        if not isinstance(self.name, str) or not _NAME_RE.match(self.name):
            raise ModelError(f"invalid sort name {self.name!r}")
        object.__setattr__(self, "kind", SortKind(self.kind))

    @property
    def is_task(self) -> bool:
        return self.kind is SortKind.TASK

    def __str__(self) -> str:
        return self.name


SortLike = Union[Sort, str]


def _sort_name(s: SortLike) -> str:
    return s.name if isinstance(s, Sort) else s


@dataclass(frozen=True)
class Production:
    """A precedence rule ``lhs -> rhs`` with a single annotation for the rhs.

    An empty rhs is the epsilon production. Right-hand sides of length 0 or 1
    always carry ``Mode.SEQ`` so that structurally equal rules compare equal.
    """

    id: str
    lhs: str
    rhs: tuple[str, ...] = ()
    mode: Mode = Mode.SEQ

    def __post_init__(self):
        object.__setattr__(self, "lhs", _sort_name(self.lhs))
        object.__setattr__(self, "rhs", tuple(_sort_name(s) for s in self.rhs))
        mode = Mode(self.mode)
        if len(self.rhs) <= 1:
            mode = Mode.SEQ
        object.__setattr__(self, "mode", mode)

    @property
    def key(self) -> tuple[str, tuple[str, ...], Mode]:
        """Structural identity, ignoring the production id."""
        return (self.lhs, self.rhs, self.mode)

    @property
    def is_epsilon(self) -> bool:
        return not self.rhs

    def render(self) -> str:
        if not self.rhs:
            return f"{self.lhs} -> ."
        return f"{self.lhs} -> " + f" {self.mode.symbol} ".join(self.rhs)

    def __str__(self) -> str:
        return f"{self.id}: {self.render()}"


@dataclass(frozen=True)
class GMWf:
    """Grammatical model of workflow: sorts, productions and axioms."""

    sorts: tuple[Sort, ...]
    productions: tuple[Production, ...]
    axioms: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "sorts", tuple(self.sorts))
        object.__setattr__(self, "productions", tuple(self.productions))
        object.__setattr__(self, "axioms", tuple(_sort_name(a) for a in self.axioms))
        self._check()

    @classmethod
    def unchecked(cls, sorts, productions, axioms) -> "GMWf":
        return _unchecked(
            cls, sorts=tuple(sorts), productions=tuple(productions), axioms=tuple(axioms)
        )

    @classmethod
    def empty(cls) -> "GMWf":
        return cls((), (), ())

    def _check(self) -> None:
        seen: set[str] = set()
        for s in self.sorts:
            if s.name in seen:
                raise DuplicateSortName(f"sort {s.name} declared twice")
            seen.add(s.name)
        if not self.sorts:
            if self.productions or self.axioms:
                raise UnknownSort("productions or axioms given over an empty sort set")
            return
        if not self.axioms:
            raise EmptyAxioms("a GMWf needs at least one axiom")
        for a in self.axioms:
            if a not in seen:
                raise UnknownSort(f"axiom {a} is not a declared sort")
        ids: set[str] = set()
        for p in self.productions:
            if p.id in ids:
                raise DuplicateProductionId(f"production id {p.id} used twice")
            ids.add(p.id)
            for s in (p.lhs, *p.rhs):
                if s not in seen:
                    raise UnknownSort(f"production {p} references unknown sort {s}")

    @cached_property
    def _by_name(self) -> dict[str, Sort]:
        return {s.name: s for s in self.sorts}

    @cached_property
    def _by_lhs(self) -> dict[str, tuple[Production, ...]]:
        table: dict[str, list[Production]] = {}
        for p in self.productions:
            table.setdefault(p.lhs, []).append(p)
        return {k: tuple(v) for k, v in table.items()}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sorts)

    @property
    def is_empty(self) -> bool:
        return not self.sorts

    def has_sort(self, name: str) -> bool:
        return name in self._by_name

    def sort(self, name: str) -> Sort:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownSort(f"unknown sort {name}") from None

    def kind(self, name: str) -> SortKind:
        return self.sort(name).kind

    def is_task(self, name: str) -> bool:
        return self.sort(name).is_task

    def productions_for(self, name: SortLike) -> tuple[Production, ...]:
        name = _sort_name(name)
        if name not in self._by_name:
            raise UnknownSort(f"unknown sort {name}")
        return self._by_lhs.get(name, ())

    def production(self, pid: str) -> Production:
        for p in self.productions:
            if p.id == pid:
                return p
        raise KeyError(pid)

    @property
    def task_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sorts if s.is_task)

    @property
    def restructuring_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sorts if not s.is_task)

    def __str__(self) -> str:
        lines = [f"axioms: {', '.join(self.axioms)}"]
        lines += [str(p) for p in self.productions]
        return "\n".join(lines)


def make_gmwf(
    sorts: Iterable[SortLike],
    productions: Iterable[Production],
    axioms: Iterable[SortLike],
) -> GMWf:
    sorts = tuple(s if isinstance(s, Sort) else Sort(s) for s in sorts)
    return GMWf(sorts, tuple(productions), tuple(_sort_name(a) for a in axioms))


def productions_for(g: GMWf, s: SortLike) -> tuple[Production, ...]:
    """All productions of ``g`` whose lhs is ``s``, in declaration order."""
    return g.productions_for(s)


def structurally_equal(g: GMWf, h: GMWf) -> bool:
    """Grammar equality up to production ids and declaration order."""
    return (
        set(g.sorts) == set(h.sorts)
        and set(g.axioms) == set(h.axioms)
        and {p.key for p in g.productions} == {p.key for p in h.productions}
    )


def productive_sorts(g: GMWf) -> set[str]:
    """Least fixpoint of sorts that admit at least one finite derivation tree."""
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs not in productive and all(s in productive for s in p.rhs):
                productive.add(p.lhs)
                changed = True
    return productive


def reachable_sorts(g: GMWf) -> set[str]:
    """Sorts reachable from an axiom through rhs edges."""
    seen = set(a for a in g.axioms)
    stack = list(seen)
    while stack:
        s = stack.pop()
        for p in g._by_lhs.get(s, ()):
            for t in p.rhs:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    return seen


# -- organisation -------------------------------------------------------------


@dataclass(frozen=True)
class Accreditation:
    """Read / write / execute rights of one actor.

    The sets are stored as ordered tuples without duplicates so that a view is
    reported in the order the designer wrote it.
    """

    actor: str
    r: tuple[str, ...] = ()
    w: tuple[str, ...] = ()
    x: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("r", "w", "x"):
            object.__setattr__(
                self, name, _ordered_unique(_sort_name(s) for s in getattr(self, name))
            )
        outside = [s for s in self.w if s not in self.r]
        if outside:
            raise WriteOutsideRead(
                f"actor {self.actor} writes {', '.join(outside)} without reading it"
            )

    @classmethod
    def unchecked(cls, actor, r=(), w=(), x=()) -> "Accreditation":
        return _unchecked(
            cls,
            actor=actor,
            r=_ordered_unique(r),
            w=_ordered_unique(w),
            x=_ordered_unique(x),
        )

    @property
    def view(self) -> frozenset[str]:
        return frozenset(self.r)

    @property
    def is_empty(self) -> bool:
        return not (self.r or self.w or self.x)

    def sorts(self) -> tuple[str, ...]:
        return _ordered_unique((*self.r, *self.w, *self.x))


def make_accreditation(
    actor: str,
    r: Iterable[SortLike],
    w: Iterable[SortLike],
    x: Iterable[SortLike],
    g: GMWf,
) -> Accreditation:
    acc = Accreditation(actor, tuple(r), tuple(w), tuple(x))
    for s in acc.sorts():
        if not g.has_sort(s):
            raise UnknownSort(f"accreditation of {actor} references unknown sort {s}")
    return acc


@dataclass(frozen=True)
class GMAWfP:
    """A process specification: grammar, actors and their accreditations."""

    gmwf: GMWf
    actors: tuple[str, ...]
    accreditations: tuple[Accreditation, ...]

    def __post_init__(self):
        object.__setattr__(self, "actors", tuple(self.actors))
        object.__setattr__(self, "accreditations", tuple(self.accreditations))
        self._check()

    @classmethod
    def unchecked(cls, gmwf, actors, accreditations) -> "GMAWfP":
        return _unchecked(
            cls, gmwf=gmwf, actors=tuple(actors), accreditations=tuple(accreditations)
        )

    def _check(self) -> None:
        if len(set(self.actors)) != len(self.actors):
            raise ActorMismatch("actor declared twice")
        acc_actors = [a.actor for a in self.accreditations]
        if len(set(acc_actors)) != len(acc_actors) or set(acc_actors) != set(self.actors):
            raise ActorMismatch("actors and accreditations must be in bijection")
        for acc in self.accreditations:
            for s in acc.sorts():
                if not self.gmwf.has_sort(s):
                    raise UnknownSort(f"accreditation of {acc.actor} references {s}")
        for task in self.gmwf.task_names:
            if not self.writers(task):
                raise NoWriter(f"task {task} has no writer")

    @cached_property
    def _acc_by_actor(self) -> dict[str, Accreditation]:
        return {a.actor: a for a in self.accreditations}

    def accreditation(self, actor: str) -> Accreditation:
        try:
            return self._acc_by_actor[actor]
        except KeyError:
            raise UnknownActor(f"unknown actor {actor}") from None

    def writers(self, sort: str) -> tuple[str, ...]:
        return tuple(
            a for a in self.actors if a in self._acc_by_actor and sort in self._acc_by_actor[a].w
        )

    def readers(self, sort: str) -> tuple[str, ...]:
        return tuple(
            a for a in self.actors if a in self._acc_by_actor and sort in self._acc_by_actor[a].r
        )

    def effective_writes(self) -> dict[str, frozenset[str]]:
        """Write sets completed with the default for unassigned restructuring sorts.

        A restructuring sort nobody writes is written by whoever writes the lhs
        of a production in which it occurs.
        """
        table = {a: set(self.accreditation(a).w) for a in self.actors}
        for s in self.gmwf.restructuring_names:
            if self.writers(s):
                continue
            for p in self.gmwf.productions:
                if s in p.rhs:
                    for actor in self.writers(p.lhs):
                        table[actor].add(s)
        return {a: frozenset(ws) for a, ws in table.items()}


# -- artifacts ----------------------------------------------------------------


@dataclass(frozen=True)
class ArtifactNode:
    """One task instance inside an artifact.

    ``child_mode`` only matters with two or more children and is forced to
    ``Mode.SEQ`` otherwise. Nodes are immutable; state changes go through
    :meth:`advance` and :meth:`with_status`, which return new nodes.
    """

    label: str
    children: tuple["ArtifactNode", ...] = ()
    child_mode: Mode = Mode.SEQ
    status: Status = None
    state: ExecState = ExecState.OPEN
    pruned: bool = False
    kind: SortKind = SortKind.TASK

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        object.__setattr__(self, "state", ExecState(self.state))
        object.__setattr__(self, "kind", SortKind(self.kind))
        mode = Mode(self.child_mode)
        if len(self.children) <= 1:
            mode = Mode.SEQ
        object.__setattr__(self, "child_mode", mode)
        if self.pruned and self.children:
            raise ModelError(f"pruned node {self.label} cannot have children")
        if self.state is ExecState.CLOSED and any(
            c.state is not ExecState.CLOSED for c in self.children
        ):
            raise ModelError(f"node {self.label} closed while a child is still open")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_task(self) -> bool:
        return self.kind is SortKind.TASK

    def advance(self, new: ExecState) -> "ArtifactNode":
        new = ExecState(new)
        if (self.state, new) not in _LEGAL_TRANSITIONS:
            raise IllegalTransition(
                f"{self.label}: {self.state.value} -> {new.value} is not allowed"
            )
        return replace(self, state=new)

    def with_status(self, text: str) -> "ArtifactNode":
        if self.status is not None:
            raise IllegalTransition(f"status of {self.label} is already set")
        return replace(self, status=text)

    def shape(self) -> tuple:
        """Key used for isomorphism: labels, order, modes and pruned flags."""
        mode = self.child_mode.value if self.children else None
        return (self.label, mode, self.pruned, tuple(c.shape() for c in self.children))

    def walk(self, path: Path = ()) -> Iterator[tuple[Path, "ArtifactNode"]]:
        yield path, self
        for i, c in enumerate(self.children):
            yield from c.walk(path + (i,))

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def render(self) -> str:
        """Compact term notation, e.g. ``A(B ; D)``; pruned leaves get a ``!``."""
        text = self.label + ("!" if self.pruned else "")
        if self.children:
            sep = f" {self.child_mode.symbol} "
            text += "(" + sep.join(c.render() for c in self.children) + ")"
        return text


def leaf(label: str, kind: SortKind = SortKind.TASK, **kw) -> ArtifactNode:
    return ArtifactNode(label, kind=kind, **kw)


def node(label: str, *children: ArtifactNode, mode: Mode = Mode.SEQ, **kw) -> ArtifactNode:
    return ArtifactNode(label, tuple(children), mode, **kw)


@dataclass(frozen=True)
class Artifact:
    """An annotated tree; ``root`` is ``None`` for the empty artifact."""

    root: Optional[ArtifactNode]

    def __post_init__(self):
        if self.root is None:
            return

        def check(n: ArtifactNode, path: Path, above: frozenset[str]) -> None:
            if n.pruned and n.label not in above:
                raise ModelError(
                    f"pruned node {n.label} at {list(path)} is not a second occurrence"
                )
            below = above | {n.label}
            for i, c in enumerate(n.children):
                check(c, path + (i,), below)

        check(self.root, (), frozenset())

    @classmethod
    def empty(cls) -> "Artifact":
        return cls(None)

    @property
    def is_empty(self) -> bool:
        return self.root is None

    def node(self, path: Path) -> ArtifactNode:
        if self.root is None:
            raise InvalidPath("the empty artifact has no nodes")
        cur = self.root
        for i in path:
            if not isinstance(i, int) or not 0 <= i < len(cur.children):
                raise InvalidPath(f"no node at {list(path)}")
            cur = cur.children[i]
        return cur

    def ancestors(self, path: Path) -> list[ArtifactNode]:
        """Nodes strictly above ``path``, root first."""
        self.node(path)
        out, cur = [], self.root
        for i in path:
            out.append(cur)
            cur = cur.children[i]
        return out

    def walk(self) -> Iterator[tuple[Path, ArtifactNode]]:
        if self.root is not None:
            yield from self.root.walk()

    def size(self) -> int:
        return 0 if self.root is None else self.root.size()

    def labels(self) -> set[str]:
        return {n.label for _, n in self.walk()}

    def update(self, path: Path, fn: Callable[[ArtifactNode], ArtifactNode]) -> "Artifact":
        """Return a new artifact with the node at ``path`` replaced by ``fn(node)``."""
        self.node(path)

        def rebuild(cur: ArtifactNode, rest: Path) -> ArtifactNode:
            if not rest:
                return fn(cur)
            i = rest[0]
            kids = list(cur.children)
            kids[i] = rebuild(kids[i], rest[1:])
            return replace(cur, children=tuple(kids))

        return Artifact(rebuild(self.root, path))

    def shape(self) -> tuple | None:
        return None if self.root is None else self.root.shape()

    @property
    def is_complete(self) -> bool:
        return not any(n.pruned for _, n in self.walk())

    def render(self) -> str:
        return "" if self.root is None else self.root.render()

    def __str__(self) -> str:
        return self.render()


def isomorphic(a: Artifact, b: Artifact) -> bool:
    """Labels, child order, child modes and pruned flags agree node for node."""
    return a.shape() == b.shape()
