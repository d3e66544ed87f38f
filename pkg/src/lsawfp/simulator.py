"""Deterministic simulation of a mobile artifact travelling between actor sites.

One site per actor. The site holding the artifact executes every task it is
ready to run, then the artifact moves on to the next site that owns a ready
task. When ready tasks of several sites sit in disjoint branches of a
parallel decomposition, each site receives its own copy; the copies are
merged (three-way, against the snapshot taken at the fork) before routing
continues. Time is a logical counter and ties are broken by actor order.
"""

from __future__ import annotations

import itertools
from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import NamedTuple, Optional

from lsawfp.builder import new_artifact
from lsawfp.errors import (
    ConflictingEdits,
    Deadlock,
    MissingPolicyChoice,
    ModelError,
    NotReady,
    PolicyError,
    StepLimitExceeded,
)
from lsawfp.model import GMAWfP, GMWf, Artifact, ArtifactNode, ExecState, Mode, Path

DEFAULT_STATUS = "done"

ChoiceKey = tuple[str, Optional[int]]


@dataclass(frozen=True)
class Policy:
    """Scripted decisions of an actor.

    ``choices`` maps ``(sort, occurrence)`` to a production id, where
    ``occurrence`` counts the ancestors carrying the same label (0 for the
    first, 1 for the first iteration, ...). A key with occurrence ``None``
    applies to every occurrence not listed explicitly.
    """

    choices: Mapping[ChoiceKey, str] = field(default_factory=dict)
    status_writer: Mapping[str, str] = field(default_factory=dict)

    def choice(self, sort: str, occurrence: int) -> Optional[str]:
        if (sort, occurrence) in self.choices:
            return self.choices[(sort, occurrence)]
        return self.choices.get((sort, None))

    def status_for(self, sort: str) -> str:
        return self.status_writer.get(sort, DEFAULT_STATUS)

    def restricted(self, sorts: Collection[str]) -> "Policy":
        return Policy(
            {k: v for k, v in self.choices.items() if k[0] in sorts},
            {k: v for k, v in self.status_writer.items() if k in sorts},
        )

    def check(self, g: GMWf) -> None:
        for (sort, _), pid in self.choices.items():
            try:
                p = g.production(pid)
            except KeyError:
                raise PolicyError(f"policy refers to unknown production {pid}") from None
            if p.lhs != sort:
                raise PolicyError(f"production {pid} does not rewrite {sort}")


class EventKind(str, Enum):
    RECEIVE = "Receive"
    EXECUTE = "Execute"
    EXPAND = "Expand"
    CLOSE = "Close"
    SEND = "Send"
    MERGE = "Merge"
    NOTIFY = "Notify"


@dataclass(frozen=True)
class SimEvent:
    time: int
    site: str
    kind: EventKind
    node: Path
    detail: str = ""
    label: str = ""

    def render(self) -> str:
        where = "/".join(map(str, self.node)) or "root"
        text = f"{self.time:4d} {self.site:<6} {self.kind.value:<8} {self.label or '-'} @{where}"
        return f"{text}  {self.detail}" if self.detail else text


@dataclass(frozen=True)
class SimConfig:
    model: GMAWfP
    policies: Mapping[str, Policy]
    max_steps: int = 1000
    axiom: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.max_steps, int) or self.max_steps < 1:
            raise ValueError("max_steps must be a positive integer")
        for actor in self.policies:
            self.model.accreditation(actor)

    @classmethod
    def uniform(cls, model: GMAWfP, policy: Policy, **kw) -> "SimConfig":
        """Give every actor the part of ``policy`` that concerns the sorts it writes."""
        writes = model.effective_writes()
        return cls(model, {a: policy.restricted(writes[a]) for a in model.actors}, **kw)


class SimResult(NamedTuple):
    artifact: Artifact
    events: list[SimEvent]

    @property
    def executed(self) -> list[str]:
        return [e.label for e in self.events if e.kind is EventKind.EXECUTE]


# -- single steps ------------------------------------------------------------------


def ready_tasks(a: Artifact, g: GMWf, actor_w: Collection[str]) -> list[Path]:
    """Open nodes written by the actor whose predecessors are done, in preorder."""
    if a.is_empty:
        return []
    out: list[Path] = []

    def visit(n: ArtifactNode, path: Path, enabled: bool) -> None:
        if n.state is ExecState.OPEN:
            if enabled and not n.pruned and n.label in actor_w:
                out.append(path)
            return
        if n.state is not ExecState.EXECUTED:
            return
        blocked = False
        for i, c in enumerate(n.children):
            visit(c, path + (i,), not blocked)
            if n.child_mode is Mode.SEQ and c.state is not ExecState.CLOSED:
                blocked = True

    visit(a.root, (), True)
    return out


def close_completed(a: Artifact) -> tuple[Artifact, list[Path]]:
    """Close every executed node whose children are all closed, bottom-up."""
    if a.is_empty:
        return a, []
    closed: list[Path] = []

    def walk(n: ArtifactNode, path: Path) -> ArtifactNode:
        kids = tuple(walk(c, path + (i,)) for i, c in enumerate(n.children))
        if kids != n.children:
            n = replace(n, children=kids)
        if (
            n.state is ExecState.EXECUTED
            and n.children
            and all(c.state is ExecState.CLOSED for c in kids)
        ):
            n = n.advance(ExecState.CLOSED)
            closed.append(path)
        return n

    return Artifact(walk(a.root, ())), closed


def _choose(a: Artifact, path: Path, policy: Policy, g: GMWf):
    n = a.node(path)
    prods = g.productions_for(n.label)
    occurrence = sum(1 for m in a.ancestors(path) if m.label == n.label)
    pid = policy.choice(n.label, occurrence)
    if pid is None:
        if len(prods) == 1:
            return prods[0]
        if not prods:
            raise PolicyError(f"sort {n.label} has no production")
        raise MissingPolicyChoice(
            f"no choice for {n.label} (occurrence {occurrence}) among "
            + ", ".join(p.id for p in prods)
        )
    for p in prods:
        if p.id == pid:
            return p
    raise PolicyError(f"production {pid} does not rewrite {n.label}")


def _execute(a: Artifact, path: Path, policy: Policy, g: GMWf):
    n = a.node(path)
    p = _choose(a, path, policy, g)
    kids = tuple(ArtifactNode(s, kind=g.kind(s)) for s in p.rhs)
    done = n.with_status(policy.status_for(n.label)).advance(ExecState.EXECUTED)
    done = replace(done, children=kids, child_mode=p.mode)
    if not kids:
        done = done.advance(ExecState.CLOSED)
    a2, closed = close_completed(a.update(path, lambda _: done))
    if not kids:
        closed.insert(0, path)
    return a2, p, closed


def execute_task(
    a: Artifact,
    path: Path,
    policy: Policy,
    g: GMWf,
    actor_w: Optional[Collection[str]] = None,
) -> Artifact:
    """Execute the ready node at ``path``: write its status and expand it.

    The expansion follows the production picked by ``policy`` (the only one
    when the sort has a single production). An epsilon expansion closes the
    node at once, and closure then climbs as far as completed subtrees allow.
    """
    path = tuple(path)
    label = a.node(path).label
    allowed = {label} if actor_w is None else actor_w
    if path not in ready_tasks(a, g, allowed):
        raise NotReady(f"{label} at {list(path)} is not ready")
    return _execute(a, path, policy, g)[0]


# -- merging copies ----------------------------------------------------------------


def _pick(field_name: str, label: str, bv, xv, yv, has_base: bool):
    if xv == yv:
        return xv
    if has_base:
        if xv == bv:
            return yv
        if yv == bv:
            return xv
    raise ConflictingEdits(f"both copies changed {field_name} of {label}")


def _merge_node(b, x: ArtifactNode, y: ArtifactNode, has_base: bool) -> ArtifactNode:
    if x == y:
        return x
    if b is not None:
        if x == b:
            return y
        if y == b:
            return x
    elif has_base:
        raise ConflictingEdits(f"both copies created {x.label} differently")
    if x.label != y.label or x.kind != y.kind:
        raise ConflictingEdits(f"copies disagree on node {x.label} / {y.label}")

    base_known = b is not None
    if base_known:
        status = _pick("status", x.label, b.status, x.status, y.status, True)
        state = _pick("state", x.label, b.state, x.state, y.state, True)
        pruned = _pick("pruned", x.label, b.pruned, x.pruned, y.pruned, True)
    else:
        if x.status is None or y.status is None or x.status == y.status:
            status = x.status if x.status is not None else y.status
        else:
            raise ConflictingEdits(f"copies wrote different status on {x.label}")
        state = max(x.state, y.state, key=lambda s: s.rank)
        pruned = x.pruned or y.pruned

    xk = (tuple(c.label for c in x.children), x.child_mode)
    yk = (tuple(c.label for c in y.children), y.child_mode)
    if xk == yk:
        same_shape = base_known and len(b.children) == len(x.children)
        kids = tuple(
            _merge_node(b.children[i] if same_shape else None, xc, yc, has_base)
            for i, (xc, yc) in enumerate(zip(x.children, y.children))
        )
        mode = x.child_mode
    else:
        bk = (tuple(c.label for c in b.children), b.child_mode) if base_known else None
        if base_known and xk == bk or not base_known and not x.children:
            kids, mode = y.children, y.child_mode
        elif base_known and yk == bk or not base_known and not y.children:
            kids, mode = x.children, x.child_mode
        else:
            raise ConflictingEdits(f"copies expanded {x.label} differently")
    try:
        return ArtifactNode(x.label, kids, mode, status, state, pruned, x.kind)
    except ModelError as exc:
        raise ConflictingEdits(str(exc)) from exc


def merge(a1: Artifact, a2: Artifact, base: Optional[Artifact] = None) -> Artifact:
    """Combine two copies of an artifact that evolved separately.

    With ``base`` (the snapshot both copies were forked from), a node edited
    in one copy only takes that copy's version. Without it, the more advanced
    version of each node wins. Edits of the same node that disagree raise
    :class:`ConflictingEdits`.
    """
    if a1.is_empty or a2.is_empty:
        if a1 == a2:
            return a1
        raise ConflictingEdits("cannot merge an empty artifact with a non-empty one")
    b = None if base is None or base.is_empty else base.root
    merged = Artifact(_merge_node(b, a1.root, a2.root, base is not None))
    return close_completed(merged)[0]


# -- the event loop ----------------------------------------------------------------


def _disjoint_parallel(a: Artifact, per_site: Mapping[str, list[Path]]) -> bool:
    sites = list(per_site)
    for s, t in itertools.combinations(sites, 2):
        for p in per_site[s]:
            for q in per_site[t]:
                k = 0
                while k < min(len(p), len(q)) and p[k] == q[k]:
                    k += 1
                if k == len(p) or k == len(q):
                    return False
                if a.node(p[:k]).child_mode is not Mode.PAR:
                    return False
    return True


class _Run:
    def __init__(self, cfg: SimConfig):
        self.cfg = cfg
        self.model = cfg.model
        self.g = cfg.model.gmwf
        self.writes = cfg.model.effective_writes()
        self.policies = {a: cfg.policies.get(a, Policy()) for a in self.model.actors}
        for p in self.policies.values():
            p.check(self.g)
        self.events: list[SimEvent] = []
        self.clock = itertools.count(1)
        self.steps = 0
        self.requested: set[Path] = set()

    def emit(self, site: str, kind: EventKind, path: Path, label: str = "", detail: str = ""):
        self.events.append(SimEvent(next(self.clock), site, kind, path, detail, label))

    def fail(self, exc_type, message: str, artifact: Artifact):
        raise exc_type(message, self.events, artifact)

    def work(self, site: str, art: Artifact) -> Artifact:
        policy = self.policies[site]
        while True:
            ready = ready_tasks(art, self.g, self.writes[site])
            if not ready:
                return art
            self.steps += 1
            if self.steps > self.cfg.max_steps:
                self.fail(StepLimitExceeded, f"more than {self.cfg.max_steps} steps", art)
            path = ready[0]
            label = art.node(path).label
            try:
                art, prod, closed = _execute(art, path, policy, self.g)
            except (MissingPolicyChoice, PolicyError) as exc:
                self.fail(type(exc), f"{site}: {exc}", art)
            self.emit(site, EventKind.EXECUTE, path, label, art.node(path).status)
            if prod.rhs:
                self.emit(site, EventKind.EXPAND, path, label, f"{prod.id}: {prod.render()}")
            for c in closed:
                self.emit(site, EventKind.CLOSE, c, art.node(c).label)
            for reader in self.model.readers(label):
                if reader != site:
                    self.emit(reader, EventKind.NOTIFY, path, label, f"executed by {site}")

    def request(self, art: Artifact, dest: str, paths: Iterable[Path]) -> None:
        """x-accredited actors ask the writer to run a task; never changes readiness."""
        for path in paths:
            if path in self.requested:
                continue
            self.requested.add(path)
            label = art.node(path).label
            for acc in self.model.accreditations:
                if label in acc.x and acc.actor != dest:
                    self.emit(acc.actor, EventKind.NOTIFY, path, label, f"request to {dest}")

    def run(self) -> SimResult:
        axiom = self.cfg.axiom or self.g.axioms[0]
        art = new_artifact(self.g.sort(axiom))
        starters = [a for a in self.model.actors if axiom in self.writes[a]]
        if not starters:
            self.fail(Deadlock, f"nobody may execute the axiom {axiom}", art)
        self.emit(starters[0], EventKind.RECEIVE, (), axiom, "initial artifact")
        tokens = [(starters[0], art)]
        base: Optional[Artifact] = None

        while True:
            results = [(site, self.work(site, copy)) for site, copy in tokens]
            art = results[0][1]
            for _, copy in results[1:]:
                try:
                    art = merge(art, copy, base)
                except ConflictingEdits as exc:
                    self.fail(ConflictingEdits, str(exc), art)
            art, closed = close_completed(art)

            per_site = {}
            for actor in self.model.actors:
                ready = ready_tasks(art, self.g, self.writes[actor])
                if ready:
                    per_site[actor] = ready
            if len(per_site) > 1 and _disjoint_parallel(art, per_site):
                dests = list(per_site)
            else:
                dests = list(per_site)[:1]

            if len(results) > 1:
                # copies meet at the next site to work, or stay where the first one is
                holder = dests[0] if dests else results[0][0]
                for site, _ in results:
                    if site != holder:
                        self.emit(site, EventKind.SEND, (), "", f"copy to {holder}")
                        self.emit(holder, EventKind.RECEIVE, (), "", f"copy from {site}")
                sources = ", ".join(site for site, _ in results)
                self.emit(holder, EventKind.MERGE, (), "", f"merged copies from {sources}")
            else:
                holder = results[0][0]
            for c in closed:
                self.emit(holder, EventKind.CLOSE, c, art.node(c).label)

            if art.root.state is ExecState.CLOSED:
                return SimResult(art, self.events)
            if not dests:
                self.fail(Deadlock, "no site has a ready task and the root is not closed", art)

            what = "copy" if len(dests) > 1 else "artifact"
            for dest in dests:
                if dest != holder:
                    self.emit(holder, EventKind.SEND, (), "", f"{what} to {dest}")
                    self.emit(dest, EventKind.RECEIVE, (), "", f"{what} from {holder}")
            for dest in dests:
                self.request(art, dest, per_site[dest])
            tokens = [(dest, art) for dest in dests]
            base = art if len(dests) > 1 else None


def run(cfg: SimConfig) -> SimResult:
    """Simulate the process until its root closes.

    Raises :class:`Deadlock` when no site can move and
    :class:`StepLimitExceeded` after ``cfg.max_steps`` task executions; both
    carry the events produced so far.
    """
    return _Run(cfg).run()
