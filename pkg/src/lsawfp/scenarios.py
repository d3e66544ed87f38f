"""Bounded scenario unfolding and the execution orders a scenario allows.

Sequential decompositions are subtree-complete: every node under child ``i``
runs before any node under child ``i + 1``. Parallel children interleave.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache

from lsawfp.errors import IncompleteArtifact
from lsawfp.model import GMWf, Artifact, ArtifactNode, Mode, Path


@dataclass(frozen=True)
class IterationBound:
    """Extra occurrences of a label allowed on a root path beyond the first."""

    max_repeats: int = 0

    def __post_init__(self):
        if not isinstance(self.max_repeats, int) or self.max_repeats < 0:
            raise ValueError(f"max_repeats must be a non-negative int, got {self.max_repeats!r}")

    @property
    def cap(self) -> int:
        return 1 + self.max_repeats


def _as_bound(bound) -> IterationBound:
    return bound if isinstance(bound, IterationBound) else IterationBound(bound)


def _bump(counts: tuple[tuple[str, int], ...], label: str) -> tuple[tuple[str, int], ...]:
    table = dict(counts)
    table[label] = table.get(label, 0) + 1
    return tuple(sorted(table.items()))


def _complete_subtrees(g: GMWf, label: str, counts, cap: int) -> Iterator[ArtifactNode]:
    counts = _bump(counts, label)
    if dict(counts)[label] > cap:
        return
    kind = g.kind(label)
    for p in g.productions_for(label):
        options = []
        for s in p.rhs:
            opts = list(_complete_subtrees(g, s, counts, cap))
            if not opts:
                break
            options.append(opts)
        else:
            for kids in itertools.product(*options):
                yield ArtifactNode(label, kids, p.mode, kind=kind)


def unfold(g: GMWf, bound: IterationBound | int = 0) -> list[Artifact]:
    """All complete derivation trees where no label repeats more than the bound allows.

    Deterministic: axioms in declaration order, then production choices in
    declaration order.
    """
    cap = _as_bound(bound).cap
    seen: set[tuple] = set()
    out: list[Artifact] = []
    for axiom in g.axioms:
        for root in _complete_subtrees(g, axiom, (), cap):
            art = Artifact(root)
            if art.shape() not in seen:
                seen.add(art.shape())
                out.append(art)
    return out


def count_scenarios(g: GMWf, bound: IterationBound | int = 0) -> int:
    """``len(unfold(g, bound))`` computed by memoised counting."""
    cap = _as_bound(bound).cap

    @lru_cache(maxsize=None)
    def count(label: str, counts) -> int:
        counts = _bump(counts, label)
        if dict(counts)[label] > cap:
            return 0
        total = 0
        for p in g.productions_for(label):
            k = 1
            for s in p.rhs:
                k *= count(s, counts)
                if not k:
                    break
            total += k
        return total

    # duplicate productions would make distinct choices yield equal trees
    if len({p.key for p in g.productions}) != len(g.productions):
        return len(unfold(g, bound))
    return sum(count(a, ()) for a in dict.fromkeys(g.axioms))


# -- linearizations --------------------------------------------------------------


def _require_complete(a: Artifact) -> None:
    if a.is_empty or not a.is_complete:
        raise IncompleteArtifact("linearizations need a complete, non-empty artifact")


def _shuffles(seqs: Sequence[tuple]) -> Iterator[tuple]:
    """All interleavings of ``seqs``, leftmost-first."""
    seqs = [s for s in seqs if s]
    if not seqs:
        yield ()
        return
    for i, s in enumerate(seqs):
        rest = list(seqs)
        rest[i] = s[1:]
        for tail in _shuffles(rest):
            yield (s[0],) + tail


def _node_orders(n: ArtifactNode, path: Path) -> Iterator[tuple[Path, ...]]:
    head = (path,) if n.is_task else ()
    if not n.children:
        yield head
        return
    subs = [list(_node_orders(c, path + (i,))) for i, c in enumerate(n.children)]
    for choice in itertools.product(*subs):
        if n.child_mode is Mode.SEQ:
            yield head + tuple(itertools.chain.from_iterable(choice))
        else:
            for mix in _shuffles(choice):
                yield head + mix


def path_linearizations(a: Artifact) -> Iterator[tuple[Path, ...]]:
    """Legal execution orders of the task nodes of ``a``, as node paths."""
    _require_complete(a)
    yield from _node_orders(a.root, ())


def linearizations(a: Artifact, limit: int = 100) -> list[tuple[str, ...]]:
    """Up to ``limit`` distinct legal orders of the task labels of ``a``.

    Restructuring nodes are left out of the sequences.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    out: list[tuple[str, ...]] = []
    seen: set[tuple[str, ...]] = set()
    for order in path_linearizations(a):
        labels = tuple(a.node(p).label for p in order)
        if labels not in seen:
            seen.add(labels)
            out.append(labels)
            if len(out) >= limit:
                break
    return out


def _count_orders(n: ArtifactNode) -> tuple[int, int]:
    """(number of orders, number of task nodes) for the subtree at ``n``."""
    own = 1 if n.is_task else 0
    if not n.children:
        return 1, own
    parts = [_count_orders(c) for c in n.children]
    ways = math.prod(k for k, _ in parts)
    size = sum(m for _, m in parts)
    if n.child_mode is Mode.PAR:
        ways *= math.factorial(size) // math.prod(math.factorial(m) for _, m in parts)
    return ways, size + own


def _parallel_labels_overlap(n: ArtifactNode) -> bool:
    if n.child_mode is Mode.PAR and len(n.children) > 1:
        seen: Counter = Counter()
        for c in n.children:
            for lab in {m.label for _, m in c.walk() if m.is_task}:
                seen[lab] += 1
        if any(v > 1 for v in seen.values()):
            return True
    return any(_parallel_labels_overlap(c) for c in n.children)


def count_linearizations(a: Artifact) -> int:
    """Exact number of distinct label sequences :func:`linearizations` can return."""
    _require_complete(a)
    if _parallel_labels_overlap(a.root):
        # equal labels in interleaved branches collapse some sequences
        return len({tuple(a.node(p).label for p in o) for o in path_linearizations(a)})
    return _count_orders(a.root)[0]


# -- checking an order -------------------------------------------------------------


def must_precede(a: Artifact, u: Path, v: Path) -> bool:
    """Does the ordering semantics force node ``u`` strictly before node ``v``?"""
    if u == v:
        return False
    if v[: len(u)] == u:
        return True
    k = 0
    while k < min(len(u), len(v)) and u[k] == v[k]:
        k += 1
    if k >= len(u) or k >= len(v):
        return False
    fork = a.node(u[:k])
    return fork.child_mode is Mode.SEQ and u[k] < v[k]


def is_valid_order(a: Artifact, order: Sequence[Path]) -> bool:
    """Is ``order`` a legal execution order of all task nodes of ``a``?

    Checks every pair directly against :func:`must_precede`.
    """
    tasks = [p for p, n in a.walk() if n.is_task]
    if sorted(order) != sorted(tasks) or len(set(order)) != len(order):
        return False
    for i, u in enumerate(order):
        for v in order[i + 1 :]:
            if must_precede(a, v, u):
                return False
    return True


def is_valid_label_sequence(a: Artifact, labels: Sequence[str]) -> bool:
    """Label-level check: can ``labels`` be matched to nodes as a legal order?"""
    tasks = [p for p, n in a.walk() if n.is_task]
    if len(labels) != len(tasks):
        return False
    preds = {v: [u for u in tasks if must_precede(a, u, v)] for v in tasks}

    def search(i: int, done: frozenset) -> bool:
        if i == len(labels):
            return True
        for v in tasks:
            if v in done or a.node(v).label != labels[i]:
                continue
            if all(u in done for u in preds[v]) and search(i + 1, done | {v}):
                return True
        return False

    return search(0, frozenset())
