"""Actor views and the projection of artifacts and grammars onto them.

Projection contracts every node whose label is outside the view: its visible
descendants are promoted, in order, into the nearest visible ancestor. When a
promoted group of two or more nodes carries a different annotation than the
decomposition it lands in, the group is wrapped in a synthetic restructuring
node named after the contracted node with a trailing prime (``E1'``), so no
ordering information is lost. Synthetic nodes stay visible in every
projection, which keeps projection idempotent.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import replace

from lsawfp.builder import enumerate_representatives
from lsawfp.derivation import derive_gmwf
from lsawfp.errors import InvisibleRootForest, UnknownSort
from lsawfp.model import GMAWfP, GMWf, Artifact, ArtifactNode, Mode, SortKind

SYNTHETIC_MARK = "'"


def view_of(w: GMAWfP, actor: str) -> tuple[str, ...]:
    """The sorts ``actor`` may read, in the order they were declared."""
    return w.accreditation(actor).r


def is_synthetic(n: ArtifactNode) -> bool:
    return n.kind is SortKind.RESTRUCTURING and n.label.endswith(SYNTHETIC_MARK)


Group = tuple[list[ArtifactNode], Mode]


class _Projector:
    def __init__(self, view: frozenset[str], taken: set[str]):
        self.view = view
        self.taken = taken

    def visible(self, n: ArtifactNode) -> bool:
        return n.label in self.view or is_synthetic(n)

    def synthetic_name(self, label: str) -> str:
        name = label + SYNTHETIC_MARK
        while name in self.view or name in self.taken:
            name += SYNTHETIC_MARK
        return name

    def wrap(self, origin: ArtifactNode, items: list[ArtifactNode], mode: Mode) -> ArtifactNode:
        # a closed origin implies closed descendants, so its state is safe to copy
        return ArtifactNode(
            self.synthetic_name(origin.label),
            tuple(items),
            mode,
            state=origin.state,
            kind=SortKind.RESTRUCTURING,
        )

    def combine(self, node: ArtifactNode, groups: list[tuple[ArtifactNode, Group]]) -> Group:
        groups = [(c, g) for c, g in groups if g[0]]
        if not groups:
            return [], Mode.SEQ
        if len(groups) == 1:
            return groups[0][1]
        items: list[ArtifactNode] = []
        for child, (sub, sub_mode) in groups:
            if len(sub) == 1 or sub_mode is node.child_mode:
                items.extend(sub)
            else:
                items.append(self.wrap(child, sub, sub_mode))
        return items, node.child_mode

    def project(self, n: ArtifactNode) -> Group:
        groups = [(c, self.project(c)) for c in n.children]
        items, mode = self.combine(n, groups)
        if self.visible(n):
            if len(items) == len(n.children) and all(a is b for a, b in zip(items, n.children)):
                return [n], Mode.SEQ
            return [replace(n, children=tuple(items), child_mode=mode)], Mode.SEQ
        return items, mode


def project_artifact(a: Artifact, view: Iterable[str]) -> Artifact:
    """Contract the nodes of ``a`` whose labels are outside ``view``.

    Returns the empty artifact when nothing is visible and raises
    :class:`InvisibleRootForest` when an invisible root leaves several
    visible top nodes.
    """
    if a.is_empty:
        return a
    real = {n.label for _, n in a.walk() if not is_synthetic(n)}
    proj = _Projector(frozenset(view), real)
    items, _ = proj.project(a.root)
    if not items:
        return Artifact.empty()
    if len(items) > 1:
        raise InvisibleRootForest(
            f"root {a.root.label} is invisible and {len(items)} top nodes remain: "
            + ", ".join(i.label for i in items)
        )
    return Artifact(items[0])


def project_gmwf(g: GMWf, view: Iterable[str]) -> GMWf:
    """The grammar an actor perceives: project every representative, re-derive."""
    view = frozenset(view)
    unknown = sorted(view - set(g.names))
    if unknown:
        raise UnknownSort(f"view mentions unknown sorts {unknown}")
    projected = [project_artifact(t, view) for t in enumerate_representatives(g)]
    projected = [t for t in projected if not t.is_empty]
    if not projected:
        return GMWf.empty()
    restructuring = [s.name for s in g.sorts if not s.is_task and s.name in view]
    return derive_gmwf(projected, restructuring)
