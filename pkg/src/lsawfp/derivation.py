"""Extracting a GMWf from representative artifacts, and checking trees against one."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Optional

from lsawfp.errors import EmptyInput, InconsistentKind, UnknownSort
from lsawfp.model import GMWf, Artifact, Path, Production, Sort, SortKind


def derive_gmwf(
    arts: Sequence[Artifact],
    restructuring: Iterable[str] = (),
    axioms: Optional[Iterable[str]] = None,
) -> GMWf:
    """Read one production per distinct decomposition found in ``arts``.

    Roots become axioms, non-pruned leaves get an epsilon production and
    pruned leaves contribute nothing. Productions are numbered ``P1..Pn`` in
    first-encounter order (artifact order, then preorder).

    ``axioms`` may widen the inferred set but never drop an inferred root.
    """
    arts = [a for a in arts if not a.is_empty]
    if not arts:
        raise EmptyInput("derive_gmwf needs at least one non-empty artifact")
    restructuring = list(restructuring)

    kinds: dict[str, SortKind] = {}
    keys: dict[tuple, None] = {}
    roots: dict[str, None] = {}
    for art in arts:
        roots[art.root.label] = None
        for _, n in art.walk():
            prev = kinds.setdefault(n.label, n.kind)
            if prev is not n.kind:
                raise InconsistentKind(f"label {n.label} used both as task and restructuring")
            if n.pruned:
                continue
            keys[(n.label, tuple(c.label for c in n.children), n.child_mode)] = None

    for name in restructuring:
        kinds[name] = SortKind.RESTRUCTURING
    sorts = [Sort(name, kind) for name, kind in kinds.items()]
    productions = [
        Production(f"P{i}", lhs, rhs, mode) for i, (lhs, rhs, mode) in enumerate(keys, 1)
    ]
    inferred = list(roots)
    if axioms is not None:
        axioms = list(dict.fromkeys(axioms))
        missing = [r for r in inferred if r not in axioms]
        if missing:
            raise UnknownSort(f"axiom override drops inferred roots {missing}")
        inferred = axioms
    return GMWf(tuple(sorts), tuple(productions), tuple(inferred))


@dataclass(frozen=True)
class Conformance:
    """Outcome of :func:`conforms`; truthy when the artifact conforms."""

    ok: bool
    path: Optional[Path] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def conforms(a: Artifact, g: GMWf) -> Conformance:
    """Is ``a`` a (possibly pruned) derivation tree of ``g``?

    Reports the first offending node in preorder.
    """
    if a.is_empty:
        return Conformance(False, None, "empty artifact")
    if a.root.label not in g.axioms:
        return Conformance(False, (), f"root {a.root.label} is not an axiom")
    keys = {p.key for p in g.productions}
    for path, n in a.walk():
        if not g.has_sort(n.label):
            return Conformance(False, path, f"unknown sort {n.label}")
        if n.pruned:
            if not any(m.label == n.label for m in a.ancestors(path)):
                return Conformance(False, path, f"pruned {n.label} is not a second occurrence")
            continue
        key = (n.label, tuple(c.label for c in n.children), n.child_mode)
        if key not in keys:
            if n.children:
                rule = Production("?", *key).render()
                return Conformance(False, path, f"no production {rule}")
            return Conformance(False, path, f"{n.label} has no epsilon production")
    return Conformance(True)
