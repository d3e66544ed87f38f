"""JSON-compatible (de)serialization of every core type.

Loading with ``checked=False`` skips constructor invariants so that broken
models can reach :mod:`lsawfp.validation` and be reported instead of raised.
"""

from __future__ import annotations

import json
import re
from pathlib import Path as FsPath
from typing import Any, Union

from lsawfp.model import (
    GMAWfP,
    GMWf,
    Accreditation,
    Artifact,
    ArtifactNode,
    ExecState,
    Mode,
    Production,
    Sort,
    SortKind,
)
from lsawfp.simulator import EventKind, Policy, SimEvent

PathLike = Union[str, FsPath]

_CHOICE_KEY = re.compile(r"^(?P<sort>[^@\s]+)(?:@(?P<occ>\d+))?$")


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# -- artifacts ---------------------------------------------------------------------


def node_to_dict(n: ArtifactNode) -> dict:
    return {
        "label": n.label,
        "kind": n.kind.value,
        "state": n.state.value,
        "status": n.status,
        "pruned": n.pruned,
        "mode": n.child_mode.value,
        "children": [node_to_dict(c) for c in n.children],
    }


def node_from_dict(d: dict) -> ArtifactNode:
    return ArtifactNode(
        d["label"],
        tuple(node_from_dict(c) for c in d.get("children", ())),
        Mode(d.get("mode", "seq")),
        d.get("status"),
        ExecState(d.get("state", "open")),
        bool(d.get("pruned", False)),
        SortKind(d.get("kind", "task")),
    )


def artifact_to_dict(a: Artifact) -> dict:
    return {"root": None if a.root is None else node_to_dict(a.root)}


def artifact_from_dict(d: dict) -> Artifact:
    root = d.get("root")
    return Artifact(None if root is None else node_from_dict(root))


def save_artifact(path: PathLike, a: Artifact) -> None:
    FsPath(path).write_text(dumps(artifact_to_dict(a)), encoding="utf-8")


def load_artifact(path: PathLike) -> Artifact:
    return artifact_from_dict(json.loads(FsPath(path).read_text(encoding="utf-8")))


# -- grammar and organisation ----------------------------------------------------------


def production_to_dict(p: Production) -> dict:
    return {"id": p.id, "lhs": p.lhs, "rhs": list(p.rhs), "mode": p.mode.value}


def production_from_dict(d: dict) -> Production:
    return Production(d["id"], d["lhs"], tuple(d.get("rhs", ())), Mode(d.get("mode", "seq")))


def gmwf_to_dict(g: GMWf) -> dict:
    return {
        "sorts": [{"name": s.name, "kind": s.kind.value} for s in g.sorts],
        "axioms": list(g.axioms),
        "productions": [production_to_dict(p) for p in g.productions],
    }


def gmwf_from_dict(d: dict, checked: bool = True) -> GMWf:
    sorts = tuple(Sort(s["name"], SortKind(s.get("kind", "task"))) for s in d["sorts"])
    prods = tuple(production_from_dict(p) for p in d.get("productions", ()))
    axioms = tuple(d.get("axioms", ()))
    return GMWf(sorts, prods, axioms) if checked else GMWf.unchecked(sorts, prods, axioms)


def accreditation_to_dict(acc: Accreditation) -> dict:
    return {"actor": acc.actor, "r": list(acc.r), "w": list(acc.w), "x": list(acc.x)}


def accreditation_from_dict(d: dict, checked: bool = True) -> Accreditation:
    cls = Accreditation if checked else Accreditation.unchecked
    return cls(d["actor"], tuple(d.get("r", ())), tuple(d.get("w", ())), tuple(d.get("x", ())))


def gmawfp_to_dict(w: GMAWfP) -> dict:
    return {
        "gmwf": gmwf_to_dict(w.gmwf),
        "actors": list(w.actors),
        "accreditations": [accreditation_to_dict(a) for a in w.accreditations],
    }


def gmawfp_from_dict(d: dict, checked: bool = True) -> GMAWfP:
    g = gmwf_from_dict(d["gmwf"], checked)
    accs = tuple(accreditation_from_dict(a, checked) for a in d.get("accreditations", ()))
    actors = tuple(d.get("actors", ()))
    return GMAWfP(g, actors, accs) if checked else GMAWfP.unchecked(g, actors, accs)


# -- policies and traces ----------------------------------------------------------------


def policy_to_dict(p: Policy) -> dict:
    choices = {}
    for (sort, occ), pid in p.choices.items():
        choices[sort if occ is None else f"{sort}@{occ}"] = pid
    return {"choices": choices, "status": dict(p.status_writer)}


def policy_from_dict(d: dict) -> Policy:
    choices = {}
    for key, pid in d.get("choices", {}).items():
        m = _CHOICE_KEY.match(key)
        if not m:
            raise ValueError(f"bad policy choice key {key!r}")
        occ = None if m["occ"] is None else int(m["occ"])
        choices[(m["sort"], occ)] = pid
    return Policy(choices, dict(d.get("status", {})))


def load_policy(path: PathLike) -> Policy:
    return policy_from_dict(json.loads(FsPath(path).read_text(encoding="utf-8")))


def event_to_dict(e: SimEvent) -> dict:
    return {
        "time": e.time,
        "site": e.site,
        "kind": e.kind.value,
        "node": list(e.node),
        "label": e.label,
        "detail": e.detail,
    }


def event_from_dict(d: dict) -> SimEvent:
    return SimEvent(
        d["time"], d["site"], EventKind(d["kind"]), tuple(d["node"]), d.get("detail", ""),
        d.get("label", ""),
    )


def events_to_jsonl(events) -> str:
    return "".join(json.dumps(event_to_dict(e), ensure_ascii=False) + "\n" for e in events)


def events_from_jsonl(text: str) -> list[SimEvent]:
    return [event_from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]
