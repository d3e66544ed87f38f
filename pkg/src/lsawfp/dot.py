"""Graphviz DOT rendering of artifacts."""

from __future__ import annotations

from lsawfp.model import Artifact, Mode


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_artifact_graph(a: Artifact, name: str = "artifact") -> str:
    """DOT digraph of ``a``.

    Sequential child edges are labelled with their 1-based position, parallel
    ones with ``∥``; pruned leaves are dashed and restructuring nodes grey.
    """
    lines = [f"digraph {_quote(name)} {{", "  node [shape=ellipse];"]
    ids: dict[tuple, str] = {}
    for i, (path, n) in enumerate(a.walk()):
        ids[path] = f"n{i}"
        attrs = [
            f"label={_quote(n.label)}",
            f"kind={_quote(n.kind.value)}",
            f"state={_quote(n.state.value)}",
        ]
        if n.status is not None:
            attrs.append(f"status={_quote(n.status)}")
        styles = []
        if n.pruned:
            styles.append("dashed")
        if not n.is_task:
            styles.append("filled")
            attrs.append('fillcolor="lightgrey"')
        if styles:
            attrs.append(f"style={_quote(','.join(styles))}")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for path, n in a.walk():
        for j, _ in enumerate(n.children):
            mark = str(j + 1) if n.child_mode is Mode.SEQ else "∥"
            lines.append(f"  {ids[path]} -> {ids[path + (j,)]} [label={_quote(mark)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
