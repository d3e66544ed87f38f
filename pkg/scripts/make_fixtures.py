"""Rebuild data/peer_review/art1..art5.json by hand with the designer operations.

The trees are drawn step by step (root, expansions, pruning) rather than
enumerated from the grammar, so they can serve as an independent reference
for the enumeration and derivation checks.
"""

from pathlib import Path

from lsawfp.builder import Combination, expand_node, new_artifact, prune
from lsawfp.model import Mode, Sort, SortKind
from lsawfp.serialize import save_artifact

OUT = Path(__file__).resolve().parent.parent / "data" / "peer_review"

SEQ, PAR = Mode.SEQ, Mode.PAR
S1 = Sort("S1", SortKind.RESTRUCTURING)


def seq(*tasks):
    return Combination(tuple(tasks), SEQ)


def par(*tasks):
    return Combination(tuple(tasks), PAR)


def reviewed(e1_iterates: bool, e2_iterates: bool):
    art = new_artifact("A")
    art = expand_node(art, (), seq("C", "D"))
    art = expand_node(art, (0,), seq(S1, "F"))
    art = expand_node(art, (0, 0), par("E1", "E2"))
    for i, (first, iterates) in enumerate([("G1", e1_iterates), ("G2", e2_iterates)]):
        e = (0, 0, i)
        label = "E1" if i == 0 else "E2"
        if iterates:
            art = expand_node(art, e, seq(label))
            art = prune(art, e + (0,))
        else:
            n = first[1]
            art = expand_node(art, e, seq(first))
            art = expand_node(art, e + (0,), seq("H" + n, "I" + n))
    return art


def build():
    art1 = expand_node(new_artifact("A"), (), seq("B", "D"))
    art2 = reviewed(False, False)
    art3 = reviewed(False, True)
    art4 = reviewed(True, False)
    art5 = reviewed(True, True)
    return [art1, art2, art3, art4, art5]


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for i, art in enumerate(build(), 1):
        save_artifact(OUT / f"art{i}.json", art)
        print(f"art{i}: {art}")
