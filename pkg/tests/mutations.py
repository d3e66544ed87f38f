"""Single-entry edits of the accreditation table and the errors they must raise."""

from lsawfp.model import GMAWfP, Accreditation

import reference as ref

ALL_SORTS = sorted(ref.SORTS)
RIGHTS = ("r", "w", "x")


def mutated(model, actor, right, sort, add):
    accs = []
    for acc in model.accreditations:
        sets = {k: list(getattr(acc, k)) for k in RIGHTS}
        if acc.actor == actor:
            if add:
                sets[right].append(sort)
            else:
                sets[right].remove(sort)
        accs.append(Accreditation.unchecked(acc.actor, sets["r"], sets["w"], sets["x"]))
    return GMAWfP.unchecked(model.gmwf, model.actors, tuple(accs))


def expected_codes(actor, right, sort, add):
    """Error codes a single accreditation edit must raise under strict validation."""
    r, w, x = ({k: set(v) for k, v in zip(RIGHTS, ref.TABLE[actor])}[k] for k in RIGHTS)
    is_task = sort not in ref.RESTRUCTURING
    writers = {a for a, (_, ww, _) in ref.TABLE.items() if sort in ww}
    requested = any(sort in xx for _, _, xx in ref.TABLE.values())
    codes = set()
    if not add:
        if right == "w" and is_task and writers == {actor}:
            codes.add("NO_WRITER")
            if requested:
                codes.add("X_TARGET_NO_WRITER")
        if right == "r" and sort in w:
            codes.add("WRITE_OUTSIDE_READ")
    elif right == "w":
        if sort not in r:
            codes.add("WRITE_OUTSIDE_READ")
        if is_task and writers:
            codes.add("MULTIPLE_WRITERS")
    return codes


def table_edits():
    for actor, sets in ref.TABLE.items():
        for right, members in zip(RIGHTS, sets):
            for sort in ALL_SORTS:
                yield actor, right, sort, sort not in members
