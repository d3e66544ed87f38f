"""End-to-end tour of the peer-review model.

Derives the grammar from the hand-built artifacts, checks it against the
shipped specification, prints each actor's perceived grammar and runs the
three scripted policies.

    python3 scripts/walkthrough.py
"""

from pathlib import Path

from lsawfp import (
    derive_gmwf,
    enumerate_representatives,
    parse_spec,
    print_spec,
    project_gmwf,
    run,
    validate_gmawfp,
    view_of,
)
from lsawfp.model import structurally_equal
from lsawfp.serialize import load_artifact
from lsawfp.simulator import SimConfig
from lsawfp.specfile import from_model, to_gmawfp, to_policy

DATA = Path(__file__).resolve().parent.parent / "data"


def main() -> None:
    doc = parse_spec((DATA / "peer_review.lsawfp").read_text())
    model = to_gmawfp(doc)
    g = model.gmwf

    arts = [load_artifact(DATA / "peer_review" / f"art{i}.json") for i in range(1, 6)]
    derived = derive_gmwf(arts, ["S1"])
    print(f"derived {len(derived.productions)} productions; "
          f"equal to the shipped grammar: {structurally_equal(derived, g)}")
    print(f"representatives: {len(enumerate_representatives(g))}")
    print(validate_gmawfp(model, strict=True).render())

    for actor in model.actors:
        view = view_of(model, actor)
        print(f"\n== {actor} sees {{{', '.join(view)}}}")
        print(print_spec(from_model(f"{doc.name}_{actor}", project_gmwf(g, view))), end="")

    for policy in doc.policies:
        art, events = run(SimConfig.uniform(model, to_policy(policy)))
        sites = []
        for e in events:
            if e.kind.value == "Execute" and (not sites or sites[-1] != e.site):
                sites.append(e.site)
        print(f"\n== policy {policy.name}: {len(events)} events")
        print(f"   sites:  {' -> '.join(sites)}")
        print(f"   result: {art}  [{art.root.state.value}]")


if __name__ == "__main__":
    main()
