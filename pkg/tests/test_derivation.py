import pytest
from hypothesis import given
from hypothesis import strategies as st

from lsawfp.builder import enumerate_representatives
from lsawfp.derivation import conforms, derive_gmwf
from lsawfp.errors import EmptyInput, InconsistentKind, UnknownSort
from lsawfp.model import Artifact, Mode, SortKind, leaf, node, structurally_equal

import reference as ref
from strategies import gmwfs


def test_peer_review_productions(arts):
    g = derive_gmwf(arts, ["S1"])
    assert {p.key for p in g.productions} == set(ref.PRODUCTIONS.values())
    assert {s.name for s in g.sorts} == ref.SORTS
    assert set(g.restructuring_names) == ref.RESTRUCTURING
    assert set(g.axioms) == ref.AXIOMS


def test_pruned_leaves_give_no_epsilon(arts):
    g = derive_gmwf(arts)
    assert not any(p.lhs in ("E1", "E2") and p.is_epsilon for p in g.productions)


def test_first_encounter_numbering(arts):
    g = derive_gmwf(arts)
    assert [p.render() for p in g.productions[:3]] == ["A -> B ; D", "B -> .", "D -> ."]


def test_single_leaf():
    g = derive_gmwf([Artifact(leaf("X"))])
    assert g.names == ("X",) and g.axioms == ("X",)
    assert [p.render() for p in g.productions] == ["X -> ."]


def test_dedup():
    a = Artifact(node("A", leaf("B"), leaf("C"), mode=Mode.PAR))
    g = derive_gmwf([a, a])
    assert len([p for p in g.productions if p.lhs == "A"]) == 1


def test_errors():
    with pytest.raises(EmptyInput):
        derive_gmwf([])
    with pytest.raises(EmptyInput):
        derive_gmwf([Artifact.empty()])
    mixed = Artifact(node("A", leaf("B"), node("C", leaf("B", kind=SortKind.RESTRUCTURING))))
    with pytest.raises(InconsistentKind):
        derive_gmwf([mixed])


def test_axiom_override(arts):
    g = derive_gmwf(arts, axioms=["A", "C"])
    assert g.axioms == ("A", "C")
    with pytest.raises(UnknownSort):
        derive_gmwf(arts, axioms=["C"])


class TestConforms:
    def test_art2(self, g, arts):
        assert conforms(arts[1], g)

    def test_bad_decomposition(self, g):
        bad = Artifact(node("A", leaf("B"), leaf("F")))
        res = conforms(bad, g)
        assert not res and res.path == ()

    def test_missing_epsilon(self, g):
        res = conforms(Artifact(leaf("A")), g)
        assert not res and res.path == ()

    def test_not_an_axiom(self, g):
        assert not conforms(Artifact(leaf("B")), g)

    def test_unknown_label(self, g):
        res = conforms(Artifact(node("A", leaf("B"), leaf("Q"))), g)
        assert not res


@given(gmwfs())
def test_derive_inverts_enumerate(g):
    h = derive_gmwf(enumerate_representatives(g), g.restructuring_names)
    assert structurally_equal(g, h)


@given(gmwfs())
def test_representatives_conform(g):
    for a in enumerate_representatives(g):
        assert conforms(a, g)


@given(gmwfs(), st.data())
def test_more_artifacts_never_lose_productions(g, data):
    reps = enumerate_representatives(g)
    k = data.draw(st.integers(1, len(reps)))
    small = derive_gmwf(reps[:k])
    big = derive_gmwf(reps)
    assert {p.key for p in small.productions} <= {p.key for p in big.productions}
