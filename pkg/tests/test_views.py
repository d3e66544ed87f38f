import pytest
from hypothesis import given

from lsawfp.builder import enumerate_representatives
from lsawfp.derivation import conforms
from lsawfp.errors import InvisibleRootForest, UnknownActor, UnknownSort
from lsawfp.model import Artifact, GMWf, Mode, SortKind, leaf, node, structurally_equal
from lsawfp.views import is_synthetic, project_artifact, project_gmwf, view_of

from strategies import gmwf_and_view

EC_VIEW = ("A", "B", "C", "D", "H1", "H2", "I1", "I2", "F")


def try_project(a, view):
    try:
        return project_artifact(a, view)
    except InvisibleRootForest:
        return None


class TestViewOf:
    def test_ec_verbatim(self, model):
        assert view_of(model, "EC") == EC_VIEW

    def test_r2(self, model):
        assert set(view_of(model, "R2")) == {"C", "G2", "H2", "I2"}

    def test_unknown(self, model):
        with pytest.raises(UnknownActor):
            view_of(model, "ZZ")


class TestProjectArtifact:
    def test_art1_ec_identity(self, arts):
        assert project_artifact(arts[0], EC_VIEW) == arts[0]

    def test_art2_r1(self, arts):
        assert project_artifact(arts[1], ["C", "G1", "H1", "I1"]).render() == "C(G1(H1 ; I1))"

    def test_art2_ec_keeps_parallel_branches(self, arts):
        p = project_artifact(arts[1], EC_VIEW)
        # S1 and E1/E2 vanish; the two sequential referee chains cannot be
        # spliced into C's sequence without losing their parallelism
        assert p.render() == "A(C(S1'(E1'(H1 ; I1) || E2'(H2 ; I2)) ; F) ; D)"
        wrapper = p.node((0, 0))
        assert is_synthetic(wrapper) and wrapper.kind is SortKind.RESTRUCTURING

    def test_full_view_identity(self, g, arts):
        for a in arts:
            assert project_artifact(a, g.names) == a

    def test_empty_view(self, arts):
        assert project_artifact(arts[0], ()).is_empty

    def test_invisible_root_forest(self):
        a = Artifact(node("S", leaf("A"), leaf("B"), mode=Mode.PAR))
        with pytest.raises(InvisibleRootForest):
            project_artifact(a, ["A", "B"])

    def test_promoted_group_same_mode_is_spliced(self):
        a = Artifact(node("R", leaf("A"), node("X", leaf("B"), leaf("C")), leaf("D")))
        assert project_artifact(a, ["R", "A", "B", "C", "D"]).render() == "R(A ; B ; C ; D)"

    def test_state_survives(self, arts):
        a = arts[0].update((0,), lambda n: n.with_status("ok"))
        assert project_artifact(a, ["A", "B"]).node((0,)).status == "ok"


class TestProjectGrammar:
    def test_full_view(self, g):
        assert structurally_equal(project_gmwf(g, g.names), g)

    def test_r1(self, g):
        h = project_gmwf(g, ["C", "G1", "H1", "I1"])
        assert {p.render() for p in h.productions} == {
            "C -> G1",
            "G1 -> H1 ; I1",
            "C -> .",
            "H1 -> .",
            "I1 -> .",
        }
        assert h.axioms == ("C",)

    def test_nothing_visible(self, g):
        assert project_gmwf(g, ()) == GMWf.empty()

    def test_unknown_sort(self, g):
        with pytest.raises(UnknownSort):
            project_gmwf(g, ["Q"])


@given(gmwf_and_view())
def test_projection_invariants(pair):
    g, view = pair
    reps = enumerate_representatives(g)
    projected = [try_project(a, view) for a in reps]
    for a, p in zip(reps, projected):
        assert project_artifact(a, g.names) == a
        if p is None:
            continue
        assert project_artifact(p, view) == p
        assert p.size() <= a.size()
    if any(p is None for p in projected):
        with pytest.raises(InvisibleRootForest):
            project_gmwf(g, view)
        return
    h = project_gmwf(g, view)
    for p in projected:
        if not p.is_empty:
            assert conforms(p, h)
