from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from lsawfp.serialize import load_artifact, load_policy
from lsawfp.specfile import parse_spec, to_gmawfp, to_gmwf

DATA = Path(__file__).resolve().parent.parent / "data"
PEER_REVIEW = DATA / "peer_review.lsawfp"

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def doc():
    return parse_spec(PEER_REVIEW.read_text())


@pytest.fixture(scope="session")
def g(doc):
    return to_gmwf(doc)


@pytest.fixture(scope="session")
def model(doc):
    return to_gmawfp(doc)


@pytest.fixture(scope="session")
def arts():
    """The five hand-built representative artifacts art1..art5."""
    return [load_artifact(DATA / "peer_review" / f"art{i}.json") for i in range(1, 6)]


@pytest.fixture(scope="session")
def policies():
    return {
        name: load_policy(DATA / "peer_review" / f"policy_{name}.json")
        for name in ("nominal", "rejection", "iteration")
    }


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key, (ok, elapsed, limit, note) in sorted(results.items()):
        extra = f"  [{note}]" if note else ""
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{verdict}  {key}  ({elapsed:.2f}s, limit {limit:g}s){extra}")
