"""Grammar-based specification of administrative workflow processes.

A process is a grammar over task sorts (``GMWf``) plus actors and their
read/write/execute accreditations (``GMAWfP``). Execution scenarios are
annotated trees (``Artifact``) derived from that grammar.
"""

from lsawfp.builder import (
    Combination,
    Par,
    Seq,
    enumerate_representatives,
    expand_node,
    is_second_occurrence,
    new_artifact,
    normalize_decomposition,
    prune,
)
from lsawfp.derivation import conforms, derive_gmwf
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
    isomorphic,
    make_accreditation,
    make_gmwf,
    productions_for,
)
from lsawfp.scenarios import (
    IterationBound,
    count_linearizations,
    count_scenarios,
    linearizations,
    unfold,
)
from lsawfp.simulator import Policy, SimConfig, SimEvent, execute_task, merge, ready_tasks, run
from lsawfp.specfile import parse_spec, print_spec
from lsawfp.validation import ValidationReport, validate_gmawfp, validate_gmwf
from lsawfp.views import project_artifact, project_gmwf, view_of

__all__ = [
    "Accreditation",
    "Artifact",
    "ArtifactNode",
    "Combination",
    "ExecState",
    "GMAWfP",
    "GMWf",
    "IterationBound",
    "Mode",
    "Par",
    "Policy",
    "Production",
    "Seq",
    "SimConfig",
    "SimEvent",
    "Sort",
    "SortKind",
    "ValidationReport",
    "conforms",
    "count_linearizations",
    "count_scenarios",
    "derive_gmwf",
    "enumerate_representatives",
    "execute_task",
    "expand_node",
    "is_second_occurrence",
    "isomorphic",
    "linearizations",
    "make_accreditation",
    "make_gmwf",
    "merge",
    "new_artifact",
    "normalize_decomposition",
    "parse_spec",
    "print_spec",
    "productions_for",
    "project_artifact",
    "project_gmwf",
    "prune",
    "ready_tasks",
    "run",
    "unfold",
    "validate_gmawfp",
    "validate_gmwf",
    "view_of",
]
