"""Exception hierarchy shared by every lsawfp module."""

from __future__ import annotations


class LsawfpError(Exception):
    """Base class for all errors raised by the library."""


# -- model construction -------------------------------------------------------


class ModelError(LsawfpError, ValueError):
    pass


class UnknownSort(ModelError):
    pass


class EmptyAxioms(ModelError):
    pass


class DuplicateSortName(ModelError):
    pass


class DuplicateProductionId(ModelError):
    pass


class WriteOutsideRead(ModelError):
    pass


class NoWriter(ModelError):
    pass


class ActorMismatch(ModelError):
    pass


class UnknownActor(ModelError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


# -- artifacts ----------------------------------------------------------------


class ArtifactError(LsawfpError):
    pass


class InvalidPath(ArtifactError):
    pass


class NotALeaf(ArtifactError):
    pass


class PrunedNode(ArtifactError):
    pass


class NotASecondOccurrence(ArtifactError):
    pass


class IllegalTransition(ArtifactError):
    pass


class IncompleteArtifact(ArtifactError):
    pass


class InvisibleRootForest(ArtifactError):
    pass


# -- derivation / enumeration -------------------------------------------------


class InconsistentKind(LsawfpError):
    pass


class EmptyInput(LsawfpError):
    pass


class UnproductiveSort(LsawfpError):
    pass


class EmptySchedule(LsawfpError):
    pass


# -- simulation ---------------------------------------------------------------


class SimulationError(LsawfpError):
    """Raised by the simulator; carries the trace produced so far."""

    def __init__(self, message: str, events=(), artifact=None):
        super().__init__(message)
        self.events = list(events)
        self.artifact = artifact


class NotReady(SimulationError):
    pass


class MissingPolicyChoice(SimulationError):
    pass


class PolicyError(SimulationError):
    pass


class StepLimitExceeded(SimulationError):
    pass


class Deadlock(SimulationError):
    pass


class ConflictingEdits(LsawfpError):
    pass


# -- spec files ---------------------------------------------------------------


class SpecError(LsawfpError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(self._render())

    def _render(self) -> str:
        if self.line is None:
            return self.message
        if self.col is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, col {self.col}: {self.message}"


class SpecSyntaxError(SpecError):
    pass


class UnresolvedReference(SpecError):
    pass


class DuplicateDeclaration(SpecError):
    pass
