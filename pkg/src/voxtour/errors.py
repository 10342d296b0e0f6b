"""Exception hierarchy shared across the package."""


class VoxtourError(Exception):
    """Base class for all package errors."""


# --- scene tree loading ---

class ParseError(VoxtourError):
    """The scene-tree document could not be parsed."""


class ValidationError(VoxtourError):
    """The scene-tree document parsed but violates a structural invariant."""


class UnknownNode(VoxtourError):
    """A node id does not exist in the tree."""


class NoInstances(VoxtourError):
    """A focus animation was requested for a node without placed instances."""


# --- narration / timeline ---

class UnknownTaskType(VoxtourError):
    """No narration template set exists for the requested task type."""


class SignalWithoutScene(VoxtourError):
    """A completion signal arrived while no scene was playing."""


# --- dialogue routing ---

class BackendUnavailable(VoxtourError):
    """A completion backend failed or timed out."""


class UnparseableReply(VoxtourError):
    """A backend reply fell outside the expected label or digit set."""


class MalformedTransform(VoxtourError):
    """A view-transform reply was not four numbers in braces."""


class NonPositiveZoom(VoxtourError):
    """A view transform carried a zoom factor <= 0."""


class UnresolvedTarget(VoxtourError):
    """A navigation command named no node that resolves in the tree."""


# --- visual state ---

class AtRoot(VoxtourError):
    """Cannot go up a scale level from the whole-model view."""


class NoChildren(VoxtourError):
    """Cannot descend a scale level from a leaf node."""


class EmptyHistory(VoxtourError):
    """There is no earlier view to return to."""


# --- gateway ---

class UnknownModel(VoxtourError):
    """No scene-tree file is configured under that model name."""


class UnknownSession(VoxtourError):
    """No live session exists for that id."""


class Busy(VoxtourError):
    """A query is already in flight for this session."""


class NoPendingOptions(VoxtourError):
    """A selection arrived while no exploration options were offered."""


class IndexOutOfRange(VoxtourError):
    """The selected option index does not address an offered option."""
