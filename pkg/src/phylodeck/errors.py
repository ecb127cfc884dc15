"""Exception hierarchy for phylodeck.

Every failure mode raised by the library is a subclass of NetworkError, so
callers can catch one base class at API boundaries (the CLI does exactly
that to map failures onto exit codes).
"""

from __future__ import annotations


class NetworkError(Exception):
    """Base class for all phylodeck errors."""


# --- structural validation -------------------------------------------------

class Disconnected(NetworkError):
    """The graph is not connected but the operation requires it."""


class Degree2Vertex(NetworkError):
    """An unsuppressed degree-2 vertex is present."""


class UnlabeledLeaf(NetworkError):
    """A vertex of degree <= 1 carries no leaf label."""


class DuplicateLabel(NetworkError):
    """Two vertices carry the same leaf label."""


class LabeledInternal(NetworkError):
    """A vertex of degree >= 2 carries a leaf label."""


class TooFewLeaves(NetworkError):
    """Fewer leaves than the operation's minimum."""


class NotPhylogenetic(NetworkError):
    """Multi-edges/loops present, or contracting the blobs does not give a tree."""


class CollapsedToNothing(NetworkError):
    """Suppression or deletion would leave an empty graph."""


class NotSimple(NetworkError):
    """The network is not simple (one blob, trivial cut-edges only)."""


class LevelTooLow(NetworkError):
    """The operation needs a network of higher level."""


class NotATree(NetworkError):
    """A tree was required but the graph has a cycle or multi-edge."""


# --- lookups and arguments -------------------------------------------------

class NoSuchEdge(NetworkError):
    """The named edge is not in the graph."""


class NoSuchLeaf(NetworkError):
    """The named leaf label is not in the graph."""


class BadSubset(NetworkError):
    """A leaf subset argument is not a subset of the label set."""


class EmptySubset(NetworkError):
    """A leaf subset argument is empty."""


class IndexMismatch(NetworkError):
    """Two decks compared position-wise have different index sets."""


class UnsupportedClass(NetworkError):
    """The operation is only defined for a narrower class of networks."""


class Infeasible(NetworkError):
    """No object with the requested parameters exists."""


class BudgetExceeded(NetworkError):
    """The requested enumeration or search is larger than the configured cap."""


class TooClose(NetworkError):
    """Chain construction needs leaves farther apart than the input allows."""


# --- reconstruction --------------------------------------------------------

class NotTreeDeck(NetworkError):
    """The deck is not the leaf deck of any tree."""


class AmbiguousDeck(NetworkError):
    """More than one tree (up to equivalence) displays the deck."""


class NotDecomposableDeck(NetworkError):
    """The deck cannot come from a decomposable network."""


class NoChain(NetworkError):
    """The requested 3-chain structure is absent from the deck."""


class UniverseTooSmall(NetworkError):
    """A certified candidate universe was required but not supplied."""


class NoCandidate(NetworkError):
    """No network in the universe matches the input data."""


class Ambiguous(NetworkError):
    """Several non-equivalent networks match the input data."""

    def __init__(self, message: str, candidates: list[str] | None = None):
        super().__init__(message)
        self.candidates = list(candidates or [])
