"""Domain error types.

Every error the package raises on bad mathematical input derives from
LatticeGamesError, so CLI and server layers can report the error name
uniformly (exit code 1 / structured rejection).
"""


class LatticeGamesError(Exception):
    """Base class for all domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class NotAPoset(LatticeGamesError):
    """Antisymmetry (or another poset axiom) fails; carries a witness pair."""

    def __init__(self, pair, message=""):
        self.pair = pair
        super().__init__(message or f"antisymmetry violated by {pair}")


class NotALattice(LatticeGamesError):
    """Some pair lacks a join or a meet; carries the offending pair."""

    def __init__(self, pair, kind, message=""):
        self.pair = pair
        self.kind = kind  # "join" | "meet"
        super().__init__(message or f"pair {pair} has no {kind}")


class ForeignElement(LatticeGamesError):
    """An element was used with a lattice that did not issue it."""


class NotACover(LatticeGamesError):
    """Item list does not have the claimed supremum."""

    def __init__(self, sup_label, target_label, history=None):
        self.sup_label = sup_label
        self.target_label = target_label
        self.history = history
        at = f" (history {history})" if history is not None else ""
        super().__init__(f"items join to {sup_label}, not {target_label}{at}")


class NotIncreasing(LatticeGamesError):
    """Cover items are not cumulative / monotone."""


class NotPawlikowski(LatticeGamesError):
    """Operation needs distributivity over suprema, lattice lacks it."""


class NotEnoughPrimes(LatticeGamesError):
    """Operation needs the prime-separation property, lattice lacks it."""


class NoPrimes(LatticeGamesError):
    """A prime-quantified check would be vacuous; flagged instead of passed."""


class SearchBound(LatticeGamesError):
    """An exhaustive search exceeded its configured budget."""


class EmptyInstance(LatticeGamesError):
    """A selector was given no covers while the target is not bottom."""


class SizeBound(LatticeGamesError):
    """Generator asked for an instance above the configured size cap."""


class InvalidSymbolicSet(LatticeGamesError):
    """Malformed eventually-periodic subset description."""


class CoordinateOutOfRange(LatticeGamesError):
    """Sequence-lattice coordinate beyond the configured width bound."""


class StrategyPartial(LatticeGamesError):
    """A strategy callback failed on a reachable history."""

    def __init__(self, history, message=""):
        self.history = history
        super().__init__(message or f"strategy undefined on history {history}")


class IllegalSelection(LatticeGamesError):
    """Player II picked outside the offered cover."""


class CorruptTranscript(LatticeGamesError):
    """Stored transcript violates its own invariants."""


class DepthExceeded(LatticeGamesError):
    """Level index beyond the strategy tree depth."""


class HistoryBlowup(LatticeGamesError):
    """Candidate-history set exceeded its cap during wedge play."""

    def __init__(self, size, inning, cap):
        self.size = size
        self.inning = inning
        self.cap = cap
        super().__init__(f"{size} candidate histories at inning {inning} (cap {cap})")


class SelectorFailed(LatticeGamesError):
    """A selection the construction relies on did not exist."""


class DecodeFailure(LatticeGamesError):
    """A picked wedge item lacks a choice-function entry for the threaded history."""


class SessionError(LatticeGamesError):
    """Invalid session id or move out of turn."""


class FileFormatError(LatticeGamesError):
    """Malformed input file; message carries field/line diagnostics."""
