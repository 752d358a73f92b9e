"""Exception hierarchy.

Every error carries the CLI exit code it maps to: 2 for bad input,
3 for unsupported or infeasible requests, 4 for soundness alarms.
"""

from __future__ import annotations


class DeckReconError(Exception):
    exit_code = 1


class InputError(DeckReconError, ValueError):
    exit_code = 2


class MalformedEncoding(InputError):
    pass


class OrderTooLarge(InputError):
    pass


class MalformedFile(InputError):
    pass


class WrongCardCount(MalformedFile):
    pass


class MixedOrders(MalformedFile):
    pass


class CardNotFound(InputError):
    pass


class UnsupportedOrder(DeckReconError):
    exit_code = 3


class TooLarge(DeckReconError):
    exit_code = 3


class InconsistentDeck(DeckReconError):
    """No edge count survives the consistency filters."""

    exit_code = 3


class AmbiguousDegreeSequence(DeckReconError):
    exit_code = 3


class NegativeDegree(InconsistentDeck):
    pass


class NonDivisible(InconsistentDeck):
    pass


class BlockedCase(DeckReconError):
    """Raised by the max-degree clique count when n - r - ell == 0."""

    exit_code = 3


class InternalContradiction(DeckReconError):
    exit_code = 4


class IdentificationAmbiguous(InternalContradiction):
    pass
