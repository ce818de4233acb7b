from typing import Optional


class DynPlanarError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(DynPlanarError):
    pass


# Embedding kernel

class EmbeddingError(DynPlanarError):
    pass


class SameFaceViolation(EmbeddingError):
    pass


class SelfLoop(EmbeddingError):
    pass


class UnknownEdge(EmbeddingError):
    pass


class InvalidCorner(EmbeddingError):
    pass


class InvalidSegment(EmbeddingError):
    pass


class InvalidTarget(EmbeddingError):
    pass


class NotAFourCycle(EmbeddingError):
    pass


class NonContiguousCut(EmbeddingError):
    pass


# Tree-cotree index

class TreeCotreeError(DynPlanarError):
    pass


class TreeEdge(TreeCotreeError):
    pass


class NotOnCycle(TreeCotreeError):
    pass


class SameNode(TreeCotreeError):
    pass


class DifferentComponents(TreeCotreeError):
    pass


# Flip search

class FlipSearchError(DynPlanarError):
    pass


class NoSuchFace(FlipSearchError):
    pass


class FlipBudgetExceeded(FlipSearchError):
    pass


class CriticalityViolation(FlipSearchError):
    pass


# Dynamic structures

class DynamicGraphError(DynPlanarError):
    pass


class DuplicateEdge(DynamicGraphError):
    pass


# Decomposition

class DecompositionError(DynPlanarError):
    pass


class EmptyComponent(DecompositionError):
    pass


class TooSmall(DecompositionError):
    pass


class NotSameBlock(DecompositionError):
    pass


# Oracles

class OracleError(DynPlanarError):
    pass


class TooLarge(OracleError):
    pass


class InfiniteCost(OracleError):
    pass


class ParseError(DynPlanarError):
    """Malformed trace input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str, line: Optional[str] = None):
        self.line_no = line_no
        self.line = line
        super().__init__(f"line {line_no}: {message}")
