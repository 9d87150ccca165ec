"""Exception hierarchy shared across the package.

Every error carries a short machine-readable ``kind`` which the CLI prints as a
prefix on standard error.
"""


class BipartiteMapsError(Exception):
    kind = "error"


class ContractError(BipartiteMapsError, ValueError):
    """An argument violates the documented precondition of an operation."""

    kind = "contract"


class SizeOverflowError(BipartiteMapsError):
    kind = "size-overflow"


class AxiomError(BipartiteMapsError):
    """A multiplication rule fails the group axioms on the generated set."""

    kind = "axiom"


class ConstructionError(BipartiteMapsError):
    """A construction produced something that fails its own verification."""

    kind = "construction"


class ClassificationViolation(BipartiteMapsError):
    """Result contradicting the classification; signals an engine bug."""

    kind = "classification"


class RegularityViolation(BipartiteMapsError):
    kind = "regularity"


class NotRegularError(BipartiteMapsError):
    """The Petrie dual of a chiral map is not regular.

    ``petrie_length`` still reports the order of ``x * y**-1`` so the caller can
    inspect the Petrie polygons.
    """

    kind = "not-regular"

    def __init__(self, message: str, petrie_length: int):
        super().__init__(message)
        self.petrie_length = petrie_length


class NotRealizableError(BipartiteMapsError):
    kind = "not-realizable"


class SearchExhaustedError(BipartiteMapsError):
    kind = "search-exhausted"


class ScaleError(BipartiteMapsError):
    kind = "scale"
