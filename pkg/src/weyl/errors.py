"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code``; the CLI maps the
codes onto exit statuses.
"""


class WeylError(Exception):
    code = "ERROR"


class MalformedInput(WeylError):
    code = "MALFORMED"


class InvalidLabel(WeylError):
    code = "INVALID_LABEL"


class DuplicateGenerator(WeylError):
    code = "DUPLICATE_GENERATOR"


class UnknownGenerator(WeylError):
    code = "UNKNOWN_GENERATOR"


class InvalidSubset(WeylError):
    code = "INVALID"


class NotIrreducible(WeylError):
    code = "NOT_IRREDUCIBLE"


class EmptySystem(WeylError):
    code = "EMPTY"


class NotSpherical(WeylError):
    code = "NOT_SPHERICAL"


class InvalidThickness(WeylError):
    code = "INVALID_THICKNESS"


class NotChordal(WeylError):
    code = "NOT_CHORDAL"


class CliquePredicateFailed(WeylError):
    code = "CLIQUE_PREDICATE_FAILED"

    def __init__(self, clique, message=None):
        self.clique = clique
        super().__init__(message or f"clique {sorted(clique)} fails the predicate")


class WrongRank(WeylError):
    code = "WRONG_RANK"


class BadRadii(WeylError):
    code = "BAD_RADII"


class LimitExceeded(WeylError):
    code = "LIMIT_EXCEEDED"


class InvariantViolation(WeylError):
    """Raised when an internal cross-check fails; never expected."""

    code = "INVARIANT_VIOLATION"
