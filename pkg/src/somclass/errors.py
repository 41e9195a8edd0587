"""Exception hierarchy.

Every error raised by the package derives from :class:`SomclassError`. The
three intermediate classes decide the CLI exit code: validation problems
exit 2, numerical failures exit 1 and file integrity / I/O problems exit 3.
"""


class SomclassError(Exception):
    exit_code = 1


class ValidationError(SomclassError, ValueError):
    """Bad user input: arguments, dimensions, labels or input files."""

    exit_code = 2


class NumericalError(SomclassError, ArithmeticError):
    exit_code = 1


class StorageError(SomclassError, OSError):
    exit_code = 3


# imageio
class MissingFile(ValidationError):
    pass


class UnsupportedFormat(ValidationError):
    pass


class MalformedImage(ValidationError):
    pass


# features
class EmptyImage(ValidationError):
    pass


class DuplicateId(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


# linalg
class NotSymmetric(ValidationError):
    pass


class NoConvergence(NumericalError):
    pass


# pca / lsa
class BadDimension(ValidationError):
    pass


class TooFewImages(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class RankTooLow(ValidationError):
    pass


# som
class InvalidConfig(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class ModelNotTrained(ValidationError):
    pass


# evaluation
class LengthMismatch(ValidationError):
    pass


class LabelOutOfRange(ValidationError):
    pass


class EmptyMatrix(ValidationError):
    pass


# synth
class InvalidSpec(ValidationError):
    pass


# persistence
class VersionMismatch(StorageError):
    pass


class CorruptFile(StorageError):
    pass
