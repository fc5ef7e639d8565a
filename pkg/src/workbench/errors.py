"""Exception hierarchy shared by every stage.

Each class carries the CLI exit status it maps to, so the front end can
turn any failure into a single greppable line without a lookup table.
"""

EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_VERIFY = 4
EXIT_CLUSTER = 5


class WorkbenchError(Exception):
    exit_code = EXIT_USAGE

    @property
    def code(self):
        return type(self).__name__


# matrix kernel

class MatrixError(WorkbenchError):
    pass


class NonPrimeModulus(MatrixError):
    pass


class EmptyMatrix(MatrixError):
    pass


class Singular(MatrixError):
    pass


class NotUnitriangular(MatrixError):
    pass


class NotSquare(MatrixError):
    pass


class DimensionMismatch(MatrixError):
    pass


class ShapeMismatch(MatrixError):
    pass


class MatrixFormatError(MatrixError):
    exit_code = EXIT_FORMAT


# proof scripts and features

class ParseError(WorkbenchError):
    exit_code = EXIT_FORMAT

    def __init__(self, file, line, message):
        self.file = file
        self.line = line
        self.message = message
        super().__init__(f"{file}:{line}: {message}")


class DuplicateLemma(WorkbenchError):
    exit_code = EXIT_FORMAT

    def __init__(self, name):
        self.name = name
        super().__init__(f"lemma {name!r} declared twice")


class CorpusFormatError(WorkbenchError):
    exit_code = EXIT_FORMAT


class EmptySymbolTable(WorkbenchError):
    exit_code = EXIT_FORMAT


class CsvFormatError(WorkbenchError):
    exit_code = EXIT_FORMAT

    def __init__(self, line, message="malformed row"):
        self.line = line
        super().__init__(f"line {line}: {message}")


# clustering

class BadGranularity(WorkbenchError):
    exit_code = EXIT_CLUSTER


class TooFewPoints(WorkbenchError):
    exit_code = EXIT_CLUSTER


class UnknownLemma(WorkbenchError):
    exit_code = EXIT_CLUSTER


class ReportFormatError(WorkbenchError):
    exit_code = EXIT_FORMAT


class FixtureError(WorkbenchError):
    exit_code = EXIT_USAGE


class IOFailure(WorkbenchError):
    exit_code = EXIT_FORMAT


class VerificationFailed(WorkbenchError):
    exit_code = EXIT_VERIFY
