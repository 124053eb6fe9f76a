"""Exception hierarchy.  Each family carries the CLI exit code it maps to."""


class LiaisonError(Exception):
    exit_code = 1


class ParseError(LiaisonError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        super().__init__(where + message)
        self.message = message


class UnknownVariable(ParseError):
    pass


class MalformedSyntax(ParseError):
    pass


class DivisionInInput(ParseError):
    pass


class PreconditionError(LiaisonError):
    exit_code = 3


class ModeMismatch(PreconditionError):
    pass


class RingMismatch(PreconditionError):
    pass


class NotHomogeneous(PreconditionError):
    pass


class UnitIdeal(PreconditionError):
    pass


class ExtOutOfRange(PreconditionError):
    pass


class ResourceCapError(LiaisonError):
    exit_code = 4


class DegreeCapExceeded(ResourceCapError):
    pass


class SizeCapExceeded(ResourceCapError):
    pass


class GenericityFailure(ResourceCapError):
    pass


class BoundViolation(LiaisonError):
    exit_code = 5
