"""Exception types shared across the package."""


class NCDiophError(Exception):
    pass


class StructureMismatchError(NCDiophError):
    """Operands (or systems) belong to different ambient structures."""


class ParseError(NCDiophError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} (line {line}, col {col})"
        super().__init__(message)


class NotInDomainError(NCDiophError):
    """A value lies outside the domain of a partial map (encoder, decoder, witness)."""


class NotASolutionError(NCDiophError):
    """An assignment handed to a verifier does not solve the source system."""


class UnsupportedTargetError(NCDiophError):
    """The requested compilation target is outside what this package constructs."""
