# qh_moduli/exceptions.py


class QHModuliError(Exception):
    """Base exception class for all qh_moduli specific errors."""
    pass


class ExpressionSyntaxError(QHModuliError):
    """Raised when an algebraic expression cannot be parsed."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownGeneratorError(QHModuliError):
    """Raised when an expression names a generator missing from the context."""

    def __init__(self, name: str, position: int = 0):
        super().__init__(f"Unknown generator '{name}' (at position {position})")
        self.name = name
        self.position = position


class ContextMismatchError(QHModuliError):
    """Raised when elements of different generator contexts are combined."""
    pass


class PresentationError(QHModuliError):
    """Raised for malformed or invalid presentations and presentation files."""
    pass


class InconsistentPresentationError(PresentationError):
    """Raised when the relations generate the unit ideal."""
    pass


class BasisError(PresentationError):
    """Raised when a declared basis is not realizable modulo the relations."""

    def __init__(self, message: str, rank: int, expected: int):
        super().__init__(f"{message} (rank {rank}, expected {expected})")
        self.rank = rank
        self.expected = expected


class UnsupportedGenusError(QHModuliError):
    """Raised when no built-in data exists for a genus or ring kind."""
    pass


class NotDeterminedError(QHModuliError):
    """Raised when a value lies outside what the stored data determines."""
    pass


class RelationError(QHModuliError):
    """Raised when a proposed relation does not lie in the ideal."""

    def __init__(self, message: str, normal_form: str):
        super().__init__(f"{message}: normal form {normal_form}")
        self.normal_form = normal_form


class SolverError(QHModuliError):
    """Raised when the isomorphism equations are underdetermined or inconsistent."""

    def __init__(self, message: str, dump: str = ""):
        super().__init__(message if not dump else f"{message}\n{dump}")
        self.dump = dump


class VerificationError(QHModuliError):
    """Raised when a verification check finds a wrong value."""
    pass
