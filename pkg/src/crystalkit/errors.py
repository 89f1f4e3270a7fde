"""Exception hierarchy shared by every crystalkit module.

The CLI maps these onto exit codes: ``InvalidInput`` subclasses give 2,
``CapExceeded`` gives 3 and ``InternalCheckFailure`` subclasses give 4.
"""


class CrystalkitError(Exception):
    """Base class for all library errors."""


class InvalidInput(CrystalkitError):
    """The caller supplied data that violates an operation's preconditions."""


class InternalCheckFailure(CrystalkitError):
    """Two independently computed answers disagree. Always a bug."""


class CapExceeded(CrystalkitError):
    """A size cap (group order, search space, ...) was exceeded."""

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeded cap {cap}")


# exactmath ----------------------------------------------------------------

class NoSolution(InvalidInput):
    """An integer linear system has no integral solution."""


# groups -------------------------------------------------------------------

class NotInvertible(InvalidInput):
    """A matrix that should lie in GL(n, Z) has determinant other than +-1."""


# repanalysis ----------------------------------------------------------------

class TableMismatch(InvalidInput):
    """A character table was computed for a different group."""


class GenericElementFailure(CrystalkitError):
    """No element generating the center was found in the allotted trials."""


class CrossValidationMismatch(InternalCheckFailure):
    """The character checklist and the commutant block route disagree."""


# crystal ---------------------------------------------------------------------

class InconsistentVectorSystem(InvalidInput):
    """Generator translations violate the cocycle condition modulo Z^n."""


class NotFaithful(InvalidInput):
    """The data would make the translation subgroup strictly larger than Z^n."""


class NoCenter(InvalidInput):
    """The group has first Betti number zero."""


class NotFound(CrystalkitError):
    """A bounded search finished without a witness."""


# ghw -------------------------------------------------------------------------

class DimensionMismatch(InvalidInput):
    """Assignment or element dimensions do not fit the target group."""


class InvalidEpi(InvalidInput):
    """The supplied map is not an epimorphism onto the infinite dihedral group."""


# dynamics --------------------------------------------------------------------

class NoCompatibleTheta(InvalidInput):
    """No endomorphism of the holonomy group intertwines with the linear part."""


class VectorObstruction(InvalidInput):
    """The translation condition fails modulo Z^n for every translation part."""

    def __init__(self, message: str, element=None):
        self.element = element
        super().__init__(message)


# spin ------------------------------------------------------------------------

class NotOrthogonal(InvalidInput):
    """Matrix does not preserve the given quadratic form."""


class NotSpecial(InvalidInput):
    """Matrix has determinant -1."""


class NotOrientable(InvalidInput):
    """Some holonomy matrix has determinant -1."""


class DimensionCap(CapExceeded):
    """Clifford algebra dimension would exceed the supported range."""

    def __init__(self, n: int, cap: int):
        CrystalkitError.__init__(self, f"dimension {n} exceeds spin cap {cap}")
        self.what = "dimension"
        self.cap = cap


# shell -----------------------------------------------------------------------

class GroupFileError(InvalidInput):
    """Base class for group-file problems."""


class GroupFileSyntaxError(GroupFileError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SchemaError(GroupFileError):
    pass


class SemanticError(GroupFileError):
    pass
