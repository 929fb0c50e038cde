"""Exception hierarchy shared by all finzar modules."""


class FinzarError(Exception):
    """Base class for every error raised by the toolkit."""


class NotAPartialOrder(FinzarError):
    pass


class NotALattice(FinzarError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDistributive(FinzarError):
    """Carries a violating triple ``(x, y, z)`` with x∧(y∨z) != (x∧y)∨(x∧z)."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class CapExceeded(FinzarError):
    pass


class UnknownSymbol(FinzarError):
    def __init__(self, symbol, line=None, column=None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"unknown symbol {symbol!r}{where}")
        self.symbol = symbol
        self.line = line
        self.column = column


class ElementNotFound(FinzarError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SourceTargetMismatch(FinzarError):
    pass


class NotAPoint(FinzarError):
    pass


class MissingAssignment(FinzarError):
    pass


class NotASupportDatum(FinzarError):
    def __init__(self, report):
        super().__init__(f"support datum fails {len(report)} check(s)")
        self.report = report


class InvalidMap(FinzarError):
    def __init__(self, report):
        super().__init__(f"not a lattice map: {len(report)} violation(s)")
        self.report = report


class NotFunctorial(FinzarError):
    pass


class UnsupportedValueKind(FinzarError):
    pass


class NotACover(FinzarError):
    pass


class MismatchFound(FinzarError):
    pass


class DuplicateGenerator(FinzarError):
    pass


class DSLSyntaxError(FinzarError, SyntaxError):
    """Parse failure in one of the text formats; carries 1-based line/column.

    Also a builtin ``SyntaxError``, so ``lineno``/``offset`` are filled in too.
    """

    def __init__(self, message, line, column):
        text = f"{message} (line {line}, column {column})"
        super().__init__(text)
        self.msg = text
        self.lineno = line
        self.offset = column
        self.line = line
        self.column = column

    def __str__(self):
        return self.msg
