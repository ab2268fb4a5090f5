"""Exception hierarchy shared by every drsa module."""


class DRSAError(Exception):
    """Base class for all errors raised by this package."""


class OutOfDomain(DRSAError, ValueError):
    def __init__(self, attribute: str, value, detail: str = ""):
        self.attribute = attribute
        self.value = value
        msg = f"{attribute}: value {value!r} is outside the attribute domain"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class MissingValue(DRSAError, ValueError):
    def __init__(self, attribute: str):
        self.attribute = attribute
        super().__init__(f"{attribute}: missing value (imputation is not supported)")


class ParseError(DRSAError, ValueError):
    """Malformed dataset or schema input.

    ``line`` and ``column`` are 1-based; either may be ``None`` when the
    problem is not tied to a position (e.g. an empty stream).
    """

    def __init__(self, cause: str, line: int | None = None, column: int | None = None):
        self.cause = cause
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {cause}" if prefix else cause)


class SchemaError(DRSAError, ValueError):
    """An attribute or schema definition violates its invariants."""


class SchemaMismatch(DRSAError, ValueError):
    pass


class UnknownId(DRSAError, KeyError):
    pass


class UnknownClass(DRSAError, KeyError):
    pass


class DivisionUndefined(DRSAError, ZeroDivisionError):
    """A candidate condition set covers no object, so its score has no value."""


class EmptyTarget(DRSAError, ValueError):
    pass


class UndefinedMetric(DRSAError, ZeroDivisionError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"{name} is undefined (zero denominator)")


class LengthMismatch(DRSAError, ValueError):
    pass
