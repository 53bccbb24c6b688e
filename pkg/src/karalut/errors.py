"""Exception types raised across the package."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BaseMismatchError(ValueError):
    pass


class UnderflowError(ArithmeticError):
    pass


class ConfigError(ValueError):
    """A multiplier was configured inconsistently (leaf too small, missing table, ...)."""


class TableFormatError(ValueError):
    """A KLUT stream failed a structural check.

    ``check`` names the failed check: ``"magic"``, ``"version"``, ``"base"``,
    ``"m"``, ``"length"`` or ``"digit"``.
    """

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


class BudgetExceededError(MemoryError):
    def __init__(self, required_bytes: int, budget_bytes: int, entries: int):
        super().__init__(
            f"table needs {required_bytes:,} bytes for {entries:,} entries, "
            f"budget is {budget_bytes:,} bytes"
        )
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes
        self.entries = entries


class TableWriteError(OSError):
    def __init__(self, bytes_written: int, cause: OSError):
        super().__init__(f"write failed after {bytes_written} bytes: {cause}")
        self.bytes_written = bytes_written
