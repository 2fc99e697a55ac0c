"""
Custom exceptions for sequence entropy computations.

All exceptions must be explicit and provide clear error messages
explaining how to fix the issue.
"""


class SequenceEntropyError(Exception):
    """Base exception for all seqentropy errors."""
    pass


class ConfigError(SequenceEntropyError):
    """Raised when a run config cannot be read or is inconsistent."""

    def __init__(self, reason: str, fix: str = ""):
        message = f"Invalid run config: {reason}"
        message += f"\nFix: {fix or 'Check the config file against data/configs/ examples'}"
        super().__init__(message)
        self.reason = reason


class MalformedInputError(SequenceEntropyError, ValueError):
    """Raised when a domain object is constructed from invalid data."""

    def __init__(self, what: str, reason: str = ""):
        message = f"Malformed {what}"
        if reason:
            message += f": {reason}"
        message += f"\nFix: Correct the {what} definition"
        super().__init__(message)
        self.what = what
        self.reason = reason


class CapacityError(SequenceEntropyError):
    """Raised when an exact computation would exceed its configured budget."""

    def __init__(self, quantity: str, size: int, budget: int, fix: str = ""):
        message = f"Capacity exceeded: {quantity} = {size} (budget {budget})"
        message += f"\nFix: {fix or 'Raise the budget with --budget / SEQENT_ENUMERATION_BUDGET or shrink n_range'}"
        super().__init__(message)
        self.quantity = quantity
        self.size = size
        self.budget = budget


class SolverBudgetError(CapacityError):
    """Raised when the exact set cover core is larger than the branch-and-bound budget."""

    def __init__(self, core_size: int, budget: int):
        super().__init__(
            "exact set cover core elements",
            core_size,
            budget,
            fix="Use solver mode 'greedy' (an upper bound on N) or raise SEQENT_EXACT_COVER_MAX_ELEMENTS",
        )
        self.core_size = core_size


class VerificationError(SequenceEntropyError):
    """Raised when reproduced values deviate from their closed forms."""

    def __init__(self, failures: int, tolerance: float):
        message = f"{failures} reproduction row(s) deviate by more than {tolerance:g}"
        message += "\nFix: Inspect the emitted table; the enumeration or solver path has regressed"
        super().__init__(message)
        self.failures = failures
        self.tolerance = tolerance


class ExportError(SequenceEntropyError):
    """Raised when report export fails."""

    def __init__(self, format: str, reason: str = ""):
        message = f"Report export failed (format: {format})"
        if reason:
            message += f": {reason}"
        message += "\nFix: Check that the output path is writable"
        super().__init__(message)
        self.format = format
        self.reason = reason
