# ============================================================================
# SOURCEFILE: exceptions.py
# RELPATH: tpb_bench/src/core/exceptions.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Exception hierarchy for TPB Bench
# ============================================================================

"""
Exception classes for TPB Bench.

Every error raised by the library derives from ``TpbError``. Subclasses keep
the offending values as attributes so callers (and tests) can inspect them
without parsing messages.
"""

from typing import Any, Iterable, Optional


class TpbError(Exception):
    """Base exception for all TPB Bench errors."""
    pass


# ============================================================================
# Model-Related Exceptions (Bezier simplex)
# ============================================================================

class ModelError(TpbError):
    """Base exception for Bezier simplex model errors."""
    pass


class PreconditionError(ModelError):
    """
    Raised when an operation is called with arguments violating its contract.

    Attributes:
        operation: Name of the operation
        reason: Human-readable explanation
    """
    def __init__(self, operation: str, reason: str):
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation}: precondition violated: {reason}")


class DimensionError(ModelError):
    """
    Raised when a vector has the wrong length.

    Attributes:
        operation: Name of the operation
        expected: Expected length
        actual: Actual length
    """
    def __init__(self, operation: str, expected: int, actual: int):
        self.operation = operation
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{operation}: dimension mismatch (expected {expected}, got {actual})"
        )


# ============================================================================
# Scalarization-Related Exceptions
# ============================================================================

class ScalarizationError(TpbError):
    """Base exception for scalarization errors."""
    pass


class WeightSetError(ScalarizationError):
    """
    Raised when a weight set cannot be constructed.

    Attributes:
        K: Requested number of weight vectors
        M: Number of objectives
        reason: Explanation of the failure
    """
    def __init__(self, K: int, M: int, reason: str):
        self.K = K
        self.M = M
        self.reason = reason
        super().__init__(f"Cannot build weight set (K={K}, M={M}): {reason}")


class EmptyLedgerError(ScalarizationError):
    """
    Raised when reference points are requested from an empty ledger.

    Attributes:
        operation: Name of the operation that needed data
    """
    def __init__(self, operation: str):
        self.operation = operation
        super().__init__(f"{operation}: evaluation ledger is empty")


# ============================================================================
# Optimizer-Related Exceptions
# ============================================================================

class OptimizerError(TpbError):
    """Base exception for derivative-free optimizer errors."""
    pass


class OptimizerNotFoundError(OptimizerError):
    """
    Raised when a requested optimizer is not registered.

    Attributes:
        name: Requested optimizer name
        available: Registered optimizer names
    """
    def __init__(self, name: str, available: Optional[Iterable[str]] = None):
        self.name = name
        self.available = list(available or [])
        msg = f"Optimizer '{name}' not found"
        if self.available:
            msg += f". Available optimizers: {', '.join(self.available)}"
        super().__init__(msg)


class OptimizerPreconditionError(OptimizerError):
    """
    Raised when optimizer parameters are inconsistent (e.g. rho_end >= rho_begin).

    Attributes:
        optimizer: Optimizer name
        reason: Explanation of the failure
    """
    def __init__(self, optimizer: str, reason: str):
        self.optimizer = optimizer
        self.reason = reason
        super().__init__(f"Optimizer '{optimizer}': {reason}")


class OptimizerUnavailableError(OptimizerError):
    """
    Raised when an optimizer needs a package that is not installed.

    Attributes:
        optimizer: Optimizer name
        package: Missing package name
    """
    def __init__(self, optimizer: str, package: str):
        self.optimizer = optimizer
        self.package = package
        super().__init__(
            f"Optimizer '{optimizer}' requires the '{package}' package, which is not installed"
        )


class BudgetExhaustedError(TpbError):
    """
    Raised by budget wrappers when one more f-call would exceed the cap.

    Optimizers catch this and return their trace; it never reaches the user.

    Attributes:
        capacity: The cap that was reached
    """
    def __init__(self, capacity: int):
        self.capacity = capacity
        super().__init__(f"Evaluation budget of {capacity} exhausted")


class LedgerFullError(BudgetExhaustedError):
    """Raised when the evaluation ledger has reached its capacity."""

    def __str__(self):
        return f"Evaluation ledger full (capacity {self.capacity})"


# ============================================================================
# Problem-Related Exceptions
# ============================================================================

class ProblemError(TpbError):
    """Base exception for benchmark problem errors."""
    pass


class UnsupportedKindError(ProblemError):
    """
    Raised when a function kind (or kind pair) is not supported.

    Attributes:
        kind: The offending kind identifier
        available: Supported kind identifiers
    """
    def __init__(self, kind: str, available: Optional[Iterable[str]] = None):
        self.kind = kind
        self.available = list(available or [])
        msg = f"Unsupported function kind '{kind}'"
        if self.available:
            msg += f". Supported kinds: {', '.join(self.available)}"
        super().__init__(msg)


# ============================================================================
# Run / Assessment Exceptions
# ============================================================================

class RunConfigError(TpbError):
    """
    Raised when a TPB run configuration is invalid (e.g. budget too small).

    Attributes:
        key: Name of the offending parameter
        value: The offending value
        reason: Explanation of the failure
    """
    def __init__(self, key: str, value: Any, reason: str):
        self.key = key
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid run parameter '{key}'={value!r}: {reason}")


class AssessError(TpbError):
    """Raised for invalid inputs to the assessment functions."""
    pass


# ============================================================================
# Configuration-Related Exceptions
# ============================================================================

class ConfigError(TpbError):
    """Base exception for configuration-related errors."""
    pass


class ConfigLoadError(ConfigError):
    """
    Raised when a configuration file cannot be loaded.

    Attributes:
        config_file: Path to the configuration file
        reason: Explanation of the failure
    """
    def __init__(self, config_file: str, reason: str):
        self.config_file = config_file
        self.reason = reason
        super().__init__(f"Failed to load config '{config_file}': {reason}")


class ConfigValidationError(ConfigError):
    """
    Raised when configuration data fails validation.

    Attributes:
        key: Configuration key that failed validation
        value: The invalid value
        reason: Explanation of why validation failed
    """
    def __init__(self, key: str, value: Any, reason: str):
        self.key = key
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid config value for '{key}': {reason}")


# ============================================================================
# I/O-Related Exceptions
# ============================================================================

class ResultIOError(TpbError):
    """Base exception for result file I/O errors."""
    pass


class ResultReadError(ResultIOError):
    """
    Raised when a result file (ledger, trace, model, cache) cannot be read.

    Attributes:
        path: Path to the file
        reason: Explanation of the failure
    """
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"Failed to read '{path}': {reason}")


class ResultWriteError(ResultIOError):
    """
    Raised when a result file cannot be written.

    Attributes:
        path: Path where writing failed
        reason: Explanation of the failure
    """
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(path, reason)

    def __str__(self):
        return f"Failed to write '{self.path}': {self.reason}"
