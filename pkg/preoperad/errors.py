"""
Errors
------

Every failure the engine can raise is a PreOperadError. Each class carries the
exit code the command line maps it to:

- 1: an identity check produced a nonzero defect (not raised, reported)
- 2: configuration or load problems (bad field, bad document, bad degree)
- 3: the formal associator is nonzero where cohomology needs it to vanish
"""

from __future__ import annotations

from typing import Any, Optional, Sequence, Tuple


class PreOperadError(Exception):
    """Base class for all engine errors."""

    exit_code = 2


class ConfigurationError(PreOperadError):
    """Bad field configuration, or operands living over different algebras."""


class FieldMismatchError(ConfigurationError):
    """Arithmetic between scalars of different field configurations."""


class ZeroDivisionFieldError(PreOperadError, ZeroDivisionError):
    """Inverse of the zero element."""


class AlgebraLoadError(PreOperadError):
    """An algebra-spec document failed validation."""

    def __init__(self, message: str, product: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        # (i, j) of the failing product e_i · e_j, when one is to blame
        self.product = product


class DegreeError(PreOperadError):
    """Degrees do not fit the operation (mismatched sum, empty slot range, negative result)."""


class ArityError(PreOperadError):
    """Wrong number of arguments passed to a multilinear map."""


class PositionError(PreOperadError):
    """Slot index of a partial composition out of range."""


class ResourceError(PreOperadError):
    """A tensor or matrix would exceed the configured memory cap."""

    def __init__(self, requested: int, cap: int, what: str = "tensor"):
        super().__init__(
            f"{what} needs {requested} entries, above the memory cap of {cap}; "
            f"lower the degree or raise --memory-cap"
        )
        self.requested = requested
        self.cap = cap


class DimensionMismatchError(PreOperadError):
    """Vector or matrix shapes are incompatible."""


class InclusionViolationError(PreOperadError):
    """Im δ is not contained in Ker δ; a witness vector is attached."""

    def __init__(self, message: str, witness: Sequence[Any]):
        super().__init__(message)
        self.witness = list(witness)


class AssociativityRequiredError(PreOperadError):
    """The operation needs μ² = 0 but the algebra is not associative."""

    exit_code = 3

    def __init__(self, message: str, triple: Tuple[int, int, int], value: Sequence[Any]):
        super().__init__(message)
        # basis triple (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k), and μ² on it
        self.triple = triple
        self.value = list(value)


class ContractViolationError(PreOperadError):
    """An induced product received a representative that is not a cocycle."""
