"""
Abstract pre-operad
-------------------

The calculus in opcalc only talks to this interface: graded components,
partial compositions, a unit and the linear structure. Elements must support
+, - and unary -, scalar multiplication `k * f`, and expose `.degree`.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Optional, Tuple


class PreOperad(ABC):
    """A linear pre-operad C = {C^n} with partial compositions ∘_i and a unit."""

    @abstractmethod
    def compose(self, f: Any, i: int, g: Any) -> Any:
        """f ∘_i g for 0 <= i <= |f|, landing in C^(deg f + deg g - 1)."""

    @abstractmethod
    def unit(self) -> Any:
        """The unit of C^1."""

    @abstractmethod
    def zero(self, n: int) -> Any:
        """The zero element of C^n."""

    @abstractmethod
    def is_zero(self, f: Any) -> bool:
        ...

    @abstractmethod
    def first_difference(self, a: Any, b: Any) -> Optional[Tuple[Tuple[int, ...], Any, Any]]:
        """First coordinate where a and b differ, with both values; None if a == b."""
