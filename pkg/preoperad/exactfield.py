"""
Exact field arithmetic
----------------------

All coefficients live in an exact field K, either the rationals or a prime
field F_p. Every identity check in the engine is then plain equality, never an
approximation.

- Rational mode uses fractions.Fraction (already a reduced fraction of
  arbitrary-precision integers with a positive denominator).
- Prime mode uses Residue, an immutable value in [0, p).

Python ints are accepted everywhere as the image of Z in K.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, Iterable, Union

import numpy as np

from preoperad.errors import ConfigurationError, FieldMismatchError, ZeroDivisionFieldError

"""
Imports:
- fractions.Fraction is the rational Scalar (normalised on construction).
- numpy builds object-dtype arrays of scalars for tensors and matrices.
- errors: the configuration / mismatch / division errors raised here.
"""

log = logging.getLogger(__name__)


class Residue:
    """An element of F_p stored as its canonical residue."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("Residue is immutable")

    def _other(self, other: Any) -> Union["Residue", None]:
        # ints embed into F_p; anything else from another field is an error
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatchError(f"cannot combine elements of F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return Residue(int(other), self.p)
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"cannot combine an element of F_{self.p} with a rational")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Residue(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Residue(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Residue(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Residue(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionFieldError(f"0 has no inverse in F_{self.p}")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.value == int(other) % self.p
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


def is_prime(n: int) -> bool:
    """Deterministic trial division up to sqrt(n)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for k in range(3, math.isqrt(n) + 1, 2):
        if n % k == 0:
            return False
    return True


class Field(ABC):
    """A field configuration: makes, parses and serialises scalars."""

    name: str = "field"

    @abstractmethod
    def element(self, value: Any) -> Scalar:
        """Embed an int, Fraction, "a/b" string or compatible scalar into K."""

    @abstractmethod
    def to_json(self, x: Scalar) -> Union[int, str]:
        """JSON form of a scalar: an int, or an "a/b" string for proper fractions."""

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """The {"type": ...} document this field was configured from."""

    def zero(self) -> Scalar:
        return self.element(0)

    def one(self) -> Scalar:
        return self.element(1)

    def array(self, values: Iterable[Any]) -> np.ndarray:
        """Object array of scalars; nested lists keep their shape."""
        arr = np.array(values, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = self.element(v)
        return out

    def zeros(self, shape) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(self.zero())
        return out

    def __eq__(self, other):
        return isinstance(other, Field) and self.describe() == other.describe()

    def __hash__(self):
        return hash(tuple(sorted(self.describe().items())))

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"

    def element(self, value: Any) -> Fraction:
        if isinstance(value, Residue):
            raise FieldMismatchError("cannot use an element of a prime field in rational mode")
        if isinstance(value, bool):
            raise ConfigurationError(f"not a scalar: {value!r}")
        if isinstance(value, (int, np.integer)):
            return Fraction(int(value))
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as e:
                raise ConfigurationError(f"cannot parse rational {value!r}: {e}") from e
        raise ConfigurationError(f"not an exact scalar: {value!r}")

    def to_json(self, x: Scalar) -> Union[int, str]:
        x = self.element(x)
        if x.denominator == 1:
            return x.numerator
        return f"{x.numerator}/{x.denominator}"

    def describe(self) -> Dict[str, Any]:
        return {"type": "rational"}


class PrimeField(Field):
    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
            raise ConfigurationError(f"field characteristic must be a prime, got {p!r}")
        self.p = p
        self.name = f"F_{p}"

    def element(self, value: Any) -> Residue:
        if isinstance(value, Residue):
            if value.p != self.p:
                raise FieldMismatchError(f"element of F_{value.p} used in F_{self.p}")
            return value
        if isinstance(value, bool):
            raise ConfigurationError(f"not a scalar: {value!r}")
        if isinstance(value, (int, np.integer)):
            return Residue(int(value), self.p)
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as e:
                raise ConfigurationError(f"cannot parse scalar {value!r}: {e}") from e
        if isinstance(value, Fraction):
            # a/b maps to a * b^-1; the denominator must be a unit mod p
            den = Residue(value.denominator, self.p)
            if den.value == 0:
                raise ConfigurationError(f"denominator of {value} vanishes modulo {self.p}")
            return Residue(value.numerator, self.p) * den.inverse()
        raise ConfigurationError(f"not an exact scalar: {value!r}")

    def to_json(self, x: Scalar) -> int:
        return self.element(x).value

    def describe(self) -> Dict[str, Any]:
        return {"type": "prime", "p": self.p}


QQ = RationalField()


def field_from_config(doc: Dict[str, Any]) -> Field:
    """Build a Field from {"type": "rational"} or {"type": "prime", "p": <int>}."""
    kind = (doc or {}).get("type", "rational")
    if kind == "rational":
        return QQ
    if kind == "prime":
        p = doc.get("p")
        field = PrimeField(p)
        log.debug("configured prime field F_%d", p)
        return field
    raise ConfigurationError(f"unknown field type {kind!r}")


def field_of(x: Any) -> Field:
    if isinstance(x, Residue):
        return PrimeField(x.p)
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return QQ
    raise ConfigurationError(f"not an exact scalar: {x!r}")


def _same_field(a: Any, b: Any) -> None:
    fa, fb = field_of(a), field_of(b)
    # a bare int is compatible with every field
    if isinstance(a, int) or isinstance(b, int):
        return
    if fa != fb:
        raise FieldMismatchError(f"operands live in {fa!r} and {fb!r}")


# -------------------------
# Scalar operations
# -------------------------
def add(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a - b


def neg(a: Scalar) -> Scalar:
    return -a


def mul(a: Scalar, b: Scalar) -> Scalar:
    _same_field(a, b)
    return a * b


def inv(a: Scalar) -> Scalar:
    if isinstance(a, Residue):
        return a.inverse()
    a = QQ.element(a)
    if a == 0:
        raise ZeroDivisionFieldError("0 has no inverse in Q")
    return 1 / a


def div(a: Scalar, b: Scalar) -> Scalar:
    return mul(a, inv(b))


def power(a: Scalar, k: int) -> Scalar:
    """a^k for any integer k; negative k needs a != 0."""
    if k < 0:
        return power(inv(a), -k)
    if isinstance(a, Residue):
        return Residue(pow(a.value, k, a.p), a.p)
    return QQ.element(a) ** k
