"""
Endomorphism pre-operad
-----------------------

Concrete pre-operad E_A with E_A^n = Hom(A^⊗n, A) for a finite-dimensional
algebra A given by structure constants.

A cochain of degree n is stored as a dense object array of shape (d,)*(n+1):
axis 0 is the output basis index, axes 1..n are the input basis indices, in
row-major order. Degree 0 cochains are plain vectors of A.

Partial composition substitutes g into input slot i of f:

    f ∘_i g = (-1)^(i|g|) f ∘ (1^⊗i ⊗ g ⊗ 1^⊗(|f|-i)),   0 <= i <= |f|

The module also keeps a brute-force evaluator (basis tuple by basis tuple)
that never touches numpy contractions; tests and checks compare against it.
"""

from __future__ import annotations

import itertools
import json
import logging
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field as PydanticField, ValidationError

from preoperad.base import PreOperad
from preoperad.errors import (
    AlgebraLoadError,
    ArityError,
    ConfigurationError,
    DegreeError,
    DimensionMismatchError,
    PositionError,
    PreOperadError,
    ResourceError,
)
from preoperad.exactfield import Field, field_from_config

"""
Imports:
- numpy: coefficient tensors (object dtype so entries stay exact), tensordot/moveaxis for ∘_i.
- pydantic: schema of the algebra-spec JSON document.
- exactfield: the scalar field the structure constants are embedded into.
"""

log = logging.getLogger(__name__)

DEFAULT_MEMORY_CAP = 10**6
RANDOM_COEFFICIENT_RANGE = (-3, 3)


# -------------------------
# Algebra-spec document
# -------------------------
class FieldDocument(BaseModel):
    type: str = "rational"
    p: Optional[int] = None


class AlgebraDocument(BaseModel):
    """Shape of an algebra-spec file; coefficients are ints or "a/b" strings."""

    name: str
    field: FieldDocument = PydanticField(default_factory=FieldDocument)
    dimension: int = PydanticField(gt=0)
    basis: List[str]
    unit: Optional[List[Union[int, str]]] = None
    product: List[List[List[Union[int, str]]]]


class AlgebraSpec:
    """
    A finite-dimensional algebra presented by structure constants.

    product[i, j] is the coordinate vector of e_i · e_j. Associativity is not
    assumed; see OperadCalculus.formal_associator.
    """

    def __init__(
        self,
        name: str,
        field: Field,
        basis: Sequence[str],
        product: np.ndarray,
        unit: Optional[np.ndarray] = None,
        memory_cap: int = DEFAULT_MEMORY_CAP,
    ):
        d = len(basis)
        if product.shape != (d, d, d):
            raise AlgebraLoadError(f"structure constants have shape {product.shape}, expected {(d, d, d)}")
        self.name = name
        self.field = field
        self.basis = list(basis)
        self.dimension = d
        self.product = product
        self.product.flags.writeable = False
        self.unit = unit
        if self.unit is not None:
            self.unit.flags.writeable = False
        self.memory_cap = memory_cap

    @property
    def d(self) -> int:
        return self.dimension

    def fingerprint(self) -> Tuple:
        unit = None if self.unit is None else tuple(self.unit)
        return (self.name, tuple(sorted(self.field.describe().items())), tuple(self.basis), tuple(self.product.flat), unit)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, AlgebraSpec) and self.fingerprint() == other.fingerprint()

    def __hash__(self):
        return hash(self.fingerprint())

    def __repr__(self):
        return f"AlgebraSpec({self.name!r}, d={self.dimension}, field={self.field!r})"

    def multiply(self, x: Sequence[Any], y: Sequence[Any]) -> np.ndarray:
        """x · y for coordinate vectors, straight from the structure constants."""
        d = self.dimension
        out = self.field.zeros(d)
        for i in range(d):
            if x[i] == 0:
                continue
            for j in range(d):
                if y[j] == 0:
                    continue
                out = out + (x[i] * y[j]) * self.product[i, j]
        return out

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dimension)
        v[i] = self.field.one()
        return v

    def tensor_size(self, n: int) -> int:
        return self.dimension ** (n + 1)

    def check_size(self, n: int, what: str = "tensor") -> None:
        """Fail fast when a degree-n cochain would exceed the memory cap."""
        size = self.tensor_size(n)
        if size > self.memory_cap:
            raise ResourceError(size, self.memory_cap, what=f"degree-{n} {what}")


def _parse_document(document: Union[str, bytes, Mapping[str, Any]]) -> AlgebraDocument:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise AlgebraLoadError(f"algebra document is not valid JSON: {e}") from e
    try:
        return AlgebraDocument.model_validate(document)
    except ValidationError as e:
        raise AlgebraLoadError(f"algebra document does not match the schema: {e}") from e


def load_algebra(
    document: Union[str, bytes, Mapping[str, Any]],
    field_override: Optional[Field] = None,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> AlgebraSpec:
    """
    Validate an algebra-spec document and build the AlgebraSpec.

    Checks, in order: field configuration (prime p), basis length, the arity of
    every structure-constant vector, and, when a unit is declared, that it is a
    two-sided identity. Errors name the failing product e_i · e_j.
    """
    doc = _parse_document(document)
    try:
        field = field_override or field_from_config(doc.field.model_dump(exclude_none=True))
    except PreOperadError as e:
        raise AlgebraLoadError(f"{doc.name}: {e}") from e

    d = doc.dimension
    if len(doc.basis) != d:
        raise AlgebraLoadError(f"{doc.name}: {len(doc.basis)} basis labels for dimension {d}")
    if len(doc.product) != d:
        raise AlgebraLoadError(f"{doc.name}: product table has {len(doc.product)} rows, expected {d}")

    product = field.zeros((d, d, d))
    for i, row in enumerate(doc.product):
        if len(row) != d:
            raise AlgebraLoadError(f"{doc.name}: product row {i} has {len(row)} entries, expected {d}", product=(i, 0))
        for j, coords in enumerate(row):
            if len(coords) != d:
                raise AlgebraLoadError(
                    f"{doc.name}: {doc.basis[i]}·{doc.basis[j]} has {len(coords)} coordinates, expected {d}",
                    product=(i, j),
                )
            try:
                for k, c in enumerate(coords):
                    product[i, j, k] = field.element(c)
            except PreOperadError as e:
                raise AlgebraLoadError(f"{doc.name}: {doc.basis[i]}·{doc.basis[j]}: {e}", product=(i, j)) from e

    unit = None
    if doc.unit is not None:
        if len(doc.unit) != d:
            raise AlgebraLoadError(f"{doc.name}: unit has {len(doc.unit)} coordinates, expected {d}")
        try:
            unit = field.array(doc.unit)
        except PreOperadError as e:
            raise AlgebraLoadError(f"{doc.name}: unit: {e}") from e

    spec = AlgebraSpec(doc.name, field, doc.basis, product, unit, memory_cap)
    if unit is not None:
        _check_unit(spec)
    log.info("Loaded algebra %s (d=%d over %r)", spec.name, d, field)
    return spec


def _check_unit(spec: AlgebraSpec) -> None:
    for j in range(spec.dimension):
        e_j = spec.basis_vector(j)
        left = spec.multiply(spec.unit, e_j)
        right = spec.multiply(e_j, spec.unit)
        label = spec.basis[j]
        if any(a != b for a, b in zip(left, e_j)):
            raise AlgebraLoadError(f"{spec.name}: declared unit fails u·{label} = {label}", product=(-1, j))
        if any(a != b for a, b in zip(right, e_j)):
            raise AlgebraLoadError(f"{spec.name}: declared unit fails {label}·u = {label}", product=(j, -1))


# -------------------------
# Cochains
# -------------------------
class Cochain:
    """Homogeneous element of C^n = Hom(A^⊗n, A) with its coefficient tensor."""

    __hash__ = None

    def __init__(self, algebra: AlgebraSpec, degree: int, tensor: np.ndarray):
        if degree < 0:
            raise DegreeError(f"cochain degree must be >= 0, got {degree}")
        shape = (algebra.dimension,) * (degree + 1)
        if tensor.shape != shape:
            raise DimensionMismatchError(f"degree-{degree} tensor must have shape {shape}, got {tensor.shape}")
        self.algebra = algebra
        self.degree = degree
        self.tensor = np.ascontiguousarray(tensor, dtype=object)
        self.tensor.flags.writeable = False

    @property
    def reduced_degree(self) -> int:
        return self.degree - 1

    @property
    def field(self) -> Field:
        return self.algebra.field

    # linear structure
    def _check(self, other: "Cochain") -> None:
        if not isinstance(other, Cochain):
            raise TypeError(f"expected a Cochain, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ConfigurationError("cochains over different algebras")
        if other.degree != self.degree:
            raise DegreeError(f"cannot add cochains of degree {self.degree} and {other.degree}")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.algebra, self.degree, self.tensor + other.tensor)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.algebra, self.degree, self.tensor - other.tensor)

    def __neg__(self) -> "Cochain":
        return Cochain(self.algebra, self.degree, -self.tensor)

    def __rmul__(self, k: Any) -> "Cochain":
        k = self.field.element(k)
        return Cochain(self.algebra, self.degree, self.tensor * k)

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if other.degree != self.degree or (other.algebra is not self.algebra and other.algebra != self.algebra):
            return False
        return all(a == b for a, b in zip(self.tensor.flat, other.tensor.flat))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.tensor.flat)

    def coordinates(self) -> List[Any]:
        """Coordinates in the standard basis, row-major over (out, in_1, ..., in_n)."""
        return list(self.tensor.flat)

    def __repr__(self):
        nz = sum(1 for x in self.tensor.flat if x != 0)
        return f"Cochain(deg={self.degree}, nonzero={nz}, algebra={self.algebra.name!r})"


def composition_sign(i: int, g_degree: int) -> int:
    """(-1)^(i|g|) for substitution into slot i; |g| = g_degree - 1 may be -1."""
    return -1 if (i * (g_degree - 1)) % 2 else 1


# -------------------------
# The pre-operad
# -------------------------
class EndomorphismPreOperad(PreOperad):
    """E_A for a given AlgebraSpec; every cochain it produces refers back to that spec."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.field = spec.field

    @property
    def d(self) -> int:
        return self.spec.dimension

    def _own(self, f: Cochain) -> None:
        if f.algebra is not self.spec and f.algebra != self.spec:
            raise ConfigurationError(f"cochain over {f.algebra.name!r} used in E_A of {self.spec.name!r}")

    # -- constructors --
    def zero(self, n: int) -> Cochain:
        if n < 0:
            raise DegreeError(f"no component C^{n}")
        self.spec.check_size(n)
        return Cochain(self.spec, n, self.field.zeros((self.d,) * (n + 1)))

    def unit(self) -> Cochain:
        t = self.field.zeros((self.d, self.d))
        for i in range(self.d):
            t[i, i] = self.field.one()
        return Cochain(self.spec, 1, t)

    def mu(self) -> Cochain:
        """μ ∈ C^2 with μ[k, i, j] = k-th coordinate of e_i · e_j."""
        return Cochain(self.spec, 2, np.transpose(self.spec.product, (2, 0, 1)).copy())

    def element(self, vector: Sequence[Any]) -> Cochain:
        """An element a of A as a degree-0 cochain."""
        if len(vector) != self.d:
            raise DimensionMismatchError(f"vector of length {len(vector)} in an algebra of dimension {self.d}")
        return Cochain(self.spec, 0, self.field.array(list(vector)))

    def from_coordinates(self, n: int, coords: Sequence[Any]) -> Cochain:
        self.spec.check_size(n)
        size = self.spec.tensor_size(n)
        if len(coords) != size:
            raise DimensionMismatchError(f"degree-{n} cochain needs {size} coordinates, got {len(coords)}")
        t = np.empty(size, dtype=object)
        for k, c in enumerate(coords):
            t[k] = self.field.element(c)
        return Cochain(self.spec, n, t.reshape((self.d,) * (n + 1)))

    def basis_cochain(self, n: int, index: int) -> Cochain:
        """The standard basis cochain with a single 1 at flat position `index`."""
        self.spec.check_size(n)
        t = self.field.zeros(self.spec.tensor_size(n))
        t[index] = self.field.one()
        return Cochain(self.spec, n, t.reshape((self.d,) * (n + 1)))

    def basis_cochains(self, n: int) -> Iterator[Cochain]:
        for index in range(self.spec.tensor_size(n)):
            yield self.basis_cochain(n, index)

    def random_cochain(self, n: int, seed: int) -> Cochain:
        """Deterministic cochain for `seed`, coefficients drawn from the integers in [-3, 3]."""
        self.spec.check_size(n)
        lo, hi = RANDOM_COEFFICIENT_RANGE
        rng = np.random.default_rng(seed)
        ints = rng.integers(lo, hi + 1, size=self.spec.tensor_size(n))
        return self.from_coordinates(n, [int(x) for x in ints])

    # -- pre-operad structure --
    def compose(self, f: Cochain, i: int, g: Cochain) -> Cochain:
        self._own(f)
        self._own(g)
        n, m = f.degree, g.degree
        if n < 1 or not 0 <= i <= n - 1:
            raise PositionError(f"slot {i} out of range for a degree-{n} cochain")
        deg = n + m - 1
        self.spec.check_size(deg)

        # contract g's output into slot i; f's surviving axes come first, g's inputs last
        t = np.tensordot(f.tensor, g.tensor, axes=([1 + i], [0]))
        if m:
            t = np.moveaxis(t, list(range(n, n + m)), list(range(1 + i, 1 + i + m)))
        if composition_sign(i, m) < 0:
            t = -t
        return Cochain(self.spec, deg, t)

    def is_zero(self, f: Cochain) -> bool:
        return f.is_zero()

    def first_difference(self, a: Cochain, b: Cochain):
        if a.degree != b.degree:
            raise DegreeError(f"cannot compare degree {a.degree} with degree {b.degree}")
        for idx in np.ndindex(a.tensor.shape):
            if a.tensor[idx] != b.tensor[idx]:
                return tuple(int(k) for k in idx), a.tensor[idx], b.tensor[idx]
        return None

    # -- evaluation --
    def evaluate(self, f: Cochain, args: Sequence[Sequence[Any]]) -> np.ndarray:
        """Multilinear extension of f applied to a list of vectors of A."""
        self._own(f)
        if len(args) != f.degree:
            raise ArityError(f"degree-{f.degree} cochain applied to {len(args)} arguments")
        t = f.tensor
        for v in reversed(args):
            if len(v) != self.d:
                raise DimensionMismatchError(f"argument of length {len(v)} in dimension {self.d}")
            t = np.tensordot(t, np.asarray(v, dtype=object), axes=([t.ndim - 1], [0]))
        return t

    def _on_basis(self, f: Cochain, indices: Sequence[int]) -> np.ndarray:
        return f.tensor[(slice(None),) + tuple(indices)]

    def substitute(self, f: Cochain, i: int, g: Cochain) -> Cochain:
        """f ∘_i g by brute-force evaluation over all basis tuples."""
        self._own(f)
        self._own(g)
        n, m = f.degree, g.degree
        if n < 1 or not 0 <= i <= n - 1:
            raise PositionError(f"slot {i} out of range for a degree-{n} cochain")
        deg = n + m - 1
        out = self.zero(deg).tensor.copy()
        sign = (-1) ** ((i * (m - 1)) % 2)
        for idx in itertools.product(range(self.d), repeat=deg):
            inner = self._on_basis(g, idx[i:i + m])
            # f(x_1, ..., x_i, g(...), ...) is linear in the inserted slot
            acc = self.field.zeros(self.d)
            for k in range(self.d):
                if inner[k] != 0:
                    acc = acc + inner[k] * self._on_basis(f, idx[:i] + (k,) + idx[i + m:])
            out[(slice(None),) + idx] = acc * sign
        return Cochain(self.spec, deg, out)

    def tensor_product_compose(self, f: Cochain, g: Cochain) -> Cochain:
        """μ ∘ (f ⊗ g), i.e. (x, y) ↦ f(x) · g(y), by brute force over basis tuples."""
        self._own(f)
        self._own(g)
        p, q = f.degree, g.degree
        out = self.zero(p + q).tensor.copy()
        for idx in itertools.product(range(self.d), repeat=p + q):
            out[(slice(None),) + idx] = self.spec.multiply(self._on_basis(f, idx[:p]), self._on_basis(g, idx[p:]))
        return Cochain(self.spec, p + q, out)

    def associator(self) -> Cochain:
        """(x, y, z) ↦ (xy)z - x(yz), by brute force over basis triples."""
        out = self.zero(3).tensor.copy()
        for i, j, k in itertools.product(range(self.d), repeat=3):
            xy_z = self.spec.multiply(self.spec.product[i, j], self.spec.basis_vector(k))
            x_yz = self.spec.multiply(self.spec.basis_vector(i), self.spec.product[j, k])
            out[:, i, j, k] = xy_z - x_yz
        return Cochain(self.spec, 3, out)

    def describe_index(self, idx: Sequence[int]) -> Dict[str, Any]:
        """Readable form of a tensor index: output label and input labels."""
        labels = self.spec.basis
        return {"out": labels[idx[0]], "inputs": [labels[k] for k in idx[1:]]}
