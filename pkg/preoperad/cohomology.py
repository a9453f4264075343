"""
Cohomology of the endomorphism pre-operad
-----------------------------------------

With μ² = 0 the pre-coboundary squares to zero and

    H^n = Ker(D_n : C^n -> C^(n+1)) / Im(D_(n-1) : C^(n-1) -> C^n),   Im(D_(-1)) = 0.

D_n is δ written in the standard cochain basis: column k holds the
coordinates of δ applied to the k-th basis cochain of C^n.

Cup product and bracket descend to H. Two cochains are compared as classes in
one of three ways, strongest first:

- exact: the difference is already the zero cochain;
- witness: an explicit w with δw equal to the difference;
- quotient: the difference reduces to zero modulo Im D_(n-1) (only for degrees
  where the tower has been built).

Anything else is "undecided", never a silent pass.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from preoperad.endo import AlgebraSpec, Cochain, EndomorphismPreOperad
from preoperad.errors import (
    AssociativityRequiredError,
    ContractViolationError,
    DegreeError,
    InclusionViolationError,
    PreOperadError,
    ResourceError,
)
from preoperad.exactlinalg import (
    ExactMatrix,
    Subspace,
    contains,
    coset_reduce,
    image_basis,
    kernel_basis,
    quotient_basis,
    rank,
    solve,
)
from preoperad.opcalc import OperadCalculus, sign

"""
Imports:
- endo: the cochains and the pre-operad E_A they live in.
- exactlinalg: kernels, images and canonical coset representatives.
- opcalc: δ, ⌣, [·,·] and the tribraces used for coboundary witnesses.
"""

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 3
DEFAULT_PROBE_SEEDS = 50

PASS, FAIL, UNDECIDED, SKIPPED = "pass", "fail", "undecided", "skipped"


@dataclass(frozen=True)
class CohomologyClass:
    """A class in H^n through a cocycle; canonical once reduced against Im D_(n-1)."""

    degree: int
    representative: Tuple[Any, ...]
    canonical: bool = True

    @property
    def reduced_degree(self) -> int:
        return self.degree - 1

    def is_zero(self) -> bool:
        return self.canonical and all(x == 0 for x in self.representative)


@dataclass
class Comparison:
    """Outcome of comparing two cochains as cohomology classes."""

    status: str
    method: str
    witness: Optional[Cochain] = None
    detail: Optional[Dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return self.status == PASS


@dataclass
class DegreeRecord:
    degree: int
    dim_ker: int
    dim_im: int
    dim_h: int
    rank: int
    square_zero: Optional[bool]
    representatives: List[List[Any]]


@dataclass
class CohomologyReport:
    algebra: str
    field: Dict[str, Any]
    max_degree: int
    degrees: List[DegreeRecord] = field(default_factory=list)
    verdicts: List[Dict[str, Any]] = field(default_factory=list)
    unit_class: Optional[List[Any]] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def dims(self) -> List[int]:
        return [r.dim_h for r in self.degrees]

    @property
    def passed(self) -> bool:
        return all(v["status"] in (PASS, SKIPPED) for v in self.verdicts)


@dataclass
class DeltaTower:
    """D_n for 0 <= n <= top, with kernels and images cached per degree."""

    spec: AlgebraSpec
    mu2_is_zero: bool
    matrices: Dict[int, ExactMatrix] = field(default_factory=dict)
    kernels: Dict[int, Subspace] = field(default_factory=dict)
    images: Dict[int, Subspace] = field(default_factory=dict)


class CohomologyEngine:
    """H(C) for the endomorphism pre-operad of one algebra, up to max_degree."""

    def __init__(
        self,
        spec: AlgebraSpec,
        max_degree: int = DEFAULT_MAX_DEGREE,
        quotient_degree: Optional[int] = None,
        calculus: Optional[OperadCalculus] = None,
    ):
        if max_degree < 0:
            raise DegreeError(f"max degree must be >= 0, got {max_degree}")
        self.spec = spec
        self.field = spec.field
        self.operad = EndomorphismPreOperad(spec)
        self.calc = calculus or OperadCalculus(self.operad, self.operad.mu())
        self.max_degree = max_degree
        # degrees whose Im D_(n-1) may be built for quotient comparisons
        self.quotient_degree = max_degree + 1 if quotient_degree is None else quotient_degree
        self.tower = DeltaTower(spec, self.calc.is_associative())
        self._classes: Dict[int, List[CohomologyClass]] = {}

    # -------------------------
    # Tower
    # -------------------------
    def require_associative(self) -> None:
        if self.tower.mu2_is_zero:
            return
        triple, value = self.calc.associator_witness()
        labels = [self.spec.basis[k] for k in triple]
        raise AssociativityRequiredError(
            f"{self.spec.name} is not associative: μ² ≠ 0 at ({labels[0]}, {labels[1]}, {labels[2]})",
            triple=triple,
            value=[self.field.to_json(x) for x in value],
        )

    def build_delta_matrix(self, n: int) -> ExactMatrix:
        """Matrix of δ : C^n -> C^(n+1) with d^(n+2) rows and d^(n+1) columns."""
        if n in self.tower.matrices:
            return self.tower.matrices[n]
        self.spec.check_size(n + 1, what="coboundary matrix column")
        rows = self.spec.tensor_size(n + 1)
        cols = self.spec.tensor_size(n)
        columns = [self.calc.delta(e).coordinates() for e in self.operad.basis_cochains(n)]
        m = ExactMatrix.from_columns(self.field, columns, rows)
        self.tower.matrices[n] = m
        log.info("Built D_%d for %s: %dx%d", n, self.spec.name, rows, cols)
        return m

    def kernel(self, n: int) -> Subspace:
        if n not in self.tower.kernels:
            self.tower.kernels[n] = kernel_basis(self.build_delta_matrix(n))
        return self.tower.kernels[n]

    def image_in(self, n: int) -> Subspace:
        """Im(D_(n-1)) as a subspace of C^n; the zero subspace for n = 0."""
        if n not in self.tower.images:
            if n == 0:
                self.tower.images[n] = Subspace.zero(self.field, self.spec.tensor_size(0))
            else:
                self.tower.images[n] = image_basis(self.build_delta_matrix(n - 1))
        return self.tower.images[n]

    def square_zero(self, n: int) -> bool:
        """D_n · D_(n-1) = 0."""
        if n == 0:
            return True
        return (self.build_delta_matrix(n) @ self.build_delta_matrix(n - 1)).is_zero()

    # -------------------------
    # Cohomology
    # -------------------------
    def classes(self, n: int) -> List[CohomologyClass]:
        """Basis classes of H^n, each with its canonical representative."""
        if n not in self._classes:
            self.require_associative()
            ker, im = self.kernel(n), self.image_in(n)
            try:
                reps = quotient_basis(ker, im)
            except InclusionViolationError as e:
                # μ² = 0 forces δ² = 0, so this is an engine bug
                raise InclusionViolationError(f"Im D_{n - 1} ⊄ Ker D_{n} although μ² = 0", e.witness) from e
            self._classes[n] = [CohomologyClass(n, tuple(v)) for v in reps]
        return self._classes[n]

    def compute_cohomology(self) -> CohomologyReport:
        self.require_associative()
        report = CohomologyReport(self.spec.name, self.field.describe(), self.max_degree)
        for n in range(self.max_degree + 1):
            started = time.perf_counter()
            ker, im = self.kernel(n), self.image_in(n)
            reps = self.classes(n)
            record = DegreeRecord(
                degree=n,
                dim_ker=ker.dim,
                dim_im=im.dim,
                dim_h=len(reps),
                rank=rank(self.build_delta_matrix(n)),
                square_zero=self.square_zero(n),
                representatives=[list(c.representative) for c in reps],
            )
            report.degrees.append(record)
            report.timings[f"H{n}_seconds"] = round(time.perf_counter() - started, 6)
            log.info("H^%d(%s): dim %d (ker %d, im %d)", n, self.spec.name, record.dim_h, record.dim_ker, record.dim_im)
        return report

    # -------------------------
    # Classes and induced products
    # -------------------------
    def cochain_of(self, c: CohomologyClass) -> Cochain:
        return self.operad.from_coordinates(c.degree, list(c.representative))

    def _check_cocycle(self, f: Cochain) -> None:
        if not self.calc.delta(f).is_zero():
            raise ContractViolationError(f"degree-{f.degree} representative is not a cocycle")

    def class_of(self, f: Cochain) -> CohomologyClass:
        """The class of a cocycle, canonical when its degree is within the quotient range."""
        self._check_cocycle(f)
        coords = f.coordinates()
        if f.degree <= self.quotient_degree:
            return CohomologyClass(f.degree, tuple(coset_reduce(self.image_in(f.degree), coords)))
        return CohomologyClass(f.degree, tuple(coords), canonical=False)

    def _operands(self, *classes: CohomologyClass) -> List[Cochain]:
        self.require_associative()
        cochains = [self.cochain_of(c) for c in classes]
        for f in cochains:
            self._check_cocycle(f)
        return cochains

    def induced_cup(self, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
        f, g = self._operands(a, b)
        return self.class_of(self.calc.cup(f, g))

    def induced_bracket(self, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
        f, g = self._operands(a, b)
        return self.class_of(self.calc.commutator(f, g))

    def compare(self, x: Cochain, y: Cochain, witness: Optional[Cochain] = None) -> Comparison:
        """Decide whether cocycles x and y are cohomologous."""
        diff = x - y
        if diff.is_zero():
            return Comparison(PASS, "exact")
        if witness is not None and self.calc.delta(witness) == diff:
            return Comparison(PASS, "witness", witness=witness)
        if diff.degree <= self.quotient_degree:
            try:
                if contains(self.image_in(diff.degree), diff.coordinates()):
                    return Comparison(PASS, "quotient", witness=witness)
            except ResourceError as e:
                return Comparison(UNDECIDED, "quotient", detail={"reason": str(e)})
            first = self.operad.first_difference(x, y)
            return Comparison(FAIL, "quotient", detail={"index": list(first[0]), "lhs": str(first[1]), "rhs": str(first[2])})
        return Comparison(UNDECIDED, "none", detail={"reason": f"degree {diff.degree} above quotient range {self.quotient_degree}"})

    def same_class(self, a: CohomologyClass, b: CohomologyClass) -> bool:
        if a.degree != b.degree:
            return False
        if a.canonical and b.canonical:
            return a.representative == b.representative
        return self.compare(self.cochain_of(a), self.cochain_of(b)).ok

    # -------------------------
    # Representative independence
    # -------------------------
    def _coboundary_check(self, p: Cochain) -> Optional[bool]:
        if p.degree > self.quotient_degree:
            return None
        return contains(self.image_in(p.degree), p.coordinates())

    def well_definedness_probe(
        self,
        a: CohomologyClass,
        b: CohomologyClass,
        seed: int,
        perturbations: Optional[Tuple[Cochain, Cochain]] = None,
    ) -> Dict[str, Any]:
        """
        Replace the representatives by rep + δ(random cochain) and check that
        the induced cup product and bracket do not change class.

        Explicit perturbations that are not coboundaries make the probe report
        "invalid perturbation" instead of a failure.
        """
        f, g = self._operands(a, b)
        record: Dict[str, Any] = {"check": "well_definedness", "degrees": [a.degree, b.degree], "seed": seed}

        x = y = None
        if perturbations is not None:
            pf, pg = perturbations
            for p in (pf, pg):
                if self._coboundary_check(p) is False:
                    record.update(status=SKIPPED, detail="invalid perturbation")
                    return record
        else:
            # δ of a random cochain one degree down; degree-0 classes have nothing to perturb by
            if f.degree > 0:
                x = self.operad.random_cochain(f.degree - 1, 2 * seed)
            if g.degree > 0:
                y = self.operad.random_cochain(g.degree - 1, 2 * seed + 1)
            pf = self.calc.delta(x) if x is not None else 0 * f
            pg = self.calc.delta(y) if y is not None else 0 * g

        f2, g2 = f + pf, g + pg
        c = self.calc
        # w with δw = (changed product) - (original product):
        #   cup:     (-1)^g  x ⌣ g'  +  f ⌣ y
        #   bracket: (-1)^|g| [x, g'] + [f, y]
        cup_witness = self._witness_sum(
            (x, lambda: sign(g.degree) * c.cup(x, g2)),
            (y, lambda: c.cup(f, y)),
        )
        bracket_witness = self._witness_sum(
            (x, lambda: sign(g.degree - 1) * c.commutator(x, g2)),
            (y, lambda: c.commutator(f, y)),
        )

        results = {"cup": self.compare(c.cup(f2, g2), c.cup(f, g), cup_witness)}
        try:
            results["bracket"] = self.compare(c.commutator(f2, g2), c.commutator(f, g), bracket_witness)
        except DegreeError:
            results["bracket"] = Comparison(SKIPPED, "degree -1")

        statuses = [r.status for r in results.values()]
        if FAIL in statuses:
            status = FAIL
        elif UNDECIDED in statuses:
            status = UNDECIDED
        else:
            status = PASS
        record.update(status=status, methods={k: r.method for k, r in results.items()})
        return record

    def _witness_sum(self, *parts) -> Optional[Cochain]:
        """Sum the witness terms whose source cochain exists; None if a term is undefined."""
        total = None
        for source, build in parts:
            if source is None:
                continue
            try:
                term = build()
            except DegreeError:
                return None
            total = term if total is None else total + term
        return total

    # -------------------------
    # Unit of {H, ⌣}
    # -------------------------
    def locate_unit(self) -> Optional[List[Any]]:
        """
        Search H^0 for u with u ⌣ x = x for every basis class x up to
        max_degree; returns the coordinates of u in A, or None.
        """
        h0 = self.classes(0)
        if not h0:
            return None
        units = [self.cochain_of(c) for c in h0]
        columns: List[List[Any]] = [[] for _ in units]
        rhs: List[Any] = []
        for n in range(min(self.max_degree, self.quotient_degree) + 1):
            image = self.image_in(n)
            for c in self.classes(n):
                x = self.cochain_of(c)
                rhs.extend(coset_reduce(image, x.coordinates()))
                for k, u in enumerate(units):
                    columns[k].extend(coset_reduce(image, self.calc.cup(u, x).coordinates()))
        m = ExactMatrix.from_columns(self.field, columns, len(rhs))
        coefficients = solve(m, rhs)
        if coefficients is None:
            log.warning("No unit for the cup product found in H^0(%s)", self.spec.name)
            return None
        u = self.operad.zero(0)
        for k, c in zip(coefficients, units):
            u = u + k * c
        return u.coordinates()

    # -------------------------
    # Gerstenhaber certification
    # -------------------------
    def _verdict(self, check: str, classes: Sequence[CohomologyClass], comparison: Comparison) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "check": check,
            "status": comparison.status,
            "degrees": [c.degree for c in classes],
            "method": comparison.method,
        }
        if comparison.witness is not None and comparison.method == "witness":
            record["coboundary_witness_degree"] = comparison.witness.degree
        if comparison.detail:
            record["witness"] = comparison.detail
        return record

    def _safe(self, check: str, classes: Sequence[CohomologyClass], compute) -> Dict[str, Any]:
        try:
            return self._verdict(check, classes, compute())
        except DegreeError as e:
            # operations landing in C^(-1) are vacuous
            return {"check": check, "status": SKIPPED, "degrees": [c.degree for c in classes], "method": "degree -1", "detail": str(e)}

    def gerstenhaber_suite(self, probe_seeds: int = DEFAULT_PROBE_SEEDS, seed: int = 0) -> CohomologyReport:
        """
        Certify the Gerstenhaber axioms on every pair / triple of basis classes up to max_degree,
        plus the cochain-level identities behind graded commutativity and Leibniz, the well-definedness
        probe and the unit search.
        """
        report = self.compute_cohomology()
        started = time.perf_counter()
        c = self.calc
        basis = [cls for n in range(self.max_degree + 1) for cls in self.classes(n)]
        reps = {id(cls): self.cochain_of(cls) for cls in basis}
        r = lambda cls: reps[id(cls)]
        verdicts = report.verdicts

        for a, b in itertools.product(basis, repeat=2):
            f, g = r(a), r(b)
            s = sign((f.degree - 1) * (g.degree - 1))
            verdicts.append(self._safe("bracket_antisymmetry", (a, b), lambda: self.compare(c.commutator(f, g), -s * c.commutator(g, f))))

            def commutativity():
                try:
                    w = sign(g.degree - 1) * c.total(f, g)
                except DegreeError:
                    w = None
                return self.compare(c.cup(f, g), sign(f.degree * g.degree) * c.cup(g, f), w)

            verdicts.append(self._safe("cup_graded_commutativity", (a, b), commutativity))
            verdicts.append(self._degree_check(a, b, f, g))
            dev = c.dev_total(f, g) if f.degree + g.degree >= 1 else None
            if dev is not None:
                verdicts.append(self._defect_verdict("precheck_dev_total", (a, b), dev))

        for a, b, d in itertools.product(basis, repeat=3):
            f, g, h = r(a), r(b), r(d)
            verdicts.append(self._safe("bracket_jacobi", (a, b, d), lambda: self.compare(c.jacobi(f, g, h).lhs, self.operad.zero(f.degree + g.degree + h.degree - 2))))
            verdicts.append(self._safe("cup_associativity", (a, b, d), lambda: self.compare(c.cup(c.cup(f, g), h), c.cup(f, c.cup(g, h)))))

            def leibniz():
                hh, ff, gg = f, g, h
                lhs = c.commutator(hh, c.cup(ff, gg))
                rhs = c.cup(c.commutator(hh, ff), gg) + sign((hh.degree - 1) * ff.degree) * c.cup(ff, c.commutator(hh, gg))
                try:
                    w = sign(gg.degree) * c.tribrace(hh, ff, gg)
                except DegreeError:
                    w = None
                return self.compare(lhs, rhs, w)

            verdicts.append(self._safe("bracket_leibniz", (a, b, d), leibniz))
            try:
                for defect in c.dev_tribrace(f, g, h):
                    verdicts.append(self._defect_verdict(f"precheck_{defect.name}", (a, b, d), defect))
            except DegreeError:
                pass

        pairs = list(itertools.product(basis, repeat=2))
        for k in range(probe_seeds if pairs else 0):
            a, b = pairs[k % len(pairs)]
            verdicts.append(self.well_definedness_probe(a, b, seed + k))

        report.unit_class = self.locate_unit()
        report.timings["gerstenhaber_seconds"] = round(time.perf_counter() - started, 6)
        failed = [v for v in verdicts if v["status"] not in (PASS, SKIPPED)]
        if failed:
            log.warning("%d Gerstenhaber verdicts did not pass for %s", len(failed), self.spec.name)
        return report

    def _degree_check(self, a, b, f, g) -> Dict[str, Any]:
        # |[a,b]| = |a| + |b| and |a ⌣ b| = |a| + |b| + 1
        ok = self.calc.cup(f, g).degree == f.degree + g.degree
        try:
            ok = ok and self.calc.commutator(f, g).degree - 1 == (f.degree - 1) + (g.degree - 1)
        except DegreeError:
            pass
        return {"check": "product_degrees", "status": PASS if ok else FAIL, "degrees": [a.degree, b.degree], "method": "degrees"}

    def _defect_verdict(self, check, classes, defect) -> Dict[str, Any]:
        record = {"check": check, "status": PASS if defect.ok else FAIL, "degrees": [cls.degree for cls in classes], "method": "exact"}
        if not defect.ok:
            record["witness"] = defect.witness()
        return record


# -------------------------
# Module-level entry points
# -------------------------
def build_delta_matrix(spec: AlgebraSpec, n: int) -> ExactMatrix:
    return CohomologyEngine(spec, max_degree=n).build_delta_matrix(n)


def compute_cohomology(spec: AlgebraSpec, max_degree: int = DEFAULT_MAX_DEGREE) -> CohomologyReport:
    return CohomologyEngine(spec, max_degree).compute_cohomology()


def gerstenhaber_suite(spec: AlgebraSpec, max_degree: int = DEFAULT_MAX_DEGREE, probe_seeds: int = DEFAULT_PROBE_SEEDS, seed: int = 0) -> CohomologyReport:
    return CohomologyEngine(spec, max_degree).gerstenhaber_suite(probe_seeds=probe_seeds, seed=seed)
