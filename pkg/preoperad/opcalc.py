"""
Operad calculus
---------------

Derived operations of a linear pre-operad with a fixed μ ∈ C^2, and the
identities they satisfy. Everything here uses only the PreOperad interface
(∘_i, unit, zero, linear structure), so it runs unchanged on any instance.

Degrees: deg f = n for f ∈ C^n, reduced degree |f| = n - 1.

    f ⌣ g   = (-1)^f (μ ∘_0 f) ∘_f g                  deg f + deg g
    f • g   = Σ_{i=0}^{|f|} f ∘_i g                     deg f + |g|
    {h,f,g} = Σ_i Σ_j (h ∘_i f) ∘_j g                   deg h + |f| + |g|
    [f, g]  = f • g - (-1)^(|f||g|) g • f
    δ_ν f   = -[f, ν],   δ = δ_μ,   μ² = μ • μ

An empty sum is the zero cochain of the degree the formula names, so f • g is
zero when deg f = 0. Identity checks return a Defect (left side, right side)
instead of a boolean.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from preoperad.base import PreOperad
from preoperad.errors import ConfigurationError, DegreeError

log = logging.getLogger(__name__)


def sign(k: int) -> int:
    """(-1)^k for any integer k, negative ones included."""
    return -1 if k % 2 else 1


@dataclass
class Defect:
    """Left side minus right side of one identity instance; zero iff it holds."""

    name: str
    lhs: Any
    rhs: Any
    degrees: Tuple[int, ...] = ()
    seed: Optional[int] = None
    operad: Optional[PreOperad] = field(default=None, repr=False)

    @property
    def value(self) -> Any:
        return self.lhs - self.rhs

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def witness(self) -> Optional[Dict[str, Any]]:
        """First coefficient where the two sides differ, with both values."""
        if self.operad is None:
            return None if self.ok else {"detail": "sides differ"}
        diff = self.operad.first_difference(self.lhs, self.rhs)
        if diff is None:
            return None
        index, left, right = diff
        out: Dict[str, Any] = {"index": list(index), "lhs": str(left), "rhs": str(right)}
        describe = getattr(self.operad, "describe_index", None)
        if describe is not None:
            out["at"] = describe(index)
        return out


class OperadCalculus:
    """The operations of a pre-operad with a fixed μ, plus identity checkers."""

    def __init__(self, operad: PreOperad, mu: Any):
        if mu.degree != 2:
            raise DegreeError(f"μ must lie in C^2, got degree {mu.degree}")
        self.operad = operad
        self.mu = mu
        self.one = operad.unit()
        self._mu2 = None

    # -------------------------
    # Operations
    # -------------------------
    def compose(self, f, i: int, g):
        return self.operad.compose(f, i, g)

    def _sum(self, terms, degree: int):
        acc = self.operad.zero(degree)
        for t in terms:
            acc = acc + t
        return acc

    def _checked_degree(self, degree: int, what: str) -> int:
        if degree < 0:
            raise DegreeError(f"{what} would land in C^{degree}")
        return degree

    def cup(self, f, g):
        """f ⌣ g = (-1)^f (μ ∘_0 f) ∘_f g."""
        left = self.compose(self.mu, 0, f)
        return sign(f.degree) * self.compose(left, f.degree, g)

    def total(self, f, g):
        """f • g = Σ_{i=0}^{|f|} f ∘_i g; zero when deg f = 0."""
        degree = self._checked_degree(f.degree + g.degree - 1, "f • g")
        return self._sum((self.compose(f, i, g) for i in range(f.degree)), degree)

    def tribrace(self, h, f, g):
        degree = self._checked_degree(h.degree + f.degree + g.degree - 2, "{h,f,g}")
        terms = []
        for i in range(h.degree - 1):
            hf = self.compose(h, i, f)
            for j in range(i + f.degree, f.degree + h.degree - 1):
                terms.append(self.compose(hf, j, g))
        return self._sum(terms, degree)

    def tetrabrace(self, h, f, g, b):
        hd, fd, gd = h.degree, f.degree, g.degree
        degree = self._checked_degree(hd + fd + gd + b.degree - 3, "{h,f,g,b}")
        terms = []
        for i in range(hd - 2):
            hf = self.compose(h, i, f)
            for j in range(i + fd, hd + fd - 2):
                hfg = self.compose(hf, j, g)
                for k in range(j + gd, hd + fd + gd - 2):
                    terms.append(self.compose(hfg, k, b))
        return self._sum(terms, degree)

    def formal_associator(self):
        """μ² = μ • μ."""
        if self._mu2 is None:
            self._mu2 = self.total(self.mu, self.mu)
        return self._mu2

    def is_associative(self) -> bool:
        return self.operad.is_zero(self.formal_associator())

    def commutator(self, f, g):
        return self.total(f, g) - sign((f.degree - 1) * (g.degree - 1)) * self.total(g, f)

    def delta_by(self, nu, f):
        """δ_ν f = -[f, ν] = (-1)^(|f||ν|) ν • f - f • ν."""
        return sign((f.degree - 1) * (nu.degree - 1)) * self.total(nu, f) - self.total(f, nu)

    def delta(self, f):
        return self.delta_by(self.mu, f)

    def associator_of(self, h, f, g):
        """The •-associator (h • f) • g - h • (f • g)."""
        return self.total(self.total(h, f), g) - self.total(h, self.total(f, g))

    # -------------------------
    # Identity checks
    # -------------------------
    def _defect(self, name, lhs, rhs, *operands, seed=None) -> Defect:
        return Defect(name, lhs, rhs, tuple(x.degree for x in operands), seed, self.operad)

    def unit_laws(self, f, seed=None) -> List[Defect]:
        out = [self._defect("unit_left", self.compose(self.one, 0, f), f, f, seed=seed)]
        for i in range(f.degree):
            out.append(self._defect(f"unit_right[{i}]", self.compose(f, i, self.one), f, f, seed=seed))
        return out

    def composition_relations(self, h, f, g, seed=None) -> List[Defect]:
        """All three cases of the composition relations, for every valid (i, j)."""
        hr, fr, gr = h.degree - 1, f.degree - 1, g.degree - 1
        s = sign(fr * gr)
        out = []
        for i in range(h.degree):
            hf = self.compose(h, i, f)
            for j in range(hr + fr + 1):
                lhs = self.compose(hf, j, g)
                if j <= i - 1:
                    rhs = s * self.compose(self.compose(h, j, g), i + gr, f)
                    case = 1
                elif j <= i + fr:
                    rhs = self.compose(h, i, self.compose(f, j - i, g))
                    case = 2
                else:
                    rhs = s * self.compose(self.compose(h, j - fr, g), i, f)
                    case = 3
                out.append(self._defect(f"composition_case{case}[i={i},j={j}]", lhs, rhs, h, f, g, seed=seed))
                if case == 1:
                    out.append(self._swapped_third_case(h, g, f, j, i + gr, seed))
        return out

    def _swapped_third_case(self, h, f, g, i, j, seed) -> Defect:
        # third case for (h ∘_i f) ∘_j g with the roles of the first case swapped
        s = sign((f.degree - 1) * (g.degree - 1))
        lhs = self.compose(self.compose(h, i, f), j, g)
        rhs = s * self.compose(self.compose(h, j - (f.degree - 1), g), i, f)
        return self._defect(f"composition_case3_from_case1[i={i},j={j}]", lhs, rhs, h, f, g, seed=seed)

    def getzler(self, h, f, g, seed=None) -> Defect:
        s = sign((f.degree - 1) * (g.degree - 1))
        rhs = self.tribrace(h, f, g) + s * self.tribrace(h, g, f)
        return self._defect("getzler", self.associator_of(h, f, g), rhs, h, f, g, seed=seed)

    def gerstenhaber_identity(self, h, f, g, seed=None) -> Defect:
        s = sign((f.degree - 1) * (g.degree - 1))
        return self._defect("gerstenhaber_identity", self.associator_of(h, f, g), s * self.associator_of(h, g, f), h, f, g, seed=seed)

    def antisymmetry(self, f, g, seed=None) -> Defect:
        s = sign((f.degree - 1) * (g.degree - 1))
        return self._defect("bracket_antisymmetry", self.commutator(f, g), -s * self.commutator(g, f), f, g, seed=seed)

    def jacobi(self, f, g, h, seed=None) -> Defect:
        fr, gr, hr = f.degree - 1, g.degree - 1, h.degree - 1
        c = self.commutator
        lhs = (
            sign(fr * hr) * c(c(f, g), h)
            + sign(gr * fr) * c(c(g, h), f)
            + sign(hr * gr) * c(c(h, f), g)
        )
        return self._defect("bracket_jacobi", lhs, 0 * lhs, f, g, h, seed=seed)

    def delta_bracket_derivation(self, f, g, seed=None) -> Defect:
        d, c = self.delta, self.commutator
        rhs = sign(g.degree - 1) * c(d(f), g) + c(f, d(g))
        return self._defect("delta_derivation_of_bracket", d(c(f, g)), rhs, f, g, seed=seed)

    def delta_square(self, f, seed=None) -> Defect:
        return self._defect("delta_square", self.delta(self.delta(f)), -self.delta_by(self.formal_associator(), f), f, seed=seed)

    def cup_associator(self, f, g, h, seed=None) -> Defect:
        """(f⌣g)⌣h - f⌣(g⌣h) = (-1)^g {μ², f, g, h}."""
        lhs = self.cup(self.cup(f, g), h) - self.cup(f, self.cup(g, h))
        rhs = sign(g.degree) * self.tetrabrace(self.formal_associator(), f, g, h)
        return self._defect("cup_associator", lhs, rhs, f, g, h, seed=seed)

    def cup_as_tribrace(self, f, g, seed=None) -> Defect:
        return self._defect("cup_as_tribrace", self.cup(f, g), sign(f.degree) * self.tribrace(self.mu, f, g), f, g, seed=seed)

    def cup_unit_decomposition(self, f, seed=None) -> Defect:
        """f⌣𝟙 + (-1)^|f| 𝟙⌣f = (-1)^f μ•f, the cup form of -δ."""
        lhs = self.cup(f, self.one) + sign(f.degree - 1) * self.cup(self.one, f)
        return self._defect("cup_unit_decomposition", lhs, sign(f.degree) * self.total(self.mu, f), f, seed=seed)

    def delta_cup_form(self, f, seed=None) -> Defect:
        """-δf = f⌣𝟙 + f•μ + (-1)^|f| 𝟙⌣f."""
        rhs = self.cup(f, self.one) + self.total(f, self.mu) + sign(f.degree - 1) * self.cup(self.one, f)
        return self._defect("delta_cup_form", -self.delta(f), rhs, f, seed=seed)

    def total_with_unit(self, f, seed=None) -> List[Defect]:
        return [
            self._defect("unit_total_left", self.total(self.one, f), f, f, seed=seed),
            self._defect("unit_total_right", self.total(f, self.one), f.degree * f, f, seed=seed),
        ]

    def dev_total(self, f, g, seed=None) -> Defect:
        """(-1)^|g| dev_•δ(f ⊗ g) = f⌣g - (-1)^(fg) g⌣f."""
        d = self.delta
        gr = g.degree - 1
        dev = d(self.total(f, g)) - self.total(f, d(g)) - sign(gr) * self.total(d(f), g)
        rhs = self.cup(f, g) - sign(f.degree * g.degree) * self.cup(g, f)
        return self._defect("dev_total_is_cup_commutator", sign(gr) * dev, rhs, f, g, seed=seed)

    def dev_tribrace_value(self, h, f, g):
        """dev_{...}δ(h ⊗ f ⊗ g) = δ{h,f,g} - {h,f,δg} - (-1)^|g|{h,δf,g} - (-1)^(|g|+|f|){δh,f,g}."""
        d, t = self.delta, self.tribrace
        fr, gr = f.degree - 1, g.degree - 1
        return d(t(h, f, g)) - t(h, f, d(g)) - sign(gr) * t(h, d(f), g) - sign(gr + fr) * t(d(h), f, g)

    def dev_tribrace(self, h, f, g, seed=None) -> List[Defect]:
        """Both closed forms of the tribrace derivation deviation."""
        gr, hr = g.degree - 1, h.degree - 1
        lhs = sign(gr) * self.dev_tribrace_value(h, f, g)
        s = sign(hr * f.degree)
        t = self.total
        c = self.commutator
        left_form = self.cup(t(h, f), g) + s * self.cup(f, t(h, g)) - t(h, self.cup(f, g))
        bracket_form = self.cup(c(h, f), g) + s * self.cup(f, c(h, g)) - c(h, self.cup(f, g))
        return [
            self._defect("dev_tribrace_left_form", lhs, left_form, h, f, g, seed=seed),
            self._defect("dev_tribrace_bracket_form", lhs, bracket_form, h, f, g, seed=seed),
        ]

    def right_translation_defect(self, f, g, h, seed=None) -> Defect:
        """(f⌣g)•h = f⌣(g•h) + (-1)^(|h|g) (f•h)⌣g."""
        t = self.total
        rhs = self.cup(f, t(g, h)) + sign((h.degree - 1) * g.degree) * self.cup(t(f, h), g)
        return self._defect("right_translation", t(self.cup(f, g), h), rhs, f, g, h, seed=seed)

    def cup_derivation_defect(self, f, g, seed=None) -> Defect:
        """δ(f⌣g) - f⌣δg - (-1)^g δf⌣g = (-1)^|g| {μ², f, g}."""
        d = self.delta
        lhs = d(self.cup(f, g)) - self.cup(f, d(g)) - sign(g.degree) * self.cup(d(f), g)
        rhs = sign(g.degree - 1) * self.tribrace(self.formal_associator(), f, g)
        return self._defect("cup_derivation_obstruction", lhs, rhs, f, g, seed=seed)

    def mu_identities(self) -> List[Defect]:
        """δ𝟙 = μ, [μ,μ] = 2μ², δμ = -2μ², 𝟙•g = g on μ."""
        mu2 = self.formal_associator()
        return [
            self._defect("delta_of_unit", self.delta(self.one), self.mu, self.one),
            self._defect("bracket_mu_mu", self.commutator(self.mu, self.mu), 2 * mu2, self.mu),
            self._defect("delta_of_mu", self.delta(self.mu), -2 * mu2, self.mu),
        ]

    # -------------------------
    # Endomorphism cross-checks
    # -------------------------
    def _endo(self):
        for name in ("substitute", "tensor_product_compose", "associator"):
            if not hasattr(self.operad, name):
                raise ConfigurationError(f"{type(self.operad).__name__} has no brute-force {name}")
        return self.operad

    def compose_by_evaluation(self, f, i: int, g, seed=None) -> Defect:
        endo = self._endo()
        return self._defect(f"compose_vs_evaluation[i={i}]", self.compose(f, i, g), endo.substitute(f, i, g), f, g, seed=seed)

    def cup_by_evaluation(self, f, g, seed=None) -> Defect:
        """f⌣g = (-1)^(fg) μ∘(f⊗g) in E_A."""
        endo = self._endo()
        rhs = sign(f.degree * g.degree) * endo.tensor_product_compose(f, g)
        return self._defect("cup_vs_evaluation", self.cup(f, g), rhs, f, g, seed=seed)

    def associator_by_evaluation(self) -> Defect:
        """μ² = μ∘(μ⊗1 - 1⊗μ) in E_A."""
        return self._defect("formal_associator_vs_evaluation", self.formal_associator(), self._endo().associator(), self.mu)

    def associator_witness(self) -> Optional[Tuple[Tuple[int, int, int], List[Any]]]:
        """A basis triple where μ² does not vanish, with the value there."""
        mu2 = self.formal_associator()
        tensor = getattr(mu2, "tensor", None)
        if tensor is None or self.operad.is_zero(mu2):
            return None
        d = tensor.shape[0]
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    column = tensor[:, i, j, k]
                    if any(x != 0 for x in column):
                        return (i, j, k), list(column)
        return None
