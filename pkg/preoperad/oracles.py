"""
Independent oracles
-------------------

Textbook computations that share nothing with opcalc except the structure
constants, used to cross-check the cohomology engine:

- the center Z(A) (dimension of H^0),
- derivations Der(A) and inner derivations (dimension of H^1),
- the classical Hochschild coboundary on the bar complex,

      (δf)(a_0, ..., a_n) = a_0 f(a_1, ..., a_n)
                            + Σ_i (-1)^(i+1) f(a_0, ..., a_i a_(i+1), ..., a_n)
                            + (-1)^(n+1) f(a_0, ..., a_(n-1)) a_n,

- and a per-degree probe for a global sign ε_n with D_n = ε_n B_n.
"""

from __future__ import annotations

import itertools
import logging
from typing import Any, Dict, List, Optional

from preoperad.endo import AlgebraSpec
from preoperad.exactlinalg import ExactMatrix, kernel_basis, rank

log = logging.getLogger(__name__)


def center_dimension(spec: AlgebraSpec) -> int:
    """dim {a : a x = x a for all x}, from the linear system Σ_i a_i (c[i][j] - c[j][i]) = 0."""
    d, c = spec.d, spec.product
    rows = []
    for j in range(d):
        for k in range(d):
            rows.append([c[i, j, k] - c[j, i, k] for i in range(d)])
    m = ExactMatrix.from_rows(spec.field, rows, cols=d)
    return kernel_basis(m).dim


def derivation_dimension(spec: AlgebraSpec) -> int:
    """
    dim Der(A). Unknowns D[m][k] with D(e_k) = Σ_m D[m][k] e_m; one equation
    per (i, j, m):  D(e_i e_j)_m - (D(e_i) e_j)_m - (e_i D(e_j))_m = 0.
    """
    d, c = spec.d, spec.product
    zero = spec.field.zero()

    def var(m: int, k: int) -> int:
        return m * d + k

    rows = []
    for i, j, m in itertools.product(range(d), repeat=3):
        row = [zero] * (d * d)
        for k in range(d):
            # D(e_i e_j) = Σ_k c[i][j][k] D(e_k)
            row[var(m, k)] = row[var(m, k)] + c[i, j, k]
            # D(e_i) e_j = Σ_k D[k][i] e_k e_j
            row[var(k, i)] = row[var(k, i)] - c[k, j, m]
            # e_i D(e_j) = Σ_k D[k][j] e_i e_k
            row[var(k, j)] = row[var(k, j)] - c[i, k, m]
        rows.append(row)
    m = ExactMatrix.from_rows(spec.field, rows, cols=d * d)
    return kernel_basis(m).dim


def inner_derivation_dimension(spec: AlgebraSpec) -> int:
    """dim {ad_a : x ↦ a x - x a} = rank of a ↦ ad_a."""
    d, c = spec.d, spec.product
    columns = []
    for a in range(d):
        # ad_{e_a} as a d×d matrix, flattened row-major to match derivation_dimension
        col = []
        for m in range(d):
            for k in range(d):
                col.append(c[a, k, m] - c[k, a, m])
        columns.append(col)
    return rank(ExactMatrix.from_columns(spec.field, columns, d * d))


def first_cohomology_dimension(spec: AlgebraSpec) -> int:
    """dim Der(A) / InnDer(A)."""
    return derivation_dimension(spec) - inner_derivation_dimension(spec)


def bar_coboundary_matrix(spec: AlgebraSpec, n: int) -> ExactMatrix:
    """Matrix B_n of the classical coboundary C^n -> C^(n+1), same basis ordering as D_n."""
    spec.check_size(n + 1, what="bar coboundary column")
    d, c, field = spec.d, spec.product, spec.field
    zero = field.zero()
    out_tuples = list(itertools.product(range(d), repeat=n + 1))
    columns = []
    for o, *inputs in itertools.product(range(d), repeat=n + 1):
        inputs = tuple(inputs)
        # the basis cochain sends e_inputs to e_o and every other basis tuple to 0
        column = [zero] * (d ** (n + 2))
        for pos, args in enumerate(out_tuples):
            value = [zero] * d
            # a_0 f(a_1, ..., a_n)
            if args[1:] == inputs:
                for k in range(d):
                    value[k] = value[k] + c[args[0], o, k]
            # Σ (-1)^(i+1) f(..., a_i a_(i+1), ...)
            for i in range(n):
                head, tail = args[:i], args[i + 2:]
                if head != inputs[:i] or tail != inputs[i + 1:]:
                    continue
                coeff = c[args[i], args[i + 1], inputs[i]]
                if coeff != 0:
                    s = 1 if (i + 1) % 2 == 0 else -1
                    value[o] = value[o] + s * coeff
            # (-1)^(n+1) f(a_0, ..., a_(n-1)) a_n
            if args[:n] == inputs:
                s = 1 if (n + 1) % 2 == 0 else -1
                for k in range(d):
                    value[k] = value[k] + s * c[o, args[n], k]
            for k in range(d):
                column[k * d ** (n + 1) + pos] = value[k]
        columns.append(column)
    return ExactMatrix.from_columns(field, columns, d ** (n + 2))


def bar_complex_dimensions(spec: AlgebraSpec, max_degree: int) -> List[Dict[str, int]]:
    """Per degree: dim Ker B_n, rank B_n, and dim H^n = dim Ker B_n - rank B_(n-1)."""
    out = []
    previous_rank = 0
    for n in range(max_degree + 1):
        b = bar_coboundary_matrix(spec, n)
        r = rank(b)
        dim_ker = b.cols - r
        out.append({"degree": n, "dim_ker": dim_ker, "rank": r, "dim_h": dim_ker - previous_rank})
        previous_rank = r
    return out


def sign_probe(delta: ExactMatrix, bar: ExactMatrix) -> Optional[int]:
    """ε with delta = ε · bar, or None when neither sign works."""
    if delta.shape != bar.shape:
        return None
    if delta.entries == bar.entries:
        return 1
    negated = [[-x for x in row] for row in bar.entries]
    if delta.entries == negated:
        return -1
    return None


def cross_check(spec: AlgebraSpec, engine_report, delta_matrices: Dict[int, ExactMatrix]) -> Dict[str, Any]:
    """Compare an engine CohomologyReport against all oracles."""
    bar = bar_complex_dimensions(spec, engine_report.max_degree)
    dims = engine_report.degrees
    checks: Dict[str, Any] = {
        "center_dimension": center_dimension(spec),
        "derivation_dimension": derivation_dimension(spec),
        "inner_derivation_dimension": inner_derivation_dimension(spec),
        "bar_complex": bar,
        "sign_probe": {},
    }
    checks["first_cohomology_dimension"] = checks["derivation_dimension"] - checks["inner_derivation_dimension"]
    agree = dims[0].dim_h == checks["center_dimension"]
    if len(dims) > 1:
        agree = agree and dims[1].dim_h == checks["first_cohomology_dimension"]
    for ours, theirs in zip(dims, bar):
        agree = agree and ours.dim_ker == theirs["dim_ker"] and ours.rank == theirs["rank"]
    for n, m in sorted(delta_matrices.items()):
        if n <= engine_report.max_degree:
            eps = sign_probe(m, bar_coboundary_matrix(spec, n))
            checks["sign_probe"][str(n)] = eps
            if eps is None:
                log.warning("No global sign relates D_%d to the bar coboundary", n)
                agree = False
    checks["agree"] = agree
    if not agree:
        log.warning("Oracle dimensions disagree with the engine for %s", spec.name)
    return checks
