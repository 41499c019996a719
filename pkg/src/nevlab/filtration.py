"""The coset filtration behind the dimension counts.

For an admissible family Q_1..Q_n of common degree d and a degree budget N,
each exponent tuple I = (i_1..i_n) with d*|I| <= N gets the subspace L_N^I of
cofactors g (of degree N - d*|I|) for which Q^I * g can be rewritten, modulo
the variety's ideal, as a combination of Q^E-multiples with E lexicographically
larger.  The codimensions m_N^I tile the quotient ring: the products
Q^I * (coset representative) over all cells form a basis of degree-N forms
modulo the ideal, their count is the Hilbert value H_V(N), the interior cells
all share the value deg V * d^n, and the per-slot weighted sums S_s feed the
growth-exponent bookkeeping of the product decomposition.

Everything here is exact; scans that detect stabilization onsets report
NotStabilized instead of guessing when a window never settles.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .algebra import (
    MultiPoly,
    field_zero,
    monomial_basis,
    monomial_count,
)
from .gradedgeom import HomogeneousIdeal, NotStabilized, hilbert_function
from .linear import ExactMatrix, GradedSubspace, preimage_of_subspace


class BasisDefect(RuntimeError):
    """The assembled products failed to span the quotient: an implementation bug."""


class DegreeMismatch(ValueError):
    """Hypersurfaces do not share the common degree required by the filtration."""


# ---------------------------------------------------------------------------
# Index bookkeeping.
# ---------------------------------------------------------------------------

def tuple_norm(I: tuple[int, ...]) -> int:
    return sum(I)


def tuple_sets(N: int, d: int, n: int, n0: int = 0,
               kappa: int = 0) -> tuple[list[tuple[int, ...]], set[tuple[int, ...]]]:
    """(tau_N, tau_N^0): exponent tuples with d*|I| <= N, in ascending lex order.

    tau_N^0 keeps the I with N - d*|I| >= n0 and every slot >= kappa; its
    count formula binom(N/d + n, n) for tau_N assumes d | N.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    tau: list[tuple[int, ...]] = []

    def rec(prefix, budget, slots):
        if slots == 0:
            tau.append(prefix)
            return
        for i in range(budget + 1):
            rec(prefix + (i,), budget - i, slots - 1)

    rec((), N // d, n)
    tau.sort()
    tau0 = {I for I in tau
            if N - d * tuple_norm(I) >= n0 and all(i >= kappa for i in I)}
    return tau, tau0


# ---------------------------------------------------------------------------
# Cells and tables.
# ---------------------------------------------------------------------------

@dataclass
class FiltrationCell:
    I: tuple[int, ...]
    N: int
    L: GradedSubspace
    m: int
    reps: list[MultiPoly]


@dataclass
class FiltrationTable:
    N: int
    d: int
    n: int
    nvars: int
    ideal: HomogeneousIdeal
    Qs: list[MultiPoly]
    cells: dict[tuple[int, ...], FiltrationCell]
    tau: list[tuple[int, ...]]
    tau0: set[tuple[int, ...]]
    hilbert_value: int

    def total_m(self) -> int:
        return sum(cell.m for cell in self.cells.values())


def _common_degree(Qs) -> int:
    degs = {q.degree for q in Qs}
    if len(degs) != 1 or None in degs:
        raise DegreeMismatch("the Q_j must be homogeneous of one common degree")
    return degs.pop()


def _power_products(Qs, tau, cache):
    """Q^I = prod Q_s^{i_s} for every I in tau, with shared power caching."""
    out = {}
    for I in tau:
        if I in cache:
            out[I] = cache[I]
            continue
        acc = None
        for q, e in zip(Qs, I):
            if e == 0:
                continue
            p = q ** e
            acc = p if acc is None else acc * p
        if acc is None:
            acc = MultiPoly.constant(Qs[0].nvars, 1, Qs[0].field)
        cache[I] = acc
        out[I] = acc
    return out


def _multiples_rows(poly: MultiPoly, src_degree: int, basis_index, width):
    """Coefficient rows of poly * m over all degree-src_degree monomials m."""
    zero = field_zero(poly.field)
    rows = []
    for m in monomial_basis(poly.nvars - 1, src_degree):
        shifted = poly.shift(m)
        row = [zero] * width
        for exp, c in shifted.terms.items():
            row[basis_index[exp]] = c
        rows.append(row)
    return rows


def _multiplication_matrix(poly: MultiPoly, src_degree: int, basis_index, width):
    """Matrix of g -> poly*g from degree-src_degree coordinates into degree-N ones."""
    src_basis = monomial_basis(poly.nvars - 1, src_degree)
    zero = field_zero(poly.field)
    cols = []
    for m in src_basis:
        shifted = poly.shift(m)
        col = [zero] * width
        for exp, c in shifted.terms.items():
            col[basis_index[exp]] = c
        cols.append(col)
    entries = [[cols[j][i] for j in range(len(cols))] for i in range(width)]
    return ExactMatrix(width, len(cols), poly.field, entries, _raw=True)


def _cell_from_parts(I, N, d, nvars, QI, U: GradedSubspace, basis_index,
                     width) -> FiltrationCell:
    src_degree = N - d * tuple_norm(I)
    Lmap = _multiplication_matrix(QI, src_degree, basis_index, width)
    L = preimage_of_subspace(Lmap, U, source_degree=src_degree, nvars=nvars)
    src_dim = monomial_count(nvars - 1, src_degree)
    m = src_dim - L.dim
    src_basis = monomial_basis(nvars - 1, src_degree)
    pivots = set(L.pivot_cols)
    reps = [MultiPoly.monomial(nvars, src_basis[j], 1, QI.field)
            for j in range(src_dim) if j not in pivots]
    assert len(reps) == m
    return FiltrationCell(I=I, N=N, L=L, m=m, reps=reps)


def filtration_space(J: HomogeneousIdeal, Qs, N: int,
                     I: tuple[int, ...]) -> FiltrationCell:
    """Single cell L_N^I with its codimension and coset representatives.

    L_N^I is the preimage, under multiplication by Q^I, of the span of the
    ideal's degree-N piece together with all Q^E-multiples for E in tau_N
    lexicographically above I.
    """
    Jz = J.lift()
    Qs = [q.lift() for q in Qs]
    d = _common_degree(Qs)
    n = len(Qs)
    if N - d * tuple_norm(I) < 0:
        raise DegreeMismatch(f"N - d*|I| < 0 for I={I}, N={N}, d={d}")
    nvars = Jz.nvars
    basis_N = monomial_basis(nvars - 1, N)
    basis_index = {exp: i for i, exp in enumerate(basis_N)}
    width = len(basis_N)
    tau, _ = tuple_sets(N, d, n)
    U = Jz.graded_piece(N)
    cache: dict[tuple[int, ...], MultiPoly] = {}
    higher = [E for E in tau if E > I]
    powers = _power_products(Qs, higher, cache)
    extra_rows = []
    for E in higher:
        extra_rows.extend(_multiples_rows(powers[E], N - d * tuple_norm(E),
                                          basis_index, width))
    U = U.extended_with(extra_rows)
    QI = _power_products(Qs, [I], cache)[I]
    return _cell_from_parts(I, N, d, nvars, QI, U, basis_index, width)


def build_table(J: HomogeneousIdeal, Qs, N: int, *, n0: int = 0,
                kappa: int = 0) -> FiltrationTable:
    """All cells of the degree-N filtration, sharing the growing U-span.

    Cells are computed in descending lex order so the span of higher
    Q^E-multiples can be extended incrementally instead of rebuilt per cell.
    """
    Jz = J.lift()
    Qs = [q.lift() for q in Qs]
    d = _common_degree(Qs)
    n = len(Qs)
    nvars = Jz.nvars
    basis_N = monomial_basis(nvars - 1, N)
    basis_index = {exp: i for i, exp in enumerate(basis_N)}
    width = len(basis_N)
    tau, tau0 = tuple_sets(N, d, n, n0, kappa)
    U = Jz.graded_piece(N)
    cache: dict[tuple[int, ...], MultiPoly] = {}
    powers = _power_products(Qs, tau, cache)
    cells: dict[tuple[int, ...], FiltrationCell] = {}
    for I in sorted(tau, reverse=True):
        cells[I] = _cell_from_parts(I, N, d, nvars, powers[I], U,
                                    basis_index, width)
        U = U.extended_with(_multiples_rows(powers[I], N - d * tuple_norm(I),
                                            basis_index, width))
    return FiltrationTable(
        N=N, d=d, n=n, nvars=nvars, ideal=Jz, Qs=Qs, cells=cells,
        tau=tau, tau0=tau0, hilbert_value=hilbert_function(J, N))


def filtration_basis(table: FiltrationTable) -> list[MultiPoly]:
    """The products Q^I * rep over all cells, verified to tile the quotient.

    Raises BasisDefect unless the products are independent modulo the ideal's
    degree-N piece and their count equals the Hilbert value H_V(N); both are
    guaranteed mathematically, so a failure flags an implementation bug.
    """
    nvars = table.nvars
    basis_N = monomial_basis(nvars - 1, table.N)
    basis_index = {exp: i for i, exp in enumerate(basis_N)}
    width = len(basis_N)
    cache: dict[tuple[int, ...], MultiPoly] = {}
    powers = _power_products(table.Qs, table.tau, cache)
    products: list[MultiPoly] = []
    for I in table.tau:
        cell = table.cells[I]
        for rep in cell.reps:
            products.append(powers[I] * rep)
    total = table.total_m()
    if total != table.hilbert_value:
        raise BasisDefect(
            f"sum of m_N^I = {total} differs from H_V(N) = {table.hilbert_value}")
    ideal_piece = table.ideal.graded_piece(table.N)
    zero = field_zero(table.Qs[0].field)
    rows = []
    for p in products:
        row = [zero] * width
        for exp, c in p.terms.items():
            row[basis_index[exp]] = c
        rows.append(row)
    joint = ideal_piece.extended_with(rows)
    if joint.dim != ideal_piece.dim + total:
        raise BasisDefect(
            "products are dependent modulo the ideal: rank "
            f"{joint.dim - ideal_piece.dim} of {total}")
    return products


# ---------------------------------------------------------------------------
# Stabilization scans (constants that the theory only promises to exist).
# ---------------------------------------------------------------------------

@dataclass
class StabilizationScan:
    n0: int
    c: int
    c_prime: int
    m_min: int
    I0: tuple[int, ...]
    kappa: int
    m_stable: dict[tuple[int, ...], int]
    quotient_values: list[int]


def stabilization_scan(J: HomogeneousIdeal, Qs, k_max: int,
                       window: int = 3) -> StabilizationScan:
    """Detect the quotient plateau c with onset n0, the per-I stable values m^I
    over a bounded search box, their minimum, and the kappa threshold taken
    from the minimizer's largest slot.

    Raises NotStabilized when either the quotient dimensions or some cell
    sequence fail to settle within the scan bounds.
    """
    Jz = J.lift()
    Qs = [q.lift() for q in Qs]
    d = _common_degree(Qs)
    n = len(Qs)
    values = []
    for k in range(k_max + 1):
        piece = Jz.graded_piece(k, extra=Qs)
        values.append(monomial_count(Jz.M, k) - piece.dim)
    n0 = None
    for start in range(0, k_max - window + 2):
        tail = values[start:]
        if len(tail) >= window and all(v == tail[0] for v in tail):
            n0 = start
            break
    if n0 is None:
        raise NotStabilized(
            f"quotient dimensions {values} show no constant tail of length {window}")
    c = values[n0]

    box_norm = 2 * n + n0 // d
    box = [I for I in itertools.product(range(box_norm + 1), repeat=n)
           if tuple_norm(I) <= box_norm]
    box.sort(key=lambda I: (max(I) if I else 0, I))
    m_stable: dict[tuple[int, ...], int] = {}
    c_prime = 0
    for I in box:
        seq = []
        for k in range(n0, n0 + window):
            N = d * tuple_norm(I) + k
            cell = filtration_space(J, Qs, N, I)
            seq.append(cell.m)
            c_prime = max(c_prime, cell.m)
        if not all(v == seq[0] for v in seq):
            raise NotStabilized(f"m_N^{I} did not settle over window {window}: {seq}")
        m_stable[I] = seq[0]
    m_min = min(m_stable.values())
    I0 = min((I for I in box if m_stable[I] == m_min),
             key=lambda I: (max(I) if I else 0, I))
    kappa = max(I0) if I0 else 0
    c_prime = max(c_prime, max(m_stable.values()))
    return StabilizationScan(n0=n0, c=c, c_prime=c_prime, m_min=m_min, I0=I0,
                             kappa=kappa, m_stable=m_stable,
                             quotient_values=values)


# ---------------------------------------------------------------------------
# Weighted sums and the product decomposition.
# ---------------------------------------------------------------------------

@dataclass
class WeightedSums:
    S: list[int]
    S0: list[int]
    symmetric: bool
    dominated: bool
    closed_form: bool
    norm_sum_tau0: int


def weighted_sums(table: FiltrationTable, deg_v: int) -> WeightedSums:
    """Exact S_s = sum m_N^I i_s over tau_N and its tau_N^0 restriction.

    Checks: the restricted sums agree across slots (tau_N^0 is symmetric),
    each S_s dominates its restriction, and the restricted sums equal
    deg V * d^n * (sum of |I| over tau_N^0) / n exactly.
    """
    n = table.n
    S = [0] * n
    S0 = [0] * n
    norm_sum = 0
    for I in table.tau:
        m = table.cells[I].m
        for s in range(n):
            S[s] += m * I[s]
        if I in table.tau0:
            norm_sum += tuple_norm(I)
            for s in range(n):
                S0[s] += m * I[s]
    symmetric = all(v == S0[0] for v in S0)
    dominated = all(S[s] >= S0[s] for s in range(n))
    expected = deg_v * table.d ** n * norm_sum
    closed_form = all(n * S0[s] == expected for s in range(n))
    return WeightedSums(S=S, S0=S0, symmetric=symmetric, dominated=dominated,
                        closed_form=closed_form, norm_sum_tau0=norm_sum)


@dataclass
class ProductDecomposition:
    N: int
    exponents: list[int]
    e: int
    p_factors: list[tuple[MultiPoly, int]]
    degree_p: int
    degree_identity: bool

    def leading_ratio(self, deg_v: int, d: int, n: int) -> float:
        """e divided by its leading-order prediction deg V * N^(n+1) / (d (n+1)!)."""
        predicted = deg_v * self.N ** (n + 1) / (d * math.factorial(n + 1))
        return self.e / predicted


def product_decomposition(table: FiltrationTable) -> ProductDecomposition:
    """Factor the product of all basis elements as (Q_1...Q_n)^e * P.

    With the basis elements taken as the cell products Q^I*rep, the product of
    all of them is (Q_1...Q_n)^e times the residual factor list P (the reps
    plus the leftover Q_s powers), where e = min_s E_s and
    E_s = sum_I m_N^I i_s.  The degree bookkeeping
    d*(E_1+...+E_n) + sum deg(rep) = N * H_V(N) is asserted exactly.
    """
    filtration_basis(table)  # raises BasisDefect on any rank defect
    n = table.n
    d = table.d
    E = [0] * n
    rep_degree_sum = 0
    p_factors: list[tuple[MultiPoly, int]] = []
    for I in table.tau:
        cell = table.cells[I]
        for s in range(n):
            E[s] += cell.m * I[s]
        for rep in cell.reps:
            rep_degree_sum += rep.degree if not rep.is_zero else 0
            p_factors.append((rep, 1))
    e = min(E)
    for s in range(n):
        if E[s] > e:
            p_factors.append((table.Qs[s], E[s] - e))
    degree_p = sum((p.degree or 0) * k for p, k in p_factors)
    lhs = d * sum(E) + rep_degree_sum
    rhs = table.N * table.hilbert_value
    identity = lhs == rhs and d * n * e + degree_p == rhs
    if not identity:
        raise BasisDefect(
            f"degree bookkeeping failed: d*sum(E) + sum deg(rep) = {lhs}, "
            f"N*H_V(N) = {rhs}")
    return ProductDecomposition(N=table.N, exponents=E, e=e,
                                p_factors=p_factors, degree_p=degree_p,
                                degree_identity=identity)


def export_table(table: FiltrationTable) -> str:
    """Report rows `I;normI;m;inTau0`, one per cell, in ascending lex order."""
    lines = ["I;normI;m;inTau0"]
    for I in table.tau:
        cell = table.cells[I]
        iname = "(" + ",".join(str(i) for i in I) + ")"
        lines.append(f"{iname};{tuple_norm(I)};{cell.m};{int(I in table.tau0)}")
    return "\n".join(lines) + "\n"
