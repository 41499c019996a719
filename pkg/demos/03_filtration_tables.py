"""The coset filtration that tiles the quotient ring.

For targets Q_1..Q_n of common degree d and a budget N, each exponent tuple I
with d*|I| <= N owns a cell: the space L_N^I of cofactors that reduce Q^I to
lexicographically higher terms modulo the ideal, and its codimension m_N^I.
The cell sizes tile the quotient (their sum is H_V(N)), the interior cells
all equal deg V * d^n, and the weighted sums over the slots drive the
exponent bookkeeping of the product decomposition.
"""

from nevlab.algebra import MultiPoly
from nevlab.filtration import (
    build_table,
    export_table,
    filtration_basis,
    product_decomposition,
    stabilization_scan,
    weighted_sums,
)
from nevlab.gradedgeom import HomogeneousIdeal

x0, x1, x2 = (MultiPoly.variable(3, i) for i in range(3))
conic = HomogeneousIdeal(3, [x0 * x2 - x1 * x1])
q = x0 * x0

print("== stabilization scan (conic, Q = x0^2) ==")
scan = stabilization_scan(conic, [q], k_max=8, window=3)
print(f"quotient plateau c = {scan.c} from degree n0 = {scan.n0}")
print(f"stable cell sizes on the search box: {scan.m_stable}")
print(f"minimum m = {scan.m_min} at I0 = {scan.I0}, kappa = {scan.kappa}")

print()
print("== the N = 12 table ==")
table = build_table(conic, [q], 12, n0=scan.n0, kappa=scan.kappa)
print(export_table(table).strip())
print(f"sum of m over tau = {table.total_m()} = H_V(12) = {table.hilbert_value}")

print()
print("== weighted sums and the growth exponent ==")
ws = weighted_sums(table, deg_v=2)
print(f"S_1 = {ws.S[0]}, restricted to tau0: {ws.S0[0]}")
print(f"slot symmetry: {ws.symmetric}, dominance: {ws.dominated}, "
      f"closed form: {ws.closed_form}")
pd = product_decomposition(table)
print(f"exponents E = {pd.exponents}, e = {pd.e}, deg P = {pd.degree_p}")
print(f"degree bookkeeping d*sum(E) + sum deg(rep) = N*H_V(N): {pd.degree_identity}")
print(f"e over its leading-order prediction: {pd.leading_ratio(2, 2, 1):.4f}")

print()
print("== the basis of the degree-3 quotient on P^1 ==")
line = HomogeneousIdeal(2, [])
y0 = MultiPoly.variable(2, 0)
small = build_table(line, [y0], 3)
print("products Q^I * rep:", [str(p) for p in filtration_basis(small)])
