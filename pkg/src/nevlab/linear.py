"""Exact dense linear algebra over Q and Q(z).

Row reduction, kernels, membership tests with certificates, and preimages of
subspaces under linear maps.  All arithmetic is exact; pivots are fully
normalized (reduced row echelon form) and chosen deterministically as the
first nonzero entry in column order, so echelon bases and coset
representatives are reproducible.

Matrices whose Q(z) entries all happen to be constants are reduced over Q
and lifted back: Gaussian elimination never leaves the subfield, so this is
an exact shortcut, not a screen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    RATIONAL_FUNCTION,
    RationalFunction,
    field_coerce,
    field_one,
    field_zero,
    monomial_basis,
)


class DimensionMismatch(ValueError):
    """Vector/matrix shapes do not line up."""


class ExactMatrix:
    """Dense matrix of field elements with a uniform field tag."""

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows: int, cols: int, field: str, entries=None, _raw=False):
        self.rows = rows
        self.cols = cols
        self.field = field
        if _raw:
            self.entries = entries
            return
        if entries is None:
            zero = field_zero(field)
            self.entries = [[zero] * cols for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise DimensionMismatch("entry grid does not match declared shape")
            self.entries = [[field_coerce(field, v) for v in row] for row in entries]

    @classmethod
    def from_rows(cls, rows, cols: int, field: str) -> "ExactMatrix":
        return cls(len(rows), cols, field, rows)

    def row(self, i: int) -> list:
        return self.entries[i]

    def transpose(self) -> "ExactMatrix":
        data = [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return ExactMatrix(self.cols, self.rows, self.field, data, _raw=True)

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, self.field,
                           [row[:] for row in self.entries], _raw=True)

    def matvec(self, v: list) -> list:
        if len(v) != self.cols:
            raise DimensionMismatch("matvec length mismatch")
        zero = field_zero(self.field)
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.field == other.field
                and self.entries == other.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field})"


def _demote_to_q(m: ExactMatrix):
    """If every Q(z) entry is constant, return the Fraction grid, else None."""
    if m.field != RATIONAL_FUNCTION:
        return None
    grid = []
    for row in m.entries:
        out = []
        for v in row:
            if not v.is_constant:
                return None
            out.append(v.constant_value())
        grid.append(out)
    return grid


def _rref_rows(grid: list[list], cols: int, zero, one, pivot_limit: int | None = None):
    """In-place reduced row echelon form on a list-of-lists grid.

    Returns (rank, pivot_cols).  Rows below the rank are zero.  The inner
    elimination iterates only over the pivot row's nonzero columns, which
    keeps sparse Macaulay-style systems fast without changing the dense
    contract.  When pivot_limit is given, pivots are only sought in columns
    below it (the remaining columns ride along as right-hand sides).
    """
    rows = len(grid)
    pivot_cols: list[int] = []
    r = 0
    for c in range(cols if pivot_limit is None else pivot_limit):
        pivot = None
        for i in range(r, rows):
            if grid[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            grid[r], grid[pivot] = grid[pivot], grid[r]
        prow = grid[r]
        pv = prow[c]
        if pv != one:
            inv = one / pv
            for j in range(c, cols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        support = [j for j in range(c, cols) if prow[j]]
        for i in range(rows):
            if i == r:
                continue
            row = grid[i]
            f = row[c]
            if f:
                for j in support:
                    row[j] = row[j] - f * prow[j]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    return r, pivot_cols


def row_reduce(m: ExactMatrix) -> tuple[int, ExactMatrix, list[int]]:
    """Reduced row echelon form with rank and pivot columns; exact throughout."""
    demoted = _demote_to_q(m)
    if demoted is not None:
        rank, pivots = _rref_rows(demoted, m.cols, Fraction(0), Fraction(1))
        lifted = [[RationalFunction.from_fraction(v) for v in row] for row in demoted]
        rref = ExactMatrix(m.rows, m.cols, m.field, lifted, _raw=True)
        return rank, rref, pivots
    grid = [row[:] for row in m.entries]
    rank, pivots = _rref_rows(grid, m.cols, field_zero(m.field), field_one(m.field))
    return rank, ExactMatrix(m.rows, m.cols, m.field, grid, _raw=True), pivots


def kernel(m: ExactMatrix) -> list[list]:
    """Basis of the null space {v : m v = 0}; count = cols - rank.

    Basis vectors are the standard free-variable completions of the reduced
    echelon form, listed in increasing free-column order.
    """
    rank, rref, pivots = row_reduce(m)
    zero = field_zero(m.field)
    one = field_one(m.field)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [zero] * m.cols
        v[free] = one
        for r, pc in enumerate(pivots):
            coeff = rref.entries[r][free]
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    return basis


@dataclass(frozen=True)
class GradedSubspace:
    """A subspace of degree-k forms in M+1 variables, as an echelonized basis.

    basis is in reduced row echelon form with columns indexed by
    monomial_basis(M, k); dim equals the number of basis rows.
    """

    ambient_degree: int
    nvars: int
    basis: ExactMatrix
    pivot_cols: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def field(self) -> str:
        return self.basis.field

    @property
    def ambient_dim(self) -> int:
        return self.basis.cols

    @classmethod
    def from_rows(cls, rows, *, ambient_degree: int, nvars: int, cols: int,
                  field: str) -> "GradedSubspace":
        if not rows:
            empty = ExactMatrix(0, cols, field, [], _raw=True)
            return cls(ambient_degree, nvars, empty, ())
        m = ExactMatrix.from_rows([list(r) for r in rows], cols, field)
        rank, rref, pivots = row_reduce(m)
        trimmed = ExactMatrix(rank, cols, field, rref.entries[:rank], _raw=True)
        return cls(ambient_degree, nvars, trimmed, tuple(pivots))

    @classmethod
    def full(cls, *, ambient_degree: int, nvars: int, field: str) -> "GradedSubspace":
        n = len(monomial_basis(nvars - 1, ambient_degree))
        one = field_one(field)
        zero = field_zero(field)
        rows = [[one if j == i else zero for j in range(n)] for i in range(n)]
        m = ExactMatrix(n, n, field, rows, _raw=True)
        return cls(ambient_degree, nvars, m, tuple(range(n)))

    def monomials(self) -> list[tuple[int, ...]]:
        return monomial_basis(self.nvars - 1, self.ambient_degree)

    def reduce_vector(self, v: list) -> tuple[list, list]:
        """Reduce v against the echelon basis; returns (remainder, coords)."""
        if len(v) != self.basis.cols:
            raise DimensionMismatch("vector length does not match ambient dimension")
        rem = list(v)
        coords = []
        for r, pc in enumerate(self.pivot_cols):
            f = rem[pc]
            coords.append(f)
            if f:
                row = self.basis.entries[r]
                for j in range(pc, len(rem)):
                    if row[j]:
                        rem[j] = rem[j] - f * row[j]
        return rem, coords

    def contains(self, v: list) -> bool:
        rem, _ = self.reduce_vector(v)
        return not any(rem)

    def extended_with(self, rows) -> "GradedSubspace":
        """Subspace spanned by this basis together with extra row vectors."""
        if not rows:
            return self
        stacked = [row[:] for row in self.basis.entries] + [list(r) for r in rows]
        return GradedSubspace.from_rows(
            stacked, ambient_degree=self.ambient_degree, nvars=self.nvars,
            cols=self.basis.cols, field=self.field)


def membership(v: list, S: GradedSubspace) -> tuple[bool, list | None]:
    """Test v in rowspace(S); on success return exact coordinates over the basis."""
    rem, coords = S.reduce_vector(v)
    if any(rem):
        return False, None
    return True, coords


def preimage_of_subspace(L: ExactMatrix, U: GradedSubspace, *,
                         source_degree: int, nvars: int) -> GradedSubspace:
    """The subspace {g : L g in U}, echelonized in source coordinates.

    Computed as the projection onto the source coordinates of the kernel of
    the stacked system [L | -U_basis^T].
    """
    if L.rows != U.basis.cols:
        raise DimensionMismatch("map target does not match subspace ambient space")
    src = L.cols
    aux = U.dim
    field = L.field
    stacked = ExactMatrix(L.rows, src + aux, field, _raw=True, entries=[
        L.entries[i][:] + [-U.basis.entries[r][i] for r in range(aux)]
        for i in range(L.rows)
    ])
    null = kernel(stacked)
    projected = [vec[:src] for vec in null]
    return GradedSubspace.from_rows(
        projected, ambient_degree=source_degree, nvars=nvars, cols=src, field=field)


def solve_row_combinations(A: ExactMatrix, targets: list[list]) -> list[list | None]:
    """For each target v, exact x with x . A = v, or None when v is outside the rowspace.

    All targets are solved against one elimination of A^T augmented with the
    target columns; pivots are restricted to the coefficient block so the
    right-hand sides never interfere with each other.
    """
    for v in targets:
        if len(v) != A.cols:
            raise DimensionMismatch("target length does not match matrix columns")
    field = A.field
    t = A.transpose()
    width = t.cols + len(targets)
    aug = ExactMatrix(t.rows, width, field, _raw=True, entries=[
        t.entries[i][:] + [targets[k][i] for k in range(len(targets))]
        for i in range(t.rows)
    ])
    demoted = _demote_to_q(aug)
    if demoted is not None:
        grid = demoted
        zero, one = Fraction(0), Fraction(1)
        lift = RationalFunction.from_fraction
    else:
        grid = [row[:] for row in aug.entries]
        zero, one = field_zero(field), field_one(field)
        lift = None
    rank, pivots = _rref_rows(grid, width, zero, one, pivot_limit=t.cols)
    results: list[list | None] = []
    for k in range(len(targets)):
        col = t.cols + k
        # Rows past the rank have a zero coefficient block; any leftover RHS
        # entry there means this target is outside the rowspace.
        if any(grid[r][col] for r in range(rank, t.rows)):
            results.append(None)
            continue
        x = [zero] * t.cols
        for r, pc in enumerate(pivots):
            x[pc] = grid[r][col]
        if lift is not None:
            x = [lift(v) for v in x]
        results.append(x)
    return results
