"""
Exact dense matrices over the ring hierarchy, with the three reductions
the homology computations run on:

* Smith normal form over Z, with the transforming matrices tracked and
  the factorization re-multiplied on every call;
* rank over the function field Q(z) by fraction-free (Bareiss)
  elimination -- Q(z) contains the rational subring of Z((z)) and rank
  is insensitive to field extension, so this is the free-rank oracle
  for Novikov homology;
* a diagonalization procedure over Z((z)) (resp. Z((z^-1))) for
  Laurent-entry matrices.  Z((z)) is a principal ideal domain, but no
  finite algorithm is known to the author to be complete; this one
  terminates on everything in the shipped corpus and raises
  ``Inconclusive`` when its operation budget runs out.

Matrix entries are plain ints, LaurentPoly, or RationalFunction; the
arithmetic never leaves exact integer/rational-coefficient land.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .rings import (
    LaurentPoly,
    NotInRationalSubring,
    RationalFunction,
    Direction,
    divexact,
    reverse_variable,
)

ONE = LaurentPoly({0: 1})


class DimensionMismatch(Exception):
    """Shapes do not compose."""


class Inconclusive(Exception):
    """The Z((z)) reduction heuristic exceeded its operation budget.

    ``partial_factors`` holds the normalized invariant factors pinned
    down before the budget ran out: torsion counts derived from them are
    lower bounds, not totals.
    """

    def __init__(self, message, partial_factors=()):
        super().__init__(message)
        self.partial_factors = list(partial_factors)


#: elementary-operation budget for one novikov_diagonalize call
REDUCTION_BUDGET = 10_000


class Matrix:
    """Immutable dense matrix; entry (r, c) is the coefficient of target
    generator r in the image of source generator c (differentials have a
    column per source basis element and a row per target basis element).
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(tuple(r) for r in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch(
                f"entry grid is not {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)]
                          for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def block(cls, grid, row_sizes, col_sizes):
        """Assemble from a grid of Matrix-or-None blocks (None = zero)."""
        rows, cols = sum(row_sizes), sum(col_sizes)
        out = [[0] * cols for _ in range(rows)]
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                b = grid[bi][bj]
                if b is not None:
                    if (b.rows, b.cols) != (rs, cs):
                        raise DimensionMismatch(
                            f"block ({bi},{bj}) is {b.rows}x{b.cols}, "
                            f"expected {rs}x{cs}")
                    for i in range(rs):
                        for j in range(cs):
                            out[r0 + i][c0 + j] = b.entries[i][j]
                c0 += cs
            r0 += rs
        return cls(rows, cols, out)

    def entry(self, i, j):
        return self.entries[i][j]

    @property
    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    @property
    def is_square(self):
        return self.rows == self.cols

    def map_entries(self, f):
        return Matrix(self.rows, self.cols,
                      [[f(e) for e in row] for row in self.entries])

    def transpose(self):
        return Matrix(self.cols, self.rows,
                      [[self.entries[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def scaled(self, s):
        return self.map_entries(lambda e: s * e)

    def __neg__(self):
        return self.map_entries(lambda e: -e)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} + {other.rows}x{other.cols}")
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        return matmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return ((self.rows, self.cols) == (other.rows, other.cols)
                and all(a == b
                        for ra, rb in zip(self.entries, other.entries)
                        for a, b in zip(ra, rb)))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {list(map(list, self.entries))!r})"


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product; raises DimensionMismatch unless a.cols == b.rows."""
    if a.cols != b.rows:
        raise DimensionMismatch(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = 0
            for k in range(a.cols):
                x, y = a.entries[i][k], b.entries[k][j]
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return Matrix(a.rows, b.cols, out)


def matrix_to_json(m: Matrix):
    """Array-of-rows form; int entries stay bare, polynomials become
    coefficient maps keyed by decimal exponent strings."""
    def enc(e):
        if isinstance(e, int):
            return e
        return e.to_json()
    return [[enc(e) for e in row] for row in m.entries]


def matrix_from_json(obj, rows=None, cols=None) -> Matrix:
    def dec(e):
        if isinstance(e, bool) or not isinstance(e, (int, dict)):
            raise ValueError(f"bad matrix entry {e!r}")
        if isinstance(e, int):
            return e
        return LaurentPoly.from_json(e)
    grid = [[dec(e) for e in row] for row in obj]
    m = Matrix.from_rows(grid, cols if not grid else None)
    if rows is not None and m.rows != rows or cols is not None and m.cols != cols:
        raise DimensionMismatch(
            f"matrix is {m.rows}x{m.cols}, expected {rows}x{cols}")
    return m


# ---------------------------------------------------------------------------
# Smith normal form over Z


@dataclass(frozen=True)
class SNFResult:
    """Diagonalization certificate: U @ matrix @ V == diag(invariant_factors).

    ``invariant_factors`` are the nonzero diagonal entries, each dividing
    the next; ``transforms_valid`` records that the factorization was
    re-multiplied and checked (it is checked on every call).
    """

    invariant_factors: tuple
    rank: int
    transforms_valid: bool
    U: Matrix = field(repr=False, default=None)
    V: Matrix = field(repr=False, default=None)
    U_inv: Matrix = field(repr=False, default=None)
    V_inv: Matrix = field(repr=False, default=None)

    @property
    def torsion_factors(self):
        """Invariant factors that are not units (contribute generators)."""
        return tuple(f for f in self.invariant_factors if not _is_unit_factor(f))


def _is_unit_factor(f):
    if isinstance(f, int):
        return abs(f) == 1
    return f == ONE


def smith_normal_form_int(m: Matrix) -> SNFResult:
    """Smith normal form of an integer matrix.

    Total on integer matrices; the invariant factors come out positive
    with the divisibility chain d1 | d2 | ... verified, and the
    transforms are re-multiplied against the input before returning.
    """
    A = [[int(e) for e in row] for row in m.entries]
    nr, nc = m.rows, m.cols
    U = _ident(nr)
    Ui = _ident(nr)
    V = _ident(nc)
    Vi = _ident(nc)

    def row_add(i, j, q):  # row_i += q*row_j
        for k in range(nc):
            A[i][k] += q * A[j][k]
        for k in range(nr):
            U[i][k] += q * U[j][k]
            Ui[k][j] -= q * Ui[k][i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for k in range(nr):
            Ui[k][i], Ui[k][j] = Ui[k][j], Ui[k][i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for k in range(nr):
            Ui[k][i] = -Ui[k][i]

    def col_add(j, k, q):  # col_j += q*col_k
        for i in range(nr):
            A[i][j] += q * A[i][k]
        for i in range(nc):
            V[i][j] += q * V[i][k]
            Vi[k][i] -= q * Vi[j][i]

    def col_swap(j, k):
        for i in range(nr):
            A[i][j], A[i][k] = A[i][k], A[i][j]
        for i in range(nc):
            V[i][j], V[i][k] = V[i][k], V[i][j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry of the working submatrix to the pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            row_swap(t, i)
        if j != t:
            col_swap(t, j)
        if A[t][t] < 0:
            row_neg(t)
        p = A[t][t]
        dirty = False
        for i in range(t + 1, nr):
            if A[i][t]:
                q = A[i][t] // p
                row_add(i, t, -q)
                if A[i][t]:
                    dirty = True  # remainder < p becomes the next pivot
        for j in range(t + 1, nc):
            if A[t][j]:
                q = A[t][j] // p
                col_add(j, t, -q)
                if A[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the rest of the submatrix for the chain
        bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                    if A[i][j] % p), None)
        if bad is not None:
            row_add(t, bad[0], 1)
            continue
        t += 1

    factors = tuple(A[i][i] for i in range(t))
    um = Matrix.from_rows(U, nr)
    vm = Matrix.from_rows(V, nc)
    diag = Matrix(nr, nc, [[factors[i] if i == j and i < t else 0
                            for j in range(nc)] for i in range(nr)])
    ok = (matmul(matmul(um, m), vm) == diag
          and matmul(um, Matrix.from_rows(Ui, nr)) == Matrix.identity(nr)
          and matmul(Matrix.from_rows(Vi, nc), vm) == Matrix.identity(nc)
          and all(factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1)))
    if not ok:  # pragma: no cover - internal invariant
        raise AssertionError("SNF self-verification failed")
    return SNFResult(factors, t, True, um, vm,
                     Matrix.from_rows(Ui, nr), Matrix.from_rows(Vi, nc))


def _ident(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def kernel_basis_int(m: Matrix) -> Matrix:
    """Columns spanning ker(m) over Z (a saturated direct summand)."""
    s = smith_normal_form_int(m)
    cols = list(range(s.rank, m.cols))
    return Matrix(m.cols, len(cols),
                  [[s.V.entries[i][j] for j in cols] for i in range(m.cols)])


def solve_int(m: Matrix, b: Matrix):
    """An integer solution X of m @ X = b, or None when there is none."""
    s = smith_normal_form_int(m)
    y = matmul(s.U, b)
    w = [[0] * b.cols for _ in range(m.cols)]
    for j in range(b.cols):
        for i in range(m.rows):
            yi = y.entries[i][j]
            if i < s.rank:
                d = s.invariant_factors[i]
                if yi % d:
                    return None
                w[i][j] = yi // d
            elif yi:
                return None
    return matmul(s.V, Matrix.from_rows(w, b.cols))


def rank_int(m: Matrix) -> int:
    return smith_normal_form_int(m).rank


# ---------------------------------------------------------------------------
# rank over the function field Q(z)


def _laurent_rows(m: Matrix):
    """Rows as LaurentPoly, clearing any RationalFunction denominators
    row by row (which does not change the rank over Q(z))."""
    out = []
    for row in m.entries:
        den = ONE
        for e in row:
            if isinstance(e, RationalFunction):
                den = den * e.denominator
        new = []
        for e in row:
            if isinstance(e, RationalFunction):
                v = e * den
                assert v.is_polynomial
                new.append(v.numerator)
            elif isinstance(e, int):
                new.append(LaurentPoly({0: e}) * den)
            else:
                new.append(e * den)
        out.append(new)
    return out


def rank_over_function_field(m: Matrix) -> int:
    """Rank of a Laurent-entry matrix over Q(z), by Bareiss elimination.

    Q((z)) contains both Q(z) and the image of Z((z)), and the rank of a
    matrix over an integral domain equals its rank over any containing
    field, so this is also the free-rank count over the Novikov ring.
    Fraction-free: every division below is exact in Z[z,z^-1].
    """
    A = _laurent_rows(m)
    nr, nc = m.rows, m.cols
    r = 0
    prev = ONE
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                A[i][j] = divexact(A[i][j] * A[r][c] - A[i][c] * A[r][j], prev)
            A[i][c] = LaurentPoly()
        prev = A[r][c]
        r += 1
    return r


def det_laurent(m: Matrix) -> LaurentPoly:
    """Determinant of a small square Laurent-entry matrix (cofactors)."""
    if not m.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    grid = [[e if isinstance(e, LaurentPoly) else LaurentPoly({0: e})
             for e in row] for row in m.entries]

    def rec(rows, cols):
        if not cols:
            return ONE
        i = rows[0]
        total = LaurentPoly()
        for pos, j in enumerate(cols):
            a = grid[i][j]
            if not a:
                continue
            sub = rec(rows[1:], cols[:pos] + cols[pos + 1:])
            term = a * sub
            total = total + (term if pos % 2 == 0 else -term)
        return total

    return rec(tuple(range(n)), tuple(range(n)))


def adjugate_laurent(m: Matrix) -> Matrix:
    """Adjugate: adj(m) @ m = det(m) * I, entries in Z[z,z^-1]."""
    n = m.rows
    if n == 0:
        return Matrix.zeros(0, 0)
    out = [[None] * n for _ in range(n)]
    idx = tuple(range(n))
    for i in range(n):
        for j in range(n):
            rows = [r for r in idx if r != j]
            cols = [c for c in idx if c != i]
            minor = Matrix.from_rows(
                [[m.entries[r][c] for c in cols] for r in rows], n - 1)
            d = det_laurent(minor)
            out[i][j] = d if (i + j) % 2 == 0 else -d
    return Matrix.from_rows(out, n)


# ---------------------------------------------------------------------------
# diagonalization over the Novikov ring


def _rat(e):
    if isinstance(e, RationalFunction):
        return e
    return RationalFunction(e)


def _unit_monomial(k):
    return RationalFunction(LaurentPoly({k: 1}))


class _Budget:
    def __init__(self, limit):
        self.left = limit

    def spend(self, n=1):
        self.left -= n
        if self.left < 0:
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


class _Reduction:
    """Mutable elimination state over S^-1 Z[z,z^-1], tracking U, V."""

    def __init__(self, grid, budget):
        self.A = [[_rat(e) for e in row] for row in grid]
        self.nr = len(grid)
        self.nc = len(grid[0]) if grid else 0
        self.U = [[_rat(1 if i == j else 0) for j in range(self.nr)]
                  for i in range(self.nr)]
        self.V = [[_rat(1 if i == j else 0) for j in range(self.nc)]
                  for i in range(self.nc)]
        self.budget = budget

    def row_add(self, i, j, q):
        self.budget.spend()
        for k in range(self.nc):
            self.A[i][k] = self.A[i][k] + q * self.A[j][k]
        for k in range(self.nr):
            self.U[i][k] = self.U[i][k] + q * self.U[j][k]

    def col_add(self, j, k, q):
        self.budget.spend()
        for i in range(self.nr):
            self.A[i][j] = self.A[i][j] + q * self.A[i][k]
        for i in range(self.nc):
            self.V[i][j] = self.V[i][j] + q * self.V[i][k]

    def row_swap(self, i, j):
        if i == j:
            return
        self.budget.spend()
        self.A[i], self.A[j] = self.A[j], self.A[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]

    def col_swap(self, j, k):
        if j == k:
            return
        self.budget.spend()
        for row in self.A:
            row[j], row[k] = row[k], row[j]
        for row in self.V:
            row[j], row[k] = row[k], row[j]

    def row_scale(self, i, u):
        self.budget.spend()
        self.A[i] = [u * e for e in self.A[i]]
        self.U[i] = [u * e for e in self.U[i]]

    def col_scale(self, j, u):
        self.budget.spend()
        for row in self.A:
            row[j] = row[j] * u
        for row in self.V:
            row[j] = row[j] * u

    def col_mix(self, t, j, x, y, dg, cg):
        """cols (t, j) <- (x*t + y*j, -dg*t + cg*j); det = x*cg + y*dg = 1."""
        self.budget.spend()
        for rows in (self.A, self.V):
            for row in rows:
                a, b = row[t], row[j]
                row[t] = x * a + y * b
                row[j] = cg * b - dg * a

    def row_mix(self, t, i, x, y, dg, cg):
        self.budget.spend()
        for mat in (self.A, self.U):
            a, b = mat[t], mat[i]
            mat[t] = [x * p + y * q for p, q in zip(a, b)]
            mat[i] = [cg * q - dg * p for p, q in zip(a, b)]


def _try_div(a, p):
    """a/p inside S^-1 Z[z,z^-1], or None: the exact Z((z)) divisibility
    test for rational elements (Fatou)."""
    try:
        return a / p
    except NotInRationalSubring:
        return None


def _select_pivot(A, t, nr, nc):
    """Unit entries first (they resolve a pivot position outright),
    then minimal (order, |extreme coefficient|)."""
    best = None
    key = None
    for i in range(t, nr):
        for j in range(t, nc):
            e = A[i][j]
            if e:
                lc = abs(e.extreme_coeff())
                k = (lc != 1, e.series_ord(), lc)
                if key is None or k < key:
                    best, key = (i, j), k
    return best


def novikov_diagonalize(m: Matrix,
                        direction=Direction.PLUS,
                        budget=REDUCTION_BUDGET) -> SNFResult:
    """Diagonalize a Laurent-entry matrix over Z((z)) / Z((z^-1)).

    Strategy: the working entries live in the rational subring.  Unit
    entries (extreme coefficient +-1, on the chosen side) are taken as
    pivots first -- a unit is scaled out and its row and column cleared
    exactly, finishing a position outright; otherwise the pivot
    minimizes (order, |extreme coefficient|).  Non-unit pivots remove
    their row and column by exact rational division whenever the
    quotient stays in the subring (Fatou's criterion), by order-raising
    monomial subtractions when the extreme coefficient divides, and by
    integer Bezout mixes at matched order otherwise (the pivot line is
    first lifted by a monomial; mixing lines anchored at different
    orders would let the minimal order of the submatrix drift).  Every
    finalized pivot divides the remaining submatrix, so the invariant
    factors come out in a divisibility chain.

    Raises ``Inconclusive`` after ``budget`` elementary operations.
    On success the transforms are re-multiplied and verified, and the
    factors are reported as normalized Laurent representatives (monomial
    stripped, extreme coefficient positive; units normalize to 1).
    """
    grid = [list(row) for row in m.entries]
    if direction is Direction.MINUS:
        grid = [[reverse_variable(e if isinstance(e, (LaurentPoly, RationalFunction))
                                  else LaurentPoly({0: e})) for e in row]
                for row in grid]
    red = _Reduction(grid, _Budget(budget))
    A, nr, nc = red.A, red.nr, red.nc
    finalized = 0
    try:
        t = 0
        while t < min(nr, nc):
            if _select_pivot(A, t, nr, nc) is None:
                break
            _reduce_pivot(red, t)
            finalized = t + 1
            t += 1
    except _OutOfBudget:
        partial = [_factor_rep(A[s][s], direction) for s in range(finalized)]
        raise Inconclusive(
            f"reduction exceeded {budget} elementary operations", partial)

    rank = finalized
    factors = tuple(_factor_rep(A[s][s], direction) for s in range(rank))
    # re-multiply: U @ (input as seen by the reduction) @ V == diag
    um = Matrix.from_rows(red.U, nr)
    vm = Matrix.from_rows(red.V, nc)
    base = Matrix.from_rows([[_rat(e) for e in row] for row in grid], nc)
    diag = Matrix(nr, nc, [[A[i][j] if i == j else _rat(0)
                            for j in range(nc)] for i in range(nr)])
    check = matmul(matmul(um, base), vm)
    ok = check == diag
    if not ok:  # pragma: no cover - internal invariant
        raise AssertionError("novikov diagonalization self-check failed")
    for s in range(rank - 1):
        if _try_div(A[s + 1][s + 1], A[s][s]) is None:  # pragma: no cover
            raise AssertionError("divisibility chain broken")
    return SNFResult(factors, rank, True, um, vm)


def _reduce_pivot(red, t):
    A, nr, nc = red.A, red.nr, red.nc
    while True:
        i, j = _select_pivot(A, t, nr, nc)
        red.row_swap(t, i)
        red.col_swap(t, j)
        p = A[t][t]
        if p.is_unit():
            red.row_scale(t, p.inverse())
            for i in range(nr):
                if i != t and A[i][t]:
                    red.row_add(i, t, -A[i][t])
            for j in range(nc):
                if j != t and A[t][j]:
                    red.col_add(j, t, -A[t][j])
            return
        # exact rational clears
        for j in range(t + 1, nc):
            if A[t][j]:
                q = _try_div(A[t][j], p)
                if q is not None:
                    red.col_add(j, t, -q)
        for i in range(t + 1, nr):
            if A[i][t]:
                q = _try_div(A[i][t], p)
                if q is not None:
                    red.row_add(i, t, -q)
        stuck_col = next((j for j in range(t + 1, nc) if A[t][j]), None)
        stuck_row = next((i for i in range(t + 1, nr) if A[i][t]), None)
        if stuck_col is not None:
            _attack(red, t, stuck_col, rowwise=False)
            continue
        if stuck_row is not None:
            _attack(red, t, stuck_row, rowwise=True)
            continue
        # row and column clear: the pivot must divide everything left
        bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                    if A[i][j] and _try_div(A[i][j], p) is None), None)
        if bad is None:
            return
        red.row_add(t, bad[0], 1)


def _attack(red, t, pos, rowwise):
    """One reduction step against a non-divisible entry in the pivot's
    row (rowwise=False: entry at (t, pos)) or column (rowwise=True).

    The pivot has (ord, extreme coeff) = (k, c), the entry (l, d) with
    l >= k by pivot minimality.  Every move only shifts entries upward
    in order (adds with coefficients of order >= 0, unit scalings by
    z^(l-k) with l >= k, constant Bezout mixes at equal order), so the
    minimal order of the working submatrix never drifts downward -- the
    failure mode of mixing lines anchored at different orders.
    """
    A = red.A
    p = A[t][t]
    a = A[pos][t] if rowwise else A[t][pos]
    k, c = p.series_ord(), p.extreme_coeff()
    l, d = a.series_ord(), a.extreme_coeff()
    if d % c == 0:
        # kill the extreme term; raises ord(a).  If this could go on
        # forever the full quotient would be an integer series, i.e.
        # rational-subring divisible, and the exact clear would have
        # fired instead.
        q = RationalFunction(LaurentPoly({l - k: -(d // c)}))
        if rowwise:
            red.row_add(pos, t, q)
        else:
            red.col_add(pos, t, q)
        return
    # lift the pivot line to order l, then run the integer Bezout mix at
    # equal order: the new pivot-position entry has extreme coefficient
    # gcd(c, d), strictly smaller than |c|
    g = math.gcd(c, d)
    x, y = _bezout(c, d)
    if rowwise:
        if l > k:
            red.row_scale(t, _unit_monomial(l - k))
        red.row_mix(t, pos, _rat(x), _rat(y), _rat(d // g), _rat(c // g))
    else:
        if l > k:
            red.col_scale(t, _unit_monomial(l - k))
        red.col_mix(t, pos, _rat(x), _rat(y), _rat(d // g), _rat(c // g))


def _bezout(a, b):
    """x, y with x*a + y*b = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def _factor_rep(r: RationalFunction, direction) -> LaurentPoly:
    """Normalized Laurent representative of a diagonal entry: monomial
    stripped, extreme coefficient (per direction) positive; any unit
    normalizes to 1."""
    num = r.numerator
    if r.is_unit():
        return ONE
    rep = num.shifted(-num.ord())
    if rep.lowest_coeff() < 0:
        rep = -rep
    if direction is Direction.MINUS:
        # computed in the reversed variable: translate back to z
        rep = reverse_variable(rep)
        rep = rep.shifted(-rep.ord())
    return rep
