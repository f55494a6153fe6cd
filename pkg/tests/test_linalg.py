"""Matrices, Smith normal form, function-field rank, Z((z)) reduction."""

import itertools
import math

import pytest

from nk.rings import Direction, LaurentPoly, RationalFunction
from nk.linalg import (
    DimensionMismatch,
    Matrix,
    adjugate_laurent,
    det_laurent,
    kernel_basis_int,
    matmul,
    matrix_from_json,
    matrix_to_json,
    novikov_diagonalize,
    rank_over_function_field,
    smith_normal_form_int,
    solve_int,
)

from domains import random_int_matrix, random_laurent, rng_for

z = LaurentPoly({1: 1})
one = LaurentPoly({0: 1})


# --- oracle: invariant factors from determinant divisors ----------------------

def minors_gcd(m: Matrix, k: int) -> int:
    """gcd of all k x k minors (0 when all vanish)."""
    g = 0
    for rows in itertools.combinations(range(m.rows), k):
        for cols in itertools.combinations(range(m.cols), k):
            sub = Matrix.from_rows([[m.entries[r][c] for c in cols]
                                    for r in rows], k)
            g = math.gcd(g, _int_det(sub))
    return g


def _int_det(m):
    if m.rows == 0:
        return 1
    total = 0
    for pos, c in enumerate(range(m.cols)):
        sub = Matrix.from_rows(
            [[m.entries[r][cc] for cc in range(m.cols) if cc != c]
             for r in range(1, m.rows)], m.cols - 1)
        term = m.entries[0][c] * _int_det(sub)
        total += term if pos % 2 == 0 else -term
    return total


def invariant_factors_via_minors(m: Matrix):
    """Independent oracle: d_k = gcd(k-minors)/gcd((k-1)-minors)."""
    out = []
    prev = 1
    for k in range(1, min(m.rows, m.cols) + 1):
        g = minors_gcd(m, k)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


# --- matmul --------------------------------------------------------------------

def test_matmul_identity():
    m = Matrix.from_rows([[1, 2], [3, 4]])
    assert matmul(Matrix.identity(2), m) == m


def test_matmul_laurent():
    a = Matrix.from_rows([[one - z]])
    b = Matrix.from_rows([[one + z]])
    assert matmul(a, b) == Matrix.from_rows([[one - z ** 2]])


def test_matmul_empty_edge():
    a = Matrix.zeros(2, 0)
    b = Matrix.zeros(0, 3)
    prod = matmul(a, b)
    assert (prod.rows, prod.cols) == (2, 3) and prod.is_zero


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        matmul(Matrix.zeros(2, 3), Matrix.zeros(2, 3))


def test_matrix_json_roundtrip():
    m = Matrix.from_rows([[1, one - 2 * z], [LaurentPoly({-1: 3}), 0]])
    back = matrix_from_json(matrix_to_json(m))
    # ints decode as ints, polynomials as polynomials; values agree
    assert back == Matrix.from_rows(
        [[1, one - 2 * z], [LaurentPoly({-1: 3}), 0]])


# --- integer SNF ----------------------------------------------------------------

def test_snf_identity():
    s = smith_normal_form_int(Matrix.identity(2))
    assert s.invariant_factors == (1, 1) and s.rank == 2 and s.transforms_valid


def test_snf_zero():
    s = smith_normal_form_int(Matrix.from_rows([[0]]))
    assert s.invariant_factors == () and s.rank == 0


def test_snf_2468():
    m = Matrix.from_rows([[2, 4], [6, 8]])
    s = smith_normal_form_int(m)
    assert s.invariant_factors == (2, 4)
    assert s.invariant_factors == invariant_factors_via_minors(m)


def test_snf_matches_minor_oracle_randomly():
    rng = rng_for("snf-oracle")
    for _ in range(40):
        m = random_int_matrix(rng, rng.randint(1, 3), rng.randint(1, 3),
                              max_coeff=4)
        s = smith_normal_form_int(m)
        assert s.invariant_factors == invariant_factors_via_minors(m)
        assert s.transforms_valid


def test_snf_unimodular_invariance():
    rng = rng_for("snf-unimod")
    for _ in range(30):
        m = random_int_matrix(rng, 3, 3, max_coeff=3)
        u = _random_unimodular(rng, 3)
        v = _random_unimodular(rng, 3)
        assert smith_normal_form_int(matmul(matmul(u, m), v)).invariant_factors \
            == smith_normal_form_int(m).invariant_factors


def _random_unimodular(rng, n):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            q = rng.randint(-2, 2)
            for k in range(n):
                m[i][k] += q * m[j][k]
    return Matrix.from_rows(m, n)


def test_kernel_and_solve():
    rng = rng_for("kernel")
    for _ in range(30):
        m = random_int_matrix(rng, rng.randint(1, 3), rng.randint(1, 3))
        k = kernel_basis_int(m)
        assert matmul(m, k).is_zero
        x = random_int_matrix(rng, m.cols, 2)
        b = matmul(m, x)
        sol = solve_int(m, b)
        assert sol is not None and matmul(m, sol) == b


# --- rank over Q(z) --------------------------------------------------------------

def test_rank_examples():
    assert rank_over_function_field(Matrix.from_rows([[one - z]])) == 1
    assert rank_over_function_field(
        Matrix.from_rows([[one - z, 2 - 2 * z]])) == 1
    assert rank_over_function_field(
        Matrix.from_rows([[z, one - z], [z - 1, one]])) == 2


def test_rank_matches_symbolic_determinant():
    m = Matrix.from_rows([[z, one - z], [z - 1, one]])
    assert det_laurent(m) == z ** 2 - z + 1  # nonzero, so full rank


def test_rank_invariances():
    rng = rng_for("rank")
    for _ in range(25):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        m = Matrix.from_rows([[random_laurent(rng, span=2, max_coeff=2)
                               for _ in range(cols)] for _ in range(rows)],
                             cols)
        r = rank_over_function_field(m)
        # permutation invariance
        perm_r = list(range(rows))
        rng.shuffle(perm_r)
        perm_c = list(range(cols))
        rng.shuffle(perm_c)
        shuffled = Matrix.from_rows(
            [[m.entries[i][j] for j in perm_c] for i in perm_r], cols)
        assert rank_over_function_field(shuffled) == r
        # scaling a row by a nonzero polynomial
        s = random_laurent(rng, span=2, max_coeff=2)
        if not s.is_zero:
            i = rng.randrange(rows)
            scaled = Matrix.from_rows(
                [[e * s if a == i else e for e in row]
                 for a, row in enumerate(m.entries)], cols)
            assert rank_over_function_field(scaled) == r


def test_det_and_adjugate():
    rng = rng_for("adj")
    for _ in range(15):
        n = rng.randint(1, 3)
        m = Matrix.from_rows([[random_laurent(rng, span=1, max_coeff=2)
                               for _ in range(n)] for _ in range(n)], n)
        d = det_laurent(m)
        adj = adjugate_laurent(m)
        prod = matmul(adj, m)
        expected = Matrix(n, n, [[d if i == j else LaurentPoly()
                                  for j in range(n)] for i in range(n)])
        assert prod == expected


# --- diagonalization over Z((z)) ---------------------------------------------------

def test_diag_unit_entry_means_zero_module():
    r = novikov_diagonalize(Matrix.from_rows([[one - 2 * z]]))
    assert r.invariant_factors == (one,)
    assert r.torsion_factors == ()
    assert r.transforms_valid


def test_diag_z_minus_two():
    r = novikov_diagonalize(Matrix.from_rows([[z - 2]]))
    assert r.invariant_factors == (2 - z,)
    assert len(r.torsion_factors) == 1


def test_diag_two_and_z():
    r = novikov_diagonalize(Matrix.from_rows([[2, 0], [0, z]]))
    assert r.invariant_factors == (one, LaurentPoly({0: 2}))
    assert r.torsion_factors == (LaurentPoly({0: 2}),)


def test_diag_minus_side_by_reversal():
    r = novikov_diagonalize(Matrix.from_rows([[z - 2]]), Direction.MINUS)
    assert r.invariant_factors == (one,)
    r = novikov_diagonalize(Matrix.from_rows([[one - 2 * z]]), Direction.MINUS)
    assert r.invariant_factors == (2 * z - 1,)


def test_diag_unit_diagonal_no_torsion():
    m = Matrix.from_rows([[one - z, 0], [0, LaurentPoly({3: -1})]])
    r = novikov_diagonalize(m)
    assert r.rank == 2 and r.torsion_factors == ()


def test_diag_rank_agrees_with_function_field():
    rng = rng_for("diag-rank")
    for _ in range(25):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        m = Matrix.from_rows([[random_laurent(rng, span=1, max_coeff=2)
                               for _ in range(cols)] for _ in range(rows)],
                             cols)
        r = novikov_diagonalize(m)
        assert r.rank == rank_over_function_field(m)
        for a, b in zip(r.invariant_factors, r.invariant_factors[1:]):
            if b != one:
                # divisibility chain: b/a must expand integrally
                q = RationalFunction(b) / RationalFunction(a)
                assert q is not None


def test_diag_divisibility_chain_mixed_primes():
    m = Matrix.from_rows([[2, 0], [0, 3]])
    r = novikov_diagonalize(m)
    assert r.invariant_factors == (one, LaurentPoly({0: 6}))


def test_diag_unit_rescaling_invariance():
    rng = rng_for("diag-unit")
    base = Matrix.from_rows([[z - 2, 0], [one, 2 * one]])
    r0 = novikov_diagonalize(base)
    for k in (-2, 1, 3):
        scaled = Matrix.from_rows(
            [[e * LaurentPoly({k: -1}) for e in row] for row in base.entries])
        assert novikov_diagonalize(scaled).invariant_factors == \
            r0.invariant_factors
