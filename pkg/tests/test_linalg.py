import random

import pytest
from hypothesis import given, strategies as st

from afcore.errors import NotUnimodular
from afcore.linalg import (
    Matrix,
    charpoly,
    col_sums,
    det,
    inv_unimodular,
    is_non_derogatory,
    kron,
    lambda_pow,
    poly_add,
    poly_deg,
    poly_mod_monic,
    poly_mul,
    poly_str,
    power,
    quot_make,
    quot_mul,
    quot_one,
    rank_Q,
    rev_charpoly,
    row_vec_mul,
    trace,
)

# -- independent oracles -------------------------------------------------------


def det_by_cofactors(rows) -> int:
    """Determinant by Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_by_cofactors(minor)
    return total


def charpoly_by_laplace(m: Matrix) -> tuple:
    """Coefficients of det(tI - m), via Laplace expansion over Z[t].

    Entries of tI - m are degree-<=1 polynomials (coefficient tuples);
    the recursion mirrors det_by_cofactors with polynomial arithmetic.
    """

    def pdet(rows):
        n = len(rows)
        if n == 1:
            return rows[0][0]
        total = (0,)
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
            term = poly_mul(rows[0][j], pdet(minor))
            if j % 2:
                term = tuple(-c for c in term)
            total = poly_add(total, term)
        return total

    n = m.n_rows
    if n == 0:
        return (1,)
    rows = [
        [((-m[(i, j)], 1) if i == j else (-m[(i, j)],)) for j in range(n)]
        for i in range(n)
    ]
    p = pdet(rows)
    return tuple(p) + (0,) * (n + 1 - len(p))


def rank_by_minors(rows) -> int:
    """Rank over Q as the largest r with a nonzero r x r minor."""
    import itertools

    n_rows, n_cols = len(rows), len(rows[0]) if rows else 0
    for r in range(min(n_rows, n_cols), 0, -1):
        for ris in itertools.combinations(range(n_rows), r):
            for cjs in itertools.combinations(range(n_cols), r):
                sub = [[rows[i][j] for j in cjs] for i in ris]
                if det_by_cofactors(sub) != 0:
                    return r
    return 0


def random_matrix(rng, n, lo=-4, hi=4):
    return Matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


# -- Matrix basics --------------------------------------------------------------


def test_matrix_construction_and_access():
    m = Matrix([[1, 2], [3, 4]])
    assert m.rows == ((1, 2), (3, 4))
    assert m[(1, 0)] == 3
    assert m.row(0) == (1, 2) and m.col(1) == (2, 4)
    assert m.transpose().rows == ((1, 3), (2, 4))
    assert trace(m) == 5
    assert col_sums(m) == (4, 6)
    with pytest.raises(ValueError, match="ragged"):
        Matrix([[1, 2], [3]])


def test_matrix_arithmetic():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert (a + b).rows == ((1, 3), (4, 4))
    assert (a - a) == Matrix.zeros(2, 2)
    assert (-a + a) == Matrix.zeros(2, 2)
    assert (a * b).rows == ((2, 1), (4, 3))
    assert (2 * a) == a + a == a * 2
    assert a * Matrix.identity(2) == a
    assert row_vec_mul((1, 0), a) == (1, 2)
    with pytest.raises(ValueError):
        a + Matrix.zeros(3, 3)


def test_kron_shape_and_values():
    a = Matrix([[1, 2], [0, 1]])
    b = Matrix([[0, 3], [4, 0]])
    k = kron(a, b)
    assert k.n_rows == 4 and k.n_cols == 4
    for i in range(2):
        for j in range(2):
            for p in range(2):
                for q in range(2):
                    assert k[(2 * i + p, 2 * j + q)] == a[(i, j)] * b[(p, q)]


# -- determinants and inverses ----------------------------------------------------


def test_det_small_frozen():
    assert det(Matrix([[1, 1], [1, 0]])) == -1
    assert det(Matrix.identity(4)) == 1
    assert det(Matrix([[2, 0], [0, 3]])) == 6


def test_det_against_cofactor_oracle():
    rng = random.Random("det-oracle")
    for n in range(1, 6):
        for _ in range(40):
            m = random_matrix(rng, n)
            assert det(m) == det_by_cofactors([list(r) for r in m.rows])


@given(
    st.lists(
        st.lists(st.integers(min_value=-5, max_value=5), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    )
)
def test_det_oracle_property(rows):
    assert det(Matrix(rows)) == det_by_cofactors(rows)


def test_inv_unimodular_round_trip():
    m = Matrix([[1, 1], [1, 0]])
    inv = inv_unimodular(m)
    assert inv.rows == ((0, 1), (1, -1))
    assert inv * m == Matrix.identity(2) == m * inv


def test_inv_unimodular_rejects_and_reports_det():
    with pytest.raises(NotUnimodular) as exc:
        inv_unimodular(Matrix([[2, 0], [0, 1]]))
    assert exc.value.det == 2
    with pytest.raises(NotUnimodular) as exc:
        inv_unimodular(Matrix([[1, 1], [1, 1]]))
    assert exc.value.det == 0


def test_power_negative_exponents():
    m = Matrix([[1, 1], [1, 0]])
    assert power(m, 0) == Matrix.identity(2)
    assert power(m, 3) == m * m * m
    assert power(m, -2) == inv_unimodular(m) * inv_unimodular(m)
    assert power(m, -2) * power(m, 2) == Matrix.identity(2)
    with pytest.raises(NotUnimodular):
        power(Matrix([[2]]), -1)


def test_rank_against_minor_oracle():
    rng = random.Random("rank-oracle")
    for _ in range(60):
        n = rng.randint(1, 4)
        m = random_matrix(rng, n, lo=-2, hi=2)
        assert rank_Q(m) == rank_by_minors([list(r) for r in m.rows])
    assert rank_Q(Matrix.zeros(3, 3)) == 0
    assert rank_Q(Matrix([[1, 2], [2, 4]])) == 1


# -- characteristic polynomials ----------------------------------------------------


def test_charpoly_against_laplace_oracle():
    rng = random.Random("charpoly-oracle")
    for n in range(1, 5):
        for _ in range(25):
            m = random_matrix(rng, n)
            assert charpoly(m) == charpoly_by_laplace(m)


def test_charpoly_frozen_examples():
    # ascending coefficients of det(tI - m)
    assert charpoly(Matrix([[1, 1], [1, 0]])) == (-1, -1, 1)
    assert charpoly(Matrix.identity(3)) == (-1, 3, -3, 1)


def test_rev_charpoly_endpoints():
    rng = random.Random("rev-endpoints")
    for n in range(1, 5):
        m = random_matrix(rng, n)
        p = rev_charpoly(m)
        assert p[0] == (-1) ** n
        assert p[-1] == det(m)
        assert len(p) == n + 1


def test_rev_charpoly_penrose_and_cp():
    assert rev_charpoly(Matrix([[1, 1], [1, 0]])) == (1, -1, -1)
    # upper-triangular all-ones: coefficients (-1)^(n-j) * C(n, j)
    from math import comb

    for n in range(1, 6):
        m = Matrix([[1 if j >= i else 0 for j in range(n)] for i in range(n)])
        assert rev_charpoly(m) == tuple(
            (-1) ** (n - j) * comb(n, j) for j in range(n + 1)
        )


def test_is_non_derogatory():
    assert is_non_derogatory(Matrix([[1, 1], [1, 0]]))
    assert not is_non_derogatory(Matrix.identity(2))
    assert is_non_derogatory(Matrix([[5]]))


# -- polynomial quotient ring -------------------------------------------------------


def test_poly_helpers():
    assert poly_deg(()) == -1  # zero polynomial trims to the empty tuple
    assert poly_deg((1, 0, 2)) == 2
    assert poly_add((1, 2), (-1, -2)) == ()
    assert poly_mul((1, 1), (1, -1)) == (1, 0, -1)
    assert poly_mod_monic((0, 0, 1), (-1, 0, 1)) == (1,)
    assert poly_str((1, -1, -1)) == "1 - x - x^2"
    assert poly_str(()) == "0"


def test_quot_ring_laws():
    p = (1, -1, -1)  # penrose reversed charpoly, monic after normalization
    one = quot_one(p)
    lam = lambda_pow(p, 1)
    x = quot_make(p, (2, 3))
    y = quot_make(p, (-1, 4))
    z = quot_make(p, (5, -2))
    assert (x + y) - y == x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x * one == x
    assert (x * y) * z == x * (y * z)
    assert lam * lam == lambda_pow(p, 2)


def test_lambda_pow_additivity():
    p = (1, -1, -1)
    for a in range(-3, 4):
        for b in range(-3, 4):
            assert quot_mul(lambda_pow(p, a), lambda_pow(p, b)) == lambda_pow(p, a + b)
    assert lambda_pow(p, 0) == quot_one(p)


def test_lambda_inverse_penrose():
    # for the golden-ratio polynomial, 1/lambda = 1 + lambda
    p = (1, -1, -1)
    assert lambda_pow(p, -1).residue == (1, 1)


def test_lambda_pow_requires_invertible_constant_term():
    # constant term 0 (or any non-unit) means lambda is not invertible
    with pytest.raises(ValueError, match="not invertible"):
        lambda_pow((0, -1, 1), -1)
    with pytest.raises(ValueError, match="not invertible"):
        lambda_pow((2, -1), -1)


def test_quot_positive_powers_cuntz():
    # single vertex, n loops: modulus x - n, so lambda^k reduces to n^k
    for n in (2, 3, 5):
        p = (n, -1)
        for k in range(0, 5):
            assert lambda_pow(p, k).residue == (n**k,)
