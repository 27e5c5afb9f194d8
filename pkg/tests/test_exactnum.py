"""Exact linear algebra: hand-checked reductions plus randomized invariants."""

import random
from fractions import Fraction

from loopweyl.exactnum import (
    Matrix,
    RowSpace,
    det,
    kron,
    nullspace,
    rank,
    rref,
    rref_with_preferred_pivots,
    solve,
)


def frac_matrix(rows):
    return Matrix([[Fraction(x) for x in row] for row in rows])


def random_matrix(rng, nrows, ncols, span=6):
    return Matrix(
        [
            [Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(ncols)]
            for _ in range(nrows)
        ]
    )


def test_rref_proportional_rows():
    r, pivots = rref(frac_matrix([[1, 2], [2, 4]]))
    assert pivots == [0]
    assert r == frac_matrix([[1, 2], [0, 0]])


def test_rref_identity_fixed():
    eye = Matrix.identity(3)
    r, pivots = rref(eye)
    assert r == eye
    assert pivots == [0, 1, 2]


def test_rref_swap():
    # Hand reduction: swap the two rows, both become pivots.
    r, pivots = rref(frac_matrix([[0, 1], [1, 0]]))
    assert r == Matrix.identity(2)
    assert pivots == [0, 1]


def test_nullspace_single_relation():
    basis = nullspace(frac_matrix([[1, 1]]))
    assert len(basis) == 1
    v = basis[0]
    # proportional to (1, -1)
    assert v[0] == -v[1] != 0


def test_nullspace_identity_empty():
    assert nullspace(Matrix.identity(4)) == []


def test_nullspace_rank_one():
    # Solving by hand: kernel of [[1,2],[2,4]] is spanned by (2,-1).
    basis = nullspace(frac_matrix([[1, 2], [2, 4]]))
    assert len(basis) == 1
    v = basis[0]
    assert v[0] * (-1) == v[1] * 2 and any(v)


def test_preferred_pivot_single_row():
    _, pivots = rref_with_preferred_pivots(frac_matrix([[1, 1]]), [1, 0])
    assert pivots == [1]


def test_preferred_pivot_identity_any_order():
    _, pivots = rref_with_preferred_pivots(Matrix.identity(3), [2, 0, 1])
    assert sorted(pivots) == [0, 1, 2]


def test_preferred_pivot_rank_one():
    # Hand reduction with column 1 scanned first: pivot lands there.
    r, pivots = rref_with_preferred_pivots(frac_matrix([[1, 2], [2, 4]]), [1, 0])
    assert pivots == [1]
    assert r.rows[0] == [Fraction(1, 2), Fraction(1)]
    assert r.rows[1] == [Fraction(0), Fraction(0)]


def test_rref_idempotent_random():
    rng = random.Random(20240)
    for _ in range(25):
        a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        r, pivots = rref(a)
        r2, pivots2 = rref(r)
        assert r == r2
        assert pivots == pivots2


def test_rank_transpose_random():
    rng = random.Random(77)
    for _ in range(25):
        a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        assert rank(a) == rank(a.transpose())


def test_rank_product_bound_and_kernel_random():
    rng = random.Random(991)
    for _ in range(20):
        a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        b = random_matrix(rng, a.ncols, rng.randint(1, 4))
        assert rank(a * b) <= min(rank(a), rank(b))
        for v in nullspace(a):
            assert all(x == 0 for x in a.matvec(v))


def test_nullspace_count_matches_rank():
    rng = random.Random(5)
    for _ in range(20):
        a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert len(nullspace(a)) == a.ncols - rank(a)


def test_solve_consistent_and_inconsistent():
    a = frac_matrix([[1, 2], [3, 4]])
    x = solve(a, [Fraction(5), Fraction(6)])
    assert a.matvec(x) == [Fraction(5), Fraction(6)]
    # [[1,2],[2,4]] x = (1, 3) has no solution
    assert solve(frac_matrix([[1, 2], [2, 4]]), [Fraction(1), Fraction(3)]) is None


def brute_det(a):
    # Oracle: Leibniz expansion over all permutations.
    from itertools import permutations

    n = a.nrows
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= a[i, perm[i]]
        total += sign * term
    return total


def test_det_against_leibniz_oracle():
    rng = random.Random(321)
    for _ in range(15):
        n = rng.randint(1, 4)
        a = random_matrix(rng, n, n)
        assert det(a) == brute_det(a)


def test_kron_shapes_and_values():
    a = frac_matrix([[1, 2]])
    b = frac_matrix([[3], [4]])
    k = kron(a, b)
    assert (k.nrows, k.ncols) == (2, 2)
    assert k == frac_matrix([[3, 6], [4, 8]])


def test_kron_mixed_product_random():
    rng = random.Random(14)
    a = random_matrix(rng, 2, 2)
    b = random_matrix(rng, 3, 3)
    c = random_matrix(rng, 2, 2)
    d = random_matrix(rng, 3, 3)
    assert kron(a, b) * kron(c, d) == kron(a * c, b * d)


def test_rowspace_closure_and_membership():
    rs = RowSpace(3)
    assert rs.add([Fraction(1), Fraction(1), Fraction(0)])
    assert not rs.add([Fraction(2), Fraction(2), Fraction(0)])
    assert rs.add([Fraction(0), Fraction(0), Fraction(5)])
    assert rs.dim == 2
    assert rs.contains([Fraction(3), Fraction(3), Fraction(-1)])
    assert not rs.contains([Fraction(1), Fraction(0), Fraction(0)])


def test_rowspace_matches_rank():
    rng = random.Random(8)
    for _ in range(10):
        a = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 5))
        rs = RowSpace(a.ncols)
        for row in a.rows:
            rs.add(row)
        assert rs.dim == rank(a)
