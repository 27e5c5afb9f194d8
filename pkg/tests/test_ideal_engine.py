"""Bigraded quotient model: generators, basis, normal forms, chain, determinant."""

from fractions import Fraction
from math import comb

import pytest

from loopweyl.exactnum import Matrix, rank
from loopweyl.ideal_engine import (
    QuotientInconsistency,
    binomial_matrix_det,
    bm_monomials,
    graded_quotient,
    jm_generators,
    jmj_chain_check,
    monomials_of_bidegree,
    normal_form,
    weight,
    z_degree,
    z_power_coefficient,
    z_series,
)


def test_z_series_values():
    assert z_series(2, 0) == {1: (1, 0), 2: (0, 1)}
    assert z_series(2, 1) == {1: (0, 1)}
    assert z_series(1, 0) == {1: (1,)}
    with pytest.raises(ValueError):
        z_series(2, 2)


def test_z_power_expansions():
    # (z0 u + z1 u^2)^2 = z0^2 u^2 + 2 z0 z1 u^3 + z1^2 u^4
    assert z_power_coefficient(2, 0, 2, 2) == {(2, 0): Fraction(1)}
    assert z_power_coefficient(2, 0, 2, 3) == {(1, 1): Fraction(2)}
    assert z_power_coefficient(2, 0, 2, 4) == {(0, 2): Fraction(1)}


def test_jm_generators_examples():
    assert jm_generators(2, 1) == ()
    gens2 = dict(jm_generators(2, 2))
    assert gens2 == {3: {(1, 1): Fraction(2)}, 4: {(0, 2): Fraction(1)}}
    gens3 = dict(jm_generators(2, 3))
    assert gens3 == {
        3: {(3, 0): Fraction(1)},
        4: {(2, 1): Fraction(3)},
        5: {(1, 2): Fraction(3)},
        6: {(0, 3): Fraction(1)},
    }


def test_generators_are_bihomogeneous():
    for m in (2, 3, 4):
        for r in (1, 2, 3, 4):
            for s, poly in jm_generators(m, r):
                for mono in poly:
                    assert z_degree(mono) == r
                    assert weight(mono) == s - r


def test_bm_monomials_small():
    assert set(bm_monomials(1)) == {(0,), (1,)}
    assert set(bm_monomials(2)) == {(0, 0), (1, 0), (0, 1), (2, 0)}
    m3 = set(bm_monomials(3))
    assert m3 == {
        (0, 0, 0),
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (2, 0, 0), (1, 1, 0), (0, 2, 0),
        (3, 0, 0),
    }


def test_bm_cardinality():
    for m in range(1, 8):
        monos = bm_monomials(m)
        assert len(monos) == 2 ** m
        assert len(set(monos)) == 2 ** m
        by_degree = {}
        for mono in monos:
            by_degree[z_degree(mono)] = by_degree.get(z_degree(mono), 0) + 1
        for r in range(m + 1):
            assert by_degree[r] == comb(m, r)


def test_graded_quotient_m1():
    q = graded_quotient(1)
    assert q.hilbert_by_degree == [1, 1]
    assert q.total_dim == 2


def test_graded_quotient_m2_basis():
    q = graded_quotient(2)
    assert q.total_dim == 4
    assert set(q.basis) == set(bm_monomials(2))


def test_graded_quotient_m3_hilbert():
    q = graded_quotient(3)
    assert q.hilbert_by_degree == [1, 3, 3, 1]
    assert q.total_dim == 8


def test_graded_quotient_binomial_up_to_6():
    for m in range(1, 7):
        q = graded_quotient(m)
        assert q.hilbert_by_degree == [comb(m, r) for r in range(m + 1)]
        assert q.total_dim == 2 ** m


def brute_degree_slice_dimension(m, r):
    """Oracle: quotient dimension in z-degree r without any weight grading."""
    monos = monomials_of_bidegree_all(m, r)
    index = {mo: i for i, mo in enumerate(monos)}
    rows = []
    for r_gen in range(1, r + 1):
        for s, poly in jm_generators(m, r_gen):
            for cof in monomials_of_bidegree_all(m, r - r_gen):
                row = [Fraction(0)] * len(monos)
                for mono, coeff in poly.items():
                    key = tuple(x + y for x, y in zip(mono, cof))
                    row[index[key]] += coeff
                rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - rank(Matrix(rows))


def monomials_of_bidegree_all(m, r):
    out = []

    def rec(var, left, acc):
        if var == m:
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left + 1):
            rec(var + 1, left - e, acc + [e])

    rec(0, r, [])
    return out


def test_degree_slices_against_ungraded_oracle():
    for m in range(1, 5):
        q = graded_quotient(m)
        for r in range(m + 2):
            expected = comb(m, r) if r <= m else 0
            assert brute_degree_slice_dimension(m, r) == expected
            if r <= m:
                assert q.hilbert_by_degree[r] == expected


def test_layer_above_m_plus_one_also_vanishes():
    # products of variables cannot resurrect a vanished layer; spot-check m <= 3
    for m in range(1, 4):
        assert brute_degree_slice_dimension(m, m + 2) == 0


def test_normal_form_m2():
    q = graded_quotient(2)
    assert normal_form(q, {(1, 1): Fraction(1)}) == {}
    assert normal_form(q, {(2, 0): Fraction(1)}) == {(2, 0): Fraction(1)}
    assert normal_form(q, {(3, 0): Fraction(1)}) == {}


def test_normal_form_m3_half():
    q = graded_quotient(3)
    # 2 z0 z2 + z1^2 is a generator, so z0 z2 = -z1^2/2 in the quotient
    got = normal_form(q, {(1, 0, 1): Fraction(1)})
    assert got == {(0, 2, 0): Fraction(-1, 2)}


def test_normal_form_is_projection():
    for m in (2, 3, 4):
        q = graded_quotient(m)
        import random

        rng = random.Random(m)
        for _ in range(10):
            poly = {}
            for _ in range(4):
                mono = tuple(rng.randint(0, 2) for _ in range(m))
                poly[mono] = poly.get(mono, 0) + Fraction(rng.randint(-5, 5))
            nf = normal_form(q, poly)
            assert normal_form(q, nf) == nf
            for mono in nf:
                assert mono in set(bm_monomials(m))


def test_generators_normalize_to_zero():
    for m in (2, 3, 4):
        q = graded_quotient(m)
        for r in range(1, m + 2):
            for s, poly in jm_generators(m, r):
                assert normal_form(q, poly) == {}, (m, r, s)


def test_chain_check():
    assert jmj_chain_check(1)
    assert jmj_chain_check(2)
    assert jmj_chain_check(3)
    assert jmj_chain_check(4)


def test_binomial_det_examples():
    assert binomial_matrix_det(0, 0) == 1
    # det [[2,1],[3,3]] = 3
    assert binomial_matrix_det(2, 1) == 3
    assert binomial_matrix_det(3, 1) == 4


def test_binomial_det_formula():
    for r in range(0, 7):
        for k in range(0, r + 1):
            assert binomial_matrix_det(r, k) == comb(r + 1, k), (r, k)


def test_binomial_det_rejects():
    with pytest.raises(ValueError):
        binomial_matrix_det(1, 2)
