from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from fewdist.catalog import cross_polytope, johnson2, simplex, unit_square
from fewdist.errors import IndexOutOfRange, NotDistanceSet, RangeError, SizeMismatch, SpectrumMismatch
from fewdist.field import QuadExt
from fewdist.geometry import DistanceSpectrum, PointSet, distance_spectrum, sdm_from_points
from fewdist.invariants import k_invariants
from fewdist.polyspace import (
    Polynomial,
    bbs_check,
    dim_W,
    evaluate_table,
    evaluation_certificate,
    evaluation_matrix,
    expand_F,
    expand_G,
    independence_theorem3,
    lemma5_check,
    lemma6_check,
    lemma6_instance,
    monomials,
    poly_arith,
    sum_of_squares,
    theorem3_direct_sum,
)

x1 = Polynomial.variable(2, 0)
x2 = Polynomial.variable(2, 1)


def test_poly_examples():
    assert poly_arith(sum_of_squares(2), None, "partial_derivative", 0) == x1.scale(2)
    assert poly_arith(x1 + x2, x1 + x2, "mul") == x1 * x1 + (x1 * x2).scale(2) + x2 * x2
    assert (sum_of_squares(2) ** 2).derivative([1, 1]) == (x1 * x2).scale(8)
    assert Polynomial(2).degree == -1
    assert (x1 * x1 + x2).degree == 2


def test_poly_evaluation_batched():
    rng = random.Random(1)
    p = (sum_of_squares(3) ** 2 - Polynomial.variable(3, 2).scale(Fraction(1, 3))) * Polynomial.variable(3, 0)
    pts = [tuple(QuadExt(rng.randint(-3, 3)) for _ in range(3)) for _ in range(6)]
    table = evaluate_table([p], pts)
    col = [row[0] for row in table]
    assert col == [p(q) for q in pts]
    for q, v in zip(pts, col):
        a, b, c = (float(t) for t in q)
        assert abs(float(v) - ((a * a + b * b + c * c) ** 2 - c / 3) * a) < 1e-9


def test_monomial_order():
    assert monomials(2, 2) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    assert len(monomials(3, 4)) == comb(7, 3)


def test_expand_F_examples():
    spec = DistanceSpectrum((1, 2))
    F = expand_F((0, 0), spec, 0)
    assert F == Polynomial.constant(2, 2) - sum_of_squares(2)
    assert F((0, 0)) == 2 == k_invariants(spec)[0]
    X = johnson2(5).payload
    spec = distance_spectrum(sdm_from_points(X))
    i = spec.index(2)
    for y in X.points[:3]:
        Fy = expand_F(y, spec, i)
        assert Fy(y) == 2
        for x in X.points:
            if x != y and sum((a - b) ** 2 for a, b in zip(x, y)) == 4:
                assert Fy(x) == 0


def test_expand_G_examples():
    spec = DistanceSpectrum((2,))
    G = expand_G((1, 0), spec)
    x = (QuadExt(Fraction(1, 3)), QuadExt(2))
    assert G(x) == (2 - ((Fraction(1, 3) - 1) ** 2 + 4)) / Fraction(2)
    X = cross_polytope(3).payload
    spec = distance_spectrum(sdm_from_points(X))
    table = evaluate_table([expand_G(y, spec) for y in X.points], X.points)
    assert all(table[r][c] == (1 if r == c else 0) for r in range(6) for c in range(6))
    rng = random.Random(0)
    y = tuple(QuadExt(Fraction(rng.randint(-9, 9), 4)) for _ in range(3))
    assert expand_G(y, DistanceSpectrum((1, 3, 7)))(y) == 1


def test_dim_W_examples():
    assert dim_W(1, 1) == (3, 3)
    assert dim_W(2, 0) == (1, 1)
    assert dim_W(2, 2) == (9, 9)
    with pytest.raises(RangeError):
        dim_W(0, 1)


def test_dim_W_numeric_oracle():
    # independent float rank of the spanning family sampled at random points
    rng = np.random.default_rng(0)
    for d, ell in [(2, 2), (3, 2), (2, 3)]:
        pts = rng.normal(size=(80, d))
        cols = []
        for a in range(ell + 1):
            for mono in monomials(d, ell - a):
                cols.append((pts**2).sum(axis=1) ** a * np.prod(pts ** np.array(mono), axis=1))
        assert np.linalg.matrix_rank(np.array(cols).T) == dim_W(d, ell)[0]


def test_lemma5_examples():
    assert lemma5_check(2, 1, 2)
    assert lemma5_check(2, 2, 3)
    assert lemma5_check(3, 2, 4)
    with pytest.raises(RangeError):
        lemma5_check(2, 1, 5)


def test_lemma6_examples():
    Y = [(0, 0), (1, 0)]
    r = lemma6_check([1, -1], Y, 2, 2)
    assert r.degree == 1 and r.hypothesis_holds and r.conclusion_holds
    r = lemma6_check([0, 0], Y, 2, 2)
    assert r.hypothesis_holds and r.conclusion_holds
    r = lemma6_check([1, 1], Y, 2, 2)
    assert r.degree == 2 and not r.hypothesis_holds and r.consistent
    with pytest.raises(RangeError):
        lemma6_check([1, -1], Y, 2, 4)
    with pytest.raises(SizeMismatch):
        lemma6_check([1], Y, 2, 2)


def test_lemma6_instances_meet_hypothesis():
    rng = random.Random(9)
    Y = [(QuadExt(a), QuadExt(b)) for a, b in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 3), (-1, 2)]]
    for _ in range(10):
        m = lemma6_instance(Y, 3, 3, rng)
        r = lemma6_check(m, Y, 3, 3)
        assert r.hypothesis_holds and r.conclusion_holds


def _float_F_rank(X, spec, i):
    """Coefficient rank of F_y for s = 2 from the closed form (a_j - |x-y|^2)/(a_j - a_i)."""
    a_i, a_j = float(spec[i]), float(spec[1 - i])
    rows = []
    for y in X.points:
        y = np.array([float(t) for t in y])
        rows.append(np.concatenate([[a_j - y @ y], 2 * y, -np.ones(len(y))]) / (a_j - a_i))
    return np.linalg.matrix_rank(np.array(rows))


def test_theorem3_square_actual_rank():
    X = unit_square().payload
    spec = distance_spectrum(sdm_from_points(X))
    for i in (0, 1):
        cert = independence_theorem3(X, i)
        assert cert.expected_rank == 4 + 1
        assert cert.achieved_rank == 4
        assert not cert.passed
        assert dict(cert.details)["rank_F"] == 3 == _float_F_rank(X, spec, i)
        span = theorem3_direct_sum(X, i)
        assert span.passed and span.achieved_rank == 4


def test_theorem3_johnson_actual_rank():
    X = johnson2(5).payload
    spec = distance_spectrum(sdm_from_points(X))
    i = spec.index(2)
    cert = independence_theorem3(X, i)
    assert cert.expected_rank == 11
    assert dict(cert.details)["rank_F"] == _float_F_rank(X, spec, i) <= comb(5 + 1, 1)
    assert not cert.passed
    assert theorem3_direct_sum(X, i).passed


def test_theorem3_errors():
    with pytest.raises(NotDistanceSet):
        independence_theorem3(PointSet.from_coords([(0, 0)]), 0)
    with pytest.raises(NotDistanceSet):
        independence_theorem3(simplex(3).payload, 0)
    with pytest.raises(IndexOutOfRange):
        independence_theorem3(unit_square().payload, 2)


def test_bbs_examples():
    c = bbs_check(unit_square().payload)
    assert c.passed and c.achieved_rank == 7
    c = bbs_check(simplex(4).payload)
    assert c.passed and c.achieved_rank == 5
    assert bbs_check(cross_polytope(2).payload).passed


def test_evaluation_matrix_examples(pentagon):
    D = sdm_from_points(johnson2(5).payload)
    spec = distance_spectrum(D)
    M = evaluation_matrix(D, spec, spec.index(2))
    assert all(M[r, r] == 2 for r in range(10))
    assert sum(M[0, c] for c in range(1, 10)) == 6
    spec5 = distance_spectrum(pentagon)
    M5 = evaluation_matrix(pentagon, spec5, 0)
    phi = (1 + QuadExt.sqrt(5)) / 2
    assert all(M5[r, r] == phi for r in range(5))
    assert all(M5[r, (r + 1) % 5] == 1 and M5[r, (r + 2) % 5] == 0 for r in range(5))
    # -phi is an eigenvalue of the 5-cycle, so phi*I + A is singular (rank 3)
    cert = evaluation_certificate(pentagon, 0)
    assert cert.achieved_rank == 3 == np.linalg.matrix_rank(M5.to_float())
    D1 = sdm_from_points(simplex(3).payload)
    with pytest.raises(SpectrumMismatch):
        evaluation_matrix(D1, distance_spectrum(D1), 0)
    with pytest.raises(SpectrumMismatch):
        evaluation_matrix(D, DistanceSpectrum((1, 2)), 0)
