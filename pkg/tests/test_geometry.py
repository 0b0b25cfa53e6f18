from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from fewdist.catalog import cross_polytope, johnson2, paley_conference_embedding, simplex
from fewdist.errors import DuplicatePoints, NotRealizable, SizeMismatch
from fewdist.field import QuadExt
from fewdist.geometry import (
    DistanceSpectrum,
    PointSet,
    SquaredDistanceMatrix,
    distance_spectrum,
    embedding_dimension,
    gram_from_sdm,
    is_realizable,
    sdm_from_points,
)

SQ5 = QuadExt.sqrt(5)


def _off_diagonal(D):
    return [D[i, j] for i in range(D.n) for j in range(i + 1, D.n)]


def test_square_sdm(square):
    D = sdm_from_points(PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert _off_diagonal(D) == [1, 2, 1, 1, 2, 1]


def test_simplex_and_johnson_sdm():
    assert set(_off_diagonal(sdm_from_points(simplex(5).payload))) == {2}
    D = sdm_from_points(johnson2(5).payload)
    assert set(_off_diagonal(D)) == {2, 4}
    assert _off_diagonal(D).count(4) == 15


def test_gram_examples(pentagon):
    assert gram_from_sdm(SquaredDistanceMatrix([[0, 1], [1, 0]])).tolist() == [[1]]
    D = sdm_from_points(PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)]))
    G = gram_from_sdm(D)
    assert [G[i, i] for i in range(3)] == [1, 2, 1]
    assert embedding_dimension(D) == 2
    Gp = gram_from_sdm(pentagon)
    assert Gp.m == 5
    assert is_realizable(pentagon).inertia.n_neg == 0


def test_gram_matches_float_coordinates(pentagon):
    pts = np.array([[math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5)] for k in range(5)])
    rel = pts[1:] - pts[0]
    assert np.allclose(gram_from_sdm(pentagon).to_float(), rel @ rel.T, atol=1e-12)


def test_embedding_dimension_examples(pentagon):
    for n in (2, 3, 5, 7):
        assert embedding_dimension(sdm_from_points(simplex(n).payload)) == n - 1
    assert embedding_dimension(pentagon) == 2
    for d in (2, 3, 5):
        assert embedding_dimension(sdm_from_points(cross_polytope(d).payload)) == d


def test_realizability():
    r = is_realizable(sdm_from_points(johnson2(5).payload))
    assert r.realizable and r.dim == 4
    bad = SquaredDistanceMatrix([[0, 1, 1], [1, 0, 9], [1, 9, 0]])
    assert not is_realizable(bad)
    assert is_realizable(bad).inertia.n_neg == 1
    with pytest.raises(NotRealizable):
        embedding_dimension(bad, strict=True)


def test_paley13_dimension():
    D = paley_conference_embedding(13).payload
    r = is_realizable(D)
    assert r.realizable and r.dim == 6
    assert distance_spectrum(D).s == 2


def test_spectra(pentagon):
    assert distance_spectrum(sdm_from_points(simplex(4).payload)).sq_distances == (QuadExt(2),)
    sq = sdm_from_points(PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert distance_spectrum(sq).sq_distances == (1, 2)
    assert distance_spectrum(pentagon).sq_distances == ((5 - SQ5) / 2, (5 + SQ5) / 2)


def test_validation_errors():
    with pytest.raises(DuplicatePoints):
        PointSet.from_coords([(0, 0), (0, 0)])
    with pytest.raises(DuplicatePoints):
        SquaredDistanceMatrix([[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        SquaredDistanceMatrix([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        SquaredDistanceMatrix([[1, 1], [1, 0]])
    with pytest.raises(SizeMismatch):
        PointSet.from_coords([(0, 0), (1,)], d=2)
    with pytest.raises(ValueError):
        DistanceSpectrum((2, 1))
    with pytest.raises(ValueError):
        DistanceSpectrum((0, 1))


def test_invariance_under_permutation_padding_scaling():
    rng = random.Random(5)
    X = johnson2(5).payload
    base_dim = embedding_dimension(sdm_from_points(X))
    base_spec = distance_spectrum(sdm_from_points(X))
    for _ in range(5):
        order = list(range(len(X)))
        rng.shuffle(order)
        Y = X.permuted(order).pad(rng.randint(0, 2))
        D = sdm_from_points(Y)
        assert embedding_dimension(D) == base_dim
        assert distance_spectrum(D) == base_spec
        c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert distance_spectrum(D.scaled(c)) == base_spec.scaled(c)
        assert embedding_dimension(D.scaled(c)) == base_dim
