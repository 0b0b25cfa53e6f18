from __future__ import annotations

import numpy as np
import pytest

from fewdist.catalog import (
    build,
    cross_polytope,
    hypercube,
    johnson2,
    paley_adjacency,
    paley_conference_embedding,
    regular_polygon,
    simplex,
    standard_catalog,
    theorem3_applies,
)
from fewdist.errors import InvalidQ, UnsupportedN
from fewdist.field import QuadExt
from fewdist.geometry import as_sdm, distance_spectrum, embedding_dimension
from fewdist.invariants import analyze, k_invariants

SQ5 = QuadExt.sqrt(5)


@pytest.mark.parametrize("entry", standard_catalog(), ids=lambda e: f"{e.name}-{e.parameters}")
def test_expected_blocks_match_analysis(entry):
    r = analyze(entry.payload)
    assert {"s": r.s, "d": r.d, "n": r.n_points, "k_integral": r.k_integral} == entry.expected


def test_simplex_examples():
    assert distance_spectrum(as_sdm(simplex(3).payload)).sq_distances == (2,)
    assert simplex(3).expected["d"] == 2
    assert simplex(5).expected["s"] == 1
    with pytest.raises(ValueError):
        simplex(1)


def test_cross_polytope_and_johnson():
    assert len(cross_polytope(3).payload) == 6
    assert k_invariants(distance_spectrum(as_sdm(cross_polytope(4).payload))) == [2, -1]
    assert [len(johnson2(n).payload) for n in (4, 5, 6)] == [6, 10, 15]
    assert [theorem3_applies(johnson2(n)) for n in (4, 5, 6)] == [False, True, True]
    assert hypercube(3).expected["s"] == 3


def test_polygon_examples(pentagon):
    spec = distance_spectrum(pentagon)
    assert spec.sq_distances == ((5 - SQ5) / 2, (5 + SQ5) / 2)
    assert distance_spectrum(regular_polygon(4).payload).sq_distances == (2, 4)
    assert distance_spectrum(regular_polygon(6).payload).sq_distances == (1, 3, 4)
    with pytest.raises(UnsupportedN):
        regular_polygon(7)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 10, 12])
def test_polygon_float_oracle(n):
    D = regular_polygon(n).payload
    ang = 2 * np.pi * np.arange(n) / n
    pts = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    ref = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1)
    got = np.array([[float(x) for x in row] for row in D.entries])
    assert np.allclose(got, ref, atol=1e-12)


def test_paley_adjacency_is_conference_graph():
    for q in (5, 13, 17):
        A = np.array(paley_adjacency(q))
        ev = np.sort(np.linalg.eigvalsh(A))
        assert np.isclose(ev[-1], (q - 1) / 2)
        assert np.allclose(ev[:-1][: (q - 1) // 2], (-1 - np.sqrt(q)) / 2)
        assert np.allclose(ev[:-1][(q - 1) // 2 :], (-1 + np.sqrt(q)) / 2)


@pytest.mark.parametrize("q", [5, 13, 17, 29])
def test_paley_embedding(q):
    D = paley_conference_embedding(q).payload
    assert embedding_dimension(D) == (q - 1) // 2
    spec = distance_spectrum(D)
    assert spec.s == 2
    assert not any(k.is_integer() for k in k_invariants(spec))


def test_paley5_is_pentagon_up_to_scale(pentagon):
    a = distance_spectrum(paley_conference_embedding(5).payload)
    b = distance_spectrum(pentagon)
    assert a[0] / b[0] == a[1] / b[1]
    assert k_invariants(a) == k_invariants(b)


def test_paley_errors():
    for q in (9, 7, 2, 101):
        with pytest.raises(InvalidQ):
            paley_conference_embedding(q)


def test_build():
    assert build("johnson2", n=5).parameters == {"n": 5}
    with pytest.raises(ValueError):
        build("nope")
