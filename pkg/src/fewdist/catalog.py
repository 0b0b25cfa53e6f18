"""Generators for standard few-distance sets.

Each entry records the invariants its construction guarantees in
``expected`` so that the catalog can be checked against :func:`analyze`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Callable

from .errors import InvalidQ, UnsupportedN
from .field import QuadExt
from .geometry import PointSet, SquaredDistanceMatrix
from .invariants import threshold_N


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: dict[str, Any]
    payload: PointSet | SquaredDistanceMatrix
    expected: dict[str, Any] | None = field(default=None)

    @property
    def has_coordinates(self) -> bool:
        return isinstance(self.payload, PointSet)


def _unit(n: int, idx) -> tuple[int, ...]:
    v = [0] * n
    for i in idx:
        v[i] += 1
    return tuple(v)


def simplex(n: int) -> CatalogEntry:
    """Standard basis vectors of R^n: a regular (n-1)-simplex."""
    if n < 2:
        raise ValueError(f"simplex needs n >= 2, got {n}")
    X = PointSet.from_coords([_unit(n, [i]) for i in range(n)], labels=[f"e{i + 1}" for i in range(n)])
    return CatalogEntry("simplex", {"n": n}, X, {"s": 1, "d": n - 1, "n": n, "k_integral": []})


def cross_polytope(d: int) -> CatalogEntry:
    """The 2d points +-e_i of R^d."""
    if d < 2:
        raise ValueError(f"cross_polytope needs d >= 2, got {d}")
    coords = []
    labels = []
    for i in range(d):
        for sgn in (1, -1):
            v = [0] * d
            v[i] = sgn
            coords.append(v)
            labels.append(f"{'+' if sgn > 0 else '-'}e{i + 1}")
    X = PointSet.from_coords(coords, labels=labels)
    return CatalogEntry(
        "cross_polytope", {"d": d}, X, {"s": 2, "d": d, "n": 2 * d, "k_integral": [True, True]}
    )


def hypercube(d: int) -> CatalogEntry:
    """Vertices of {0, 1}^d, a d-distance set with squared distances 1..d."""
    if d < 1:
        raise ValueError(f"hypercube needs d >= 1, got {d}")
    coords = [tuple((mask >> k) & 1 for k in range(d)) for mask in range(2**d)]
    X = PointSet.from_coords(coords, labels=["".join(map(str, c)) for c in coords])
    # spectrum 1..d; k_i = prod_{j != i} j/(j-i) = (-1)^(i+1) C(d, i) is integral
    return CatalogEntry("hypercube", {"d": d}, X, {"s": d, "d": d, "n": 2**d, "k_integral": [True] * d if d > 1 else []})


def johnson(n: int, w: int) -> CatalogEntry:
    """0/1 vectors of length n and weight w: squared distances 2, 4, ..., 2*min(w, n-w)."""
    if not 1 <= w < n:
        raise ValueError(f"johnson needs 1 <= w < n, got n={n}, w={w}")
    coords = [_unit(n, c) for c in combinations(range(n), w)]
    labels = ["".join(str(i + 1) for i in c) for c in combinations(range(n), w)] if n < 10 else None
    X = PointSet.from_coords(coords, labels=labels)
    s = min(w, n - w)
    return CatalogEntry(
        "johnson",
        {"n": n, "w": w},
        X,
        {"s": s, "d": n - 1, "n": comb(n, w), "k_integral": [True] * s if s > 1 else []},
    )


def johnson2(n: int) -> CatalogEntry:
    """The points e_i + e_j (i < j) of R^n; a two-distance set with spectrum (2, 4)."""
    if n < 4:
        raise ValueError(f"johnson2 needs n >= 4, got {n}")
    entry = johnson(n, 2)
    return CatalogEntry("johnson2", {"n": n}, entry.payload, entry.expected)


# exact cos(theta) for theta in degrees, 0 <= theta <= 90
_HALF = Fraction(1, 2)
_COS = {
    0: QuadExt(1),
    30: QuadExt(0, _HALF, 3),
    36: QuadExt(Fraction(1, 4), Fraction(1, 4), 5),
    45: QuadExt(0, _HALF, 2),
    60: QuadExt(_HALF),
    72: QuadExt(Fraction(-1, 4), Fraction(1, 4), 5),
    90: QuadExt(0),
}
_POLYGON_N = (3, 4, 5, 6, 8, 10, 12)


def exact_cos_degrees(theta: Fraction | int) -> QuadExt:
    t = Fraction(theta) % 360
    if t > 180:
        t = 360 - t
    if t > 90:
        return -exact_cos_degrees(180 - t)
    if t.denominator != 1 or int(t) not in _COS:
        raise UnsupportedN(f"cos({theta} deg) is not in a supported quadratic field")
    return _COS[int(t)]


def regular_polygon(n: int) -> CatalogEntry:
    """Regular n-gon with circumradius 1, as a squared-distance matrix."""
    if n not in _POLYGON_N:
        raise UnsupportedN(f"regular_polygon supports n in {_POLYGON_N}, got {n}")
    rows = [
        [QuadExt(0) if a == b else 2 - 2 * exact_cos_degrees(Fraction(360 * (b - a), n)) for b in range(n)]
        for a in range(n)
    ]
    D = SquaredDistanceMatrix(rows, labels=[f"v{i}" for i in range(n)])
    s = n // 2
    # only the pentagon has irrational invariants; n >= 6 gives alternating +-2 and a final +-1
    integral = [] if s == 1 else [n != 5] * s
    expected = {"s": s, "d": 2, "n": n, "k_integral": integral}
    return CatalogEntry("polygon", {"n": n}, D, expected)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            return False
        p += 1
    return True


def paley_adjacency(q: int) -> list[list[int]]:
    residues = {(x * x) % q for x in range(1, q)}
    return [[1 if i != j and (i - j) % q in residues else 0 for j in range(q)] for i in range(q)]


def paley_conference_embedding(q: int) -> CatalogEntry:
    """Spherical embedding of the Paley graph P(q) on its (-1+sqrt q)/2 eigenspace.

    The Gram matrix is the eigenspace projector
    ``(A - sigma*I - (kappa - sigma)/q * J) / (rho - sigma)`` rescaled to unit
    diagonal; the resulting q points span dimension (q-1)/2.
    """
    if not (_is_prime(q) and q % 4 == 1 and q <= 97):
        raise InvalidQ(f"q must be a prime = 1 mod 4 and <= 97, got {q}")
    A = paley_adjacency(q)
    root = QuadExt.sqrt(q)
    kappa = QuadExt(Fraction(q - 1, 2))
    rho = (root - 1) / 2
    sigma = (-root - 1) / 2
    shift = (kappa - sigma) / q
    scale = (rho - sigma).inverse()
    G = [[(A[i][j] - (sigma if i == j else 0) - shift) * scale for j in range(q)] for i in range(q)]
    g00 = G[0][0]
    rows = [[QuadExt(0) if i == j else 2 - 2 * G[i][j] / g00 for j in range(q)] for i in range(q)]
    D = SquaredDistanceMatrix(rows, labels=[str(i) for i in range(q)])
    d = (q - 1) // 2
    return CatalogEntry(
        "paley",
        {"q": q},
        D,
        {"s": 2, "d": d, "n": q, "k_integral": [False, False]},
    )


def unit_square() -> CatalogEntry:
    entry = hypercube(2)
    return CatalogEntry("square", {}, entry.payload, entry.expected)


GENERATORS: dict[str, Callable[..., CatalogEntry]] = {
    "simplex": simplex,
    "cross_polytope": cross_polytope,
    "hypercube": hypercube,
    "johnson": johnson,
    "johnson2": johnson2,
    "polygon": regular_polygon,
    "paley": paley_conference_embedding,
    "square": unit_square,
}


def build(name: str, **params) -> CatalogEntry:
    try:
        gen = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown catalog entry {name!r}; choose from {sorted(GENERATORS)}") from None
    return gen(**params)


def theorem3_applies(entry: CatalogEntry) -> bool:
    """Whether the expected size meets 2*C(d+s-1, s-1)."""
    exp = entry.expected or {}
    if exp.get("s", 0) < 2:
        return False
    n_new, _ = threshold_N(exp["d"], exp["s"])
    return exp["n"] >= 2 * n_new


def standard_catalog() -> list[CatalogEntry]:
    """Desk-scale fixtures used by the verification suites."""
    entries = [simplex(n) for n in (2, 3, 4, 5)]
    entries += [cross_polytope(d) for d in (2, 3, 4, 5)]
    entries += [hypercube(d) for d in (2, 3)]
    entries += [johnson2(n) for n in (4, 5, 6, 7, 8)]
    entries += [johnson(6, 3), johnson(10, 3)]
    entries += [regular_polygon(n) for n in _POLYGON_N]
    entries += [paley_conference_embedding(q) for q in (5, 13, 17)]
    return entries
