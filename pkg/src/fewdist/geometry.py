"""Configurations: point sets, squared-distance matrices and Gram matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DuplicatePoints, NotRealizable, SizeMismatch
from .field import QuadExt, common_radicand
from .linalg import ExactMatrix, Inertia, ldlt_inertia, rank


@dataclass(frozen=True)
class PointSet:
    """Finite point set in R^d with exact coordinates."""

    points: tuple[tuple[QuadExt, ...], ...]
    d: int
    labels: tuple[str, ...] | None = None
    m: int = field(default=0)

    def __post_init__(self) -> None:
        for p in self.points:
            if len(p) != self.d:
                raise SizeMismatch(f"point {p} does not have {self.d} coordinates")
        if self.labels is not None and len(self.labels) != len(self.points):
            raise SizeMismatch("labels and points differ in length")
        if len(set(self.points)) != len(self.points):
            raise DuplicatePoints("point set contains repeated points")
        object.__setattr__(self, "m", common_radicand(x for p in self.points for x in p) or self.m)

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence], labels: Sequence[str] | None = None, d: int | None = None) -> PointSet:
        pts = tuple(tuple(QuadExt.coerce(x) for x in p) for p in coords)
        if d is None:
            d = len(pts[0]) if pts else 0
        return cls(pts, d, tuple(labels) if labels is not None else None)

    def __len__(self) -> int:
        return len(self.points)

    def pad(self, extra: int) -> PointSet:
        """Append ``extra`` zero coordinates to every point."""
        zero = (QuadExt(0),) * extra
        return PointSet(tuple(p + zero for p in self.points), self.d + extra, self.labels)

    def permuted(self, order: Sequence[int]) -> PointSet:
        labels = tuple(self.labels[i] for i in order) if self.labels else None
        return PointSet(tuple(self.points[i] for i in order), self.d, labels)


class SquaredDistanceMatrix:
    """Symmetric matrix of exact squared distances with zero diagonal."""

    __slots__ = ("entries", "n", "m", "labels")

    def __init__(self, data: Iterable[Iterable], labels: Sequence[str] | None = None) -> None:
        entries = tuple(tuple(QuadExt.coerce(x) for x in row) for row in data)
        n = len(entries)
        if any(len(r) != n for r in entries):
            raise SizeMismatch("squared-distance matrix must be square")
        for i in range(n):
            if entries[i][i]:
                raise ValueError(f"nonzero diagonal entry at {i}")
            for j in range(i):
                if entries[i][j] != entries[j][i]:
                    raise ValueError(f"asymmetric entries at ({i}, {j})")
                s = entries[i][j].sign()
                if s == 0:
                    raise DuplicatePoints(f"points {j} and {i} coincide")
                if s < 0:
                    raise ValueError(f"negative squared distance at ({i}, {j})")
        self.entries = entries
        self.n = n
        self.m = common_radicand(x for r in entries for x in r)
        self.labels = tuple(labels) if labels is not None else None

    def __getitem__(self, ij: tuple[int, int]) -> QuadExt:
        i, j = ij
        return self.entries[i][j]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SquaredDistanceMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def scaled(self, c) -> SquaredDistanceMatrix:
        return SquaredDistanceMatrix([[c * x for x in r] for r in self.entries], self.labels)

    def __repr__(self) -> str:
        return f"SquaredDistanceMatrix(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DistanceSpectrum:
    """Strictly ascending squared distances alpha_1^2 < ... < alpha_s^2."""

    sq_distances: tuple[QuadExt, ...]

    def __post_init__(self) -> None:
        vals = tuple(QuadExt.coerce(x) for x in self.sq_distances)
        if not vals:
            raise ValueError("a distance spectrum needs at least one value")
        for lo, hi in zip(vals, vals[1:]):
            if not lo < hi:
                raise ValueError("spectrum must be strictly ascending")
        if vals[0].sign() <= 0:
            raise ValueError("squared distances must be positive")
        object.__setattr__(self, "sq_distances", vals)

    @property
    def s(self) -> int:
        return len(self.sq_distances)

    def __iter__(self):
        return iter(self.sq_distances)

    def __getitem__(self, i: int) -> QuadExt:
        return self.sq_distances[i]

    def index(self, value) -> int:
        return self.sq_distances.index(QuadExt.coerce(value))

    def scaled(self, c) -> DistanceSpectrum:
        return DistanceSpectrum(tuple(x * c for x in self.sq_distances))

    def normalized(self) -> DistanceSpectrum:
        """Rescale so the largest squared distance is 1."""
        top = self.sq_distances[-1]
        return DistanceSpectrum(tuple(x / top for x in self.sq_distances))


@dataclass(frozen=True)
class Realizability:
    realizable: bool
    dim: int | None = None
    inertia: Inertia | None = None

    def __bool__(self) -> bool:
        return self.realizable


def sq_norm(v: Sequence[QuadExt]) -> QuadExt:
    return sum((x * x for x in v), QuadExt(0))


def sq_dist(p: Sequence[QuadExt], q: Sequence[QuadExt]) -> QuadExt:
    if all(a.is_rational() for a in p) and all(b.is_rational() for b in q):
        return QuadExt(sum((a.a - b.a) ** 2 for a, b in zip(p, q)))
    return sum(((a - b) * (a - b) for a, b in zip(p, q)), QuadExt(0))


def sdm_from_points(X: PointSet) -> SquaredDistanceMatrix:
    n = len(X.points)
    rows = [[QuadExt(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i):
            v = sq_dist(X.points[i], X.points[j])
            rows[i][j] = rows[j][i] = v
    return SquaredDistanceMatrix(rows, X.labels)


def gram_from_sdm(D: SquaredDistanceMatrix) -> ExactMatrix:
    """Gram matrix of the points translated so that point 0 sits at the origin."""
    n = D.n
    e = D.entries
    half = QuadExt(1, 0) / 2
    g = [[(e[0][i] + e[0][j] - e[i][j]) * half for j in range(1, n)] for i in range(1, n)]
    return ExactMatrix(g, cols=max(n - 1, 0))


def is_realizable(D: SquaredDistanceMatrix) -> Realizability:
    if D.n <= 1:
        return Realizability(True, 0, Inertia(0, 0, 0))
    inertia = ldlt_inertia(gram_from_sdm(D))
    if inertia.n_neg:
        return Realizability(False, None, inertia)
    return Realizability(True, inertia.n_pos, inertia)


def embedding_dimension(D: SquaredDistanceMatrix, strict: bool = False) -> int:
    """Affine rank of the configuration, i.e. the least d with D realizable in R^d."""
    if strict:
        r = is_realizable(D)
        if not r:
            raise NotRealizable(f"Gram matrix has inertia {r.inertia.as_tuple()}")
        return r.dim
    if D.n <= 1:
        return 0
    return rank(gram_from_sdm(D))


def distance_spectrum(D: SquaredDistanceMatrix) -> DistanceSpectrum:
    values = {D.entries[i][j] for i in range(D.n) for j in range(i)}
    return DistanceSpectrum(tuple(sorted(values)))


def as_sdm(cfg: PointSet | SquaredDistanceMatrix) -> SquaredDistanceMatrix:
    return sdm_from_points(cfg) if isinstance(cfg, PointSet) else cfg
