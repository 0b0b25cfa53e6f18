"""Sparse multivariate polynomials and rank certificates for the polynomial method.

Polynomials live in ``d`` ordinary variables; the auxiliary variable
``x_0 = x_1^2 + ... + x_d^2`` is always expanded. Coefficient matrices use
graded lexicographic monomial order so that certificates are deterministic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotDistanceSet,
    RangeError,
    SizeMismatch,
    SpectrumMismatch,
)
from .field import QuadExt
from .geometry import DistanceSpectrum, PointSet, SquaredDistanceMatrix, distance_spectrum, sdm_from_points
from .invariants import k_invariants
from .linalg import ExactMatrix, nullspace, rank

Monomial = tuple[int, ...]

ZERO = QuadExt(0)
ONE = QuadExt(1)


class Polynomial:
    """Immutable polynomial in ``d`` variables with exact coefficients."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: Mapping[Monomial, object] | None = None) -> None:
        self.d = d
        clean: dict[Monomial, QuadExt] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != d:
                raise DimensionMismatch(f"monomial {mono} has wrong length for d={d}")
            c = QuadExt.coerce(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def _from_clean(cls, d: int, terms: dict) -> Polynomial:
        obj = object.__new__(cls)
        obj.d = d
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, d: int, c=1) -> Polynomial:
        return cls(d, {(0,) * d: c})

    @classmethod
    def variable(cls, d: int, i: int) -> Polynomial:
        e = [0] * d
        e[i] = 1
        return cls(d, {tuple(e): 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], c=1) -> Polynomial:
        return cls(len(exponents), {tuple(exponents): c})

    def _check(self, other: Polynomial) -> None:
        if self.d != other.d:
            raise DimensionMismatch(f"polynomials in {self.d} and {other.d} variables")

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.d, other)
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono, ZERO) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Polynomial._from_clean(self.d, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._from_clean(self.d, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.d, other)
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c) -> Polynomial:
        c = QuadExt.coerce(c)
        if not c:
            return Polynomial._from_clean(self.d, {})
        return Polynomial._from_clean(self.d, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, QuadExt] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, ZERO) + c1 * c2
        return Polynomial._from_clean(self.d, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        result = Polynomial.constant(self.d)
        for _ in range(e):
            result = result * self
        return result

    def partial(self, i: int) -> Polynomial:
        """Derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.d:
            raise IndexOutOfRange(f"variable {i} out of range for d={self.d}")
        out = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e:
                m = list(mono)
                m[i] = e - 1
                out[tuple(m)] = c * e
        return Polynomial._from_clean(self.d, out)

    def derivative(self, orders: Sequence[int]) -> Polynomial:
        p = self
        for i, b in enumerate(orders):
            for _ in range(b):
                p = p.partial(i)
        return p

    def __call__(self, point: Sequence) -> QuadExt:
        if len(point) != self.d:
            raise DimensionMismatch(f"point of length {len(point)} for d={self.d}")
        pt = [QuadExt.coerce(x) for x in point]
        top = [0] * self.d
        for mono in self.terms:
            for k, e in enumerate(mono):
                if e > top[k]:
                    top[k] = e
        rational = all(x.is_rational() for x in pt) and all(c.is_rational() for c in self.terms.values())
        if rational:
            # Fraction arithmetic avoids QuadExt overhead on the common all-rational case
            coords = [x.a for x in pt]
            one = Fraction(1)
        else:
            coords = pt
            one = ONE
        powers = []
        for x, e in zip(coords, top):
            row = [one]
            for _ in range(e):
                row.append(row[-1] * x)
            powers.append(row)
        total = 0
        for mono, c in self.terms.items():
            v = c.a if rational else c
            for k, e in enumerate(mono):
                if e:
                    v = v * powers[k][e]
            total = total + v
        return QuadExt.coerce(total)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self, deg: int) -> bool:
        return all(sum(m) == deg for m in self.terms)

    def coefficient(self, mono: Sequence[int]) -> QuadExt:
        return self.terms.get(tuple(mono), ZERO)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.d, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=grlex_key):
            c = self.terms[mono]
            vars_ = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e
            )
            parts.append(f"({c})" + (f"*{vars_}" if vars_ else ""))
        return " + ".join(parts)


def evaluate_table(polys: Sequence[Polynomial], points: Sequence[Sequence]) -> list[list[QuadExt]]:
    """``table[r][c] = polys[c](points[r])``, sharing monomial values across polynomials."""
    pts = [[QuadExt.coerce(x) for x in p] for p in points]
    rational = all(x.is_rational() for p in pts for x in p) and all(
        c.is_rational() for poly in polys for c in poly.terms.values()
    )
    if not rational:
        return [[poly(p) for poly in polys] for p in pts]
    # clear denominators: integer coefficients per polynomial, integer coordinates per point
    scaled = []
    for poly in polys:
        den = lcm(*(c.a.denominator for c in poly.terms.values())) if poly.terms else 1
        top = max((sum(mono) for mono in poly.terms), default=0)
        scaled.append((den, top, [(mono, int(c.a * den)) for mono, c in poly.terms.items()]))
    used = {mono for poly in polys for mono in poly.terms}
    table = []
    for p in pts:
        pden = lcm(*(x.a.denominator for x in p)) if p else 1
        ints = [int(x.a * pden) for x in p]
        values = {}
        for mono in used:
            v = 1
            for x, e in zip(ints, mono):
                if e:
                    v *= x**e
            values[mono] = (v, sum(mono))
        row = []
        for den, top, terms in scaled:
            # value = sum c * (x*pden)^mono / pden^deg; bring to a common pden power
            acc = 0
            for mono, c in terms:
                v, deg = values[mono]
                acc += c * v * pden ** (top - deg)
            row.append(QuadExt(Fraction(acc, den * pden**top)))
        table.append(row)
    return table


def grlex_key(mono: Monomial) -> tuple:
    return (sum(mono), tuple(-e for e in mono))


@lru_cache(maxsize=None)
def monomials(d: int, max_deg: int, min_deg: int = 0) -> tuple[Monomial, ...]:
    """All exponent vectors with ``min_deg <= degree <= max_deg`` in graded lex order."""
    out = []
    for deg in range(max(min_deg, 0), max_deg + 1):
        layer = []
        for combo in combinations_with_replacement(range(d), deg):
            e = [0] * d
            for v in combo:
                e[v] += 1
            layer.append(tuple(e))
        layer.sort(key=grlex_key)
        out.extend(layer)
    return tuple(out)


def poly_arith(p: Polynomial, q: Polynomial | None, op: str, arg=None) -> Polynomial:
    """Dispatch for 'add', 'mul', 'scale' (``arg`` = scalar) and 'partial' (``arg`` = variable index).

    'partial_derivative' is accepted as a synonym for 'partial'.
    """
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(arg)
    if op in ("partial", "partial_derivative"):
        return p.partial(arg)
    raise ValueError(f"unknown op {op!r}")


def sum_of_squares(d: int) -> Polynomial:
    """``x_0 = x_1^2 + ... + x_d^2``."""
    return Polynomial(d, {tuple(2 if k == i else 0 for k in range(d)): 1 for i in range(d)})


def sq_dist_poly(y: Sequence) -> Polynomial:
    """``||x - y||^2`` as a polynomial in ``x``."""
    y = [QuadExt.coerce(v) for v in y]
    d = len(y)
    terms: dict[Monomial, QuadExt] = {}
    for i, yi in enumerate(y):
        e2 = [0] * d
        e2[i] = 2
        terms[tuple(e2)] = ONE
        e1 = [0] * d
        e1[i] = 1
        terms[tuple(e1)] = yi * -2
    terms[(0,) * d] = sum((v * v for v in y), ZERO)
    return Polynomial(d, terms)


def _spectrum(spec) -> DistanceSpectrum:
    return spec if isinstance(spec, DistanceSpectrum) else DistanceSpectrum(tuple(spec))


def expand_F(y: Sequence, spec: DistanceSpectrum, i: int) -> Polynomial:
    """``prod_{j != i} (a_j - ||x - y||^2) / (a_j - a_i)`` for squared distances ``a``; ``i`` is 0-based."""
    spec = _spectrum(spec)
    if not 0 <= i < spec.s:
        raise IndexOutOfRange(f"index {i} outside spectrum of size {spec.s}")
    r = sq_dist_poly(y)
    d = r.d
    ai = spec[i]
    p = Polynomial.constant(d)
    for j, aj in enumerate(spec):
        if j != i:
            p = p * (Polynomial.constant(d, aj) - r).scale(ONE / (aj - ai))
    return p


def expand_G(y: Sequence, spec: DistanceSpectrum) -> Polynomial:
    """``prod_j (a_j - ||x - y||^2) / a_j``."""
    spec = _spectrum(spec)
    r = sq_dist_poly(y)
    d = r.d
    p = Polynomial.constant(d)
    for aj in spec:
        p = p * (Polynomial.constant(d, aj) - r).scale(ONE / aj)
    return p


def coefficient_matrix(polys: Iterable[Polynomial], basis: Sequence[Monomial]) -> ExactMatrix:
    """Rows are coefficient vectors of ``polys`` over ``basis``; terms outside ``basis`` are an error."""
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for p in polys:
        row = [ZERO] * len(basis)
        for mono, c in p.terms.items():
            try:
                row[index[mono]] = c
            except KeyError:
                raise RangeError(f"monomial {mono} not in the coefficient basis") from None
        rows.append(row)
    return ExactMatrix(rows, cols=len(basis))


@dataclass(frozen=True)
class RankCertificate:
    claim: str
    matrix_shape: tuple[int, int]
    expected_rank: int
    achieved_rank: int
    extra_checks: tuple[tuple[str, bool], ...] = ()
    details: tuple[tuple[str, int], ...] = ()

    @property
    def passed(self) -> bool:
        return self.expected_rank == self.achieved_rank and all(ok for _, ok in self.extra_checks)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "matrix_shape": list(self.matrix_shape),
            "expected_rank": self.expected_rank,
            "achieved_rank": self.achieved_rank,
            "pass": self.passed,
        }
        if self.extra_checks:
            out["checks"] = {name: ok for name, ok in self.extra_checks}
        if self.details:
            out["details"] = {name: v for name, v in self.details}
        return out


def dim_W(d: int, ell: int) -> tuple[int, int]:
    """``(achieved, bound)`` for the space spanned by ``x_0^a * x^lam`` with ``a + |lam| <= ell``."""
    if d < 1 or ell < 0:
        raise RangeError(f"need d >= 1 and ell >= 0, got d={d}, ell={ell}")
    x0 = sum_of_squares(d)
    powers = [Polynomial.constant(d)]
    for _ in range(ell):
        powers.append(powers[-1] * x0)
    spanning = []
    for a in range(ell + 1):
        for mono in monomials(d, ell - a):
            spanning.append(powers[a] * Polynomial.monomial(mono))
    M = coefficient_matrix(spanning, monomials(d, 2 * ell))
    bound = comb(d + ell, ell) + (comb(d + ell - 1, ell - 1) if ell >= 1 else 0)
    return rank(M), bound


def lemma5_check(d: int, s_prime: int, ell: int) -> bool:
    """Order-(2s'-ell+2) derivatives of ``x_0^{s'}`` span exactly the degree-(ell-2) forms."""
    if not 2 <= ell <= s_prime + 2:
        raise RangeError(f"ell={ell} outside [2, {s_prime + 2}]")
    order = 2 * s_prime - ell + 2
    base = sum_of_squares(d) ** s_prime
    target = ell - 2
    derivs = []
    for combo in combinations_with_replacement(range(d), order):
        b = [0] * d
        for v in combo:
            b[v] += 1
        p = base.derivative(b)
        if not p.is_homogeneous(target):
            return False
        derivs.append(p)
    basis = monomials(d, target, target)
    M = coefficient_matrix(derivs, basis)
    return rank(M) == comb(d + target - 1, target) == len(basis)


@dataclass(frozen=True)
class Lemma6Result:
    hypothesis_holds: bool
    conclusion_holds: bool
    degree: int

    @property
    def consistent(self) -> bool:
        return self.conclusion_holds or not self.hypothesis_holds


def _points(Y) -> list[tuple[QuadExt, ...]]:
    if isinstance(Y, PointSet):
        return list(Y.points)
    return [tuple(QuadExt.coerce(v) for v in p) for p in Y]


def moment_sum(m: Sequence, pts: Sequence[Sequence[QuadExt]], lam: Monomial) -> QuadExt:
    total = ZERO
    for mi, y in zip(m, pts):
        v = QuadExt.coerce(mi)
        for yk, e in zip(y, lam):
            if e:
                v = v * yk**e
        total = total + v
    return total


def lemma6_check(m: Sequence, Y, s: int, ell: int) -> Lemma6Result:
    """Degree of ``sum m_i ||x - y_i||^{2(s-1)}`` versus vanishing of moments up to order ``ell - 2``."""
    if not 2 <= ell <= s + 1:
        raise RangeError(f"ell={ell} outside [2, {s + 1}]")
    pts = _points(Y)
    if len(m) != len(pts):
        raise SizeMismatch(f"{len(m)} weights for {len(pts)} points")
    if not pts:
        return Lemma6Result(True, True, -1)
    d = len(pts[0])
    total = Polynomial(d)
    for mi, y in zip(m, pts):
        mi = QuadExt.coerce(mi)
        if mi:
            total = total + (sq_dist_poly(y) ** (s - 1)).scale(mi)
    deg = total.degree
    hyp = deg <= 2 * s - ell - 1
    concl = all(not moment_sum(m, pts, lam) for lam in monomials(d, ell - 2))
    return Lemma6Result(hyp, concl, deg)


def lemma6_instance(Y, s: int, ell: int, rng: random.Random, span: int = 5) -> list[QuadExt]:
    """Random weights ``m`` for which the degree hypothesis holds by construction.

    The high-degree coefficients of ``sum m_i ||x - y_i||^{2(s-1)}`` are linear
    in ``m``; a random integer combination of a null-space basis of that map
    kills them. Moments are not consulted.
    """
    pts = _points(Y)
    d = len(pts[0])
    high = monomials(d, 2 * (s - 1), 2 * s - ell)
    expanded = [sq_dist_poly(y) ** (s - 1) for y in pts]
    A = ExactMatrix([[p.coefficient(mono) for p in expanded] for mono in high], cols=len(pts))
    basis = nullspace(A) if A.rows else [[ONE if k == j else ZERO for k in range(len(pts))] for j in range(len(pts))]
    m = [ZERO] * len(pts)
    for v in basis:
        c = rng.randint(-span, span)
        if c:
            m = [a + b * c for a, b in zip(m, v)]
    return m


def _check_distance_set(X: PointSet) -> DistanceSpectrum:
    if len(X.points) < 2:
        raise NotDistanceSet("need at least two points to define distances")
    return distance_spectrum(sdm_from_points(X))


def _theorem3_matrices(X: PointSet, i: int):
    spec = _check_distance_set(X)
    s, d = spec.s, X.d
    if s < 2:
        raise NotDistanceSet("the F_y family needs at least two distances")
    if not 0 <= i < s:
        raise IndexOutOfRange(f"index {i} outside spectrum of size {s}")
    basis = monomials(d, 2 * (s - 1))
    F = coefficient_matrix((expand_F(y, spec, i) for y in X.points), basis)
    low = [Polynomial.monomial(mono) for mono in monomials(d, s - 2)]
    FM = coefficient_matrix([expand_F(y, spec, i) for y in X.points] + low, basis)
    return s, d, F, FM, len(low)


def independence_theorem3(X: PointSet, i: int) -> RankCertificate:
    """Rank certificate for ``{F_y : y in X}`` together with all monomials of degree <= s-2.

    Passes iff the union is linearly independent, i.e. the coefficient
    matrix has rank ``|X| + C(d+s-2, s-2)``. ``i`` is the 0-based index of
    the distinguished squared distance and ``d`` is the ambient dimension
    ``X.d``. Since every ``F_y`` lies in a space of dimension at most
    ``C(d+s-1, s-1) + C(d+s-2, s-2)``, this cannot pass once
    ``|X| > C(d+s-1, s-1)``; see :func:`theorem3_direct_sum` for the
    span-intersection form that the dimension count relies on.
    """
    s, d, F, FM, n_low = _theorem3_matrices(X, i)
    n = len(X.points)
    rank_f = rank(F)
    return RankCertificate(
        claim=f"F_y (i={i}) and monomials of degree <= {s - 2} are independent (n={n}, d={d}, s={s})",
        matrix_shape=FM.shape,
        expected_rank=n + comb(d + s - 2, s - 2),
        achieved_rank=rank(FM),
        details=(("rank_F", rank_f), ("n_monomials", n_low), ("span_bound", comb(d + s - 1, s - 1))),
    )


def theorem3_direct_sum(X: PointSet, i: int) -> RankCertificate:
    """span{F_y} meets the low-degree monomials only in 0, and dim span{F_y} <= C(d+s-1, s-1)."""
    s, d, F, FM, n_low = _theorem3_matrices(X, i)
    rank_f = rank(F)
    bound = comb(d + s - 1, s - 1)
    return RankCertificate(
        claim=f"span F_y (i={i}) is complementary to monomials of degree <= {s - 2} (n={len(X.points)}, d={d}, s={s})",
        matrix_shape=FM.shape,
        expected_rank=rank_f + n_low,
        achieved_rank=rank(FM),
        extra_checks=(("span_bound", rank_f <= bound),),
        details=(("rank_F", rank_f), ("n_monomials", n_low), ("span_bound", bound)),
    )


def bbs_check(X: PointSet) -> RankCertificate:
    """Rank certificate for ``{G_y}`` with monomials of degree <= s-1, plus ``|X| <= C(d+s, s)``."""
    spec = _check_distance_set(X)
    s, d = spec.s, X.d
    polys = [expand_G(y, spec) for y in X.points]
    polys += [Polynomial.monomial(mono) for mono in monomials(d, s - 1)]
    M = coefficient_matrix(polys, monomials(d, 2 * s))
    n = len(X.points)
    expected = n + comb(d + s - 1, s - 1)
    return RankCertificate(
        claim=f"G_y and monomials of degree <= {s - 1} are independent (n={n}, d={d}, s={s})",
        matrix_shape=M.shape,
        expected_rank=expected,
        achieved_rank=rank(M),
        extra_checks=(("size_bound", n <= comb(d + s, s)),),
    )


def evaluation_matrix(D: SquaredDistanceMatrix, spec: DistanceSpectrum, i: int) -> ExactMatrix:
    """``k_i * I + A_i`` where ``A_i`` marks pairs at squared distance ``spec[i]``."""
    spec = _spectrum(spec)
    if spec != distance_spectrum(D):
        raise SpectrumMismatch("spectrum does not match the distance matrix")
    if spec.s < 2:
        raise SpectrumMismatch("evaluation matrix needs at least two distances")
    if not 0 <= i < spec.s:
        raise IndexOutOfRange(f"index {i} outside spectrum of size {spec.s}")
    k = k_invariants(spec)[i]
    a = spec[i]
    n = D.n
    rows = [[k if r == c else (ONE if D.entries[r][c] == a else ZERO) for c in range(n)] for r in range(n)]
    return ExactMatrix(rows, cols=n)


def evaluation_certificate(D: SquaredDistanceMatrix, i: int) -> RankCertificate:
    """Distance-only certificate: the evaluation matrix has full rank."""
    spec = distance_spectrum(D)
    M = evaluation_matrix(D, spec, i)
    return RankCertificate(
        claim=f"F_y (i={i}) restricted to X are independent (n={D.n}, s={spec.s})",
        matrix_shape=M.shape,
        expected_rank=D.n,
        achieved_rank=rank(M),
    )
