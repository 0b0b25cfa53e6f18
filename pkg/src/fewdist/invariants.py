"""Integrality invariants of s-distance sets and the associated thresholds.

For squared distances ``a_1 < ... < a_s`` the invariant

    k_i = prod_{j != i} a_j / (a_j - a_i)

is the value at 0 of the i-th Lagrange basis polynomial on the nodes
``a_1, ..., a_s``. Sets with at least ``2 * C(d+s-1, s-1)`` points force
every ``k_i`` to be an integer bounded in absolute value by :func:`k_cap`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath

from .errors import InconsistentK, InvalidN, NoConvergence, NotDistanceSet, NotRealizable, WrongS
from .field import QuadExt, format_decimal, render
from .geometry import (
    DistanceSpectrum,
    PointSet,
    SquaredDistanceMatrix,
    as_sdm,
    distance_spectrum,
    is_realizable,
)


def threshold_N(d: int, s: int) -> tuple[int, int]:
    """Return ``(N_new, N_legacy)``: ``C(d+s-1, s-1)`` and that plus ``C(d+s-2, s-2)``."""
    if d < 1 or s < 1:
        raise ValueError(f"need d >= 1 and s >= 1, got d={d}, s={s}")
    n_new = comb(d + s - 1, s - 1)
    n_legacy = n_new + (comb(d + s - 2, s - 2) if s >= 2 else 0)
    return n_new, n_legacy


def finiteness_threshold(d: int, s: int) -> int:
    return 2 * threshold_N(d, s)[0]


def k_cap(N: int) -> int:
    """Largest K with K(K-1)(2N-2) <= N^2, i.e. floor(1/2 + sqrt(N^2/(2N-2) + 1/4))."""
    if N < 2:
        raise InvalidN(f"k_cap needs N >= 2, got {N}")
    lhs = 2 * N - 2
    rhs = N * N
    lo, hi = 1, 2
    while hi * (hi - 1) * lhs <= rhs:
        hi *= 2
    # invariant: lo satisfies, hi does not
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid * (mid - 1) * lhs <= rhs:
            lo = mid
        else:
            hi = mid
    return lo


def k_invariants(spec: DistanceSpectrum | Sequence) -> list[QuadExt]:
    vals = tuple(spec) if not isinstance(spec, DistanceSpectrum) else spec.sq_distances
    vals = tuple(QuadExt.coerce(v) for v in vals)
    if len(vals) < 2:
        return []
    out = []
    for i, ai in enumerate(vals):
        num = QuadExt(1)
        den = QuadExt(1)
        for j, aj in enumerate(vals):
            if j != i:
                num = num * aj
                den = den * (aj - ai)
        out.append(num / den)
    return out


def lrs_k(spec: DistanceSpectrum) -> QuadExt:
    """The two-distance invariant beta^2 / (beta^2 - alpha^2)."""
    if spec.s != 2:
        raise WrongS(f"lrs_k needs a two-distance spectrum, got s={spec.s}")
    a, b = spec.sq_distances
    return b / (b - a)


@dataclass
class InvariantReport:
    spectrum: tuple[QuadExt, ...]
    s: int
    d: int
    n_points: int
    k_values: list[QuadExt]
    k_integral: list[bool]
    N_new: int
    N_legacy: int
    threshold_met_new: bool
    threshold_met_legacy: bool
    k_cap: int | None
    cap_respected: list[bool]
    finiteness_threshold: int
    lrs_k: QuadExt | None = None
    certificates: list[dict] = field(default_factory=list)

    @property
    def all_integral(self) -> bool:
        return all(self.k_integral)

    @property
    def theorem3_consistent(self) -> bool:
        """False only if the size threshold is met yet some k_i fails integrality or the cap."""
        if not self.threshold_met_new:
            return True
        return self.all_integral and all(self.cap_respected)

    def to_json(self) -> dict:
        return {
            "spectrum": [render(v) for v in self.spectrum],
            "spectrum_approx": [format_decimal(v) for v in self.spectrum],
            "s": self.s,
            "d": self.d,
            "n": self.n_points,
            "k": [render(v) for v in self.k_values],
            "k_approx": [format_decimal(v) for v in self.k_values],
            "k_integral": list(self.k_integral),
            "N_new": self.N_new,
            "N_legacy": self.N_legacy,
            "thresholds": {
                "new": {"min_size": 2 * self.N_new, "met": self.threshold_met_new},
                "legacy": {"min_size": 2 * self.N_legacy, "met": self.threshold_met_legacy},
                "finiteness": {
                    "min_size": self.finiteness_threshold,
                    "met": self.n_points >= self.finiteness_threshold,
                },
            },
            "k_cap": self.k_cap,
            "cap_respected": list(self.cap_respected),
            "lrs_k": render(self.lrs_k) if self.lrs_k is not None else None,
            "theorem3_consistent": self.theorem3_consistent,
            "certificates": list(self.certificates),
        }


def analyze(cfg: PointSet | SquaredDistanceMatrix) -> InvariantReport:
    D = as_sdm(cfg)
    if D.n < 2:
        raise NotDistanceSet("a distance set needs at least two points")
    real = is_realizable(D)
    if not real:
        raise NotRealizable(f"Gram matrix has inertia {real.inertia.as_tuple()}")
    d = real.dim
    spec = distance_spectrum(D)
    s = spec.s
    n_new, n_legacy = threshold_N(d, s)
    ks = k_invariants(spec)
    integral = [k.is_integer() for k in ks]
    cap = k_cap(n_new) if n_new >= 2 else None
    if cap is None:
        respected = [True] * len(ks)
    else:
        respected = [abs(k) <= cap for k in ks]
    return InvariantReport(
        spectrum=spec.sq_distances,
        s=s,
        d=d,
        n_points=D.n,
        k_values=ks,
        k_integral=integral,
        N_new=n_new,
        N_legacy=n_legacy,
        threshold_met_new=D.n >= 2 * n_new,
        threshold_met_legacy=D.n >= 2 * n_legacy,
        k_cap=cap,
        cap_respected=respected,
        finiteness_threshold=2 * n_new,
        lrs_k=lrs_k(spec) if s == 2 else None,
    )


def _forward(gammas) -> list:
    s = len(gammas)
    out = []
    for i in range(s):
        v = mpmath.mpf(1)
        for j in range(s):
            if j != i:
                v *= gammas[j] / (gammas[j] - gammas[i])
        out.append(v)
    return out


def recover_distances(
    k: Sequence[int | Fraction],
    tol: float = 1e-9,
    max_iter: int = 200,
    dps: int = 50,
) -> list[float]:
    """Find squared distances ``g_1 < ... < g_s = 1`` whose invariants are ``k``.

    ``k`` is normally a tuple of integers; any exact rationals summing to 1
    are accepted so that arbitrary rational spectra can be round-tripped.

    Damped Newton on the first ``s - 1`` residuals ``k_i(g) - k_i`` with
    ``g_s`` pinned to 1, started from ``g_i = i/s``. Steps are halved until
    the residual norm decreases or the ordering ``0 < g_1 < ... < 1`` would
    break. The last invariant is implied by the sum rule.
    """
    try:
        ks = [x if isinstance(x, Fraction) else Fraction(x) for x in k]
    except (TypeError, ValueError) as exc:
        raise InconsistentK(f"invariants must be exact rationals, got {list(k)}") from exc
    if any(isinstance(x, float) for x in k):
        raise InconsistentK("pass invariants as ints or Fractions, not floats")
    s = len(ks)
    if s < 2:
        raise WrongS("recovery needs s >= 2 invariants")
    if sum(ks) != 1:
        raise InconsistentK(f"invariants must sum to 1, got sum {sum(ks)}")

    with mpmath.workdps(dps):
        target = [mpmath.mpf(x.numerator) / x.denominator for x in ks]
        g = [mpmath.mpf(i) / s for i in range(1, s)] + [mpmath.mpf(1)]

        def residual(gs):
            vals = _forward(gs)
            return [vals[i] - target[i] for i in range(s - 1)]

        def norm(r):
            return mpmath.sqrt(mpmath.fsum(x * x for x in r))

        def ordered(gs):
            return gs[0] > 0 and all(a < b for a, b in zip(gs, gs[1:]))

        r = residual(g)
        rn = norm(r)
        fine = mpmath.mpf(10) ** (-(dps - 10))
        for _ in range(max_iter):
            if rn <= fine:
                break
            vals = _forward(g)
            J = mpmath.matrix(s - 1, s - 1)
            for i in range(s - 1):
                for j in range(s - 1):
                    if i == j:
                        J[i, j] = vals[i] * mpmath.fsum(1 / (g[t] - g[i]) for t in range(s) if t != i)
                    else:
                        J[i, j] = vals[i] * (1 / g[j] - 1 / (g[j] - g[i]))
            try:
                step = mpmath.lu_solve(J, mpmath.matrix([-x for x in r]))
            except ZeroDivisionError as exc:
                raise NoConvergence(f"singular Jacobian while recovering {ks}") from exc
            t = mpmath.mpf(1)
            accepted = False
            for _ in range(60):
                trial = [g[i] + t * step[i] for i in range(s - 1)] + [g[-1]]
                if ordered(trial):
                    rt = residual(trial)
                    nt = norm(rt)
                    if nt < rn:
                        g, r, rn = trial, rt, nt
                        accepted = True
                        break
                t /= 2
            if not accepted:
                break

        full = _forward(g)
        worst = max(abs(full[i] - target[i]) for i in range(s))
        if not ordered(g) or worst > tol:
            raise NoConvergence(f"no spectrum found for k={[str(x) for x in ks]} (residual {mpmath.nstr(worst, 5)})")
        return [float(x) for x in g]
