"""Certificate batteries run by ``fewdist verify`` and the acceptance tests."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .catalog import CatalogEntry, paley_conference_embedding, regular_polygon, standard_catalog, theorem3_applies
from .field import QuadExt
from .geometry import distance_spectrum, sdm_from_points
from .invariants import analyze
from .polyspace import (
    bbs_check,
    dim_W,
    evaluate_table,
    evaluation_matrix,
    expand_F,
    independence_theorem3,
    lemma5_check,
    lemma6_check,
    lemma6_instance,
    monomials,
    theorem3_direct_sum,
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    info: dict

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "pass": self.passed, **self.info}


def _label(entry: CatalogEntry) -> str:
    params = ",".join(f"{k}={v}" for k, v in entry.parameters.items())
    return f"{entry.name}({params})"


def certificate_catalog(max_d: int = 5, max_s: int = 3) -> list[CatalogEntry]:
    """Coordinate catalog entries with embedding dimension <= max_d and s <= max_s."""
    return [
        e
        for e in standard_catalog()
        if e.has_coordinates and e.expected["d"] <= max_d and e.expected["s"] <= max_s
    ]


def lemma4_suite(max_d: int = 4, max_ell: int = 4) -> list[CheckResult]:
    out = []
    for d in range(1, max_d + 1):
        for ell in range(0, max_ell + 1):
            achieved, bound = dim_W(d, ell)
            out.append(CheckResult("lemma4", f"d={d},l={ell}", achieved <= bound, {"achieved": achieved, "bound": bound}))
    return out


def lemma5_suite(max_d: int = 3, max_s: int = 3) -> list[CheckResult]:
    out = []
    for d in range(1, max_d + 1):
        for sp in range(1, max_s + 1):
            for ell in range(2, sp + 3):
                out.append(CheckResult("lemma5", f"d={d},s'={sp},l={ell}", lemma5_check(d, sp, ell), {}))
    return out


def lemma6_suite(n_instances: int = 100, seed: int = 0) -> list[CheckResult]:
    """Random weights with the degree hypothesis enforced; the moment conclusion is then checked."""
    rng = random.Random(seed)
    out = []
    while len(out) < n_instances:
        d = rng.choice([1, 2, 3])
        s = rng.choice([2, 3])
        ell = rng.randint(2, s + 1)
        n_pts = len(monomials(d, ell - 2)) + rng.randint(1, 4)
        pts = set()
        while len(pts) < n_pts:
            pts.add(tuple(QuadExt(rng.randint(-3, 3)) for _ in range(d)))
        Y = sorted(pts, key=lambda p: tuple(x.a for x in p))
        m = lemma6_instance(Y, s, ell, rng)
        if not any(m):
            continue
        res = lemma6_check(m, Y, s, ell)
        out.append(
            CheckResult(
                "lemma6",
                f"#{len(out)} d={d},s={s},l={ell},n={n_pts}",
                res.hypothesis_holds and res.conclusion_holds,
                {"degree": res.degree, "hypothesis": res.hypothesis_holds, "conclusion": res.conclusion_holds},
            )
        )
    return out


def _theorem3_one(entry: CatalogEntry) -> list[CheckResult]:
    X = entry.payload
    s = entry.expected["s"]
    return [
        CheckResult("theorem3", f"{_label(entry)} i={i}", c.passed, c.to_json())
        for i in range(s)
        for c in [independence_theorem3(X, i)]
    ]


def _theorem3_span_one(entry: CatalogEntry) -> list[CheckResult]:
    X = entry.payload
    s = entry.expected["s"]
    return [
        CheckResult("theorem3-span", f"{_label(entry)} i={i}", c.passed, c.to_json())
        for i in range(s)
        for c in [theorem3_direct_sum(X, i)]
    ]


def _bbs_one(entry: CatalogEntry) -> list[CheckResult]:
    c = bbs_check(entry.payload)
    return [CheckResult("bbs", _label(entry), c.passed, c.to_json())]


def _evaluation_one(entry: CatalogEntry) -> list[CheckResult]:
    """Coordinates path versus distance path for the F_y evaluations, plus symmetry."""
    X = entry.payload
    D = sdm_from_points(X)
    spec = distance_spectrum(D)
    out = []
    for i in range(spec.s):
        M = evaluation_matrix(D, spec, i)
        F = [expand_F(y, spec, i) for y in X.points]
        vals = evaluate_table(F, X.points)
        agree = all(vals[r][c] == M[r, c] for r in range(len(F)) for c in range(len(F)))
        symmetric = all(vals[r][c] == vals[c][r] for r in range(len(F)) for c in range(r))
        out.append(
            CheckResult("evaluation", f"{_label(entry)} i={i}", agree and symmetric, {"agree": agree, "symmetric": symmetric})
        )
    return out


def _run(fn: Callable[[CatalogEntry], list[CheckResult]], entries: list[CatalogEntry], jobs: int) -> list[CheckResult]:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(fn, entries))
    else:
        chunks = [fn(e) for e in entries]
    return [r for chunk in chunks for r in chunk]


def theorem3_suite(jobs: int = 1) -> list[CheckResult]:
    return _run(_theorem3_one, [e for e in certificate_catalog() if e.expected["s"] >= 2], jobs)


def theorem3_span_suite(jobs: int = 1) -> list[CheckResult]:
    return _run(_theorem3_span_one, [e for e in certificate_catalog() if e.expected["s"] >= 2], jobs)


def bbs_suite(jobs: int = 1) -> list[CheckResult]:
    return _run(_bbs_one, certificate_catalog(), jobs)


def evaluation_suite(jobs: int = 1) -> list[CheckResult]:
    return _run(_evaluation_one, [e for e in certificate_catalog() if e.expected["s"] >= 2], jobs)


def integrality_suite() -> list[CheckResult]:
    """Every catalog set meeting 2*C(d+s-1, s-1) has integral invariants within the cap."""
    out = []
    for e in standard_catalog():
        if not theorem3_applies(e):
            continue
        r = analyze(e.payload)
        ok = r.threshold_met_new and r.all_integral and all(r.cap_respected)
        out.append(
            CheckResult(
                "integrality",
                _label(e),
                ok,
                {"n": r.n_points, "min_size": 2 * r.N_new, "k": [str(k) for k in r.k_values], "k_cap": r.k_cap},
            )
        )
    return out


def sharpness_suite(qs=(5, 13, 17, 29)) -> list[CheckResult]:
    """Conference-graph embeddings: |X| = 2d + 1 with non-integral invariants."""
    entries = [regular_polygon(5)] + [paley_conference_embedding(q) for q in qs]
    out = []
    for e in entries:
        r = analyze(e.payload)
        ok = r.s == 2 and r.n_points == 2 * r.d + 1 == 2 * r.N_new - 1 and not any(r.k_integral)
        out.append(CheckResult("sharpness", _label(e), ok, {"n": r.n_points, "d": r.d, "k": [str(k) for k in r.k_values]}))
    return out


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "lemma4": lambda jobs=1: lemma4_suite(),
    "lemma5": lambda jobs=1: lemma5_suite(),
    "lemma6": lambda jobs=1: lemma6_suite(),
    "theorem3": theorem3_suite,
    "theorem3-span": theorem3_span_suite,
    "bbs": bbs_suite,
    "evaluation": evaluation_suite,
    "integrality": lambda jobs=1: integrality_suite(),
    "sharpness": lambda jobs=1: sharpness_suite(),
}


def run_suite(name: str, jobs: int = 1) -> list[CheckResult]:
    if name == "all":
        return [r for key in SUITES for r in SUITES[key](jobs=jobs)]
    try:
        return SUITES[name](jobs=jobs)
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}") from None
