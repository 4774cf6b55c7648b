"""Built-in acceptance suites, run by ``qsocle verify`` and the test suite."""

from __future__ import annotations

import inspect
import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from .box import BoxIdeal, BoxSpec, annihilator, mbar_power, rho
from .closure import closure_diagonal, corollary41_check, prop42_classify
from .harness import SweepSpec, run_case, run_sweep
from .quasisocle import CaseSpec, analyze, compute_I, predict


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: str

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds < self.limit

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        timing = f"{self.seconds:.2f}s < {self.limit:g}s" if self.seconds < self.limit else \
            f"{self.seconds:.2f}s over {self.limit:g}s"
        return f"[{verdict}] {self.number}. {self.name}: {self.detail} ({timing})"


def _unit_vectors(d: int) -> set[tuple[int, ...]]:
    return {tuple(int(i == j) for j in range(d)) for i in range(d)}


def example_not_integral() -> tuple[bool, str]:
    rep = analyze(CaseSpec((2, 2, 2), 3))
    gens = {tuple(g) for g in rep.oracle["I"]}
    ok = (gens == _unit_vectors(3) and rep.prediction.integral is False
          and rep.oracle["integral"] is False and rep.agreement)
    return ok, f"I generators {sorted(gens)}, integral pred/oracle " \
               f"{rep.prediction.integral}/{rep.oracle['integral']}"


def example_gorenstein_g_not_rees() -> tuple[bool, str]:
    rep = analyze(CaseSpec((4,) * 5, 8))
    p, o = rep.prediction, rep.oracle
    ok = (p.rho == 15 and p.ell == 8 and p.r == 1 and o["r"] == 1 and o["g_gorenstein"] is True
          and p.rees_gorenstein is False and p.rees_cm is True and rep.agreement)
    return ok, f"rho={p.rho} ell={p.ell} r={p.r}/{o['r']} duality={o['g_gorenstein']} " \
               f"rees_gor={p.rees_gorenstein} rees_cm={p.rees_cm}"


def example_gorenstein_rees() -> tuple[bool, str]:
    rep = analyze(CaseSpec((2, 2, 2), 2))
    p, o = rep.prediction, rep.oracle
    ok = (2 == (3 - 2) * p.ell and p.rees_gorenstein is True and o["r"] == 1
          and o["g_gorenstein"] is True and rep.agreement)
    return ok, f"ell={p.ell} rees_gor={p.rees_gorenstein} r_oracle={o['r']} duality={o['g_gorenstein']}"


def _sweep_result(run) -> tuple[bool, str]:
    s = run.summary
    bad = [f"{r.case}:{','.join(r.disagreements()) or r.error}" for r in run.cases if not r.agreement]
    ok = s["disagree"] == 0 and s["skipped"] == 0 and s["total"] > 0
    detail = f"{s['total']} cases ({s['agree']} agree, {s['improper']} improper), " \
             f"{s['disagree']} disagree, {s['skipped']} skipped"
    if bad:
        detail += f"; first failures {bad[:3]}"
    return ok, detail


def regular_sweep(workers: int = 1) -> tuple[bool, str]:
    return _sweep_result(run_sweep(SweepSpec("regular", d=(2, 3), a_range=(1, 4)), workers=workers))


def closure_classification_sweep() -> tuple[bool, str]:
    cases = mismatches = 0
    for d in (2, 3):
        for a in itertools.product(range(2, 6), repeat=d):
            top = sum(a) - d
            for q in range(1, top + 1):
                spec = CaseSpec(a, q)
                if predict(spec).ell < max(a):
                    continue
                cases += 1
                if prop42_classify(a, q) != (compute_I(spec) == closure_diagonal(a)):
                    mismatches += 1
    return mismatches == 0 and cases > 0, f"{cases} integral cases, {mismatches} mismatches"


def closed_powers_grid() -> tuple[bool, str]:
    failed = [(d, n, m) for d in (2, 3) for n in (2, 3, 4) for m in (1, 2, 3)
              if not corollary41_check(d, n, m)]
    return not failed, f"18 (d, n, m) triples, failing: {failed or 'none'}"


def semigroup_sweep(workers: int = 1) -> tuple[bool, str]:
    return _sweep_result(run_sweep(SweepSpec("semigroup", b_range=(3, 13), n_range=(1, 4)),
                                   workers=workers))


def duality_invariant(seed: int = 20240601, samples: int = 100) -> tuple[bool, str]:
    specs = [BoxSpec(a) for d in (2, 3) for a in itertools.product(range(1, 5), repeat=d)]
    failures = 0
    for spec in specs:
        top = rho(spec)
        for i in range(top + 2):
            if annihilator(mbar_power(spec, i)) != mbar_power(spec, top + 1 - i):
                failures += 1
    rng = random.Random(seed)
    bad_double = 0
    for _ in range(samples):
        spec = rng.choice(specs)
        pts = [tuple(rng.randrange(n) for n in spec.a) for _ in range(rng.randint(0, 4))]
        E = BoxIdeal.from_minimal(spec, pts)
        if annihilator(annihilator(E)) != E:
            bad_double += 1
    ok = failures == 0 and bad_double == 0
    return ok, f"{len(specs)} boxes: {failures} power-duality failures; " \
               f"{samples} random ideals: {bad_double} double-annihilator failures"


def predictor_only_examples() -> tuple[bool, str]:
    bad = []
    for n in range(2, 7):
        rep = run_case({"model": "predictor-only", "a": [2, n], "q": n, "gm_a_invariant": n - 3})
        p = rep.prediction
        if not (p.rho == 2 * n - 1 and p.ell == n and p.integral and p.r == 1 and p.g_gorenstein):
            bad.append(n)
    return not bad, f"n = 2..6, failing n: {bad or 'none'}"


CRITERIA: list[tuple[int, str, float, Callable[[], tuple[bool, str]]]] = [
    (1, "non-integral I = m for a=(2,2,2), q=3", 1.0, example_not_integral),
    (2, "d=5, a=(4,...,4), q=8: G(I) Gorenstein, R(I) not", 30.0, example_gorenstein_g_not_rees),
    (3, "d=3, a=(2,2,2), q=2: R(I) Gorenstein", 1.0, example_gorenstein_rees),
    (4, "regular sweep d in {2,3}, a_i <= 4", 300.0, regular_sweep),
    (5, "closure classification sweep, 2 <= a_i <= 5", 120.0, closure_classification_sweep),
    (6, "powers of (x_1^{n-1}) + m^n integrally closed", 120.0, closed_powers_grid),
    (7, "semigroup sweep b <= 13, n <= 4", 120.0, semigroup_sweep),
    (8, "box duality and double annihilator", 60.0, duality_invariant),
    (9, "hypersurface predictor, a=(2,n), q=n", 1.0, predictor_only_examples),
]


def run_criterion(number: int, workers: int = 1) -> CriterionResult:
    for num, name, limit, fn in CRITERIA:
        if num == number:
            kwargs = {"workers": workers} if "workers" in inspect.signature(fn).parameters else {}
            start = time.perf_counter()
            passed, detail = fn(**kwargs)
            return CriterionResult(num, name, passed, time.perf_counter() - start, limit, detail)
    raise KeyError(f"no acceptance criterion {number}")


def run_all(numbers=None, workers: int = 1) -> list[CriterionResult]:
    numbers = [c[0] for c in CRITERIA] if numbers is None else numbers
    return [run_criterion(n, workers=workers) for n in numbers]
