"""Quasi-socle ideals I = Q : m^q for Q = (x_1^{a_1}, ..., x_d^{a_d}).

``predict`` gives the closed-form verdicts from rho, ell = rho + 1 - q and the
exponents alone.  The remaining functions recompute the same facts by brute
force ideal arithmetic in the regular model (a polynomial ring localized at
the origin), and ``analyze`` compares the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .box import BoxSpec, nilpotency_index, ooishi_gorenstein_check, project
from .closure import in_closure_diagonal
from .monomial import (
    MonomialIdeal,
    colon_mpower,
    ideal_sum,
    intersect,
    is_subset,
    maximal_power,
    power,
    product,
)


class ReductionNotFound(RuntimeError):
    """I^{n+1} = Q I^n failed for every n up to the search limit."""


@dataclass(frozen=True)
class CaseSpec:
    a: tuple[int, ...]
    q: int
    gm_a_invariant: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if not self.a:
            raise ValueError("need at least one exponent")
        if min(self.a) < 1:
            raise ValueError(f"exponents must be positive, got {self.a}")
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.gm_a_invariant is None:
            object.__setattr__(self, "gm_a_invariant", -len(self.a))

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def regular(self) -> bool:
        return self.gm_a_invariant == -self.d

    @property
    def key(self) -> tuple:
        return (self.d, self.a, self.q, self.gm_a_invariant)


@dataclass(frozen=True)
class Prediction:
    rho: int
    ell: int
    improper: bool
    integral: bool
    r: int | None = None
    aG: int | None = None
    rees_cm: bool | None = None
    g_gorenstein: bool | None = None
    rees_gorenstein: bool | None = None


def ceil_div(p: int, q: int) -> int:
    return -(-p // q)


def predict(spec: CaseSpec) -> Prediction:
    rho = spec.gm_a_invariant + sum(spec.a)
    ell = rho + 1 - spec.q
    if ell <= 0:
        return Prediction(rho, ell, improper=True, integral=False)
    if ell < max(spec.a):
        return Prediction(rho, ell, improper=False, integral=False)
    r = ceil_div(spec.q, ell)
    return Prediction(
        rho,
        ell,
        improper=False,
        integral=True,
        r=r,
        aG=r - spec.d,
        rees_cm=r < spec.d,
        g_gorenstein=spec.q % ell == 0,
        rees_gorenstein=spec.q == (spec.d - 2) * ell,
    )


def _require_regular(spec: CaseSpec) -> None:
    if not spec.regular:
        raise ValueError(f"brute-force oracles need the regular model (a-invariant {-spec.d}), "
                         f"got {spec.gm_a_invariant}")


def parameter_ideal(spec: CaseSpec) -> MonomialIdeal:
    return MonomialIdeal.diagonal(spec.a)


def compute_I(spec: CaseSpec) -> MonomialIdeal:
    _require_regular(spec)
    return colon_mpower(parameter_ideal(spec), spec.q)


def expected_I(spec: CaseSpec) -> MonomialIdeal:
    """Q + m^ell, with m^ell the unit ideal once ell <= 0."""
    ell = predict(spec).ell
    return ideal_sum(parameter_ideal(spec), maximal_power(spec.d, max(ell, 0)))


def reduction_number_oracle(Q: MonomialIdeal, I: MonomialIdeal, n_max: int) -> int:
    """Least n <= n_max with I^{n+1} = Q I^n."""
    if not is_subset(Q, I):
        raise ValueError("Q must be contained in I")
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    cur = MonomialIdeal.unit(I.dim)
    for n in range(n_max + 1):
        nxt = product(cur, I)
        if nxt == product(Q, cur):
            return n
        cur = nxt
    raise ReductionNotFound(f"no reduction equality up to n = {n_max}")


def default_n_max(pred: Prediction) -> int:
    return pred.r + 3 if pred.integral else 10


def mq_equality_check(spec: CaseSpec, I: MonomialIdeal | None = None) -> bool:
    _require_regular(spec)
    I = compute_I(spec) if I is None else I
    mq = maximal_power(spec.d, spec.q)
    return product(mq, I) == product(mq, parameter_ideal(spec))


def _integral_r(spec: CaseSpec) -> int:
    pred = predict(spec)
    if not pred.integral:
        raise ValueError(f"{spec} is outside the integral case")
    return pred.r


def vv_check(spec: CaseSpec, n_range: Sequence[int] | None = None,
             I: MonomialIdeal | None = None) -> bool:
    """Q cap I^n == Q I^{n-1} over ``n_range`` (default 1..r+2)."""
    _require_regular(spec)
    if n_range is None:
        n_range = range(1, _integral_r(spec) + 3)
    Q = parameter_ideal(spec)
    I = compute_I(spec) if I is None else I
    return all(intersect(Q, power(I, n)) == product(Q, power(I, n - 1)) for n in n_range)


def fiber_check(spec: CaseSpec, n_range: Sequence[int] | None = None,
                I: MonomialIdeal | None = None) -> bool:
    """Q cap m I^n == m Q I^{n-1} over ``n_range`` (default 1..r+2)."""
    _require_regular(spec)
    if n_range is None:
        n_range = range(1, _integral_r(spec) + 3)
    Q = parameter_ideal(spec)
    m = maximal_power(spec.d, 1)
    I = compute_I(spec) if I is None else I
    return all(
        intersect(Q, product(m, power(I, n))) == product(m, Q, power(I, n - 1))
        for n in n_range
    )


def lemma22_check(spec: CaseSpec, n_range: Sequence[int] | None = None,
                  m_range: Sequence[int] = range(3), I: MonomialIdeal | None = None) -> bool:
    """Q cap m^{n ell + m} is inside m^m Q I^{n-1} for all n, m in range."""
    _require_regular(spec)
    pred = predict(spec)
    if not pred.integral:
        raise ValueError(f"{spec} is outside the integral case")
    if n_range is None:
        n_range = range(1, pred.r + 2)
    Q = parameter_ideal(spec)
    I = compute_I(spec) if I is None else I
    for n in n_range:
        QIn = product(Q, power(I, n - 1))
        for m in m_range:
            lhs = intersect(Q, maximal_power(spec.d, n * pred.ell + m))
            if not is_subset(lhs, product(maximal_power(spec.d, m), QIn)):
                return False
    return True


def _box(spec: CaseSpec, box_cap: int | None) -> BoxSpec:
    return BoxSpec(spec.a) if box_cap is None else BoxSpec(spec.a, cap=box_cap)


def gorenstein_oracle(spec: CaseSpec, I: MonomialIdeal | None = None,
                      box_cap: int | None = None) -> bool:
    _require_regular(spec)
    if not predict(spec).integral:
        raise ValueError(f"{spec} is outside the integral case")
    I = compute_I(spec) if I is None else I
    return ooishi_gorenstein_check(project(I, _box(spec, box_cap)))


@dataclass
class CaseReport:
    model: str
    case: tuple
    prediction: Prediction
    oracle: dict[str, Any] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    error: str | None = None

    @property
    def agreement(self) -> bool:
        return self.error is None and all(self.checks.values())

    @property
    def improper(self) -> bool:
        return self.prediction.improper

    def disagreements(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]


def analyze(spec: CaseSpec, box_cap: int | None = None, n_max: int | None = None) -> CaseReport:
    """Run every oracle that applies to ``spec`` against ``predict``."""
    pred = predict(spec)
    report = CaseReport("regular" if spec.regular else "predictor-only", spec.key, pred)
    if not spec.regular:
        return report
    oracle, checks = report.oracle, report.checks
    Q = parameter_ideal(spec)
    I = compute_I(spec)
    oracle["I"] = [list(g) for g in I.generators]
    checks["I_equals_Q_plus_m_ell"] = I == expected_I(spec)

    integral_oracle = all(in_closure_diagonal(spec.a, g) for g in I.generators)
    oracle["integral"] = integral_oracle
    checks["integral"] = integral_oracle == pred.integral

    if pred.improper:
        checks["improper_I_is_unit"] = I.is_unit()
        return report

    mq_equal = mq_equality_check(spec, I)
    oracle["mq_equality"] = mq_equal
    checks["mq_equality"] = mq_equal == pred.integral

    if n_max is None:
        n_max = default_n_max(pred)
    try:
        r_oracle = reduction_number_oracle(Q, I, n_max)
    except ReductionNotFound:
        r_oracle = None
    oracle["r"] = r_oracle
    checks["r"] = r_oracle == pred.r

    if not pred.integral:
        return report

    box = _box(spec, box_cap)
    Ibar = project(I, box)
    oracle["nilpotency"] = nilpotency_index(Ibar)
    checks["nilpotency"] = oracle["nilpotency"] == pred.r

    oracle["vv"] = vv_check(spec, I=I)
    oracle["fiber"] = fiber_check(spec, I=I)
    oracle["containment"] = lemma22_check(spec, I=I)
    for name in ("vv", "fiber", "containment"):
        checks[name] = oracle[name]

    oracle["g_gorenstein"] = ooishi_gorenstein_check(Ibar)
    checks["g_gorenstein"] = oracle["g_gorenstein"] == pred.g_gorenstein
    # a(G(I)) < 0 always holds in the regular model once I is integral over Q
    checks["rees_cm"] = pred.rees_cm is True and pred.aG == oracle["nilpotency"] - spec.d
    return report
