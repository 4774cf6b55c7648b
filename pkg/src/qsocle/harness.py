"""Case descriptors, parameter sweeps and machine-readable run reports."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Iterable, Mapping

from . import __version__
from .box import BoxCapExceeded
from .quasisocle import CaseReport, CaseSpec, analyze, predict
from .semigroup import BoundViolation, SemigroupSpec, sg_analyze, sg_predict

MODELS = ("regular", "semigroup", "predictor-only")

CSV_COLUMNS = [
    "model", "case", "rho", "ell", "integral_pred", "integral_oracle", "r_pred", "r_oracle",
    "g_gor_pred", "g_gor_oracle", "rees_cm_pred", "rees_gor_pred", "agreement",
]


class DescriptorError(ValueError):
    pass


def parse_descriptor(desc: Mapping[str, Any]) -> CaseSpec | SemigroupSpec:
    model = desc.get("model", "regular")
    if model not in MODELS:
        raise DescriptorError(f"unknown model {model!r}; expected one of {MODELS}")
    try:
        if model == "semigroup":
            return SemigroupSpec(int(desc["a"]), int(desc["b"]), int(desc["n"]), int(desc["q"]))
        a = desc["a"]
        a = (int(a),) if isinstance(a, int) else tuple(int(x) for x in a)
        gm = desc.get("gm_a_invariant")
        if model == "predictor-only" and gm is None:
            raise DescriptorError("predictor-only cases need gm_a_invariant")
        if model == "regular" and gm is not None and int(gm) != -len(a):
            raise DescriptorError(f"regular model fixes gm_a_invariant = {-len(a)}, got {gm}")
        return CaseSpec(a, int(desc["q"]), None if gm is None else int(gm))
    except KeyError as exc:
        raise DescriptorError(f"descriptor for model {model!r} is missing {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DescriptorError):
            raise
        raise DescriptorError(str(exc)) from None


def _predict_any(spec: CaseSpec | SemigroupSpec):
    return predict(spec) if isinstance(spec, CaseSpec) else sg_predict(spec)


def _predictor_only(spec: CaseSpec) -> CaseReport:
    return CaseReport("predictor-only", spec.key, predict(spec))


def run_case(desc: Mapping[str, Any], box_cap: int | None = None,
             n_max: int | None = None) -> CaseReport:
    """Analyze one case; cap and bound violations are recorded on the report."""
    spec = parse_descriptor(desc)
    model = desc.get("model", "regular")
    try:
        if model == "semigroup":
            return sg_analyze(spec)
        if model == "predictor-only":
            return _predictor_only(spec)
        return analyze(spec, box_cap=box_cap, n_max=n_max)
    except (BoxCapExceeded, BoundViolation) as exc:
        return CaseReport(model, spec.key, _predict_any(spec), error=f"{type(exc).__name__}: {exc}")


def case_status(report: CaseReport) -> str:
    if report.error is not None:
        return "skipped"
    if not report.agreement:
        return "disagree"
    if report.prediction.improper:
        return "improper"
    return "agree"


def case_label(report: CaseReport) -> str:
    if report.model == "semigroup":
        a, b, n, q = report.case
        return f"a={a};b={b};n={n};q={q}"
    _, exps, q, gm = report.case
    label = f"a={','.join(map(str, exps))};q={q}"
    if report.model == "predictor-only":
        label += f";gm={gm}"
    return label


@dataclass
class SweepSpec:
    """Ranges are inclusive (lo, hi) pairs.

    A ``None`` upper q bound means rho.  ``a_range`` defaults to (1, 4) for
    the box models and to every 1 < a < b for the semigroup model.
    """

    model: str = "regular"
    d: tuple[int, ...] = (2, 3)
    a_range: tuple[int, int] | None = None
    q_range: tuple[int, int | None] = (1, None)
    b_range: tuple[int, int] = (3, 13)
    n_range: tuple[int, int] = (1, 4)
    gm_a_invariant: int | None = None
    box_cap: int | None = None
    n_max: int | None = None
    time_budget: float | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise DescriptorError(f"unknown model {self.model!r}")
        if self.model == "predictor-only" and self.gm_a_invariant is None:
            raise DescriptorError("predictor-only sweeps need gm_a_invariant")
        for name in ("box_cap", "n_max", "time_budget"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise DescriptorError(f"{name} must be positive, got {value}")
        self.d = tuple(self.d)
        if self.a_range is None and self.model != "semigroup":
            self.a_range = (1, 4)
        if self.a_range is not None:
            self.a_range = tuple(self.a_range)
        self.q_range = tuple(self.q_range)
        self.b_range = tuple(self.b_range)
        self.n_range = tuple(self.n_range)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "SweepSpec":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise DescriptorError(f"unknown sweep fields: {sorted(extra)}")
        return cls(**data)

    def _q_values(self, rho: int) -> range:
        lo, hi = self.q_range
        return range(lo, (rho if hi is None else hi) + 1)

    def descriptors(self) -> list[dict[str, Any]]:
        """Every case of the sweep, in lexicographic order of the case tuple."""
        out = []
        if self.model == "semigroup":
            for b in range(self.b_range[0], self.b_range[1] + 1):
                a_lo, a_hi = (2, b - 1) if self.a_range is None else self.a_range
                for a in range(max(2, a_lo), min(b - 1, a_hi) + 1):
                    if math.gcd(a, b) != 1:
                        continue
                    for n in range(self.n_range[0], self.n_range[1] + 1):
                        for q in self._q_values(a + n - 2):
                            out.append({"model": "semigroup", "a": a, "b": b, "n": n, "q": q})
            out.sort(key=lambda c: (c["a"], c["b"], c["n"], c["q"]))
            return out
        for d in self.d:
            for a in itertools.product(range(self.a_range[0], self.a_range[1] + 1), repeat=d):
                gm = -d if self.gm_a_invariant is None else self.gm_a_invariant
                rho = gm + sum(a)
                for q in self._q_values(rho):
                    desc = {"model": self.model, "a": list(a), "q": q}
                    if self.model == "predictor-only":
                        desc["gm_a_invariant"] = gm
                    out.append(desc)
        out.sort(key=lambda c: (len(c["a"]), tuple(c["a"]), c["q"]))
        return out


@dataclass
class RunReport:
    cases: list[CaseReport]
    version: str = __version__
    timestamp: str | None = None
    summary: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        counts = {"agree": 0, "disagree": 0, "improper": 0, "skipped": 0}
        for rep in self.cases:
            counts[case_status(rep)] += 1
        counts["total"] = len(self.cases)
        self.summary = counts

    @property
    def passed(self) -> bool:
        return self.summary["disagree"] == 0


def _run_one(args):
    desc, box_cap, n_max = args
    return run_case(desc, box_cap=box_cap, n_max=n_max)


def run_sweep(spec: SweepSpec, workers: int = 1, timestamp: bool = False) -> RunReport:
    descs = spec.descriptors()
    jobs = [(d, spec.box_cap, spec.n_max) for d in descs]
    if spec.time_budget is not None:
        reports = _run_budgeted(jobs, spec.time_budget)
    elif workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        reports = [_run_one(job) for job in jobs]
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None
    return RunReport(reports, timestamp=stamp)


def _run_budgeted(jobs, budget: float) -> list[CaseReport]:
    start = time.monotonic()
    reports = []
    for job in jobs:
        if time.monotonic() - start > budget:
            spec = parse_descriptor(job[0])
            reports.append(CaseReport(job[0].get("model", "regular"), spec.key, _predict_any(spec),
                                      error="time budget exhausted"))
        else:
            reports.append(_run_one(job))
    return reports


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def case_record(report: CaseReport) -> dict[str, Any]:
    return {
        "model": report.model,
        "case": _jsonable(report.case),
        "label": case_label(report),
        "status": case_status(report),
        "agreement": report.agreement,
        "prediction": asdict(report.prediction),
        "oracle": _jsonable(report.oracle),
        "checks": dict(report.checks),
        "error": report.error,
    }


def _blank(value) -> Any:
    return "" if value is None else value


def csv_row(report: CaseReport) -> dict[str, Any]:
    pred = report.prediction
    o = report.oracle
    return {
        "model": report.model,
        "case": case_label(report),
        "rho": pred.rho,
        "ell": pred.ell,
        "integral_pred": pred.integral,
        "integral_oracle": _blank(o.get("integral")),
        "r_pred": _blank(pred.r),
        "r_oracle": _blank(o.get("r")),
        "g_gor_pred": _blank(pred.g_gorenstein),
        "g_gor_oracle": _blank(o.get("g_gorenstein")),
        "rees_cm_pred": _blank(pred.rees_cm),
        "rees_gor_pred": _blank(pred.rees_gorenstein),
        "agreement": report.agreement,
    }


def format_csv(reports: Iterable[CaseReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(csv_row(rep))
    return buf.getvalue()


def format_json_lines(run: RunReport) -> str:
    lines = [json.dumps({"type": "case", **case_record(rep)}, sort_keys=True) for rep in run.cases]
    footer = {"type": "summary", "version": run.version, "summary": run.summary}
    if run.timestamp is not None:
        footer["timestamp"] = run.timestamp
    lines.append(json.dumps(footer, sort_keys=True))
    return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    return "-" if value is None else str(value)


def format_case_text(report: CaseReport) -> str:
    pred = report.prediction
    lines = [f"[{case_status(report)}] {report.model} {case_label(report)}"]
    if report.error:
        lines.append(f"  error: {report.error}")
    lines.append(
        f"  predicted: rho={pred.rho} ell={pred.ell} improper={pred.improper} "
        f"integral={pred.integral} r={_fmt(pred.r)} aG={_fmt(pred.aG)} "
        f"rees_cm={_fmt(pred.rees_cm)} g_gorenstein={_fmt(pred.g_gorenstein)} "
        f"rees_gorenstein={_fmt(pred.rees_gorenstein)}"
    )
    if report.oracle:
        lines.append("  oracle:    " + " ".join(f"{k}={v}" for k, v in report.oracle.items()))
    if report.checks:
        bad = report.disagreements()
        lines.append(f"  checks:    {len(report.checks) - len(bad)}/{len(report.checks)} agree"
                     + (f"; disagree on {', '.join(bad)}" if bad else ""))
    return "\n".join(lines)


def format_text(run: RunReport) -> str:
    parts = [format_case_text(rep) for rep in run.cases]
    s = run.summary
    footer = (f"qsocle {run.version}: {s['total']} cases, {s['agree']} agree, "
              f"{s['disagree']} disagree, {s['improper']} improper, {s['skipped']} skipped")
    if run.timestamp:
        footer += f" ({run.timestamp})"
    parts.append(footer)
    return "\n".join(parts) + "\n"


def render(run: RunReport, fmt: str) -> str:
    if fmt == "csv":
        return format_csv(run.cases)
    if fmt == "json-lines":
        return format_json_lines(run)
    if fmt == "text":
        return format_text(run)
    raise ValueError(f"unknown format {fmt!r}")
