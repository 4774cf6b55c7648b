import csv
import io
import json

import pytest

from qsocle.harness import (
    CSV_COLUMNS,
    DescriptorError,
    RunReport,
    SweepSpec,
    case_label,
    case_status,
    format_csv,
    format_json_lines,
    parse_descriptor,
    render,
    run_case,
    run_sweep,
)
from qsocle.quasisocle import CaseSpec
from qsocle.semigroup import SemigroupSpec


class TestDescriptors:
    def test_regular(self):
        assert parse_descriptor({"model": "regular", "a": [2, 3], "q": 1}) == CaseSpec((2, 3), 1)

    def test_default_model_and_scalar_a(self):
        assert parse_descriptor({"a": 4, "q": 1}) == CaseSpec((4,), 1)

    def test_semigroup(self):
        desc = {"model": "semigroup", "a": 3, "b": 5, "n": 2, "q": 1}
        assert parse_descriptor(desc) == SemigroupSpec(3, 5, 2, 1)

    def test_predictor_only(self):
        spec = parse_descriptor({"model": "predictor-only", "a": [2, 4], "q": 4, "gm_a_invariant": 1})
        assert spec.gm_a_invariant == 1 and not spec.regular

    @pytest.mark.parametrize("desc", [
        {"model": "toric", "a": [2], "q": 1},
        {"model": "regular", "a": [2, 2]},
        {"model": "regular", "a": [2, 2], "q": 0},
        {"model": "regular", "a": [2, "x"], "q": 1},
        {"model": "regular", "a": [2, 2], "q": 1, "gm_a_invariant": 0},
        {"model": "predictor-only", "a": [2, 2], "q": 1},
        {"model": "semigroup", "a": 4, "b": 6, "n": 1, "q": 1},
        {"model": "semigroup", "a": 3, "b": 5, "q": 1},
    ])
    def test_rejected(self, desc):
        with pytest.raises(DescriptorError):
            parse_descriptor(desc)


class TestRunCase:
    def test_statuses(self):
        assert case_status(run_case({"a": [3, 3], "q": 2})) == "agree"
        assert case_status(run_case({"a": [2, 2], "q": 4})) == "improper"

    def test_box_cap_recorded_as_skip(self):
        rep = run_case({"a": [4, 4, 4], "q": 2}, box_cap=10)
        assert case_status(rep) == "skipped" and "BoxCapExceeded" in rep.error
        assert not rep.agreement

    def test_disagreement_status(self):
        rep = run_case({"a": [3, 3], "q": 2})
        rep.checks["r"] = False
        assert case_status(rep) == "disagree"

    def test_labels(self):
        assert case_label(run_case({"a": [2, 2, 2], "q": 3})) == "a=2,2,2;q=3"
        assert case_label(run_case({"model": "semigroup", "a": 3, "b": 5, "n": 2, "q": 2})) == \
            "a=3;b=5;n=2;q=2"
        rep = run_case({"model": "predictor-only", "a": [2, 3], "q": 3, "gm_a_invariant": 0})
        assert case_label(rep) == "a=2,3;q=3;gm=0"


class TestSweepSpec:
    def test_default_regular_grid(self):
        descs = SweepSpec("regular", d=(2,), a_range=(1, 2)).descriptors()
        # a in {1,2}^2, q from 1 to rho = sum(a) - 2
        assert [(tuple(c["a"]), c["q"]) for c in descs] == [((1, 2), 1), ((2, 1), 1), ((2, 2), 1), ((2, 2), 2)]

    def test_sorted(self):
        descs = SweepSpec("regular", d=(3, 2), a_range=(1, 3)).descriptors()
        keys = [(len(c["a"]), tuple(c["a"]), c["q"]) for c in descs]
        assert keys == sorted(keys)

    def test_semigroup_grid(self):
        descs = SweepSpec("semigroup", b_range=(5, 5), n_range=(1, 1)).descriptors()
        pairs = {(c["a"], c["b"]) for c in descs}
        assert pairs == {(2, 5), (3, 5), (4, 5)}
        assert all(1 <= c["q"] <= c["a"] + c["n"] - 2 for c in descs)

    def test_empty_range(self):
        run = run_sweep(SweepSpec("regular", d=(2,), a_range=(3, 2)))
        assert run.cases == [] and run.summary["total"] == 0 and run.passed

    def test_from_mapping(self):
        spec = SweepSpec.from_mapping({"model": "regular", "d": [2], "a_range": [2, 3]})
        assert spec.d == (2,) and spec.a_range == (2, 3)
        with pytest.raises(DescriptorError):
            SweepSpec.from_mapping({"model": "regular", "colour": "red"})

    @pytest.mark.parametrize("kwargs", [
        {"model": "toric"},
        {"model": "predictor-only"},
        {"model": "regular", "box_cap": 0},
        {"model": "regular", "time_budget": -1},
    ])
    def test_rejected(self, kwargs):
        with pytest.raises(DescriptorError):
            SweepSpec(**kwargs)

    def test_predictor_only_sweep(self):
        run = run_sweep(SweepSpec("predictor-only", d=(2,), a_range=(2, 3), gm_a_invariant=0))
        assert run.summary["total"] > 0 and run.passed
        assert all(rep.model == "predictor-only" for rep in run.cases)


class TestSweeps:
    spec = SweepSpec("regular", d=(2, 3), a_range=(1, 3))

    def test_all_agree(self):
        run = run_sweep(self.spec)
        assert run.passed and run.summary["disagree"] == 0 and run.summary["skipped"] == 0

    def test_deterministic(self):
        assert render(run_sweep(self.spec), "json-lines") == render(run_sweep(self.spec), "json-lines")

    def test_parallel_matches_serial(self):
        serial = render(run_sweep(self.spec), "json-lines")
        assert render(run_sweep(self.spec, workers=2), "json-lines") == serial

    def test_time_budget_skips_remaining(self):
        run = run_sweep(SweepSpec("regular", d=(2,), a_range=(1, 3), time_budget=1e-9))
        assert run.summary["skipped"] >= run.summary["total"] - 1 > 0
        assert run.passed

    def test_semigroup_sweep(self):
        run = run_sweep(SweepSpec("semigroup", b_range=(3, 8), n_range=(1, 3)))
        assert run.passed and run.summary["skipped"] == 0

    def test_timestamp_optional(self):
        assert run_sweep(self.spec).timestamp is None
        assert run_sweep(SweepSpec("regular", d=(2,), a_range=(2, 2)), timestamp=True).timestamp


class TestFormats:
    def run(self):
        cases = [run_case({"a": [3, 3], "q": 2}), run_case({"a": [2, 2, 2], "q": 3}),
                 run_case({"a": [2, 2], "q": 4}),
                 run_case({"model": "semigroup", "a": 3, "b": 5, "n": 2, "q": 1})]
        return RunReport(cases)

    def test_csv_columns(self):
        rows = list(csv.DictReader(io.StringIO(format_csv(self.run().cases))))
        assert list(rows[0]) == CSV_COLUMNS
        assert rows[0]["case"] == "a=3,3;q=2" and rows[0]["agreement"] == "True"
        assert rows[1]["r_pred"] == "" and rows[1]["integral_oracle"] == "False"
        assert rows[3]["rees_cm_pred"] == ""

    def test_json_lines(self):
        lines = [json.loads(x) for x in format_json_lines(self.run()).splitlines()]
        assert [x["type"] for x in lines] == ["case"] * 4 + ["summary"]
        assert lines[-1]["summary"] == {"agree": 3, "disagree": 0, "improper": 1, "skipped": 0, "total": 4}
        assert "timestamp" not in lines[-1]
        assert lines[0]["prediction"]["r"] == 1

    def test_text(self):
        text = render(self.run(), "text")
        assert "[agree] regular a=3,3;q=2" in text
        assert text.rstrip().endswith("0 skipped")

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render(self.run(), "xml")
