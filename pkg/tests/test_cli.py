"""CLI contract tests: exit codes, report schema, determinism."""

import io
import json
import re

import pytest

from qtrin import cli
from qtrin.identities import IdentityInstance, VerificationReport


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def strip_timing(text):
    return re.sub(r'"elapsed_ms": \d+', '"elapsed_ms": 0', text)


class TestVerify:
    def test_exact_instance_json(self):
        code, text = run(["verify", "--id", "third_pair", "--param", "L=8"])
        assert code == 0
        records = json.loads(text)
        assert len(records) == 1
        rec = records[0]
        assert set(rec) == {"id", "params", "cutoff_halves", "match",
                            "first_mismatch", "elapsed_ms"}
        assert rec["id"] == "third_pair"
        assert rec["params"] == {"L": 8}
        assert rec["cutoff_halves"] is None
        assert rec["match"] is True
        assert rec["first_mismatch"] is None

    def test_missing_cutoff_exits_2(self):
        code, _ = run(["verify", "--id", "kr1"])
        assert code == 2

    def test_cutoff_q_doubles(self):
        code, text = run(["verify", "--id", "kr1", "--cutoff-q", "25"])
        assert code == 0
        assert json.loads(text)[0]["cutoff_halves"] == 50

    def test_conflicting_cutoffs(self):
        code, _ = run(["verify", "--id", "kr1", "--cutoff", "10",
                       "--cutoff-q", "5"])
        assert code == 2

    def test_bad_param_syntax(self):
        code, _ = run(["verify", "--id", "third_pair", "--param", "L=x"])
        assert code == 2

    def test_unknown_id(self):
        code, _ = run(["verify", "--id", "bogus", "--param", "L=1"])
        assert code == 2

    def test_mismatch_exits_1(self, monkeypatch):
        def fake_verify(inst):
            return VerificationReport(inst, False, (4, 1, 2), 0)
        monkeypatch.setattr(cli, "verify_identity", fake_verify)
        code, text = run(["verify", "--id", "third_pair", "--param", "L=2"])
        assert code == 1
        rec = json.loads(text)[0]
        assert rec["match"] is False
        assert rec["first_mismatch"] == \
            {"exponent_halves": 4, "lhs": 1, "rhs": 2}


class TestSweep:
    def test_csv_rows(self):
        code, text = run(["sweep", "--id", "thm71", "--range", "M=0..8",
                          "--format", "csv"])
        assert code == 0
        lines = text.strip().splitlines()
        assert len(lines) == 10    # header + 9 rows
        assert lines[0].startswith("id,params,cutoff_halves,match")
        assert all(",True," in line for line in lines[1:])

    def test_requires_range(self):
        code, _ = run(["sweep", "--id", "thm71"])
        assert code == 2

    def test_grid_order_deterministic(self):
        argv = ["sweep", "--id", "t0_sum", "--range", "L=0..3",
                "--range", "a=-2..2"]
        _, a = run(argv)
        _, b = run(argv)
        assert strip_timing(a) == strip_timing(b)
        params = [r["params"] for r in json.loads(a)]
        assert params == sorted(params, key=lambda p: (p["L"], p["a"]))

    def test_parallel_matches_serial(self):
        argv = ["sweep", "--id", "second_pair", "--range", "L=0..6"]
        _, serial = run(argv)
        _, parallel = run(argv + ["--jobs", "4"])
        assert strip_timing(serial) == strip_timing(parallel)

    def test_bad_range_syntax(self):
        code, _ = run(["sweep", "--id", "thm71", "--range", "M=5..1"])
        assert code == 2


class TestEmitReport:
    def records(self):
        return [VerificationReport(
            IdentityInstance("thm71", {"M": 2}), True, None, 7)]

    def test_empty_json(self):
        assert json.loads(cli.emit_report([], "json")) == []

    def test_empty_csv_header_only(self):
        lines = cli.emit_report([], "csv").strip().splitlines()
        assert len(lines) == 1

    def test_byte_identical_for_same_records(self):
        recs = self.records()
        assert cli.emit_report(recs, "json") == cli.emit_report(recs, "json")
        assert cli.emit_report(recs, "csv") == cli.emit_report(recs, "csv")

    def test_mismatch_populated(self):
        rep = VerificationReport(
            IdentityInstance("thm71", {"M": 1}), False, (6, 0, 1), 3)
        rec = json.loads(cli.emit_report([rep], "json"))[0]
        assert rec["first_mismatch"] == \
            {"exponent_halves": 6, "lhs": 0, "rhs": 1}


class TestCoeffs:
    def test_text_output(self):
        code, text = run(["coeffs", "--id", "kr1", "--side", "LHS",
                          "--cutoff-q", "5", "--format", "text"])
        assert code == 0
        assert "q^0" in text and "q^5" in text

    def test_json_output(self):
        code, text = run(["coeffs", "--id", "kr1", "--side", "RHS",
                          "--cutoff-q", "6"])
        assert code == 0
        payload = json.loads(text)
        by_exp = {r["exponent_halves"]: r["coefficient"]
                  for r in payload["coefficients"]}
        assert by_exp[12] == 2    # q^6

    def test_needs_cutoff_for_truncated(self):
        code, _ = run(["coeffs", "--id", "kr1", "--side", "LHS"])
        assert code == 2


class TestPartitionsCommand:
    def test_compare_ok(self):
        code, text = run(["partitions", "--variant", "first",
                          "--nmax", "15", "--compare", "--format", "json"])
        assert code == 0
        payload = json.loads(text)
        assert payload["all_equal"] is True
        assert len(payload["rows"]) == 16

    def test_unknown_variant(self):
        code, _ = run(["partitions", "--variant", "third", "--nmax", "5"])
        assert code == 2


class TestTopLevel:
    def test_no_command(self):
        code, _ = run([])
        assert code == 2

    def test_unknown_flag(self):
        code, _ = run(["verify", "--id", "thm71", "--bogus"])
        assert code == 2
