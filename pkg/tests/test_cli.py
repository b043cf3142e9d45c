"""CLI surface: exit codes, payload schema, cache transparency, determinism."""

import io
import json

from dormant_degree.cli import run_command


def run(argv, cache_dir):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv) + ["--cache-dir", str(cache_dir)], out, err)
    return code, out.getvalue(), err.getvalue()


def stable_section(payload: dict) -> dict:
    return {k: v for k, v in payload.items() if k != "cache_hit"}


class TestExitCodes:
    def test_success(self, tmp_path):
        code, out, _ = run(["dormant", "--p", "5", "--r", "2", "--g", "2"], tmp_path)
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == {"num": "5", "den": "1"}
        assert payload["integer"] is True

    def test_invalid_parameters_threshold(self, tmp_path):
        code, out, err = run(["dormant", "--p", "5", "--r", "3", "--g", "2"], tmp_path)
        assert code == 2
        assert out == ""
        assert "C(r,g)=6" in json.loads(err)["error"]["reason"]

    def test_invalid_parameters_nonprime(self, tmp_path):
        code, _, err = run(["dormant", "--p", "9", "--r", "2", "--g", "2"], tmp_path)
        assert code == 2
        assert "not prime" in json.loads(err)["error"]["reason"]

    def test_formula_domain_error_sign_invalid(self, tmp_path):
        code, _, err = run(
            ["vi", "--n", "5", "--d", "4", "--r", "2", "--g", "2"], tmp_path
        )
        assert code == 3
        assert "sign exponent" in json.loads(err)["error"]["reason"]

    def test_precision_failure(self, tmp_path):
        code, _, err = run(
            [
                "dormant", "--p", "5", "--r", "2", "--g", "2",
                "--backend", "float", "--precision-bits", "4",
            ],
            tmp_path,
        )
        assert code == 4

    def test_bad_usage_is_parameter_error(self, tmp_path):
        code, _, err = run(["dormant", "--p", "5"], tmp_path)
        assert code == 2


class TestCommands:
    def test_sl_dormant(self, tmp_path):
        code, out, _ = run(["sl-dormant", "--p", "5", "--r", "2", "--g", "2"], tmp_path)
        assert code == 0
        assert json.loads(out)["value"]["num"] == "80"

    def test_vi(self, tmp_path):
        code, out, _ = run(
            ["vi", "--n", "7", "--d", "5", "--r", "2", "--g", "2"], tmp_path
        )
        assert json.loads(out)["value"]["num"] == "686"

    def test_frobenius_conventions(self, tmp_path):
        _, out, _ = run(["frobenius", "--p", "5", "--r", "2", "--g", "2"], tmp_path)
        assert json.loads(out)["value"]["num"] == "330"
        _, out, _ = run(
            [
                "frobenius", "--p", "5", "--r", "2", "--g", "2",
                "--convention", "with-factorial",
            ],
            tmp_path,
        )
        assert json.loads(out)["value"]["num"] == "165"

    def test_verlinde_fusion(self, tmp_path):
        code, out, _ = run(
            ["verlinde", "--r", "2", "--k", "3", "--g", "2", "--method", "fusion"],
            tmp_path,
        )
        assert code == 0
        assert json.loads(out)["value"] == {"num": "20", "den": "1"}

    def test_verlinde_fusion_requires_rank_two(self, tmp_path):
        code, _, _ = run(
            ["verlinde", "--r", "3", "--k", "2", "--g", "2", "--method", "fusion"],
            tmp_path,
        )
        assert code == 2

    def test_verlinde_trig(self, tmp_path):
        # rank 3, level 2, genus 2: the six terms sum to 3/5, prefactor 75
        _, out, _ = run(
            ["verlinde", "--r", "3", "--k", "2", "--g", "2", "--method", "trig"],
            tmp_path,
        )
        assert json.loads(out)["value"]["num"] == "45"

    def test_check_verlinde(self, tmp_path):
        code, out, _ = run(["check-verlinde", "--p", "7", "--r", "2", "--g", "2"], tmp_path)
        payload = json.loads(out)
        assert payload["equal"] is True
        assert payload["lhs"] == {"num": "14", "den": "1"}
        assert payload["dimension"] == 56
        assert payload["method"] == "fusion"

    def test_invariants(self, tmp_path):
        _, out, _ = run(
            ["invariants", "--n", "5", "--d", "3", "--r", "2", "--g", "2"], tmp_path
        )
        payload = json.loads(out)
        assert payload["epsilon"] == 0
        assert payload["s_r"] == 6
        assert payload["e_max"] == {"num": "0", "den": "1"}
        assert payload["mukai_bound"] == 12

    def test_polyfit(self, tmp_path):
        _, out, _ = run(
            [
                "polyfit", "--g", "2",
                "--fit-primes", "5,7,11,13", "--verify-primes", "17,19",
            ],
            tmp_path,
        )
        payload = json.loads(out)
        assert payload["degree"] == 3
        assert payload["verified"] is True
        assert payload["predictions"][0]["predicted"]["num"] == "204"
        assert payload["predictions"][1]["predicted"]["num"] == "285"

    def test_table_with_range_syntax(self, tmp_path):
        code, out, _ = run(
            ["table", "--g", "2", "--r", "2,3", "--p", "5..7"], tmp_path
        )
        payload = json.loads(out)
        rows = payload["rows"]
        assert [r["p"] for r in rows] == [5, 6, 7, 5, 6, 7]
        by_key = {(r["g"], r["r"], r["p"]): r for r in rows}
        assert by_key[(2, 2, 5)]["dormant"] == "5"
        assert by_key[(2, 2, 6)]["reason"] == "non-prime"
        assert by_key[(2, 3, 5)]["reason"] == "threshold"
        assert by_key[(2, 3, 7)]["dormant"] == "56"

    def test_table_csv_and_md(self, tmp_path):
        code, out, _ = run(
            ["table", "--g", "2", "--r", "2", "--p", "5", "--format", "csv"], tmp_path
        )
        assert out.splitlines()[0] == "g,r,p,dormant,sl_degree,verlinde,skipped,reason"
        code, out, _ = run(
            ["table", "--g", "2", "--r", "2", "--p", "5", "--format", "md"], tmp_path
        )
        assert out.startswith("| g | r | p |")

    def test_csv_format_single_value(self, tmp_path):
        _, out, _ = run(
            ["dormant", "--p", "5", "--r", "2", "--g", "2", "--format", "csv"], tmp_path
        )
        header, row = out.strip().split("\n")
        assert "value.num" in header
        assert "5" in row.split(",")

    def test_cache_stats_command(self, tmp_path):
        run(["dormant", "--p", "5", "--r", "2", "--g", "2"], tmp_path)
        code, out, _ = run(["cache", "stats"], tmp_path)
        payload = json.loads(out)
        assert payload["entries"] == 1
        assert payload["file_bytes"] > 0


class TestCacheBehaviour:
    def test_idempotent_with_hit_flag(self, tmp_path):
        _, cold, _ = run(["dormant", "--p", "13", "--r", "2", "--g", "3"], tmp_path)
        _, warm, _ = run(["dormant", "--p", "13", "--r", "2", "--g", "3"], tmp_path)
        cold_payload, warm_payload = json.loads(cold), json.loads(warm)
        assert cold_payload["cache_hit"] is False
        assert warm_payload["cache_hit"] is True
        assert stable_section(cold_payload) == stable_section(warm_payload)

    def test_repeat_invocations_byte_identical(self, tmp_path):
        run(["vi", "--n", "5", "--d", "3", "--r", "2", "--g", "2"], tmp_path)
        _, first, _ = run(["vi", "--n", "5", "--d", "3", "--r", "2", "--g", "2"], tmp_path)
        _, second, _ = run(["vi", "--n", "5", "--d", "3", "--r", "2", "--g", "2"], tmp_path)
        assert first == second

    def test_float_backend_shares_exact_values(self, tmp_path):
        _, exact_out, _ = run(["dormant", "--p", "7", "--r", "2", "--g", "2"], tmp_path)
        _, float_out, _ = run(
            ["dormant", "--p", "7", "--r", "2", "--g", "2", "--backend", "float"],
            tmp_path,
        )
        assert json.loads(float_out)["cache_hit"] is True
        assert json.loads(float_out)["value"] == json.loads(exact_out)["value"]

    def test_float_backend_computes_on_cold_cache(self, tmp_path):
        code, out, _ = run(
            ["dormant", "--p", "7", "--r", "2", "--g", "2", "--backend", "float"],
            tmp_path,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value"]["num"] == "14"
        assert "certified_rounding" in payload["reductions"]
