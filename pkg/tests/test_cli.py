import json

import pytest

from orderkit.cli import main, parse_basis, parse_poly, UsageError


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestParsing:
    def test_poly(self):
        assert parse_poly("-3,0,1") == [-3, 0, 1]
        with pytest.raises(UsageError):
            parse_poly("a,b")

    def test_basis(self):
        rows = parse_basis("1,0;0,2")
        assert rows[1][1] == 2
        rows = parse_basis("2,0;1,1/2")
        assert str(rows[0][0]) == "1" and str(rows[1][1]) == "1/2"
        with pytest.raises(UsageError):
            parse_basis("1,x")


class TestBoundCommand:
    def test_thm_a_height(self, capsys):
        rc, out, _ = run_cli(capsys, "bound", "--formula", "thm-a-height",
                             "--g", "1", "--nu", "6", "--excluded-primes", "")
        assert rc == 0
        payload = json.loads(out)
        assert payload["bound"]["digit_count"] == 88
        assert payload["bound"]["exact_value"] == str(3 ** 144 * 6 ** 24)

    def test_deterministic_output(self, capsys):
        args = ("bound", "--formula", "es-gl2", "--g", "2",
                "--excluded-primes", "2,3")
        rc1, out1, _ = run_cli(capsys, *args)
        rc2, out2, _ = run_cli(capsys, *args)
        assert rc1 == rc2 == 0
        assert out1 == out2

    def test_infinity_note(self, capsys):
        rc, out, _ = run_cli(capsys, "bound", "--formula", "thm-main-count",
                             "--g", "1")
        assert rc == 0
        payload = json.loads(out)
        assert payload["bound"] is None and "unbounded" in payload["note"]

    def test_level_structure(self, capsys):
        rc, out, _ = run_cli(capsys, "bound", "--formula", "level-structure",
                             "--kind", "principal_n", "--n", "3", "--g", "1")
        assert json.loads(out)["bound"] == 81

    def test_bad_primes_domain_error(self, capsys):
        rc, _, err = run_cli(capsys, "bound", "--formula", "thm-b",
                             "--excluded-primes", "4")
        assert rc == 2
        assert "NotPrime" in err and "bounds" in err


class TestOrderCommands:
    def test_order_info(self, capsys):
        rc, out, _ = run_cli(capsys, "order-info", "--field", "1,0,1",
                             "--order-basis", "1,0;0,2")
        assert rc == 0
        payload = json.loads(out)
        assert payload["conductor"]["norm"] == 4
        assert payload["order"]["disc"] == -16

    def test_negative_leading_coefficient(self, capsys):
        rc, out, _ = run_cli(capsys, "order-info", "--field", "-2,0,1")
        assert rc == 0
        payload = json.loads(out)
        assert payload["units"]["fundamental_unit"] == ["1", "1"]

    def test_class_monoid_eisenstein_suborder(self, capsys):
        rc, out, _ = run_cli(capsys, "class-monoid", "--field", "3,0,1",
                             "--order-basis", "1,0;0,1")
        assert rc == 0
        payload = json.loads(out)
        assert payload["size"] == 2
        assert payload["multiplication_table"] == [[0, 1], [1, 1]]
        assert payload["picard_subset"] == [0]
        assert [c["invertible"] for c in payload["classes"]] == [True, False]

    def test_reducible_field_domain_error(self, capsys):
        rc, _, err = run_cli(capsys, "order-info", "--field", "-4,0,1")
        assert rc == 2
        assert "Reducible" in err

    def test_invalid_order_domain_error(self, capsys):
        rc, _, err = run_cli(capsys, "order-info", "--field", "5,0,1",
                             "--order-basis", "1,0;0,1/3")
        assert rc == 2
        assert "NotClosed" in err

    def test_budget_exit_code(self, capsys):
        # a conductor of index 400 pushes the intermediate-lattice quotient
        # past the enumeration budget: exit 3, not 2
        rc, _, err = run_cli(capsys, "class-monoid", "--field", "1,0,1",
                             "--order-basis", "1,0;0,400")
        assert rc == 3
        assert "IndexTooLarge" in err


class TestGammaCount:
    def test_sqrt_minus5(self, capsys):
        rc, out, _ = run_cli(capsys, "gamma-count", "--gamma-field", "5,0,1",
                             "--target-n", "2")
        assert rc == 0
        payload = json.loads(out)
        assert payload["count"] == 2 and payload["bound"] == 2
        assert len(payload["structures"]) == 2
        ids = {s["ideal_class_id"] for s in payload["structures"]}
        assert ids == {0, 1}
        for s in payload["structures"]:
            m = s["matrices"][1]
            assert m[0][0] + m[1][1] == 0
            assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == 5

    def test_gaussian_into_own_field(self, capsys):
        rc, out, _ = run_cli(capsys, "gamma-count", "--gamma-field", "1,0,1",
                             "--target-n", "1", "--target-field", "1,0,1")
        assert rc == 0
        payload = json.loads(out)
        assert payload["count"] == 2
        assert payload["per_embedding"] == [1, 1]


class TestConfigAndUsage:
    def test_usage_error_exit_1(self, capsys):
        rc, _, err = run_cli(capsys, "bound", "--formula", "no-such")
        assert rc == 1
        assert "usage error" in err

    def test_missing_required(self, capsys):
        rc, _, err = run_cli(capsys, "order-info")
        assert rc == 1

    def test_config_merge(self, capsys, tmp_path):
        cfg = tmp_path / "job.cfg"
        cfg.write_text("formula = thm-a-height\nnu = 6\n")
        rc, out, _ = run_cli(capsys, "bound", "--formula", "thm-a-height",
                             "--config", str(cfg))
        assert rc == 0
        payload = json.loads(out)
        # config supplied nu=6; flag left at default, so config wins
        assert payload["inputs"]["nu"] == 6
        assert payload["config_merged"]["nu"] == "6"

    def test_flags_beat_config(self, capsys, tmp_path):
        cfg = tmp_path / "job.cfg"
        cfg.write_text("nu = 6\n")
        rc, out, _ = run_cli(capsys, "bound", "--formula", "thm-a-height",
                             "--nu", "5", "--config", str(cfg))
        payload = json.loads(out)
        assert payload["inputs"]["nu"] == 5

    def test_unknown_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "job.cfg"
        cfg.write_text("wibble = 3\n")
        rc, _, err = run_cli(capsys, "bound", "--formula", "thm-b",
                             "--config", str(cfg))
        assert rc == 1

    def test_table_format(self, capsys):
        rc, out, _ = run_cli(capsys, "order-info", "--field", "1,0,1",
                             "--format", "table")
        assert rc == 0
        assert "conductor" in out and "{" not in out


class TestVerifySuiteSmall:
    def test_small_corpus_passes(self, capsys):
        rc, out, _ = run_cli(capsys, "verify-suite", "--max-disc", "24",
                             "--max-conductor", "2", "--conjugations", "2")
        assert rc == 0
        assert "suite: PASS" in out

    def test_fault_injection_fails(self, capsys):
        rc, out, _ = run_cli(capsys, "verify-suite", "--max-disc", "24",
                             "--max-conductor", "2", "--conjugations", "1",
                             "--inject-fault")
        assert rc == 2
        assert "FAIL" in out
