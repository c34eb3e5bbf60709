"""
Test suite for the command line driver

終了コードと出力の形式
テスト対象: src/main.py
"""

import json
import pytest

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from main import EXIT_OK, EXIT_USAGE, create_parser, main


class TestParser:
    """引数パーサー"""

    def test_verify_arguments(self):
        args = create_parser().parse_args(["verify", "weil", "--p", "3,5", "--seed", "4"])
        assert args.command == "verify"
        assert args.suite == "weil"
        assert args.p == "3,5"
        assert args.seed == 4

    def test_unknown_suite(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args(["verify", "bogus"])

    def test_mug_sign(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args(["ggp", "--phi", "[]", "--phiprime", "[]", "--mug", "0"])


class TestMain:
    """サブコマンドの実行"""

    def test_no_command(self):
        assert main([]) == EXIT_USAGE

    def test_constants(self, capsys):
        code = main(["constants", "gamma_TE", "2", "4", "--non-quasi-split"])
        assert code == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["query"] == "gamma_TE"
        assert data["value"] == [-1.0, 0.0]

    def test_ggp(self, capsys):
        code = main(["ggp", "--p", "5", "--phi", "[]",
                     "--phiprime", '[{"character": "E:0::0", "multiplicity": 1}]',
                     "--mug", "+1"])
        assert code == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["kind"] == "distinguished"
        assert data["epsilon_product"] == 1

    def test_ggp_parameter_from_file(self, tmp_path, capsys):
        path = tmp_path / "phiprime.json"
        path.write_text('[{"character": "E:0::0", "multiplicity": 1}]', encoding="utf-8")
        code = main(["ggp", "--phi", "[]", "--phiprime", str(path), "--mug", "-1"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["kind"] == "all_zero"

    def test_ggp_odd_phi(self):
        odd = '[{"character": "E:0::0", "multiplicity": 1}]'
        assert main(["ggp", "--phi", odd, "--phiprime", odd, "--mug", "1"]) == EXIT_USAGE

    def test_invalid_json(self):
        assert main(["ggp", "--phi", "[", "--phiprime", "[]", "--mug", "1"]) == EXIT_USAGE

    def test_invalid_field(self):
        assert main(["constants", "c_pair", "1", "3", "--p", "4"]) == EXIT_USAGE

    def test_eval_transfer(self, capsys):
        code = main(["param", "eval-transfer", "--p", "5", "--xi-plus", "[]", "--xi-minus", "[]",
                     "--mu-plus", "E:0::0", "--mu-minus", "E:0::0"])
        assert code == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert set(data) == {"phase", "value"}

    def test_param_without_subcommand(self):
        assert main(["param"]) == EXIT_USAGE

    def test_verify_constants(self, tmp_path, capsys):
        output = tmp_path / "reports" / "constants.jsonl"
        code = main(["verify", "constants", "--p", "3", "--ext", "unramified", "--out", str(output)])
        assert code == EXIT_OK
        lines = output.read_text(encoding="utf-8").strip().split("\n")
        summary = json.loads(lines[-1])
        assert summary["summary"] is True
        assert summary["failed"] == 0
        assert all(json.loads(line)["identity_id"].startswith("constants.") for line in lines[:-1])
        assert "passed" in capsys.readouterr().out

    def test_verify_to_stdout(self, capsys):
        code = main(["verify", "constants", "--p", "5", "--ext", "ramified_p"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().split("\n")
        assert json.loads(lines[-1])["suite"] == "constants"

    def test_verify_bad_prime(self):
        assert main(["verify", "weil", "--p", "2"]) == EXIT_USAGE

    def test_verify_missing_config(self, tmp_path):
        assert main(["verify", "weil", "--config", str(tmp_path / "none.cfg")]) == EXIT_USAGE


if __name__ == "__main__":
    pytest.main([__file__])
