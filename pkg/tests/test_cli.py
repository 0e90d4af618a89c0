import json
from pathlib import Path

import pytest

from homotopy_calc import cli

ROOT = Path(__file__).resolve().parent.parent
INPUTS = ROOT / "inputs"
GOLDEN = ROOT / "tests" / "golden"

# (input stem, command, method, expected exit code)
GOLDEN_CASES = [
    ("sl2_modcenter", "pi1", "auto", 0),
    ("sl2_torus", "pi1", "auto", 0),
    ("sl2_torus", "pi2", "auto", 0),
    ("pgl2_point", "pi1", "thm-main", 2),
    ("pgl2_point", "all", "auto", 0),
    ("gm_mod_mu3", "pi1", "auto", 0),
    ("gl2_mod_sl2", "pi1", "auto", 0),
    ("sl3_mod_sl2", "all", "auto", 0),
    ("torus2_mod_diag", "pi1", "both", 0),
    ("so5_point", "pi1", "auto", 0),
    ("zero_to_z", "ext0", "auto", 0),
    ("z_times6_to_z", "ext0", "auto", 0),
]


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("stem,command,method,expected_code", GOLDEN_CASES)
def test_golden_outputs(capsys, stem, command, method, expected_code):
    code, out, _ = run_cli(
        capsys,
        command,
        "--input",
        str(INPUTS / f"{stem}.json"),
        "--json",
        "--stable",
        "--method",
        method,
    )
    assert code == expected_code
    golden = (GOLDEN / f"{stem}.{command}.{method}.json").read_text(encoding="utf-8")
    assert out == golden


@pytest.mark.parametrize("stem,command,method,expected_code", GOLDEN_CASES)
def test_json_output_is_deterministic(capsys, stem, command, method, expected_code):
    args = (
        command,
        "--input",
        str(INPUTS / f"{stem}.json"),
        "--json",
        "--stable",
        "--method",
        method,
    )
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


class TestPrettyOutput:
    def test_group_result(self, capsys):
        code, out, _ = run_cli(capsys, "pi1", "--input", str(INPUTS / "sl2_modcenter.json"))
        assert code == 0 and out.strip() == "Z/2"

    def test_gate_error_named(self, capsys):
        code, out, err = run_cli(
            capsys, "pi1", "--input", str(INPUTS / "pgl2_point.json"), "--method", "thm-main"
        )
        assert code == 2
        assert "PicNonTrivial: Pic(G) = Z/2" in err

    def test_pi2_value(self, capsys):
        code, out, _ = run_cli(capsys, "pi2", "--input", str(INPUTS / "sl2_torus.json"))
        assert code == 0 and out.strip() == "Z"

    def test_ext0_trivial(self, capsys):
        code, out, _ = run_cli(capsys, "ext0", "--input", str(INPUTS / "zero_to_z.json"))
        assert code == 0 and out.strip() == "0"

    def test_catalog_list(self, capsys):
        code, out, _ = run_cli(capsys, "catalog-list")
        assert code == 0 and "Spin" in out


class TestErrorPaths:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "pi1", "--input", str(INPUTS / "does_not_exist.json"))
        assert code == 3

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        code, _, err = run_cli(capsys, "pi1", "--input", str(bad))
        assert code == 3
        assert "line" in err

    def test_invalid_document(self, tmp_path, capsys):
        doc = tmp_path / "incomplete.json"
        doc.write_text(json.dumps({"g": {"catalog": "SL", "n": 2}}), encoding="utf-8")
        code, _, err = run_cli(capsys, "pi1", "--input", str(doc))
        assert code == 3
        assert "embedding" in err

    def test_axiom_violation(self, tmp_path, capsys):
        doc = tmp_path / "badroots.json"
        doc.write_text(
            json.dumps(
                {
                    "g": {"root_datum": {"rank": 1, "roots": [[1], [-1]], "coroots": [[1], [-1]]}},
                    "h": {"catalog": "Torus", "n": 1},
                    "embedding": {"cochar_matrix": [[1]]},
                }
            ),
            encoding="utf-8",
        )
        code, _, err = run_cli(capsys, "pi1", "--input", str(doc))
        assert code == 3


class TestBatchMode:
    def test_directory_processing(self, tmp_path, capsys):
        for stem in ("sl2_modcenter", "sl2_torus"):
            (tmp_path / f"{stem}.json").write_text(
                (INPUTS / f"{stem}.json").read_text(encoding="utf-8"), encoding="utf-8"
            )
        code, out, _ = run_cli(capsys, "pi1", "--input-dir", str(tmp_path), "--json", "--stable")
        assert code == 0
        docs = out.strip().split("\n}\n")
        assert len(docs) == 2
        assert '"file": "sl2_modcenter.json"' in out

    def test_worst_exit_code_wins(self, tmp_path, capsys):
        (tmp_path / "good.json").write_text(
            (INPUTS / "sl2_modcenter.json").read_text(encoding="utf-8"), encoding="utf-8"
        )
        (tmp_path / "gated.json").write_text(
            (INPUTS / "pgl2_point.json").read_text(encoding="utf-8"), encoding="utf-8"
        )
        code, _, _ = run_cli(
            capsys, "pi1", "--input-dir", str(tmp_path), "--method", "thm-main", "--json", "--stable"
        )
        assert code == 2


def test_timing_included_without_stable(capsys):
    code, out, _ = run_cli(
        capsys, "pi1", "--input", str(INPUTS / "sl2_modcenter.json"), "--json"
    )
    assert code == 0
    assert "timing_ms" in out


def test_oracle_flag_on_ext0(capsys):
    code, out, _ = run_cli(
        capsys,
        "ext0",
        "--input",
        str(INPUTS / "z_times6_to_z.json"),
        "--json",
        "--stable",
        "--oracle",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["oracle"]["agree"] is True
