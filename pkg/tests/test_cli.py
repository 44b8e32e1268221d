import json

import pytest

from genuscenter import catalog, center, fusion
from genuscenter.cli import main
from genuscenter.gluing import parse_cycles


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestGluingCommands:
    def test_classify_punctured_torus(self, capsys):
        code, out = run(capsys, "gluing", "classify", "--sigma", "(1 3)(2 4)")
        assert code == 0
        assert "genus: 1" in out and "punctures: 1" in out

    def test_enum_counts(self, capsys):
        code, out = run(capsys, "gluing", "enum", "--n", "2")
        assert code == 0
        assert "count: 3" in out

    def test_bad_sigma_is_usage_failure(self, capsys):
        code = main(["gluing", "classify", "--sigma", "(1 2)(2 3)"])
        assert code == 1

    def test_json_deterministic(self, capsys):
        _, out1 = run(capsys, "gluing", "enum", "--n", "3", "--json")
        _, out2 = run(capsys, "gluing", "enum", "--n", "3", "--json")
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["count"] == 15


class TestValidate:
    def test_validate_ok(self, capsys):
        code, out = run(capsys, "validate", "--cat", "semion")
        assert code == 0
        assert "pentagon: ok" in out

    def test_validate_file(self, capsys, tmp_path):
        path = tmp_path / "fib.json"
        catalog.save_spec(catalog.builtin("fibonacci"), path)
        code, out = run(capsys, "validate", "--cat", str(path))
        assert code == 0

    def test_catalog_dir_env(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "mycat.json"
        catalog.save_spec(catalog.builtin("rep_z2"), path)
        monkeypatch.setenv("GENUSCENTER_CATALOG_DIR", str(tmp_path))
        code, _ = run(capsys, "validate", "--cat", "mycat.json")
        assert code == 0

    def test_unknown_catalog_errors(self, capsys):
        code = main(["validate", "--cat", "missing"])
        assert code == 1


class TestCenterCommands:
    def test_rank_matches_library(self, capsys):
        code, out = run(
            capsys, "center", "rank", "--cat", "vec_z2", "--sigma", "(1 2)", "--json"
        )
        assert code == 0
        doc = json.loads(out)
        spec = catalog.builtin("vec_z2")
        rank, dims = center.center_rank(spec, parse_cycles("(1 2)"))
        assert doc["rank"] == rank and doc["block_dims"] == dims
        assert doc["surface"] == {"g": 0, "k": 2}
        assert "runtime" not in doc

    def test_rank_deterministic_bytes(self, capsys):
        _, out1 = run(capsys, "center", "rank", "--cat", "rep_z2", "--sigma", "(1 2)", "--json")
        _, out2 = run(capsys, "center", "rank", "--cat", "rep_z2", "--sigma", "(1 2)", "--json")
        assert out1 == out2

    def test_verify_induced(self, capsys):
        code, out = run(
            capsys,
            "center", "verify-induced",
            "--cat", "vec_z3_q", "--sigma", "(1 2)", "--object", "1",
        )
        assert code == 0
        assert "verify: ok" in out

    def test_verify_unknown_object(self, capsys):
        code = main(
            ["center", "verify-induced", "--cat", "vec_z2", "--sigma", "(1 2)",
             "--object", "zz"]
        )
        assert code == 1


class TestAdjointAndCatalog:
    def test_adjoint_check(self, capsys):
        code, out = run(capsys, "adjoint", "check", "--cat", "vec_z2", "--sigma", "(1 2)")
        assert code == 0
        assert "GF=1: True" in out

    def test_catalog_list(self, capsys):
        code, out = run(capsys, "catalog", "list")
        assert code == 0
        for key in catalog.catalog_keys():
            assert key in out

    def test_usage_error_exit_code(self, capsys):
        assert main(["center", "rank", "--cat", "vec_z2"]) == 2
        assert main(["frobnicate"]) == 2
