import json

import pytest

from cssgauge.cli import main


def run(args):
    return main(args)


def test_build_gcc(tmp_path):
    out = tmp_path / "o"
    assert run(["build", "--code", "gcc", "--L", "2", "--out", str(out)]) == 0
    data = json.loads((out / "gcc.json").read_text())
    assert data["n"] == 96
    assert data["parameters"]["k"] == 0
    assert (out / "gcc.dot").exists()


def test_build_bacon_shor_metadata(tmp_path):
    out = tmp_path / "o"
    assert run(["build", "--code", "bacon-shor", "--L", "3", "--out", str(out)]) == 0
    data = json.loads((out / "bacon-shor.json").read_text())
    assert data["parameters"]["k"] == 1


def test_build_invalid_length(tmp_path):
    assert run(["build", "--code", "gcc", "--L", "3", "--out", str(tmp_path)]) == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["build", "--code", "nonsense", "--L", "2"])
    assert exc.value.code == 2


def test_ungauge_gcc_z(tmp_path):
    out = tmp_path / "o"
    assert run(["ungauge", "--code", "gcc", "--hamiltonian", "Z", "--L", "2",
                "--pairs", "20", "--out", str(out)]) == 0
    report = json.loads((out / "ungauge-gcc.json").read_text())
    assert report["components"]["count"] == 6
    assert report["dim_check"] is True
    assert report["annihilated_generators"]["all_identity"] is True


def test_ungauge_gcc_y(tmp_path):
    out = tmp_path / "o"
    assert run(["ungauge", "--code", "gcc", "--hamiltonian", "Y", "--L", "2",
                "--pairs", "10", "--out", str(out)]) == 0
    report = json.loads((out / "ungauge-gcc.json").read_text())
    assert report["components"]["count"] == 3


def test_ungauge_color_partial(tmp_path):
    out = tmp_path / "o"
    assert run(["ungauge", "--code", "color2d", "--partial", "c", "--L", "3",
                "--pairs", "10", "--out", str(out)]) == 0
    report = json.loads((out / "ungauge-color2d-partial.json").read_text())
    assert report["components"]["count"] == 2


def test_gauge_xu_moore(tmp_path):
    out = tmp_path / "o"
    assert run(["gauge", "--code", "xu-moore", "--L", "3", "--full",
                "--out", str(out)]) == 0
    report = json.loads((out / "gauge-xu-moore.json").read_text())
    assert report["partial_gauge_matches_bacon_shor"] is True
    assert report["full_gauge"]["support_multiset_match"] is True


def test_spt_toric(tmp_path):
    out = tmp_path / "o"
    assert run(["spt", "--code", "toric2d", "--L", "4", "--slab", "1:3",
                "--out", str(out)]) == 0
    report = json.loads((out / "spt-toric2d.json").read_text())
    assert report["wall_terms"] == 16
    assert report["disentangler"] is not None
    assert report["wall_commutes"] is True


def test_spt_bad_slab(tmp_path):
    assert run(["spt", "--code", "toric2d", "--L", "4", "--slab", "oops",
                "--out", str(tmp_path)]) == 2


def test_export_matrices(tmp_path):
    out = tmp_path / "o"
    assert run(["export", "--code", "toric2d", "--L", "3", "--what", "matrices",
                "--out", str(out)]) == 0
    dz = json.loads((out / "toric2d-dz.json").read_text())
    assert dz["rows"] == 18 and dz["cols"] == 9
    assert run(["export", "--code", "toric2d", "--L", "3", "--what", "lattice",
                "--out", str(out)]) == 0
    assert (out / "toric2d-lattice.json").exists()


def test_verify_fast(tmp_path):
    out = tmp_path / "o"
    assert run(["verify", "--all", "--L", "2", "--pairs", "25", "--cases", "25",
                "--out", str(out)]) == 0
    results = json.loads((out / "verify.json").read_text())
    assert len(results) == 13
    assert all(r["passed"] for r in results)
