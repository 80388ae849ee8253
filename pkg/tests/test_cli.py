import json
import subprocess
import sys

import pytest

from sp2herm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_surface_info(capsys):
    code, out, _ = run(capsys, "surface-info", "--surface", "punctured_torus")
    assert code == 0
    payload = json.loads(out)
    assert payload["euler_characteristic"] == -1
    assert payload["pairings"] == 2


def test_surface_info_from_file(tmp_path, capsys):
    p = tmp_path / "pentagon.json"
    p.write_text(json.dumps({
        "triangles": [["0", "1", "2"], ["0", "2", "3"], ["0", "3", "4"]],
        "pairings": [[[0, 0], [0, 1]], [[1, 1], [2, 1]]],
    }))
    code, out, _ = run(capsys, "surface-info", "--surface", str(p))
    assert code == 0
    assert json.loads(out)["descriptor"]["internal_punctures"] == 2


def test_unknown_surface_is_a_usage_error(capsys):
    code, out, _ = run(capsys, "surface-info", "--surface", "moebius")
    assert code == 2
    assert "error" in json.loads(out)


def test_sample_is_byte_deterministic(capsys):
    args = ("sample", "--surface", "punctured_torus", "--algebra", "H",
            "--n", "2", "--seed", "31")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    payload = json.loads(out1)
    assert set(payload["b"]) == {"d0", "g0", "g1"}


def test_full_pipeline(tmp_path, capsys):
    coords = tmp_path / "coords.json"
    rep = tmp_path / "rep.json"
    back = tmp_path / "back.json"
    code, *_ = run(capsys, "sample", "--surface", "punctured_torus",
                   "--algebra", "C", "--n", "2", "--seed", "3",
                   "--out", str(coords))
    assert code == 0
    code, out, _ = run(capsys, "synthesize", "--surface", "punctured_torus",
                       "--coords", str(coords), "--out", str(rep))
    assert code == 0
    assert out.strip().endswith("PASS")
    code, *_ = run(capsys, "extract", "--surface", "punctured_torus",
                   "--rep", str(rep), "--out", str(back))
    assert code == 0
    sampled = json.loads(coords.read_text())
    extracted = json.loads(back.read_text())
    assert set(sampled["b"]) == set(extracted["b"])


def test_synthesize_payload_is_pipeable(tmp_path, capsys):
    # without --out the payload must own stdout: the verdict may not trail it
    coords = tmp_path / "coords.json"
    run(capsys, "sample", "--surface", "triangle", "--algebra", "R",
        "--n", "1", "--seed", "2", "--out", str(coords))
    code, out, err = run(capsys, "synthesize", "--surface", "triangle",
                         "--coords", str(coords))
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"algebra", "generators", "framing"}
    assert err.strip().endswith("PASS")


def test_roundtrip_command(capsys):
    code, out, err = run(capsys, "roundtrip", "--surface", "sphere_four_punctures",
                         "--algebra", "R", "--n", "2", "--seed", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["roundtrip_deviation"] < 1e-8
    assert "cycle_closure_residual" in payload
    assert err.strip().endswith("PASS")


def test_roundtrip_on_a_surface_without_pairings(capsys):
    code, out, err = run(capsys, "roundtrip", "--surface", "quadrilateral",
                         "--algebra", "R", "--n", "2", "--seed", "7")
    assert code == 0
    assert json.loads(out)["maximal"] is True
    assert err.strip().endswith("PASS")


def test_components_command(capsys):
    code, out, err = run(capsys, "components", "--surface", "punctured_torus",
                         "--algebra", "R", "--n", "2", "--seed", "0",
                         "--samples", "60")
    assert code == 0
    payload = json.loads(out)
    assert payload["expected_components"] == 4
    assert len(payload["observed_labels"]) == 4
    assert "expected components: 4" in err
    assert err.strip().endswith("PASS")


def test_realize_command(capsys):
    for kind in ("R", "C", "H"):
        code, out, err = run(capsys, "realize", "--algebra", kind, "--n", "2",
                             "--seed", "1", "--samples", "5")
        assert code == 0, kind
        assert json.loads(out)["preserved"] == 5
        assert err.strip().endswith("PASS")


def test_corrupt_coords_is_a_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, _ = run(capsys, "synthesize", "--surface", "punctured_torus",
                       "--coords", str(bad))
    assert code == 2
    assert "error" in json.loads(out)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sp2herm.cli", "surface-info",
         "--surface", "triangle"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["triangles"] == 1
