from __future__ import annotations

import json

import pytest

from conftest import THETA_EXAMPLE_RG
from ribbonpoly.cli import main
from ribbonpoly.fileformat import parse
from ribbonpoly.packaged import packaged_dual, packaged_isomorphic

THETA_TEXT = ("x^3*x_2*y_0^2 + x^2*y*x_0*y_0^2 + 2*x^2*x_2*y_0"
              " + 3*x*y*x_0*y_0 + y^2*x_0*y_2")


@pytest.fixture
def theta_file(tmp_path):
    f = tmp_path / "theta.rg"
    f.write_text(THETA_EXAMPLE_RG)
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_statesum(theta_file, capsys):
    code, out, _ = run(capsys, "compute", theta_file)
    assert code == 0
    assert out.strip() == THETA_TEXT


def test_compute_all_methods_agree(theta_file, capsys):
    outputs = set()
    for extra in (["--method", "statesum"], ["--method", "delcon"],
                  ["--method", "quasitree", "--order", "g,f,e"]):
        code, out, _ = run(capsys, "compute", theta_file, *extra)
        assert code == 0
        outputs.add(out.strip())
    assert outputs == {THETA_TEXT}


def test_compute_structured(theta_file, capsys):
    code, out, _ = run(capsys, "compute", theta_file, "--method", "delcon",
                       "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "delcon"
    assert doc["polynomial"] == THETA_TEXT
    assert doc["counters"]["delcon_nodes"] == 15
    assert sum(t["coeff"] for t in doc["terms"]) == 8


def test_compute_quasitree_rejects_partial_order(theta_file, capsys):
    code, _, err = run(capsys, "compute", theta_file, "--method", "quasitree",
                       "--order", "e,f")
    assert code == 2
    assert "every edge" in err


def test_validate_ok(theta_file, capsys):
    code, out, _ = run(capsys, "validate", theta_file, "--orders", "3",
                       "--seed", "1")
    assert code == 0
    assert "equal: True  shape-checks: True" in out


def test_quasitrees_listing(theta_file, capsys):
    code, out, _ = run(capsys, "quasitrees", theta_file)
    assert code == 0
    assert sorted(out.split()) == ["e,f,g", "f", "g"]


def test_quasitrees_empty_set_marker(tmp_path, capsys):
    f = tmp_path / "loop.rg"
    f.write_text("edges: e+\nvertex v1: e.1 e.2\n")
    code, out, _ = run(capsys, "quasitrees", str(f))
    assert code == 0
    assert "-" in out.split()


def test_activities_fixture(theta_file, capsys):
    code, out, _ = run(capsys, "activities", theta_file,
                       "--quasitree", "f", "--order", "e,f,g")
    assert code == 0
    assert out.splitlines() == [
        "e: external live orientable",
        "f: internal live orientable",
        "g: external dead orientable",
    ]


def test_specialize_targets(theta_file, capsys):
    code, out, _ = run(capsys, "specialize", theta_file,
                       "--target", "krushkal")
    assert code == 0
    assert out.strip() == "alpha*b + alpha + a + 2*b + 3"
    code, out, _ = run(capsys, "specialize", theta_file,
                       "--target", "classical-tutte")
    assert code == 0
    assert out.strip() == "x*y + y^2"  # loop factor times two parallel edges
    code, out, _ = run(capsys, "specialize", theta_file,
                       "--target", "surface-tutte")
    assert code == 0
    assert "x_1" in out


def test_specialize_surface_rejects_nonorientable(tmp_path, capsys):
    f = tmp_path / "mob.rg"
    f.write_text("edges: e-\nvertex v1: e.1 e.2\n")
    code, _, err = run(capsys, "specialize", str(f),
                       "--target", "surface-tutte")
    assert code == 2
    assert "orientable" in err


def test_dual_round_trip(theta_file, capsys):
    code, out, _ = run(capsys, "dual", theta_file)
    assert code == 0
    assert packaged_isomorphic(parse(out),
                               packaged_dual(parse(THETA_EXAMPLE_RG)))


def test_pdual_full_subset_is_dual(theta_file, capsys):
    code, out, _ = run(capsys, "pdual", theta_file, "--edges", "e,f,g")
    assert code == 0
    dual_graph = packaged_dual(parse(THETA_EXAMPLE_RG)).graph
    from ribbonpoly.ribbon import isomorphic
    assert isomorphic(parse(out).graph, dual_graph)


def test_corpus_to_directory(tmp_path, capsys):
    out_dir = tmp_path / "corpus"
    code, _, _ = run(capsys, "corpus", "--max-edges", "1", "--seed", "4",
                     "--random", "1", "--out", str(out_dir))
    assert code == 0
    files = sorted(out_dir.glob("*.rg"))
    assert len(files) == 8  # 4 iso classes x 2 packagings
    for f in files:
        parse(f.read_text())


def test_corpus_stream_deterministic(capsys):
    _, out1, _ = run(capsys, "corpus", "--max-edges", "1", "--seed", "9")
    _, out2, _ = run(capsys, "corpus", "--max-edges", "1", "--seed", "9")
    assert out1 == out2


def test_parse_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.rg"
    f.write_text("edges: e+\nvertex v1: e.1\n")
    code, _, err = run(capsys, "compute", str(f))
    assert code == 2
    assert err.startswith("error:")


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "compute", "/nonexistent/x.rg")
    assert code == 2
    assert "cannot read" in err


def test_usage_error_exit_code(capsys):
    assert run(capsys, "compute")[0] == 2
    assert run(capsys, "specialize", "x.rg", "--target", "nope")[0] == 2
