import json
import subprocess
import sys
from pathlib import Path

import pytest

from hpcolor.cli import main
from hpcolor.model import BLUE, RED, Instance, coloring_from_json


def run_cli(*argv):
    return main(list(argv))


@pytest.fixture
def i3_file(tmp_path, i3):
    path = tmp_path / "i3.json"
    path.write_text(i3.to_json())
    return path


@pytest.fixture
def tri2_file(tmp_path, i_tri2):
    path = tmp_path / "tri2.json"
    path.write_text(i_tri2.to_json())
    return path


def test_color_roundtrip(tmp_path, i3_file, i3, capsys):
    out = tmp_path / "colors.json"
    assert run_cli("color", str(i3_file), "--out", str(out)) == 0
    colors = coloring_from_json(out.read_text())
    assert len(colors) == 3 and len(set(colors)) == 2


def test_color_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run_cli("color", str(bad)) == 3
    assert "error" in capsys.readouterr().err


def test_color_rejects_threshold_flag(i3_file):
    assert run_cli("color", str(i3_file), "--threshold", "4") == 3


def test_verify_ok_and_violation(tmp_path, i3_file, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"colors": [BLUE, RED, RED]}))
    assert run_cli("verify", str(i3_file), str(good)) == 0
    assert "Ok" in capsys.readouterr().out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colors": [BLUE, BLUE, BLUE]}))
    assert run_cli("verify", str(i3_file), str(bad)) == 2
    out = capsys.readouterr().out
    data = json.loads(out)
    assert data["covering"] == [0, 1, 2]


def test_verify_threshold_2_tri2(tmp_path, tri2_file, capsys):
    any_colors = tmp_path / "c.json"
    for colors in ([BLUE, BLUE, RED], [RED, BLUE, RED]):
        any_colors.write_text(json.dumps({"colors": colors}))
        assert run_cli("verify", str(tri2_file), str(any_colors), "--threshold", "2") == 2


def test_verify_shape_errors(tmp_path, i3_file):
    short = tmp_path / "short.json"
    short.write_text(json.dumps({"colors": [BLUE]}))
    assert run_cli("verify", str(i3_file), str(short)) == 3


def test_oracle_exit_codes(tmp_path, i3_file, tri2_file, capsys):
    assert run_cli("oracle", str(i3_file)) == 0
    assert coloring_from_json(capsys.readouterr().out) == [BLUE, BLUE, RED]
    assert run_cli("oracle", str(tri2_file), "--threshold", "2") == 4
    capsys.readouterr()
    assert run_cli("oracle", str(tri2_file), "--threshold", "3") == 0


def test_oracle_all_counts(tmp_path, i3_file, capsys):
    assert run_cli("oracle", str(i3_file), "--all") == 0
    out = capsys.readouterr().out
    assert out.count('"colors"') == 6


def test_oracle_oversize(tmp_path):
    inst = Instance.from_json_dict(
        {"halfplanes": [{"a": i, "b": 0, "side": "upper"} for i in range(21)]}
    )
    big = tmp_path / "big.json"
    big.write_text(inst.to_json())
    assert run_cli("oracle", str(big)) == 3


def test_gen_modes(tmp_path):
    from hpcolor.engine import coverage
    from hpcolor.model import dualize, validate

    covered = tmp_path / "cov.json"
    assert run_cli("gen", "--n", "3", "--mode", "covered", "--seed", "1", "--out", str(covered)) == 0
    inst = Instance.from_json(covered.read_text())
    assert coverage(dualize(inst)).kind == "covered"

    degen = tmp_path / "deg.json"
    assert run_cli("gen", "--n", "8", "--mode", "degenerate", "--seed", "2", "--out", str(degen)) == 0
    assert not validate(Instance.from_json(degen.read_text())).ok


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        assert run_cli("gen", "--n", "6", "--mode", "random", "--seed", "9", "--out", str(target)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_render_i3(tmp_path, i3_file, capsys):
    out = tmp_path / "scene.svg"
    colors = tmp_path / "colors.json"
    colors.write_text(json.dumps({"colors": [BLUE, RED, RED]}))
    assert (
        run_cli(
            "render", str(i3_file), "--coloring", str(colors),
            "--window=-5,-5,5,5", "--out", str(out),
        )
        == 0
    )
    svg = out.read_text()
    assert svg.count("<line ") == 3
    assert svg.count("<polygon ") == 1  # single depth-3 cell
    # neutral strokes without a coloring
    assert run_cli("render", str(i3_file), "--window=-5,-5,5,5") == 0
    neutral = capsys.readouterr().out
    assert "#444444" in neutral


def test_render_empty_instance(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"halfplanes": []}))
    assert run_cli("render", str(empty)) == 0
    assert "<svg" in capsys.readouterr().out


def test_render_bad_window(tmp_path, i3_file):
    assert run_cli("render", str(i3_file), "--window=5,5,5,5") == 3


def test_render_deterministic(tmp_path, i3_file, capsys):
    outputs = set()
    for _ in range(2):
        assert run_cli("render", str(i3_file), "--window=-5,-5,5,5") == 0
        outputs.add(capsys.readouterr().out)
    assert len(outputs) == 1


def test_bench_csv(tmp_path, capsys):
    csv = tmp_path / "bench.csv"
    assert run_cli("bench", "--sizes", "64,128", "--seed", "3", "--csv", str(csv)) == 0
    rows = csv.read_text().strip().splitlines()
    assert rows[0] == "n,seconds,case_path"
    assert len(rows) == 3
    assert rows[1].startswith("64,") and rows[2].startswith("128,")


def test_bench_rejects_unsorted():
    assert run_cli("bench", "--sizes", "128,64") == 3


def test_bench_case_path_deterministic(tmp_path):
    paths = []
    for name in ("x.csv", "y.csv"):
        csv = tmp_path / name
        assert run_cli("bench", "--sizes", "64", "--seed", "5", "--csv", str(csv)) == 0
        paths.append(csv.read_text().splitlines()[1].split(",", 2)[2])
    assert paths[0] == paths[1]


def test_color_determinism_bytes(tmp_path, i3_file):
    outs = []
    for name in ("c1.json", "c2.json"):
        out = tmp_path / name
        assert run_cli("color", str(i3_file), "--out", str(out)) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_entry_point_subprocess(tmp_path, i3_file):
    proc = subprocess.run(
        [sys.executable, "-m", "hpcolor.cli", "color", str(i3_file)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert '"colors"' in proc.stdout


def test_no_verify_flag(i3_file, capsys):
    assert run_cli("color", str(i3_file), "--no-verify") == 0
    capsys.readouterr()
