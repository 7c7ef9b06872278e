import csv
import io
import json

import pytest

from ssbath.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_correlate_q1_ratio_is_one(capsys):
    code, out, _ = _run(capsys, "correlate", "--q", "1", "--n-points", "11", "--tau-max", "5")
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 11
    assert list(rows[0]) == ["tau", "re_cq", "im_cq", "re_ceq", "im_ceq", "re_ratio", "im_ratio"]
    assert all(float(r["re_ratio"]) == 1.0 and float(r["im_ratio"]) == 1.0 for r in rows)


def test_correlate_outside_validity_exits_2(capsys):
    code, out, err = _run(capsys, "correlate", "--q", "0.6", "--beta-tilde", "1", "--n-points", "3")
    assert code == 2
    rows = _rows(out)
    assert len(rows) == 3
    assert rows[0]["re_cq"] == "" and rows[0]["re_ceq"] != ""
    assert "validity" in err


def test_su_plane_columns(capsys):
    code, out, _ = _run(capsys, "su-plane", "--q", "0.9", "--n", "25")
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 25
    assert {r["physical"] for r in rows} <= {"true", "false"}
    for r in rows:
        assert (r["t_physical"] == "") == (r["physical"] == "false")


def test_temp_map_identity_at_q1(capsys):
    code, out, _ = _run(capsys, "temp-map", "--q-list", "1.0", "--n", "9")
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 9
    assert all(r["t_tilde"] == r["t_physical"] for r in rows)


def test_stark_single_sign_change(capsys):
    code, out, _ = _run(capsys, "stark", "--n", "40")
    assert code == 0
    f = [float(r["f"]) for r in _rows(out)]
    changes = sum(1 for a, b in zip(f, f[1:]) if a * b < 0)
    assert changes == 1 and f[0] < 0


def test_qme_json(capsys):
    code, out, _ = _run(capsys, "qme", "--t-max", "1", "--dt", "0.01", "--stride", "10", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 11
    assert data[0]["rho_ee"] == 1.0
    assert abs(data[-1]["rho_ee"] + data[-1]["rho_gg"] - 1) < 1e-14


def test_output_is_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["correlate", "--n-points", "7", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert b"\r" not in paths[0].read_bytes()


def test_volume_needs_temperature(capsys):
    code, _, err = _run(capsys, "stark", "--volume", "1.0")
    assert code == 2
    assert "--t-tilde" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["correlate", "--n-points", "1"],
        ["stark", "--format", "xml"],
        ["qme", "--init", "sideways"],
        ["nosuch"],
        ["correlate", "--tau"],
    ],
)
def test_bad_arguments(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code != 0
