import json

import numpy as np
import pytest

from bellset.cli import (
    EXIT_INPUT,
    EXIT_NUMERIC,
    EXIT_OK,
    InputError,
    main,
    parse_state_descriptor,
)
from bellset.states import ggz


def test_parse_ggz():
    s = parse_state_descriptor("ggz:3:0.7071067811865476")
    assert np.allclose(s.amplitudes, ggz(3, 1 / np.sqrt(2)).amplitudes)


def test_parse_bisep():
    s = parse_state_descriptor("bisep:2:0.5477225575051661")
    assert s.n == 3
    assert s.amplitudes[0] == pytest.approx(np.sqrt(0.3))


def test_parse_canon():
    sq2 = 1 / np.sqrt(2)
    s = parse_state_descriptor(f"canon:{sq2}:0:0:0:{sq2}:0")
    assert np.allclose(s.amplitudes, ggz(3, sq2).amplitudes)


def test_parse_file(tmp_path):
    path = tmp_path / "state.json"
    path.write_text(ggz(3, 0.6).to_json())
    s = parse_state_descriptor(f"file:{path}")
    assert np.allclose(s.amplitudes, ggz(3, 0.6).amplitudes)


def test_parse_rejects_garbage():
    for bad in ("", "ggz", "ggz:3", "bisep:1:2:3", "nope:1", "ggz:x:0.5"):
        with pytest.raises(InputError):
            parse_state_descriptor(bad)


def test_classify_ghz_exit_ok(capsys):
    code = main(["classify", "ggz:3:0.7071067811865476", "--restarts", "6"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["label"].startswith("genuine")
    assert doc["profile"]["ineq1"] == pytest.approx(2 * np.sqrt(2), abs=1e-7)


def test_classify_bisep_exit_ok(capsys):
    code = main(["classify", "bisep:3:0.7071067811865476", "--restarts", "6"])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert doc["label"] == "biseparable"
    assert doc["lone"] == 3


def test_classify_separable(capsys):
    code = main(["classify", "ggz:3:1.0", "--restarts", "6"])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert doc["label"] == "separable"


def test_bad_alpha_exit_input(capsys):
    assert main(["classify", "ggz:3:1.5"]) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_unnormalized_file_exit_numeric(tmp_path, capsys):
    doc = {"n": 2, "amplitudes": [[1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["classify", f"file:{path}"]) == EXIT_NUMERIC


def test_missing_subcommand_exit_input(capsys):
    assert main([]) == EXIT_INPUT
    assert main(["classify"]) == EXIT_INPUT


def test_config_file_merging(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("points = 5\nseed = 9\n# a comment\nout = {}\n".format(tmp_path / "r"))
    code = main(["sweep", "--config", str(conf)])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert doc["points"] == 5
    assert (tmp_path / "r" / "sweep.csv").exists()


def test_config_unknown_key_exit_input(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("bogus = 3\n")
    assert main(["sweep", "--config", str(conf)]) == EXIT_INPUT
    assert "bogus" in capsys.readouterr().err


def test_flags_override_config(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("points = 5\n")
    code = main(["sweep", "--config", str(conf), "--points", "3", "--out", str(tmp_path / "o")])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK and doc["points"] == 3


def test_sweep_reruns_byte_identical(tmp_path, capsys):
    for d in ("a", "b"):
        assert main(["sweep", "--points", "7", "--out", str(tmp_path / d)]) == EXIT_OK
    capsys.readouterr()
    a = (tmp_path / "a" / "sweep.csv").read_bytes()
    b = (tmp_path / "b" / "sweep.csv").read_bytes()
    assert a == b


def test_campaign_small(tmp_path, capsys):
    code = main(
        [
            "campaign",
            "--states",
            "8",
            "--class-states",
            "4",
            "--out",
            str(tmp_path),
        ]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert doc["total_final_survivors"] == 0
    assert set(doc["classes"]) == {
        "all_free",
        "zero_1",
        "zero_2",
        "zero_3",
        "zero_4",
        "zero_12",
        "zero_13",
        "zero_14",
        "zero_23",
        "zero_123",
    }
    assert (tmp_path / "all_free" / "manifest.json").exists()


def test_nqubit_command(tmp_path, capsys):
    code = main(["nqubit", "--n", "4", "--alphas", "0.5,0.7071067811865476", "--out", str(tmp_path)])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert doc["n"] == 4 and doc["rows"] == 2
    assert doc["max_closed_form_gap"] <= 1e-4


def test_bound_check(capsys):
    code = main(["bound-check", "--samples", "20"])
    doc = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert doc["max_square_identity_deviation"] < 1e-10
    assert doc["max_spectral_radius"] <= 2 * np.sqrt(2) + 1e-9
