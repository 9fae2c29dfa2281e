import csv
import io
import json
import re

import pytest

from cyclic_systole.cli import main, parse_genus_range
from cyclic_systole.verifier import MarginRecord, Status


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_genus_range_parsing():
    assert parse_genus_range("4..7") == range(4, 8)
    assert parse_genus_range("5") == range(5, 6)
    assert len(parse_genus_range("9..4")) == 0


@pytest.mark.parametrize("bad", ["4-7", "x", "1..3"])
def test_malformed_genus_is_usage_error(bad, capsys):
    with pytest.raises(SystemExit) as e:
        main(["table", "--genus", bad])
    assert e.value.code == 2


def test_table_text(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0
    for g, v in [(4, "3.41464123"), (7, "3.48969921"), (7, "3.44730852"), (10, "3.48576585")]:
        assert re.search(rf"\b{g}\s+{v}\b", out)
    assert out.count("\n") == 9


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--model", "p2", "--genus", "7..8", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["command"] == "table"
    assert [r["genus"] for r in doc["records"]] == [7, 8]
    assert abs(doc["records"][0]["systole"] - 3.44730852) < 5e-9


def test_verify_json_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "--check", "oh-edge", "--check", "b1c4",
                       "--model", "p1", "--genus", "4..6", "--json", "--deterministic")
    assert code == 0
    doc = json.loads(out)
    recs = [MarginRecord.from_dict(d) for d in doc["records"]]
    assert len(recs) == 3 * 3 + 3 * 2
    assert all(r.status is Status.PASS for r in recs)
    assert "generated" not in doc


def test_verify_csv_round_trip(capsys):
    code, out, _ = run(capsys, "verify", "--check", "x-x3", "--model", "p2",
                       "--genus", "2..8", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    recs = [MarginRecord.from_dict(r) for r in rows]
    assert [r.genus for r in recs] == list(range(2, 9))
    assert recs[0].status is Status.UNASSERTED and recs[0].note
    assert recs[-1].status is Status.PASS


def test_verify_json_matches_csv(capsys):
    args = ["verify", "--check", "vertex-diameter", "--model", "p2star", "--genus", "3..9"]
    _, js, _ = run(capsys, *args, "--json")
    _, cs, _ = run(capsys, *args, "--csv")
    a = [MarginRecord.from_dict(d) for d in json.loads(js)["records"]]
    b = [MarginRecord.from_dict(d) for d in csv.DictReader(io.StringIO(cs))]
    assert a == b


def test_deterministic_output_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["verify", "--all", "--model", "p1", "--genus", "4..12",
                     "--json", "--deterministic", "-o", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_unasserted_range_passes(capsys):
    code, out, _ = run(capsys, "verify", "--check", "oh-edge", "--model", "p2",
                       "--genus", "2..6", "--json")
    doc = json.loads(out)
    assert code == 0
    assert {r["status"] for r in doc["records"]} == {"UNASSERTED"}


def test_verify_failure_exit_code(capsys):
    # a guard band wider than every margin leaves nothing certified
    code, out, _ = run(capsys, "verify", "--check", "nonadj-edges", "--model", "p1",
                       "--genus", "4..5", "--guard-band", "100")
    assert code == 1
    assert "failing record" in out


def test_verify_needs_checks(capsys):
    code, _, err = run(capsys, "verify", "--model", "p1", "--genus", "4")
    assert code == 2 and "--all" in err


def test_unknown_check_and_model(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "--check", "nope"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["table", "--model", "p7"])
    assert e.value.code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# margins\nguard_band = 100\nworkers=1\n")
    code, _, _ = run(capsys, "verify", "--check", "c1c2", "--model", "p1",
                     "--genus", "4", "--config", str(cfg))
    assert code == 1
    # the flag wins over the file
    code, _, _ = run(capsys, "verify", "--check", "c1c2", "--model", "p1",
                     "--genus", "4", "--config", str(cfg), "--guard-band", "1e-9")
    assert code == 0
    cfg.write_text("colour = red\n")
    code, _, err = run(capsys, "table", "--config", str(cfg))
    assert code == 2 and "unknown key" in err
    code, _, _ = run(capsys, "table", "--config", str(tmp_path / "missing.cfg"))
    assert code == 2


def test_genus_cap_from_config(tmp_path, capsys):
    cfg = tmp_path / "cap.cfg"
    cfg.write_text("genus_cap = 10\n")
    code, _, err = run(capsys, "verify", "--all", "--model", "p1", "--genus", "4..20",
                       "--config", str(cfg))
    assert code == 2 and "cap" in err


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--model", "p1", "--genus", "2", "--json",
                       "--deterministic")
    assert code == 0
    rec = json.loads(out)["records"][0]
    assert rec["multiplicity"] == 12 and rec["difference"] < 1e-9
    assert "runtime_s" not in rec


def test_oracle_resource_exit(capsys):
    code, _, err = run(capsys, "oracle", "--model", "p1", "--genus", "4", "--max-elements", "10")
    assert code == 3 and "max-elements" in err


def test_oracle_usage(capsys):
    code, _, _ = run(capsys, "oracle", "--model", "p2star", "--genus", "7")
    assert code == 2
    code, _, _ = run(capsys, "oracle", "--model", "p1", "--genus", "4..5")
    assert code == 2


def test_polygon_figure(tmp_path, capsys):
    out = tmp_path / "poly.svg"
    code, msg, _ = run(capsys, "figure", "--model", "p1", "--genus", "4", "--id", "polygon",
                       "-o", str(out))
    assert code == 0 and str(out) in msg
    svg = out.read_text()
    assert svg.startswith("<svg") or svg.startswith("<?xml")
    assert "</svg>" in svg


def test_ball_figure(tmp_path, capsys):
    out = tmp_path / "ball.svg"
    code, msg, _ = run(capsys, "figure", "--model", "p1", "--genus", "3", "--id", "ball",
                       "-o", str(out))
    assert code == 0 and "ball translates" in msg
    assert out.read_text().count("<circle") >= 2


def test_unknown_figure(capsys):
    with pytest.raises(SystemExit) as e:
        main(["figure", "--model", "p1", "--genus", "4", "--id", "spiral"])
    assert e.value.code == 2
    code, _, _ = run(capsys, "figure", "--model", "p2star", "--genus", "4", "--id", "ball")
    assert code == 2
