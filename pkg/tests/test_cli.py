"""Command-line behavior: filters, formats, determinism, exit codes."""
import csv
import io
import json

import pytest

from isofib import cli


def run_main(argv):
    return cli.main(argv)


def payload_for(argv):
    args = cli.build_parser().parse_args(argv)
    cfg = cli.config_from_args(args)
    if cfg.command == "catalog":
        return cli.cmd_catalog(cfg)
    if cfg.command == "verify":
        return cli.cmd_verify(cfg)
    return cli.cmd_selfcheck(cfg)


FAST_VERIFY = ["--samples", "10", "--restarts", "1"]


# --- catalog ---------------------------------------------------------------------


def test_catalog_family_e8_bases():
    code, payload = payload_for(["catalog", "--family", "E8"])
    assert code == 0
    bases = {r["base"] for r in payload["records"]}
    assert {"E8/A1E7", "E8/A2E6", "E8/A4A4"} <= bases
    assert all(r["g"] == "E8" for r in payload["records"])


def test_catalog_whole_family_letter():
    code, payload = payload_for(["catalog", "--family", "G"])
    assert code == 0
    assert {r["g"] for r in payload["records"]} == {"G2"}


def test_catalog_rank_zero_empty_success():
    code, payload = payload_for(["catalog", "--family", "A", "--rank-cap", "0"])
    assert code == 0
    assert payload["records"] == [] and payload["cases"] == []


def test_catalog_simple_k_flagged():
    code, payload = payload_for(
        ["catalog", "--class", "nearly-kaehler", "--simple-k"]
    )
    assert code == 0
    flagged = {c["base"] for c in payload["cases"] if c["note"] == "no splitting"}
    assert flagged == {"G2/A2", "E8/A8"}
    text = cli.render(payload, "text")
    assert "G2/A2" in text and "no splitting" in text


def test_catalog_unknown_family_exit_2(capsys):
    assert run_main(["catalog", "--family", "H"]) == 2
    assert "error" in capsys.readouterr().err


def test_catalog_invalid_class_exit_2(capsys):
    assert run_main(["catalog", "--class", "not-a-class"]) == 2


def test_catalog_golden_passes():
    code, payload = payload_for(["catalog", "--golden"])
    assert code == 0
    assert payload["failures"] == []


def test_catalog_json_provenance():
    code, payload = payload_for(["catalog", "--family", "G", "--seed", "7"])
    out = cli.render(payload, "json")
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["config"]["seed"] == 7
    assert doc["config"]["tolerances"]["coset"] == 1e-8


def test_catalog_csv_round_trips():
    _, payload = payload_for(["catalog", "--family", "G"])
    out = cli.render(payload, "csv")
    lines = out.splitlines()
    assert lines[0].startswith("# config:")
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert len(rows) == len(payload["records"])
    assert {"slug", "base", "euler_characteristic"} <= set(rows[0].keys())


def test_catalog_deterministic_bytes():
    _, a = payload_for(["catalog", "--family", "D"])
    _, b = payload_for(["catalog", "--family", "D"])
    assert cli.render(a, "json") == cli.render(b, "json")


def test_tolerance_override_echoed():
    _, payload = payload_for(["catalog", "--family", "G", "--tol-gap", "0.5"])
    assert payload["config"]["tolerances"]["gap"] == 0.5


# --- verify -----------------------------------------------------------------------


def test_verify_su3_passes():
    code, payload = payload_for(["verify", "su3-hopf", "--seed", "42", *FAST_VERIFY])
    assert code == 0
    assert payload["failures"] == []
    names = {c["name"] for c in payload["checks"]}
    assert {
        "natural-reductivity",
        "right-length-constant",
        "left-length-nonconstant",
        "displacement-central-constant",
        "displacement-noncentral-certified",
        "fixed-fiber-witness",
    } <= names


def test_verify_so6_passes_with_certificates():
    code, payload = payload_for(["verify", "so6-stiefel", "--seed", "42", *FAST_VERIFY])
    assert code == 0
    names = {c["name"] for c in payload["checks"]}
    assert "reversal-certificates" in names


def test_verify_catalog_only_exit_2(capsys):
    assert run_main(["verify", "e8-a4a4"]) == 2
    assert "no concrete model" in capsys.readouterr().err


def test_verify_unknown_case_exit_2(capsys):
    assert run_main(["verify", "definitely-not-a-case"]) == 2


def test_verify_deterministic_bytes():
    _, a = payload_for(["verify", "su3-hopf", "--seed", "3", *FAST_VERIFY])
    _, b = payload_for(["verify", "su3-hopf", "--seed", "3", *FAST_VERIFY])
    assert cli.render(a, "json") == cli.render(b, "json")


def test_verify_csv_checks():
    _, payload = payload_for(["verify", "su3-hopf", *FAST_VERIFY])
    out = cli.render(payload, "csv")
    rows = list(csv.DictReader(io.StringIO("\n".join(out.splitlines()[1:]))))
    assert {"name", "claim", "passed", "detail"} == set(rows[0].keys())


# --- selfcheck ---------------------------------------------------------------------


def test_selfcheck_passes():
    code, payload = payload_for(["selfcheck", "--rank-cap", "2"])
    assert code == 0
    assert payload["failures"] == []


def test_selfcheck_detects_corrupted_golden(monkeypatch):
    real = cli.load_golden

    def corrupted(name):
        data = real(name)
        if name == "hermitian":
            data = json.loads(json.dumps(data))
            key = next(k for k in data if not k.startswith("_"))
            data[key]["euler_characteristic"] = -1
        return data

    monkeypatch.setattr(cli, "load_golden", corrupted)
    code, payload = payload_for(["selfcheck", "--rank-cap", "2"])
    assert code == 1
    claims = {f["claim"] for f in payload["failures"]}
    assert "enumeration-reproduces-checked-in-lists" in claims


def test_out_writes_file(tmp_path):
    out = tmp_path / "cat.json"
    code = run_main(
        ["catalog", "--family", "G", "--format", "json", "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["command"] == "catalog"


def test_failure_lines_name_claims():
    # a forced-failure run: zero tolerance makes the reductivity check fail
    code, payload = payload_for(
        ["verify", "su3-hopf", *FAST_VERIFY, "--tol-structural", "0"]
    )
    assert code == 1
    assert payload["failures"]
    for f in payload["failures"]:
        assert f["claim"]
    text = cli.render(payload, "text")
    assert "contradicts" in text
