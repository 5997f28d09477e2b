from __future__ import annotations

import json

import pytest

from covolcert.cli import CliConfig, main


def test_tables(capsys):
    assert main(["tables", "A6"]) == 0
    out = capsys.readouterr().out
    assert "1741.42" in out and "NO" not in out


def test_tables_missing_snapshot(capsys, monkeypatch):
    monkeypatch.delenv("COVOL_SNAPSHOT", raising=False)
    assert main(["tables", "A7"]) == 3
    assert "MissingSnapshot" in capsys.readouterr().err


def test_oracle(capsys):
    assert main(["oracle", "2,1", "--q", "2"]) == 0
    assert capsys.readouterr().out.strip() == "7 = 7 (formula = brute force)"
    assert main(["oracle", "1,1,1,1", "--q", "5"]) == 2


def test_eliminate(capsys):
    assert main(["eliminate", "--m", "5", "--n", "4", "--snapshot", "reference"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[-1].startswith("DataDependent-Verified") and "case/outer/m5/n4" in out[-1]


def test_certify_writes_certificate(tmp_path, monkeypatch):
    monkeypatch.setenv("COVOL_SNAPSHOT", "reference")
    out = tmp_path / "cert.jsonl"
    assert main(["certify", "--format", "step-records", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert json.loads(lines[0])["format"] == "covolcert-certificate"
    assert json.loads(lines[-1])["concluded"] is True


def test_certify_without_snapshot_is_data_missing(monkeypatch, capsys):
    monkeypatch.delenv("COVOL_SNAPSHOT", raising=False)
    assert main(["certify", "--format", "csv"]) == 3


def test_precision_cap_validation(capsys):
    assert main(["lemmas", "--precision-cap", "32"]) == 2
    with pytest.raises(ValueError):
        CliConfig(precision_cap=32)
