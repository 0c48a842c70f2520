from __future__ import annotations

import hashlib
import json

import pytest

from planeshell import certify as cert_mod
from planeshell.canonical import canonical_json, digest
from planeshell.certify import (
    EXPECTED,
    MANIFEST_NAME,
    SCHEMA_VERSION,
    Expected,
    build_certificate,
    certify,
    payload_digest,
    read_manifest,
    table1,
)
from planeshell.cli import main
from planeshell.orders import UnknownOrderError


def _independent_digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "meta"}
    text = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def test_canonical_json_rules():
    assert canonical_json({"b": 1, "a": [True, None, "φ"]}) == '{"a":[true,null,"φ"],"b":1}'.encode()
    with pytest.raises(TypeError):
        canonical_json({"x": 0.5})
    with pytest.raises(TypeError):
        canonical_json({1: 2})


def test_hurwitz_certificate():
    c = build_certificate("hurwitz")
    assert c["pass"] and c["schema_version"] == SCHEMA_VERSION
    assert c["shell"]["cardinality"] == 24
    assert c["plane"]["doubling_label"] == "D4⊕D4"
    assert c["fibration"]["fiber_size"] == 24
    assert c["expected"]["diff"] == {}
    canonical_json(c)  # no floats anywhere


def test_icosian_certificate(tmp_path):
    c, run = certify("icosian", tmp_path)
    assert c["pass"]
    assert c["shell"]["cardinality"] == 120
    assert c["plane"]["doubling_label"] == "H4⊕H4"
    assert c["plane"]["balanced_cardinality"] == 14400
    doc = json.loads((run / "icosian.cert.json").read_bytes())
    assert doc["meta"]["digest"] == _independent_digest(doc) == payload_digest(doc)
    assert read_manifest(run) == {"icosian.cert.json": doc["meta"]["digest"]}


def test_unknown_order():
    with pytest.raises(UnknownOrderError):
        build_certificate("unknown")


def test_expected_mismatch_fails(monkeypatch):
    monkeypatch.setitem(EXPECTED, "Z", Expected(2, 4, 5, "2A1"))
    c = build_certificate("Z")
    assert not c["pass"]
    assert c["expected"]["diff"] == {"balanced": [5, 4]}


def test_table1_determinism_across_workers(tmp_path):
    s1, _, run1 = table1(tmp_path / "a", workers=1)
    s2, _, run2 = table1(tmp_path / "b", workers=3)
    assert s1["matched"] == s1["total"] == 9 and s1["pass"]
    m1 = (run1 / MANIFEST_NAME).read_bytes()
    m2 = (run2 / MANIFEST_NAME).read_bytes()
    assert m1 == m2
    for name in read_manifest(run1):
        d1 = json.loads((run1 / name).read_bytes())
        d2 = json.loads((run2 / name).read_bytes())
        d1.pop("meta"), d2.pop("meta")
        assert canonical_json(d1) == canonical_json(d2)
    for line in m1.decode().splitlines():
        hexdigest, name = line.split("  ")
        assert _independent_digest(json.loads((run1 / name).read_bytes())) == hexdigest


def test_meta_excluded_from_digest():
    c = build_certificate("Z")
    a = cert_mod.with_meta(c, "t1")
    b = cert_mod.with_meta(c, "t2")
    assert a["meta"]["digest"] == b["meta"]["digest"] == digest(c)
    assert canonical_json(a) != canonical_json(b)


def test_cli_certify_and_exit_codes(tmp_path, capsys):
    assert main(["--out", str(tmp_path), "certify", "gaussian"]) == 0
    assert "pass" in capsys.readouterr().out
    with pytest.raises(SystemExit) as exc:
        main(["certify", "unknown", "--out", str(tmp_path)])
    assert exc.value.code == 2


def test_cli_failure_exit_code(tmp_path, monkeypatch, capsys):
    monkeypatch.setitem(EXPECTED, "Z", Expected(3, 4, 4, "2A1"))
    assert main(["certify", "Z", "--out", str(tmp_path)]) == 1


def test_cli_json_shell(capsys):
    assert main(["--json", "shell", "hurwitz"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["cardinality"] == 24 and len(out["elements"]) == 24
    assert main(["shell", "icosian", "--level", "[2,0]", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["level"] == [2, 0]
    assert main(["shell", "icosian", "--level", "phi"]) == 2


def test_cli_scan_and_fibration(capsys):
    assert main(["scan-obstruction", "--max-m", "200"]) == 0
    out = capsys.readouterr().out
    assert "[5]" in out and "[2, 3, 4]" in out
    assert main(["scan-obstruction", "--max-m", "4"]) == 2
    assert main(["fibration", "cayley_graves", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["loop"]["moufang_triples"] == 4096 and payload["pass"]


def test_cli_table1_with_hybrids(tmp_path, capsys):
    assert main(["table1", "--with-hybrids", "--out", str(tmp_path), "--threads", "2"]) == 0
    out = capsys.readouterr().out
    assert "11/11 rows match" in out
    run = next(tmp_path.iterdir())
    assert "hybrid_2d4.cert.json" in read_manifest(run)
