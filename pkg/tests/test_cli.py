"""CLI contract: subcommands, JSON schema, digests, exit codes."""

import json
from importlib.resources import files

import jsonschema
import pytest

from invperm import cli

SCHEMA = json.loads((files("invperm") / "schemas/report.schema.json").read_text())


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out else None
    return code, doc, captured.err


def test_field_info(capsys):
    code, doc, err = run_cli(capsys, "field-info", "--field", "5")
    assert code == 0
    jsonschema.validate(doc, SCHEMA)
    assert doc["result"]["spec"] == "5:0x25"
    assert "GF(2^5)" in err


def test_field_info_explicit_modulus(capsys):
    code, doc, _ = run_cli(capsys, "field-info", "--field", "5:0x29")
    assert code == 0
    assert doc["result"]["modulus"] == "0x29"


def test_kloosterman_census(capsys, tmp_path):
    csv_path = tmp_path / "sums.csv"
    code, doc, _ = run_cli(
        capsys, "kloosterman", "census", "--field", "5", "--dump-sums",
        "--csv", str(csv_path),
    )
    assert code == 0
    jsonschema.validate(doc, SCHEMA)
    assert doc["result"]["zero_count"] >= 1
    rows = csv_path.read_text().strip().splitlines()
    assert rows[0] == "a_hex,K,tr,Q"
    assert len(rows) == 33
    # zero rows in the census actually have K = 0 in the dump
    dumped = {r.split(",")[0]: int(r.split(",")[1]) for r in rows[1:]}
    for z in doc["result"]["zeros"]:
        assert dumped[z] == 0


@pytest.mark.parametrize("claim", ["theorem3", "lemma2", "lemma4", "prop3", "theorem8"])
def test_verify_claims_exit_zero(capsys, claim):
    n = "5" if claim != "theorem3" else "6"
    code, doc, err = run_cli(capsys, "verify", claim, "--field", n)
    assert code == 0
    jsonschema.validate(doc, SCHEMA)
    assert doc["result"]["ok"] is True
    assert "ok" in err


def test_verify_proposition2_with_samples(capsys):
    code, doc, _ = run_cli(
        capsys, "verify", "proposition2", "--field", "5", "--samples", "2000"
    )
    assert code == 0
    assert doc["result"]["cases_checked"] == 2000


def test_verify_corrupted_oracle_exits_two(capsys, monkeypatch):
    # force a violation through a corrupted oracle: the exit-code
    # contract must flag it loudly (test builds only)
    import invperm.verify as v

    orig = v.kloosterman_all

    def corrupt(ctx):
        ks = orig(ctx).copy()
        ks[3] += 8  # break the mod-16 class of one element
        return ks

    monkeypatch.setattr(v, "kloosterman_all", corrupt)
    code, doc, err = run_cli(capsys, "verify", "theorem3", "--field", "6")
    assert code == 2
    assert doc["result"]["ok"] is False
    assert doc["result"]["violations"]
    assert "VIOLATED" in err


def test_search_full_n3(capsys, tmp_path):
    csv_path = tmp_path / "wit.csv"
    code, doc, _ = run_cli(
        capsys, "search", "full", "--field", "3", "--csv", str(csv_path)
    )
    assert code == 0
    jsonschema.validate(doc, SCHEMA)
    assert doc["result"]["witness_count"] == 4704
    assert doc["result"]["expected_witnesses"] is True
    assert len(csv_path.read_text().strip().splitlines()) == 4705


def test_search_identity_l1_n4(capsys):
    code, doc, _ = run_cli(capsys, "search", "identity-l1", "--field", "4")
    assert code == 0
    jsonschema.validate(doc, SCHEMA)
    assert doc["result"]["witness_count"] == 5


def test_search_workers_flag_same_digest(capsys):
    _, doc1, _ = run_cli(capsys, "search", "identity-l1", "--field", "4")
    _, doc2, _ = run_cli(
        capsys, "search", "identity-l1", "--field", "4", "--workers", "2"
    )
    assert doc1["manifest"]["digest"] == doc2["manifest"]["digest"]


def test_digest_is_stable_across_runs(capsys):
    _, doc1, _ = run_cli(capsys, "verify", "prop3", "--field", "4")
    _, doc2, _ = run_cli(capsys, "verify", "prop3", "--field", "4")
    assert doc1["manifest"]["digest"] == doc2["manifest"]["digest"]


def test_invariants(capsys):
    code, doc, _ = run_cli(capsys, "invariants", "--field", "4")
    assert code == 0
    jsonschema.validate(doc, SCHEMA)
    assert doc["result"]["ok"] is True


def test_check_pair_inverse_map(capsys):
    # L1 = x, L2 = 0: the map is the field inverse itself, a permutation
    code, doc, _ = run_cli(
        capsys, "check-pair", "--field", "4", "--l1", "1,0,0,0", "--l2", "0,0,0,0"
    )
    assert code == 0
    jsonschema.validate(doc, SCHEMA)
    assert doc["result"]["is_permutation"] is True
    assert doc["result"]["kloosterman_criterion"] is True


def test_check_pair_zero_pair(capsys):
    code, doc, _ = run_cli(
        capsys, "check-pair", "--field", "4", "--l1", "0,0,0,0", "--l2", "0,0,0,0"
    )
    assert code == 0
    assert doc["result"]["is_permutation"] is False


def test_check_pair_any_n5_pair_is_not_permutation(capsys):
    code, doc, _ = run_cli(
        capsys, "check-pair", "--field", "5", "--l1", "3,1,0,4,2", "--l2", "7,0,5,0,1"
    )
    assert code == 0
    assert doc["result"]["is_permutation"] is False


def test_usage_errors_exit_one(capsys):
    assert cli.run(["search", "full"]) == 1  # missing --field
    capsys.readouterr()
    assert cli.run(["verify", "nosuchclaim", "--field", "4"]) == 1
    capsys.readouterr()
    code, _, err = run_cli(capsys, "check-pair", "--field", "4", "--l1", "zz", "--l2", "0")
    assert code == 1 and "usage error" in err
    # out-of-range field size is an input error, not a crash
    assert cli.run(["field-info", "--field", "40"]) == 1
    capsys.readouterr()


def test_search_rangeerror_message(capsys):
    code, _, err = run_cli(capsys, "search", "full", "--field", "5")
    assert code == 1
    assert "normalized" in err


def test_kloosterman_modulus_flag(capsys):
    # the census interface accepts the modulus as a separate flag too
    code, doc, _ = run_cli(
        capsys, "kloosterman", "census", "--field", "5", "--modulus", "0x29"
    )
    assert code == 0
    assert doc["result"]["modulus"] == "0x29"
    assert doc["result"]["zero_count"] >= 1


def test_search_progress_stream(capsys):
    code, doc, err = run_cli(capsys, "search", "full", "--field", "3", "--progress")
    assert code == 0
    progress_lines = [l for l in err.splitlines() if l.startswith("{")]
    assert progress_lines
    assert json.loads(progress_lines[0])["partition"] == 1
