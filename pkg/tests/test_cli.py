import io
import json

import pytest

from affine_lyndon.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("AFFINE_LYNDON_CACHE", str(tmp_path / "cache"))


def test_sl_golden_words():
    code, out = run("sl", "--type", "F4", "--order", "0,2,4,1,3", "1,2,3,4,2", "--index", "1")
    assert code == 0 and out.split() == ["(1)", "012334423312"]
    code, out = run("sl", "--type", "A3", "--order", "1,2,3,0", "2,1,1,1")
    assert code == 0 and out.strip() == "10230"


def test_sl_json_schema():
    code, out = run("sl", "--type", "C2", "--order", "0,1,2", "--format", "json", "--degree", "2,2,1")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["degree"] == [2, 2, 1]
    assert doc["words"][0]["compact"] == "01012" and doc["words"][0]["letters"] == "0,1,0,1,2"


def test_chunks_mod_delta():
    code, out = run("chunks", "--type", "F4", "--order", "0,2,4,1,3", "--mod-delta", "0,1,1,2,2", "1")
    assert code == 0 and out.strip() == "[[1, 1], '342314']"
    code, out = run("chunks", "--type", "G2", "--order", "1,2,0", "9,16,24", "--format", "json")
    assert json.loads(out)["chunks"] == [[1, 2], "2", [1, 1], "10", [1, 2], "2", [1, 1], "10", [1, 1], "2"]


@pytest.mark.parametrize("order,s", [("1,2,0", 4), ("1,0,2", 5)])
def test_g2_profile(order, s):
    code, out = run("profile", "--type", "G2", "--order", order, "1,1,3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["increasing"] is False and doc["s"] == s


def test_profile_text_and_y():
    code, out = run("profile", "--type", "G2", "--order", "1,2,0", "0,1,0")
    assert code == 0 and "monotonicity: increasing" in out and "c = 3" in out
    code, out = run("y", "2", "--type", "C2", "--order", "0,1,2")
    assert code == 0 and out.startswith("y_2 = 011")


def test_irr_chains_and_decomp():
    code, out = run("irr-chains", "--type", "D5", "--order", "0,1,2,3,4,5", "--format", "json")
    rows = json.loads(out)["irreducible_chains"]
    assert code == 0 and len(rows) == 5
    code, out = run("decomp", "--type", "A2", "1,1,1", "--format", "json")
    assert code == 0 and len(json.loads(out)["pairs"]) == 3


def test_exit_codes():
    assert run("sl", "--type", "F4", "--order", "0,1", "1,1,1,1,1")[0] == 2
    assert run("sl", "--type", "Q9", "1,1")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("chain", "--type", "A2", "1,0,0", "--depth-cap", "3", "--mod-delta", "1,0,0", "9")[0] == 3
    assert run("table-check", "--types", "E6")[0] == 2


def test_verify_exit_and_json():
    code, out = run("verify", "--type", "G2", "--order", "1,2,0", "--depth", "6",
                    "--suites", "convexity,dec_periodicity", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["summary"]["failed"] == 0
    assert {r["name"] for r in doc["records"]} == {"convexity", "dec_periodicity"}
    code, out = run("verify", "--type", "A2", "--all-orders", "--depth", "4", "--suites", "flags")
    assert code == 0 and out.rstrip().endswith("PASS") and out.count("A2 ") == 6


def test_table_check_command():
    code, out = run("table-check", "--types", "G2,A3", "--format", "json")
    assert code == 0 and json.loads(out)["summary"]["failed"] == 0


def test_cache_round_trip_is_byte_identical(tmp_path):
    cache = str(tmp_path / "c")
    args = ("chain", "--type", "G2", "--order", "1,2,0", "0,1,0", "--depth", "6", "--format", "json")
    assert run("gen", "--type", "G2", "--order", "1,2,0", "--depth", "3", "--cache-path", cache)[0] == 0
    fresh = run(*args, "--no-cache")[1]
    cached = run(*args, "--cache-path", cache)[1]
    assert fresh == cached and len(json.loads(fresh)["elements"]) == 6
