"""The witt command, driven in-process and once through a subprocess."""

import io
import json
import shutil
import subprocess
import sys

import pytest

from wittalg.cli import run
from wittalg.subalgebra import FinCodimSubalgebra, parse_subalgebra


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    obj = json.loads(text)
    assert obj["schema"] == 1
    return code, obj


def test_bracket_text():
    assert call("bracket", "--u", "e_1", "--v", "e_2") == (0, "e_3\n")
    code, obj = call_json("bracket", "--u", "(t^2+1)*d", "--v", "t*d")
    assert code == 0 and obj["result"]["field"] == "(-t^2 + 1)*d"


def test_two_sided_bracket():
    code, text = call("bracket", "--u", "e_-2", "--v", "e_2", "--algebra", "witt")
    assert code == 0 and text.strip() == "4*e_0"


def test_conductor_and_round_trip():
    code, obj = call_json("conductor", "--subalgebra", "span{e_0 + e_1} + W(t^3)")
    assert code == 0
    res = obj["result"]
    assert res["conductor"] == "t^3" and res["codim"] == 2
    assert FinCodimSubalgebra.from_dict(res) == parse_subalgebra("span{e_0 + e_1} + W(t^3)")
    code, obj = call_json("conductor", "--gen", "e_1", "--gen", "e_2")
    assert obj["result"]["conductor"] == "t^2"


def test_h1_and_derivations():
    assert call("h1", "--conductor", "t^5") == (0, "4\n")
    code, obj = call_json("derivations", "--conductor", "t^3*(t-1)")
    assert code == 0 and obj["result"]["h1_dim"] == 2 and len(obj["result"]["outer_witnesses"]) == 2


def test_graded_and_relation():
    code, obj = call_json("graded-der", "--n", "1", "--k", "0")
    assert code == 0 and obj["result"]["basis"][0]["values"]["3"] == "3"
    code, text = call("relation", "--n", "1", "--m", "2")
    assert code == 0 and text.strip() == "0"


def test_ext_and_chain():
    code, obj = call_json("ext", "--conductor", "t^2*(t-1)")
    assert code == 0
    reports = obj["result"]["reports"]
    assert reports[0]["character"]["variant"] == "Trivial" and reports[0]["ext_dim"] == 1
    assert reports[1]["character"] == {"variant": "SimpleRoot", "root": "1"}
    code, obj = call_json("chain", "--subalgebra", "W(t^4)")
    assert code == 0 and obj["result"]["length"] == 4


def test_iso_aut_transport():
    code, obj = call_json("iso", "--f", "t^2*(t-1)", "--g", "t^2*(t-2)")
    w = obj["result"]["witness"]
    assert obj["result"]["verdict"] == "isomorphic" and (w["alpha"], w["x"], w["gamma"]) == ("1/2", "0", "1/8")
    code, obj = call_json("iso", "--f", "t^2", "--g", "t*(t-1)")
    assert obj["result"]["verdict"] == "not-isomorphic"
    code, obj = call_json("iso", "--f", "t^3-1", "--g", "t^3-2")
    assert obj["result"]["verdict"] == "no-rational-witness"
    code, obj = call_json("aut", "--f", "t*(t-1)")
    assert len(obj["result"]["elements"]) == 2
    code, text = call("transport", "--conductor", "t^2", "--x", "1", "--alpha", "2")
    assert code == 0 and text.strip() == "W(t^2 - 2*t + 1)"


def test_lfg_commands():
    code, obj = call_json("gf", "--f", "t^2*(t-1)")
    assert obj["result"]["h"] == "t^2 + 4/27*t"
    code, obj = call_json("lfg-iso", "--f", "t^2")
    assert code == 0 and obj["result"]["ok"] and len(obj["result"]["pairs"]) == 10


def test_verify_scopes():
    code, obj = call_json("verify", "--scope", "isomorphism")
    assert code == 0 and obj["result"]["passed"]
    assert {r["id"][:3] for r in obj["result"]["claims"]} == {"C08", "C09"}
    code, text = call("verify", "--scope", "nonsense")
    assert code == 0 and "no claims match" in text


def test_errors_and_exit_codes():
    code, obj = call_json("bracket", "--u", "e_1 +", "--v", "e_2")
    assert code == 2 and obj["error"]["code"] == "E_PARSE" and obj["error"]["position"] == 5
    code, obj = call_json("conductor", "--subalgebra", "span{d} + W(t^2)")
    assert code == 2 and obj["error"]["code"] == "E_DOMAIN"
    code, obj = call_json("graded-der", "--n", "2", "--k", "3", "--window=-1:10")
    assert code == 2 and obj["error"]["code"] == "E_WINDOW" and obj["error"]["suggested_window"]
    with pytest.raises(SystemExit) as exc:
        run(["h1"], io.StringIO())
    assert exc.value.code == 2


def test_determinism_and_out_file(tmp_path):
    argv = ("chain", "--conductor", "t^2*(t+1)", "--json")
    first, second = call(*argv), call(*argv)
    assert first == second
    path = tmp_path / "chain.json"
    code, text = call(*argv, "--out", str(path))
    assert json.loads(path.read_text()) == json.loads(text)
    assert list(json.loads(text)) == sorted(json.loads(text))


@pytest.mark.skipif(shutil.which("witt") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["witt", "h1", "--conductor", "t^2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
    proc = subprocess.run([sys.executable, "-m", "wittalg.cli", "bracket", "--u", "e_0", "--v", "e_"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "E_PARSE" in proc.stderr
