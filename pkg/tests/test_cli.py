import io
import json
import shutil
import subprocess

import pytest

from pscatter.cli import check_facts, run
from pscatter.stable import is_homeo
from pscatter.syntax import parse_term


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue().strip()


def test_examples():
    assert call("le", "i(2)", "cone(w1*pt)") == (0, "PROVED")
    assert call("rank", "J(w)") == (0, "w")
    assert call("homeo", "J(w) + w1*J(w)", "J(w)") == (0, "HOMEOMORPHIC")


def test_exit_codes():
    assert call("rank", "J(w")[0] == 2
    assert call("rank", "J(w1)")[0] == 4
    assert call("lift", "J(w+1)")[0] == 4


def test_unknown_exit_code():
    code, text = call("le", "i(3) + w1*i(2)", "i(3) + w*J(2) + i(2)", "--budget", "1")
    assert (code, text) == (3, "UNKNOWN")
    assert call("le", "i(3) + w1*i(2)", "i(3) + w*J(2) + i(2)")[0] == 0


def test_json_records():
    code, text = call("le", "J(2)", "i(2)", "--json")
    rec = json.loads(text)
    assert code == 0 and rec["verdict"] == "REFUTED" and rec["witness"]["kind"]
    code, text = call("normalize", "i(2) + w*pt", "--json")
    assert json.loads(text)["normal_form"] == "i(2)"
    code, text = call("bound", "J(2)", "--json")
    assert json.loads(text)["ordinal"] == "w1^2 + 1"


def test_normal_forms_round_trip_through_homeo():
    for s in ["J(3) + w1*J(2)", "i(2) + w*pt", "w1*isum + 3*J(w)", "cone(2*pt + i(2))"]:
        code, nf = call("normalize", s)
        assert code == 0
        assert call("homeo", nf, s) == (0, "HOMEOMORPHIC")
        assert is_homeo(parse_term(nf), parse_term(s))


def test_ordinal_arguments():
    assert call("derive", "J(w+1)", "w") == (0, "pt")
    assert call("truncate", "J(3)", "--times", "1") == (0, "w1*pt")
    assert call("cardat", "J(2)", "1") == (0, "1")
    assert call("compactify", "J(2)") == (0, "w1^2 + 2")


def test_poset_verbs():
    assert call("lift", "i(2)", "--lambda", "w") == (0, "cone(w*J(w + 1))")
    code, text = call("project", "J(w)", "--lambda", "w", "--json")
    assert code == 0 and json.loads(text)["verdict"] == "EMPTY"
    code, text = call("psi-check", "i(4)", "J(3)")
    assert code == 0 and text.startswith("AGREE")


def test_order_verbs():
    assert call("antichain", "i(4)", "J(3)") == (0, "ANTICHAIN")
    assert call("antichain", "i(2)", "J(2)") == (0, "NOT ANTICHAIN")
    assert call("chain", "J(2)", "i(2) + w1*pt", "i(2)") == (0, "VALID")
    assert call("dickson", "0,w1", "1,w", "2,3", "3,4") == (0, "FOUND 2 3")
    assert call("dickson", "w1", "w", "5") == (0, "NONE")
    assert call("capacity", "pt", "J(2)") == (0, "w1")


def test_stable_and_indicator():
    code, text = call("stable", "2")
    assert code == 0 and text.splitlines()[:2] == ["level 1: 1", "level 2: 2"]
    code, text = call("indicator", "0", "--lambda", "2")
    assert code == 0 and parse_term(text)


def test_facts_all_pass():
    rows = check_facts()
    assert all(ok for _, _, ok, _ in rows), [r for r in rows if not r[2]]
    code, text = call("facts")
    assert code == 0 and text.count("PASS") == 11


def test_batch(tmp_path):
    corpus = tmp_path / "queries.txt"
    corpus.write_text('# comment\nrank "J(3)"\n\nle "i(2)" "J(2)"  # trailing comment\nrank "J("\n')
    code, text = call("batch", str(corpus))
    assert code == 2
    assert text.splitlines()[:2] == ["3", "PROVED"]


def test_deterministic_output():
    assert call("le", "i(4)", "J(3)", "--json") == call("le", "i(4)", "J(3)", "--json")


@pytest.mark.skipif(shutil.which("pscatter") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["pscatter", "rank", "J(w)"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "w"
