"""Smoke test for the apartness_py extension.

    pip install --no-build-isolation -e crates/py
    python python/smoke_test.py
"""

import json
import pathlib
import sys
import tempfile

import apartness_py as ap

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def text(name):
    return (FIXTURES / name).read_text()


def main():
    c3 = text("c3.json")
    axioms = ap.axioms(c3)
    assert all(axioms[k][0] for k in ("Ap1", "Ap2", "Ap3", "Ap5'")), axioms
    assert axioms["Ap4"] == (False, "(a,b)"), axioms["Ap4"]

    broken = ap.axioms(text("broken_ap1.json"))
    assert broken["Ap1"] == (False, "(a,a)"), broken["Ap1"]

    assert ap.a_complement(c3, "A") == ["c"]

    tau = ap.classify_relation(text("sl3.json"), "tau")
    assert tau["co_quasiorder"] == (True, None), tau

    report, code = ap.run("classify", str(FIXTURES / "sl3.json"), relation="tau")
    props = {p["name"]: p for p in json.loads(report)["properties"]}
    assert code == 0
    assert props["complement_positive"]["value"] is True
    assert props["constructive_cm"]["witness"] == "(a,b,a)"

    with tempfile.TemporaryDirectory() as d:
        out = pathlib.Path(d) / "q.json"
        _, code = ap.run("quotient", str(FIXTURES / "c3.json"), kappa="kappa", out=str(out))
        assert code == 0
        _, code = ap.run("check", str(out), format="text")
        assert code == 0

    assert ap.digest(b"") == "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"

    try:
        ap.run("bogus")
    except ValueError as e:
        assert "bogus" in str(e)
    else:
        raise AssertionError("unknown command accepted")

    print("smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
