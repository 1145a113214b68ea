import json

import pytest

from nilorbit.classify import classify
from nilorbit.modp import ModPResult, m_p, weak_local_scan
from nilorbit.orbits import orbit
from nilorbit.polynomial import Polynomial
from nilorbit.reports import CSV_HEADER, scan_to_csv, to_dict, to_json, to_text
from nilorbit.verify import theorem_suite


def test_classification_json():
    c = classify(Polynomial((1, 1)), 1, bound=100)
    data = json.loads(to_json(c))
    assert data["schema"] == "nilorbit/1"
    assert data["verdict"] == "in-S_r"
    assert data["provenance"] == "Thm4.1(4)"
    assert data["certainty"] == "proved"
    assert data["query"] == {"poly": "1,1", "r": 1, "exclude": []}
    assert data["index"] is None and data["witness"] is None


def test_json_is_deterministic():
    u = Polynomial((-2, 4))
    first = to_json(weak_local_scan(u, 1, P=200, mode="table"))
    second = to_json(weak_local_scan(u, 1, P=200, mode="table"))
    assert first == second
    assert list(json.loads(first)) == sorted(json.loads(first))


def test_orbit_dict():
    data = to_dict(orbit(Polynomial((-2, 0, 1)), 0))
    assert data["outcome"] == "enters-cycle"
    assert (data["preperiod"], data["period"], data["cycle"]) == (2, 1, [2])


def test_mod_p_dict():
    data = to_dict(m_p(Polynomial((-2, 4)), 0, 3))
    assert data == {
        "kind": "mod-p",
        "p": 3,
        "m_p": 3,
        "preperiod": 0,
        "period": 3,
        "cycle": [0, 1, 2],
        "partial": False,
    }


def test_batched_record_dict_is_partial():
    data = to_dict(ModPResult(101, 100))
    assert data["partial"] is True
    assert (data["preperiod"], data["period"]) == (None, None)


def test_scan_csv():
    report = weak_local_scan(Polynomial((-2, 4)), 1, P=11, mode="table")
    lines = scan_to_csv(report).splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1].startswith("2,1,")
    assert lines[3].startswith("5,-,0,2")
    assert len(lines) == 6


def test_scan_csv_decision_records():
    report = weak_local_scan(Polynomial((1, 1)), 1, P=200)
    rows = scan_to_csv(report).splitlines()[1:]
    # batched records carry no cycle data
    assert rows[-1] == "199,198,-,-"


def test_validation_json_omits_elapsed():
    report = theorem_suite("lemma3.2-contrapositive", prime_bound=200)
    data = json.loads(to_json(report))
    assert data["kind"] == "validation"
    assert "elapsed" not in data
    assert data["suite"] == "lemma3.2-contrapositive"


def test_text_output():
    text = to_text(classify(Polynomial((-2, 4)), 1, bound=100))
    assert "not-weakly-locally-nilpotent" in text
    assert "witness" in text
    table = to_text(weak_local_scan(Polynomial((-2, 4)), 1, P=20, mode="table"))
    assert "-2x + 4" not in table
    assert "4x - 2" in table


def test_unknown_type():
    with pytest.raises(TypeError):
        to_dict(object())
