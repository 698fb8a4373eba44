import copy
import json
from fractions import Fraction as Q

import pytest

from reldecay.catalog import (
    CatalogError,
    dump_catalog,
    find_entry,
    load_catalog,
    parse_catalog,
    parse_rational,
)
from reldecay.pipeline import DecayReport, IncompleteEntryError, pipeline

F4 = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]


@pytest.fixture(scope="module")
def bundled():
    return load_catalog()


def _doc(bundled):
    return json.loads(dump_catalog(bundled))


def test_bundled_catalog(bundled):
    assert [e.name for e in bundled] == ["2E6_2", "E7_9"]
    e6, e7 = bundled
    assert e6.short_multiplicity == 2 and e7.short_multiplicity == 4
    assert e6.levi_factor_bound is None and e6.has_levi_factor_bound
    assert e7.levi_factor_bound == 18
    assert e7.min_rep_exponents[1] == (-11, -24, -36, -20)
    assert e6.candidate_words == ((4, 2, 3, 2, 1),)


def test_dump_and_reload_roundtrip(bundled, tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(dump_catalog(bundled))
    assert load_catalog(path) == bundled


@pytest.mark.parametrize(
    "text, match",
    [("", "line 1 column 1"), ("{", "line 1"), ("[]", "top level"), ('{"version": 2, "groups": []}', "version"),
     ('{"version": 1}', "groups")],
)
def test_parse_errors(text, match):
    with pytest.raises(CatalogError, match=match):
        parse_catalog(text)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("")
    with pytest.raises(CatalogError, match="empty.json"):
        load_catalog(path)


def test_missing_file(tmp_path):
    with pytest.raises(CatalogError):
        load_catalog(tmp_path / "nope.json")


def test_incomplete_entry_loads_but_pipeline_refuses():
    doc = {"version": 1, "groups": [{"name": "F4_split", "cartan": F4, "short_multiplicity": 1}]}
    (entry,) = parse_catalog(json.dumps(doc))
    assert "min_rep_exponents" in entry.missing_fields()
    with pytest.raises(IncompleteEntryError, match="min_rep_exponents"):
        pipeline(entry)


def _mutated(bundled, **changes):
    doc = _doc(bundled)
    g = doc["groups"][1]
    for k, v in changes.items():
        if v is None:
            del g[k]
        else:
            g[k] = v
    return json.dumps(doc)


@pytest.mark.parametrize(
    "changes, match",
    [
        ({"cartan": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]}, "highest root"),
        ({"cartan": [[2, 1], [1, 2]]}, "cartan"),
        ({"h1_generators": [[1, 0, 0, 0]]}, "h1_generators"),
        ({"h2_generators": [1, 2, 3]}, "h2_generators"),
        ({"h2_generators": [2, 3, 9]}, "out of range"),
        ({"phi_formula_params": {"r": 2}}, "phi_formula_params"),
        ({"min_rep_exponents": [["1", "2"]]}, "min_rep_exponents"),
        ({"min_rep_exponents": [["1.5", "0", "0", "0"]]}, "malformed rational"),
        ({"levi_factor_bound": 1.5}, "rational"),
        ({"h1_threshold": "1"}, "at least 2"),
        ({"candidate_words": [[5]]}, "candidate_words"),
        ({"short_multiplicity": 0}, "short_multiplicity"),
        ({"name": None}, "name"),
        ({"colour": "blue"}, "unknown fields"),
    ],
)
def test_validation_errors(bundled, changes, match):
    with pytest.raises(CatalogError, match=match):
        parse_catalog(_mutated(bundled, **changes))


def test_duplicate_names(bundled):
    doc = _doc(bundled)
    doc["groups"].append(copy.deepcopy(doc["groups"][0]))
    with pytest.raises(CatalogError, match="duplicate"):
        parse_catalog(json.dumps(doc))


def test_parse_rational():
    assert parse_rational("26/3") == Q(26, 3)
    assert parse_rational("-8") == -8
    assert parse_rational(7) == 7
    assert parse_rational("inf", allow_inf=True) is None
    for bad in ["inf", "1/0", "x", 2.5, True]:
        with pytest.raises(CatalogError):
            parse_rational(bad)


def test_find_entry(bundled):
    assert find_entry(bundled, "E7_9").short_multiplicity == 4
    with pytest.raises(CatalogError, match="nosuchgroup"):
        find_entry(bundled, "nosuchgroup")


def test_report_roundtrip(bundled):
    for entry in bundled:
        report = pipeline(entry)
        again = DecayReport.from_json(report.to_json())
        assert again == report
        assert again.to_json() == report.to_json()
        assert "." not in "".join(str(v) for v in report.to_dict().values() if isinstance(v, str))


def test_report_values(bundled):
    e6, e7 = (pipeline(e) for e in bundled)
    assert e6.value("p_of_G") == 8 and e6.isolation is None and e6.p_of_G_sharp
    assert e7.value("p_of_G") == Q(26, 3) and e7.isolation == 4
    assert e7.value("p_nonminimal") == Q(192, 25)
    assert e6.value("levi_factor_bound") is None
    assert e7.witness_word == [4, 1, 2, 3, 2, 1]


def test_full_search_pipeline_matches_candidate_words(bundled):
    e6, e7 = (pipeline(e, full_search=True) for e in bundled)
    assert e6.value("p_nonminimal") == 8
    assert e7.value("p_nonminimal") == Q(192, 25)
