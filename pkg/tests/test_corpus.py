import json

import pytest

from icregion.corpus import KINDS, data_root, entries, entry, load_entry, run_check
from icregion.geometry import dumps_region, load_region, poly_equal, remove_redundant
from icregion.geometry.inequality import canonical_row

ENTRIES = entries()


def _region_files():
    return sorted(p for p in data_root().glob("*/regions/*.json"))


def test_corpus_names():
    assert [e.name for e in ENTRIES] == ["eg2", "eg3", "eg4", "eg5"]
    assert all(c["kind"] in KINDS for e in ENTRIES for c in e.checks)


@pytest.mark.parametrize("path", _region_files(), ids=lambda p: f"{p.parent.parent.name}/{p.stem}")
def test_expected_regions_parse_and_are_canonical(path):
    p = load_region(path)
    assert all(canonical_row(r[:-1], r[-1]) == r for r in p.rows)
    assert poly_equal(remove_redundant(p), p)
    again = load_region(path)
    assert dumps_region(again) == dumps_region(p)


def test_checks_reference_existing_files():
    for e in ENTRIES:
        for c in e.checks:
            for key in ("expected", "decoding", "target", "outer", "a", "b"):
                ref = c.get(key)
                if ref and ref.startswith(("regions/", "decoding/")):
                    assert e.file(ref).is_file(), f"{e.name}/{c['id']}: missing {ref}"
            plan = c.get("plan")
            if plan and plan.endswith(".json"):
                assert e.file(plan).is_file()


def test_unknown_check_kind_rejected(tmp_path):
    d = tmp_path / "x"
    d.mkdir()
    (d / "manifest.json").write_text(json.dumps({"name": "x", "checks": [{"id": "a", "kind": "bogus"}]}))
    with pytest.raises(ValueError):
        load_entry(d)


def test_entry_lookup():
    assert entry("eg4").check("ccc-s-partition")["scheme"] == "ccc-s"
    with pytest.raises(KeyError):
        entry("eg9")
    with pytest.raises(KeyError):
        entry("eg4").check("nope")


FAST = [(e, c) for e in ENTRIES for c in e.checks if not c.get("slow")]


@pytest.mark.parametrize("e,c", FAST, ids=[f"{e.name}/{c['id']}" for e, c in FAST])
def test_fast_corpus_checks(e, c):
    res = run_check(e, c)
    assert res.ok, res.detail
