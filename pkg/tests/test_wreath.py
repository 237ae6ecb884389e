import json

import pytest

from oracles import cyclic_character_table_real, s3_character_table, same_table
from pshkit import wreath
from pshkit.partitions import EMPTY, Partition


def test_bundled_s3_matches_brute_force():
    t = wreath.bundled_table("s3")
    sizes, rows = s3_character_table()
    assert same_table(list(t.class_sizes), [list(r) for r in t.characters], sizes, rows)


def test_bundled_z2_matches_brute_force():
    t = wreath.bundled_table("z2")
    sizes, rows = cyclic_character_table_real(2)
    assert same_table(list(t.class_sizes), [list(r) for r in t.characters], sizes, rows)


def test_z3_is_count_only():
    t = wreath.bundled_table("z3")
    assert t.count_only and t.irr_count == 3 and t.order == 3
    # only one real-valued character exists, so a full integer table is impossible
    assert len(cyclic_character_table_real(3)[1]) == 1


@pytest.mark.parametrize("name,k", [("trivial", 1), ("z2", 2), ("z3", 3), ("s3", 3)])
def test_decomposition(name, k):
    rep = wreath.verify_decomposition(wreath.bundled_table(name), 3)
    assert rep["ok"] and rep["irr"] == k
    assert [r["rank"] for r in rep["primitive_ranks"]] == [k] * 3


def test_s3_degree_two_dimension():
    A = wreath.build_PG(wreath.bundled_table("s3"), 2)
    # pairs of boxes across 3 factors: 3*2 (both in one factor) + 3 (two different factors)
    assert len(A.basis[2]) == 9


@pytest.mark.parametrize("doc,msg", [
    ({"name": "bad", "class_sizes": [1, 1], "characters": [[1, 1], [1, 0]]}, "orthogonality"),
    ({"name": "bad", "class_sizes": [1, 1], "characters": [[1, 1]]}, "2x2"),
    ({"name": "bad", "class_sizes": [1, 1], "characters": [[1, 1], [-1, 1]]}, "nonpositive"),
    ({"name": "bad", "class_sizes": [0], "characters": [[1]]}, "positive"),
    ({"class_sizes": [1], "characters": [[1]]}, "name"),
    ({"name": "c", "class_sizes": [1, 1], "mode": "count", "irr_count": 3}, "count mode"),
    ([1, 2], "JSON object"),
])
def test_rejects_malformed_tables(doc, msg):
    with pytest.raises(wreath.CharacterTableError, match=msg):
        wreath.load_character_table(doc)


def test_load_from_path_and_string(tmp_path):
    doc = wreath.bundled_table("s3").to_json()
    p = tmp_path / "t.json"
    p.write_text(json.dumps(doc), encoding="utf-8")
    assert wreath.load_character_table(str(p)) == wreath.load_character_table(json.dumps(doc))


def test_labels_round_trip():
    parts = (Partition((1,)), EMPTY, Partition((2,)))
    assert wreath.flatten_label(wreath.nest_label(parts, 3), 3) == parts


def test_unknown_bundled_name():
    with pytest.raises(KeyError):
        wreath.bundled_table("a5")
