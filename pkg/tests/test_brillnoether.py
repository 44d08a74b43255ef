import json
import os

import pytest

from wgauss.brillnoether import (
    emit_table,
    rho,
    seed_windows,
    table_to_csv,
    table_to_json,
    wn_smoothness_predicates,
)

GOLDEN = os.path.join(os.path.dirname(__file__), "data", "bn_table_g3_12.csv")


def test_rho_values():
    assert rho(4, 1, 3) == 0
    assert rho(3, 1, 2) == -1
    for g in range(2, 20):
        for d in range(1, 20):
            assert rho(g, 0, d) == d


def test_rho_equivalence_with_half_genus_bound():
    # rho(g, 1, n) >= 0 iff 2n >= g + 2
    for g in range(3, 41):
        for n in range(1, g):
            assert (rho(g, 1, n) >= 0) == (2 * n >= g + 2)


def test_wn_smoothness_predicates():
    assert wn_smoothness_predicates(6, 4)["always_singular"]
    assert wn_smoothness_predicates(6, 3)["generically_smooth"]
    # the boundary n = g/2 + 1 is singular
    assert wn_smoothness_predicates(6, 4) == {
        "always_singular": True, "generically_smooth": False}
    assert wn_smoothness_predicates(8, 5)["always_singular"]
    with pytest.raises(ValueError):
        wn_smoothness_predicates(6, 6)


def test_seed_windows_example_rows():
    w = seed_windows(8, 6, 3)
    assert w["open_dense_window"]
    w = seed_windows(7, 5, 3)
    assert w["positive_codim_window"]
    w = seed_windows(4, 2, 1)
    assert w["multiple_locus_generic"]


def test_rho_difference_identity():
    # rho(g, k-1, n+k-1) - rho(g, k, n+k) = g - n
    for g in range(4, 30):
        for n in range(2, g - 1):
            for k in range(1, n):
                assert rho(g, k - 1, n + k - 1) - rho(g, k, n + k) == g - n


def test_smooth_and_generic_existence_forces_small_k():
    rows = emit_table(range(3, 41))
    for row in rows:
        if row["generically_smooth"] and row["generic_existence"]:
            assert row["k"] in (1, 2), row


def test_dim_lower_bound_column():
    rows = emit_table(range(3, 13))
    for row in rows:
        expect = max(row["k"], row["k"] + row["rho_gk_nk"])
        assert row["dim_lower_bound"] == expect


def test_empty_range():
    assert emit_table(range(3, 3)) == []


def test_csv_json_encode_identical_data():
    rows = emit_table(range(3, 8))
    csv_text = table_to_csv(rows)
    json_rows = json.loads(table_to_json(rows))
    lines = csv_text.strip().split("\n")
    header = lines[0].split(",")
    assert len(lines) - 1 == len(json_rows)
    for line, jrow in zip(lines[1:], json_rows):
        cells = line.split(",")
        for name, cell in zip(header, cells):
            assert str(jrow[name]) == cell


def test_golden_file_stable():
    rows = emit_table(range(3, 13))
    text = table_to_csv(rows)
    with open(GOLDEN, encoding="utf-8") as fh:
        assert fh.read() == text
