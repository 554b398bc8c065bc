"""The frozen two-color weight table is reproduced byte for byte."""

from collections import Counter
from pathlib import Path

from sixvertex import weights
from sixvertex.lmatrix import (
    GOLDEN_WEIGHT_COUNTS,
    fold_projection,
    golden_table_lines,
    l1_weight,
    l2_golden_table,
)

GOLDEN_PATH = Path(__file__).parent / "data" / "l2_golden.txt"


def test_matches_frozen_file_exactly():
    generated = "\n".join(golden_table_lines()) + "\n"
    assert generated == GOLDEN_PATH.read_text()


def test_thirty_two_entries():
    lines = GOLDEN_PATH.read_text().splitlines()
    assert len(lines) == 32
    assert len(set(lines)) == 32


def test_contradictory_configurations_absent():
    keys = {line.rsplit(" ", 1)[0] for line in golden_table_lines()}
    assert "10 10 11 11" not in keys
    assert "00 00 11 11" not in keys


def test_weight_multiset():
    counts = Counter(line.rsplit(" ", 1)[1] for line in golden_table_lines())
    assert counts == GOLDEN_WEIGHT_COUNTS


def test_entries_factor_through_one_color_rule():
    for i, j, k, l, w in l2_golden_table():
        product = weights.star(
            l1_weight(fold_projection(i, 1), fold_projection(j, 1),
                      fold_projection(k, 1), fold_projection(l, 1)),
            l1_weight(fold_projection(i, 2), fold_projection(j, 2),
                      fold_projection(k, 2), fold_projection(l, 2)))
        assert w is product
        assert w is not weights.ZERO


def test_rows_sum_to_one_numerically():
    b1, b2 = 0.37, 0.81
    totals: dict[tuple[int, int], float] = {}
    for i, j, _, _, w in l2_golden_table():
        totals[(i, j)] = totals.get((i, j), 0.0) + weights.evaluate(w, b1, b2)
    assert len(totals) == 16
    for key, total in totals.items():
        assert abs(total - 1.0) < 1e-12, key
