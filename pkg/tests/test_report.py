import math

import pytest

from partlab import BudgetError, count_box, partitions_total
from partlab import asymptotics as asy
from partlab.report import (
    Budget,
    CompareRow,
    central_index,
    compare_rows,
    decay_curve,
    ks_largest_part,
    ks_rank,
    largest_part_census,
    nearest_index,
    rank_census,
    ranks_table,
)


def test_central_index_is_nearest_integer():
    for n in (50, 500, 2000, 4000):
        target = asy.mean_part(n)
        c = central_index(n)
        assert abs(c - target) <= 0.5


def test_nearest_index_ties_round_down(monkeypatch):
    monkeypatch.setattr(asy, "scale", lambda n: 1.0)
    # s = 1, ln s = 0: target is x1 itself
    assert nearest_index(10, 7.5) == 7
    assert nearest_index(10, 7.5000001) == 8


def test_compare_rows_shape_and_ratio_invariant():
    rows = compare_rows("A", [500, 1000, 2000])
    assert [(r.n, r.estimator) for r in rows] == [
        (500, "theorem1"), (500, "saddlepoint"),
        (1000, "theorem1"), (1000, "saddlepoint"),
        (2000, "theorem1"), (2000, "saddlepoint"),
    ]
    for r in rows:
        assert r.exact == count_box(r.n, r.j, r.r)
        assert math.isfinite(r.ratio)
        assert r.ratio == pytest.approx(math.exp(r.estimate_log - math.log(r.exact)), rel=1e-12)
    t1 = [abs(r.ratio - 1) for r in rows if r.estimator == "theorem1"]
    assert t1 == sorted(t1, reverse=True)
    assert CompareRow.HEADER == tuple(rows[0].as_dict())


def test_compare_rows_other_families():
    assert [r.estimator for r in compare_rows("C", [300, 600])] == ["c_estimate"] * 2
    assert [r.estimator for r in compare_rows("B", [300])] == ["b_estimate"]
    p = compare_rows("P", [100])[0]
    assert p.exact == partitions_total(100)


def test_compare_rows_errors():
    with pytest.raises(ValueError, match="empty"):
        compare_rows("A", [])
    with pytest.raises(BudgetError, match="6000"):
        compare_rows("A", [500, 6000])
    with pytest.raises(BudgetError):
        compare_rows("A", [1000], budget=Budget(max_jr=50))
    with pytest.raises(ValueError):
        compare_rows("Z", [100])


def test_largest_part_census_sums_to_pn():
    c = largest_part_census(20)
    assert sum(c.values()) == partitions_total(20)
    assert c[20] == 1 and c[1] == 1


def test_rank_census_symmetric_and_guarded():
    c = rank_census(20, 1)
    assert sum(c.values()) == partitions_total(20)
    assert all(c[v] == c[-v] for v in c)
    with pytest.raises(ValueError, match="no partitions attain rank index k"):
        rank_census(40, 7)
    with pytest.raises(BudgetError):
        rank_census(61, 1)


def test_rank_census_sampled_is_deterministic():
    assert rank_census(300, 2, samples=500, seed=4) == rank_census(300, 2, samples=500, seed=4)


def test_ranks_table_columns():
    rows, ks = ranks_table(rank_census(30, 2), 30, 2)
    emp = [r[1] for r in rows]
    assert emp[-1] == 1.0 and emp == sorted(emp)
    assert 0 < ks < 1


def test_ks_trends():
    assert ks_largest_part(40) < ks_largest_part(12)
    assert ks_rank(40) < ks_rank(12)


def test_decay_curve_small():
    est, fit = decay_curve(12)
    assert [e.n for e in est] == [2, 4, 6, 8, 10, 12]
    assert set(fit) == {"n", "ln_n"}
