"""Acceptance criteria, one test per criterion, exact tolerances.

Every test prints one PASS/FAIL line (visible with -v via the test name and
with -s via the printed summary).  Time limits are the stated ceilings; the
whole battery also backs the CLI reproduce targets.
"""

import time

from soclelab.reproduce import (
    battery_corner_minimality,
    battery_counterexample_values,
    battery_coverage_bound,
    battery_cross_tightness,
    battery_local_bound_exhaustive,
    battery_radical_agreement,
    battery_shrink_bounds,
    battery_socle_forms,
    battery_strength_laws,
    battery_system_no_violation,
    battery_twisted_centrality,
)

SEED = 20260808


def report(criterion: str, items, elapsed: float, limit: float | None = None):
    ok = all(item["ok"] for item in items)
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {criterion}: {len(items)} checks in {elapsed:.1f}s")
    for item in items:
        if not item["ok"]:
            print(f"    FAILED {item['name']}: {item['details']}")
    assert ok, f"{criterion} has failing checks"
    if limit is not None:
        assert elapsed <= limit, f"{criterion} exceeded its {limit}s ceiling ({elapsed:.1f}s)"


def test_criterion_01_exhaustive_coverage_bound():
    t0 = time.monotonic()
    items = battery_coverage_bound()
    elapsed = time.monotonic() - t0
    # all subspaces scanned for (2,2),(2,3),(3,2) over F_2 and (2,2) over F_3
    totals = {(i["details"]["total"]) for i in items}
    assert totals == {67, 2825, 212}
    for item in items:
        assert item["details"]["min_dim"] == item["details"]["bound"]
    report("criterion 1 (exhaustive dimension bound)", items, elapsed, limit=60.0)


def test_criterion_02_cross_tightness():
    t0 = time.monotonic()
    items = battery_cross_tightness()
    elapsed = time.monotonic() - t0
    assert len(items) == 32  # m, n <= 4 over q in {2, 3}
    report("criterion 2 (cross-space tightness)", items, elapsed)


def test_criterion_03_corner_minimality_split():
    t0 = time.monotonic()
    items = battery_corner_minimality()
    elapsed = time.monotonic() - t0
    by_name = {i["name"]: i for i in items}
    assert by_name["corner-3-3-2-q3-minimal"]["ok"]
    witness = by_name["corner-3-3-3-q2-not-minimal"]
    assert witness["details"]["witness_dim"] is not None
    report("criterion 3 (corner-family minimality split)", items, elapsed, limit=60.0)


def test_criterion_04_counterexample_reproduction():
    t0 = time.monotonic()
    items = battery_counterexample_values()
    elapsed = time.monotonic() - t0
    by_name = {i["name"]: i for i in items}
    line = by_name["line-cover-q2-d2-inequality-fails"]["details"]
    assert (line["lhs"], line["rhs"]) == (5, 4)
    assert line["failed_hypotheses"] == ["cardD"]
    assert (line["N_T"], line["d_T"], line["l_S"]) == (2, 3, 1)
    ring = by_name["row-diagonal-module-inequality-fails"]["details"]
    assert (ring["top"], ring["socle"], ring["socle_bimodule_length"], ring["chi"]) == (3, 2, 3, 1)
    assert (ring["lhs"], ring["rhs"]) == (5, 4)
    report("criterion 4 (small-field counterexample values)", items, elapsed)


def test_criterion_05_socle_closed_forms():
    t0 = time.monotonic()
    items = battery_socle_forms()
    elapsed = time.monotonic() - t0
    report("criterion 5 (socle closed forms)", items, elapsed)


def test_criterion_06_radical_oracle_agreement():
    t0 = time.monotonic()
    items = battery_radical_agreement()
    elapsed = time.monotonic() - t0
    assert len(items) >= 30  # the whole gallery grid under the element cap
    report("criterion 6 (radical oracle agreement)", items, elapsed, limit=120.0)


def test_criterion_07_twisted_socle_centrality():
    t0 = time.monotonic()
    items = battery_twisted_centrality()
    elapsed = time.monotonic() - t0
    assert len(items) == 16  # p in {2,3}, d in {1,2}, n in 1..4
    report("criterion 7 (twisted-ring socle centrality)", items, elapsed)


def test_criterion_08_local_bound_exhaustive():
    t0 = time.monotonic()
    items = battery_local_bound_exhaustive()
    elapsed = time.monotonic() - t0
    assert len(items) == 5
    for item in items:
        assert item["details"]["violations"] == 0
        assert item["details"]["minimal"] > 0
    report("criterion 8 (local bound, exhaustive modules dim <= 4)", items, elapsed, limit=300.0)


def test_criterion_09_no_false_violation_on_random_systems():
    t0 = time.monotonic()
    items = battery_system_no_violation(SEED, count=500)
    elapsed = time.monotonic() - t0
    details = items[0]["details"]
    assert details["instances"] >= 500
    assert details["violations"] == 0
    report("criterion 9 (500 verified random systems, no violation)", items, elapsed)


def test_criterion_10_shrink_bounds_on_corpus():
    t0 = time.monotonic()
    items = battery_shrink_bounds(SEED, min_count=200)
    elapsed = time.monotonic() - t0
    details = items[0]["details"]
    assert details["modules"] >= 200
    assert details["submodule_violations"] == 0
    assert details["quotient_violations"] == 0
    assert details["subfactor_violations"] == 0
    report("criterion 10 (shrink bounds on the corpus)", items, elapsed, limit=180.0)


def test_criterion_11_strength_predicates_and_laws():
    t0 = time.monotonic()
    items = battery_strength_laws()
    elapsed = time.monotonic() - t0
    by_name = {i["name"]: i for i in items}
    assert by_name["line-cover-q2-left-2-strong"]["ok"]
    assert by_name["line-cover-q2-no-block-1-strong"]["ok"]
    report("criterion 11 (strength predicates and union/cover laws)", items, elapsed)
