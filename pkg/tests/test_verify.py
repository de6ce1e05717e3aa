import json

import pytest

import mconvex.verify as verify
from mconvex import generate, load_lattice
from mconvex.errors import NotModularLattice, NotSemimodular
from mconvex.hull import HullResult
from mconvex.io import lattice_from_dict
from mconvex.verify import (
    report_document,
    select_pairs,
    summary_table,
    verify_lattice,
    verify_lemmas,
    verify_theorem_distance,
    verify_theorem_main,
    verify_theorem_modular,
)


@pytest.mark.parametrize("spec", ["boolean:3", "partition:4", "binary_subspace:2",
                                  "antimatroid_shelling:4:0"])
def test_suites_pass_on_small_lattices(spec):
    reports = verify_lattice(generate(spec), spec)
    assert [r.suite for r in reports] == ["distance", "main", "lemmas", "modular"]
    for r in reports:
        assert r.failures == 0, r.to_dict()
        if not r.skipped:
            assert r.exhaustive and all(c.pass_count == r.flag_pair_count for c in r.checks
                                        if c.name not in {"kstar_eq_k_when_antimatroid", "delta_decomposition"})


def test_pair_selection():
    L = generate("partition:4")  # 18 flags, 324 ordered pairs
    pairs, nflags, exhaustive = select_pairs(L, 10_000, 0)
    assert nflags == 18 and exhaustive and len(pairs) == 324
    assert sum(C == D for C, D in pairs) == 18
    pairs, _, exhaustive = select_pairs(L, 50, 3)
    assert not exhaustive and len(pairs) == len(set(pairs)) == 50
    assert select_pairs(L, 50, 3)[0] == pairs
    pairs, nflags, exhaustive = select_pairs(generate("boolean:4"), 7, 1, flag_budget=10)
    assert nflags == 24 and not exhaustive and len(pairs) == 7


def test_skips_by_precondition(pentagon, partition4):
    reports = verify_lattice(pentagon, "n5")
    assert all(r.skipped == "not semimodular" and not r.checks for r in reports)
    reports = verify_lattice(partition4, "p4")
    assert [r.skipped for r in reports] == [None, None, None, "not modular"]


def test_suite_preconditions_raise(pentagon, partition4):
    with pytest.raises(NotSemimodular):
        verify_theorem_distance(pentagon)
    with pytest.raises(NotModularLattice):
        verify_theorem_modular(partition4)


def test_broken_recursion_is_detected(monkeypatch, partition4):
    real = verify.mconv_recursive

    def lossy(L, C, D):
        hull = real(L, C, D)
        # drop the top-most non-flag element if any
        extra = hull.members & ~(sum(1 << u for u in C) | sum(1 << u for u in D))
        if not extra:
            return hull
        drop = extra.bit_length() - 1
        return HullResult(hull.members & ~(1 << drop), hull.z, hull.z_prime, hull.sigma,
                          hull.C, hull.D, hull.levels)

    monkeypatch.setattr(verify, "mconv_recursive", lossy)
    report = verify_lemmas(partition4, lattice_id="p4")
    bad = report.check("fixpoint_eq_recursive")
    assert bad.fail_count > 0
    cx = bad.first_counterexample
    # counterexample replays against the honest implementation
    L = lattice_from_dict(cx["lattice"])
    assert real(L, tuple(cx["C"]), tuple(cx["D"])).members != lossy(L, tuple(cx["C"]), tuple(cx["D"])).members


def test_exception_is_recorded_not_raised(monkeypatch, boolean2):
    def boom(L, C, D):
        raise AssertionError("injected")

    monkeypatch.setattr(verify, "mconv_recursive", boom)
    report = verify_theorem_main(boolean2)
    c = report.check("no_exception")
    assert c.fail_count == report.flag_pair_count == 4
    assert "injected" in c.first_counterexample["detail"]


def test_reports_are_deterministic():
    def run():
        reports = verify.verify_corpus(["partition:4", "antimatroid_poset:5:5"], pair_budget=100, seed=9)
        return json.dumps(report_document(reports, 9, 100, 10_000), sort_keys=True)

    assert run() == run()
    doc = json.loads(run())
    assert "wall_time" not in doc["reports"][0]


def test_summary_marks_sampled_runs():
    reports = verify.verify_corpus(["partition:4"], suites=["distance"], pair_budget=20)
    table = summary_table(reports)
    assert "20*" in table and table.rstrip().endswith("* sampled")


def test_fixture_file_in_harness(fixtures_dir):
    reports = verify_lattice(load_lattice(fixtures_dir / "m3.json"), "m3")
    assert all(r.failures == 0 and r.skipped is None for r in reports)
